#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdb/errors.hpp"
#include "mdb/gen.hpp"
#include "mdb/graph.hpp"
#include "mdb/oracle.hpp"
#include "mdb/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitIo = 4;

const char* status_name(mdb::SolveStatus s) {
    switch (s) {
        case mdb::SolveStatus::Optimal: return "OPTIMAL";
        case mdb::SolveStatus::NoSolution: return "NO_SOLUTION";
        case mdb::SolveStatus::TimeoutBestKnown: return "TIMEOUT_BEST_KNOWN";
    }
    return "?";
}

struct CommonArgs {
    std::string graph_path;
    std::int64_t k = 1;
    std::int64_t theta = 2;
    bool one_based = false;
    std::string output = "text";
};

std::vector<std::int64_t> to_labels(const mdb::BipartiteGraph& g, mdb::Side side,
                                    const std::vector<mdb::Vertex>& verts) {
    std::vector<std::int64_t> out;
    out.reserve(verts.size());
    for (mdb::Vertex v : verts) out.push_back(g.label(side, v));
    return out;
}

nlohmann::json result_json(const mdb::BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                           const std::string& algo, const mdb::SolveResult& res) {
    nlohmann::json j;
    j["k"] = k;
    j["theta"] = theta;
    j["algo"] = algo;
    j["status"] = status_name(res.stats.status);
    j["edges"] = res.solution ? res.solution->edges : 0;
    j["left"] = res.solution ? to_labels(g, mdb::Side::Left, res.solution->left)
                             : std::vector<std::int64_t>{};
    j["right"] = res.solution ? to_labels(g, mdb::Side::Right, res.solution->right)
                              : std::vector<std::int64_t>{};
    j["stats"] = {
        {"branches", res.stats.branches},
        {"pruned_bounds", res.stats.pruned_by_bounds},
        {"rounds", res.stats.rounds},
        {"elapsed_ms", res.stats.elapsed_seconds * 1000.0},
        {"reductions",
         {{"cn_edges_removed", res.stats.reductions.cn_edges_removed},
          {"cn_vertices_removed", res.stats.reductions.cn_vertices_removed},
          {"one_non_neighbor_removed", res.stats.reductions.one_non_neighbor_removed},
          {"ordering_seeds", res.stats.reductions.ordering_seeds},
          {"red_i_removed", res.stats.reductions.red_i_removed}}},
    };
    return j;
}

void print_result(std::ostream& os, const mdb::BipartiteGraph& g, std::int64_t k,
                  std::int64_t theta, const std::string& algo, const mdb::SolveResult& res,
                  const std::string& output) {
    if (output == "json") {
        os << result_json(g, k, theta, algo, res).dump() << '\n';
        return;
    }
    os << "status: " << status_name(res.stats.status) << '\n';
    os << "k: " << k << "  theta: " << theta << "  algo: " << algo << '\n';
    os << "edges: " << (res.solution ? res.solution->edges : 0) << '\n';
    auto print_side = [&](const char* name, mdb::Side side, const std::vector<mdb::Vertex>& verts) {
        os << name << " (" << verts.size() << "):";
        for (std::int64_t label : to_labels(g, side, verts)) os << ' ' << label;
        os << '\n';
    };
    if (res.solution) {
        print_side("left", mdb::Side::Left, res.solution->left);
        print_side("right", mdb::Side::Right, res.solution->right);
    }
    os << "branches: " << res.stats.branches << "  pruned: " << res.stats.pruned_by_bounds
       << "  rounds: " << res.stats.rounds << "  reduction_events: " << res.stats.reductions.total()
       << "  elapsed_ms: " << res.stats.elapsed_seconds * 1000.0 << '\n';
}

mdb::Algorithm parse_algo(const std::string& name) {
    if (name == "bb") return mdb::Algorithm::Bb;
    if (name == "pivot") return mdb::Algorithm::Pivot;
    if (name == "baseline") return mdb::Algorithm::BaselineRandom;
    throw CLI::ValidationError("--algo", "expected bb, pivot or baseline");
}

void apply_disable_list(mdb::SolverConfig& cfg, const std::string& list) {
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "heur")
            cfg.use_heuristic = false;
        else if (item == "ub")
            cfg.use_upper_bounds = false;
        else if (item == "cnred")
            cfg.use_cn_reduce = false;
        else if (item == "onn")
            cfg.use_one_non_neighbor = false;
        else if (item == "order")
            cfg.use_ordering = false;
        else if (item == "pb")
            cfg.use_progressive = false;
        else
            throw CLI::ValidationError("--disable", "unknown technique: " + item);
    }
}

mdb::BipartiteGraph load_or_exit(const std::string& path, bool one_based) {
    mdb::LoadOptions opts;
    opts.one_based = one_based;
    return mdb::load_edge_list_file(path, opts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact maximum k-defective biclique search"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    std::string algo_str = "pivot";
    std::string disable_list;
    int threads = 1;
    int task_threshold = 0;
    double time_limit = 0.0;
    bool swap_sides = false;
    std::uint64_t seed = 12345;

    auto* solve = app.add_subcommand("solve", "Solve with the optimized driver");
    solve->add_option("graph", solve_args.graph_path, "edge-list file")->required();
    solve->add_option("--k", solve_args.k, "defect budget")->required();
    solve->add_option("--theta", solve_args.theta, "minimum side size")->required();
    solve->add_option("--algo", algo_str, "bb | pivot | baseline");
    solve->add_option("--threads", threads, "worker count");
    solve->add_option("--task-threshold", task_threshold, "max outstanding parallel tasks");
    solve->add_option("--time-limit", time_limit, "wall-clock budget in seconds");
    solve->add_option("--disable", disable_list, "comma list: heur,ub,cnred,onn,order,pb");
    solve->add_flag("--one-based", solve_args.one_based, "interpret vertex ids as 1-based");
    solve->add_flag("--swap-sides", swap_sides, "exchange the two sides before solving");
    solve->add_option("--seed", seed, "PRNG seed for baseline branching");
    solve->add_option("--output", solve_args.output, "text | json");

    CommonArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive check for small graphs");
    oracle->add_option("graph", oracle_args.graph_path, "edge-list file")->required();
    oracle->add_option("--k", oracle_args.k, "defect budget")->required();
    oracle->add_option("--theta", oracle_args.theta, "minimum side size")->required();
    oracle->add_flag("--one-based", oracle_args.one_based, "interpret vertex ids as 1-based");
    oracle->add_option("--output", oracle_args.output, "text | json");

    std::string gen_out;
    mdb::GenParams gen_params;
    std::string dist_str = "powerlaw";
    auto* gen = app.add_subcommand("gen", "Generate a synthetic bipartite graph");
    gen->add_option("output", gen_out, "output edge-list file")->required();
    gen->add_option("--n-left", gen_params.n_left, "left side size");
    gen->add_option("--n-right", gen_params.n_right, "right side size");
    gen->add_option("--density", gen_params.density, "target edge density in (0,1)")->required();
    gen->add_option("--dist", dist_str, "powerlaw | normal");
    gen->add_option("--exponent", gen_params.powerlaw_exponent, "power-law exponent");
    gen->add_option("--seed", gen_params.seed, "PRNG seed");

    std::string bench_graph, bench_algos = "pivot,bb", bench_ablate, bench_out_path;
    std::vector<std::int64_t> bench_k, bench_theta;
    int bench_repeats = 1;
    bool bench_one_based = false;
    auto* bench = app.add_subcommand("bench", "Run a (k, theta, algo, toggles) grid; CSV rows");
    bench->add_option("graph", bench_graph, "edge-list file")->required();
    bench->add_option("--k", bench_k, "k values")->required();
    bench->add_option("--theta", bench_theta, "theta values")->required();
    bench->add_option("--algos", bench_algos, "comma list of bb,pivot,baseline");
    bench->add_option("--ablations", bench_ablate,
                      "comma list of techniques to disable one at a time (heur,ub,cnred,onn,order,pb)");
    bench->add_option("--repeats", bench_repeats, "repetitions per row");
    bench->add_option("--threads", threads, "worker count");
    bench->add_option("--time-limit", time_limit, "per-run budget in seconds");
    bench->add_flag("--one-based", bench_one_based, "interpret vertex ids as 1-based");
    bench->add_option("--out", bench_out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) {
            if (solve_args.theta <= solve_args.k)
                throw mdb::ContractViolation("theta must be greater than k");
            mdb::SolverConfig cfg;
            cfg.k = solve_args.k;
            cfg.theta = solve_args.theta;
            cfg.algorithm = parse_algo(algo_str);
            cfg.threads = threads;
            cfg.task_threshold = task_threshold;
            if (time_limit > 0.0) cfg.time_limit_seconds = time_limit;
            cfg.swap_sides = swap_sides;
            cfg.seed = seed;
            apply_disable_list(cfg, disable_list);
            cfg.validate();

            auto g = load_or_exit(solve_args.graph_path, solve_args.one_based);
            auto res = mdb::solve_optimized(g, cfg);
            print_result(std::cout, g, cfg.k, cfg.theta, algo_str, res, solve_args.output);
            return res.stats.status == mdb::SolveStatus::TimeoutBestKnown ? kExitTimeout : kExitOk;
        }

        if (*oracle) {
            auto g = load_or_exit(oracle_args.graph_path, oracle_args.one_based);
            mdb::SolveResult res;
            res.solution = mdb::brute_force_mdb(g, oracle_args.k, oracle_args.theta);
            res.stats.status =
                res.solution ? mdb::SolveStatus::Optimal : mdb::SolveStatus::NoSolution;
            print_result(std::cout, g, oracle_args.k, oracle_args.theta, "oracle", res,
                         oracle_args.output);
            return kExitOk;
        }

        if (*gen) {
            if (dist_str == "powerlaw")
                gen_params.distribution = mdb::DegreeDistribution::PowerLaw;
            else if (dist_str == "normal")
                gen_params.distribution = mdb::DegreeDistribution::Normal;
            else
                throw mdb::ContractViolation("--dist expects powerlaw or normal");
            auto g = mdb::generate_bipartite(gen_params);
            std::ofstream out(gen_out);
            if (!out) {
                std::cerr << "cannot write " << gen_out << '\n';
                return kExitIo;
            }
            mdb::write_edge_list(g, out);
            std::cout << "wrote " << gen_out << ": " << g.n_left() << "x" << g.n_right() << ", "
                      << g.edge_count() << " edges\n";
            return kExitOk;
        }

        if (*bench) {
            auto g = load_or_exit(bench_graph, bench_one_based);
            std::ofstream file_out;
            std::ostream* os = &std::cout;
            if (!bench_out_path.empty()) {
                file_out.open(bench_out_path);
                if (!file_out) {
                    std::cerr << "cannot write " << bench_out_path << '\n';
                    return kExitIo;
                }
                os = &file_out;
            }

            std::vector<std::string> algos;
            {
                std::stringstream ss(bench_algos);
                std::string item;
                while (std::getline(ss, item, ',')) algos.push_back(item);
            }
            std::vector<std::string> toggle_sets = {""};
            if (!bench_ablate.empty()) {
                std::stringstream ss(bench_ablate);
                std::string item;
                while (std::getline(ss, item, ',')) toggle_sets.push_back(item);
            }

            *os << "graph,k,theta,algo,toggles,repeat,edges,status,elapsed_ms,branches,"
                   "pruned_bounds,reduction_events\n";
            for (std::int64_t k : bench_k)
                for (std::int64_t theta : bench_theta) {
                    if (theta <= k) continue;
                    for (const auto& algo : algos)
                        for (const auto& off : toggle_sets)
                            for (int rep = 0; rep < bench_repeats; ++rep) {
                                mdb::SolverConfig cfg;
                                cfg.k = k;
                                cfg.theta = theta;
                                cfg.algorithm = parse_algo(algo);
                                cfg.threads = threads;
                                if (time_limit > 0.0) cfg.time_limit_seconds = time_limit;
                                apply_disable_list(cfg, off);
                                auto res = mdb::solve_optimized(g, cfg);
                                *os << bench_graph << ',' << k << ',' << theta << ',' << algo << ','
                                    << (off.empty() ? "full" : "-" + off) << ',' << rep << ','
                                    << (res.solution ? res.solution->edges : 0) << ','
                                    << status_name(res.stats.status) << ','
                                    << res.stats.elapsed_seconds * 1000.0 << ','
                                    << res.stats.branches << ',' << res.stats.pruned_by_bounds
                                    << ',' << res.stats.reductions.total() << '\n';
                            }
                }
            return kExitOk;
        }
    } catch (const mdb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const mdb::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
