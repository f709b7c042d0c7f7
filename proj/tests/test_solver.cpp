#include <doctest.h>

#include <cmath>
#include <random>

#include "mdb/errors.hpp"
#include "mdb/gen.hpp"
#include "mdb/oracle.hpp"
#include "mdb/solver.hpp"
#include "support.hpp"

using namespace mdb;

namespace {

SolverConfig base_config(std::int64_t k, std::int64_t theta) {
    SolverConfig cfg;
    cfg.k = k;
    cfg.theta = theta;
    return cfg;
}

std::optional<std::int64_t> edges_of(const SolveResult& r) {
    if (!r.solution) return std::nullopt;
    return r.solution->edges;
}

std::optional<std::int64_t> oracle_edges(const BipartiteGraph& g, std::int64_t k,
                                         std::int64_t theta) {
    auto sol = brute_force_mdb(g, k, theta);
    if (!sol) return std::nullopt;
    return sol->edges;
}

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("solve_bb examples") {
    CHECK(edges_of(solve_bb(test::g1(), base_config(1, 2))) == 3);

    auto k33m = test::k33_minus_matching();
    CHECK(edges_of(solve_bb(k33m, base_config(1, 2))) == 3);
    CHECK(edges_of(solve_bb(k33m, base_config(2, 2))) == 4);
    CHECK_FALSE(edges_of(solve_bb(k33m, base_config(0, 2))).has_value());

    for (Vertex a = 2; a <= 4; ++a)
        for (Vertex b = 2; b <= 4; ++b)
            CHECK(edges_of(solve_bb(test::complete(a, b), base_config(1, 2))) == a * b);
}

TEST_CASE("solve_pivot examples") {
    CHECK_FALSE(edges_of(solve_pivot(test::g1(), base_config(0, 2))).has_value());
    CHECK(edges_of(solve_pivot(test::g1(), base_config(0, 1))) == 2);

    // The two-sub-instance pivot scenario reaches the same optimum as binary
    // branching.
    auto g = BipartiteGraph::from_edges(
        3, 4, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 3}});
    CHECK(edges_of(solve_pivot(g, base_config(2, 2))) == edges_of(solve_bb(g, base_config(2, 2))));
}

TEST_CASE("cores agree with the oracle and each other") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 120; ++it) {
        auto g = test::random_graph(rng, 6);
        for (std::int64_t k = 0; k <= 3; ++k) {
            std::int64_t theta = k + 1 + static_cast<std::int64_t>(rng() % 2);
            auto cfg = base_config(k, theta);
            auto want = oracle_edges(g, k, theta);
            auto bb = solve_bb(g, cfg);
            auto pv = solve_pivot(g, cfg);
            CHECK(edges_of(bb) == want);
            CHECK(edges_of(pv) == want);
            if (bb.solution) CHECK(test::solution_is_valid(g, *bb.solution, k, theta));
            if (pv.solution) CHECK(test::solution_is_valid(g, *pv.solution, k, theta));
        }
    }
}

TEST_CASE("pivot search is exact on every 3x3 graph") {
    for (std::uint32_t mask = 0; mask < (1u << 9); ++mask) {
        auto g = test::graph_from_mask(3, 3, mask);
        for (std::int64_t k = 0; k <= 2; ++k) {
            auto want = test::naive_best_edges(g, k, k + 1);
            auto got = edges_of(solve_pivot(g, base_config(k, k + 1)));
            CHECK(got == want);
        }
    }
}

TEST_CASE("optimized driver stays exact across toggle combinations") {
    std::mt19937_64 rng(2025);
    const bool bits[2] = {false, true};
    for (int it = 0; it < 40; ++it) {
        auto g = test::random_graph(rng, 6);
        std::int64_t k = static_cast<std::int64_t>(rng() % 3);
        std::int64_t theta = k + 1;
        auto want = oracle_edges(g, k, theta);
        for (int combo = 0; combo < 8; ++combo) {
            auto cfg = base_config(k, theta);
            cfg.use_heuristic = bits[combo & 1];
            cfg.use_upper_bounds = bits[(combo >> 1) & 1];
            cfg.use_cn_reduce = bits[(combo >> 2) & 1];
            cfg.use_one_non_neighbor = bits[combo & 1];
            cfg.use_ordering = bits[(combo >> 1) & 1];
            cfg.use_progressive = bits[(combo >> 2) & 1];
            cfg.algorithm = combo % 2 ? Algorithm::Bb : Algorithm::Pivot;
            CHECK(edges_of(solve_optimized(g, cfg)) == want);
        }
    }
}

TEST_CASE("all toggles off reduces to the pivot core exactly") {
    std::mt19937_64 rng(2026);
    for (int it = 0; it < 30; ++it) {
        auto g = test::random_graph(rng, 6);
        auto cfg = base_config(1, 2);
        auto plain = solve_pivot(g, cfg);
        cfg.disable_all_optimizations();
        auto opt = solve_optimized(g, cfg);
        CHECK(edges_of(opt) == edges_of(plain));
        CHECK(opt.stats.branches == plain.stats.branches);
    }
}

TEST_CASE("k=0 matches the dedicated biclique reference") {
    std::mt19937_64 rng(2027);
    for (int it = 0; it < 80; ++it) {
        auto g = test::random_graph(rng, 6);
        for (std::int64_t theta = 1; theta <= 3; ++theta) {
            auto want = test::biclique_best_edges(g, theta);
            CHECK(edges_of(solve_pivot(g, base_config(0, theta))) == want);
            CHECK(edges_of(solve_optimized(g, base_config(0, theta))) == want);
        }
    }
}

TEST_CASE("optimum is monotone in k and theta") {
    std::mt19937_64 rng(2028);
    for (int it = 0; it < 40; ++it) {
        auto g = test::random_graph(rng, 6);
        std::int64_t prev = 0;
        for (std::int64_t k = 0; k <= 3; ++k) {
            auto e = edges_of(solve_optimized(g, base_config(k, 4))).value_or(0);
            CHECK(e >= prev);
            prev = e;
        }
        std::int64_t prev_theta = INT64_MAX;
        for (std::int64_t theta = 2; theta <= 4; ++theta) {
            auto e = edges_of(solve_optimized(g, base_config(1, theta))).value_or(0);
            CHECK(e <= prev_theta);
            prev_theta = e;
        }
    }
}

TEST_CASE("baseline branching is exact and reproducible") {
    std::mt19937_64 rng(2029);
    for (int it = 0; it < 25; ++it) {
        auto g = test::random_graph(rng, 5);
        auto cfg = base_config(1, 2);
        cfg.algorithm = Algorithm::BaselineRandom;
        cfg.disable_all_optimizations();
        auto a = solve_optimized(g, cfg);
        auto b = solve_optimized(g, cfg);
        CHECK(edges_of(a) == oracle_edges(g, 1, 2));
        CHECK(edges_of(a) == edges_of(b));
        CHECK(a.stats.branches == b.stats.branches);
    }
}

TEST_CASE("thread counts do not change the answer") {
    std::mt19937_64 rng(2030);
    for (int it = 0; it < 15; ++it) {
        auto g = test::random_graph(rng, 6);
        auto cfg = base_config(2, 3);
        auto seq = solve_optimized(g, cfg);
        cfg.threads = 2;
        auto par = solve_optimized(g, cfg);
        CHECK(edges_of(seq) == edges_of(par));
    }

    GenParams p;
    p.n_left = p.n_right = 40;
    p.density = 0.15;
    p.seed = 9;
    auto g = generate_bipartite(p);
    auto cfg = base_config(1, 3);
    auto seq = solve_optimized(g, cfg);
    cfg.threads = 4;
    auto par = solve_optimized(g, cfg);
    CHECK(edges_of(seq) == edges_of(par));
}

TEST_CASE("swap_sides flips the reported orientation only") {
    auto g = BipartiteGraph::from_edges(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}});
    auto cfg = base_config(1, 2);
    auto plain = solve_optimized(g, cfg);
    cfg.swap_sides = true;
    auto swapped = solve_optimized(g, cfg);
    REQUIRE(plain.solution.has_value());
    REQUIRE(swapped.solution.has_value());
    CHECK(plain.solution->edges == swapped.solution->edges);
    CHECK(test::solution_is_valid(g, *swapped.solution, 1, 2));
}

TEST_CASE("time limit returns best-known with the timeout status") {
    GenParams p;
    p.n_left = p.n_right = 60;
    p.density = 0.3;
    p.seed = 4;
    auto g = generate_bipartite(p);
    auto cfg = base_config(3, 4);
    cfg.disable_all_optimizations();
    cfg.time_limit_seconds = 0.05;
    auto res = solve_optimized(g, cfg);
    CHECK(res.stats.status == SolveStatus::TimeoutBestKnown);
    CHECK(res.stats.elapsed_seconds < 5.0);
}

TEST_CASE("prune hook fires and bounds dominate pruned completions") {
    std::mt19937_64 rng(2031);
    int checked = 0;
    for (int it = 0; it < 25; ++it) {
        auto g = test::random_graph(rng, 6);
        auto cfg = base_config(2, 3);
        cfg.use_ordering = false;
        cfg.use_progressive = false;
        cfg.on_prune = [&](const SearchInstance& inst, const BoundTriple& b) {
            auto truth = test::best_completion(inst.graph(), inst.defect_budget(),
                                               inst.partial(Side::Left), inst.partial(Side::Right),
                                               inst.candidates(Side::Left),
                                               inst.candidates(Side::Right));
            CHECK(b.ub_edges >= truth.edges);
            CHECK(b.ub_left >= truth.max_left);
            CHECK(b.ub_right >= truth.max_right);
            ++checked;
        };
        solve_optimized(g, cfg);
    }
    CHECK(checked > 0);
}

TEST_CASE("branching factors") {
    CHECK(branching_factor(1, BranchingVariant::Alpha) == doctest::Approx(1.911).epsilon(0.001));
    CHECK(branching_factor(2, BranchingVariant::Alpha) == doctest::Approx(1.979).epsilon(0.001));
    CHECK(branching_factor(3, BranchingVariant::Alpha) == doctest::Approx(1.995).epsilon(0.001));
    CHECK(branching_factor(1, BranchingVariant::Beta) == doctest::Approx(1.717).epsilon(0.001));
    CHECK(branching_factor(2, BranchingVariant::Beta) == doctest::Approx(1.856).epsilon(0.001));
    CHECK(branching_factor(3, BranchingVariant::Beta) == doctest::Approx(1.931).epsilon(0.001));

    CHECK(branching_factor(0, BranchingVariant::Alpha) == doctest::Approx(1.618).epsilon(0.001));
    CHECK(branching_factor(0, BranchingVariant::Beta) == doctest::Approx(1.414).epsilon(0.001));

    for (int k = 1; k <= 6; ++k) {
        double alpha = branching_factor(k, BranchingVariant::Alpha);
        double beta = branching_factor(k, BranchingVariant::Beta);
        CHECK(beta < alpha);
        CHECK(alpha < 2.0);
        CHECK(beta > 1.0);
    }
}

TEST_CASE("config validation") {
    auto g = test::g1();
    CHECK_THROWS_AS(solve_optimized(g, base_config(-1, 2)), ContractViolation);
    CHECK_THROWS_AS(solve_optimized(g, base_config(1, 0)), ContractViolation);
    auto bad_threads = base_config(1, 2);
    bad_threads.threads = 0;
    CHECK_THROWS_AS(solve_optimized(g, bad_threads), ContractViolation);

    // theta <= k is allowed at the library level; the whole graph qualifies.
    CHECK(edges_of(solve_optimized(g, base_config(1, 1))) == 3);
    CHECK(edges_of(solve_optimized(g, base_config(2, 2))) == 3);
}

TEST_SUITE_END();
