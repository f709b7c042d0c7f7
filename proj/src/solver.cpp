#include "mdb/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "mdb/errors.hpp"
#include "mdb/heuristic.hpp"
#include "mdb/reduce.hpp"

namespace mdb {

void SolverConfig::validate() const {
    if (k < 0) throw ContractViolation("k must be nonnegative");
    if (theta < 1) throw ContractViolation("theta must be positive");
    if (threads < 1) throw ContractViolation("threads must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

/// Shared incumbent. Readers take the relaxed edge count; stale reads only
/// weaken pruning.
class BestRegister {
public:
    std::int64_t edges() const { return edges_.load(std::memory_order_relaxed); }

    void offer(Solution sol) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!has_ || sol.edges > sol_.edges) {
            sol_ = std::move(sol);
            has_ = true;
            edges_.store(sol_.edges, std::memory_order_relaxed);
        }
    }

    std::optional<Solution> take() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!has_) return std::nullopt;
        return sol_;
    }

private:
    mutable std::mutex mu_;
    std::atomic<std::int64_t> edges_{0};
    Solution sol_;
    bool has_ = false;
};

struct SharedStats {
    std::atomic<std::int64_t> branches{0};
    std::atomic<std::int64_t> pruned_by_bounds{0};
    std::atomic<std::int64_t> onn_removed{0};
};

/// Fire-and-forget worker pool with a global outstanding-task cap. Tasks may
/// submit tasks; nobody blocks on a child, so there is no completion cycle.
class TaskPool {
public:
    TaskPool(int workers, int max_outstanding) : max_outstanding_(max_outstanding) {
        for (int i = 0; i < workers; ++i) workers_.emplace_back([this] { worker_loop(); });
    }

    ~TaskPool() {
        {
            std::lock_guard<std::mutex> lock(mu_);
            stop_ = true;
        }
        cv_work_.notify_all();
        for (auto& t : workers_) t.join();
    }

    bool below_cap() const { return outstanding_hint_.load(std::memory_order_relaxed) < max_outstanding_; }

    bool try_submit(std::function<void()> fn) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (outstanding_ >= max_outstanding_) return false;
            ++outstanding_;
            outstanding_hint_.store(outstanding_, std::memory_order_relaxed);
            queue_.push_back(std::move(fn));
        }
        cv_work_.notify_one();
        return true;
    }

    void wait_idle() {
        std::unique_lock<std::mutex> lock(mu_);
        cv_idle_.wait(lock, [this] { return outstanding_ == 0; });
    }

private:
    void worker_loop() {
        for (;;) {
            std::function<void()> fn;
            {
                std::unique_lock<std::mutex> lock(mu_);
                cv_work_.wait(lock, [this] { return stop_ || !queue_.empty(); });
                if (queue_.empty()) return;
                fn = std::move(queue_.front());
                queue_.pop_front();
            }
            fn();
            {
                std::lock_guard<std::mutex> lock(mu_);
                --outstanding_;
                outstanding_hint_.store(outstanding_, std::memory_order_relaxed);
                if (outstanding_ == 0) cv_idle_.notify_all();
            }
        }
    }

    const int max_outstanding_;
    std::mutex mu_;
    std::condition_variable cv_work_;
    std::condition_variable cv_idle_;
    std::deque<std::function<void()>> queue_;
    int outstanding_ = 0;
    std::atomic<int> outstanding_hint_{0};
    bool stop_ = false;
    std::vector<std::thread> workers_;
};

struct SearchContext {
    const SolverConfig* cfg = nullptr;
    BestRegister* best = nullptr;
    SharedStats* stats = nullptr;
    TaskPool* pool = nullptr;
    std::atomic<bool>* timed_out = nullptr;
    bool has_deadline = false;
    Clock::time_point deadline;
};

/// One search round's graph plus the map back to base-graph indices.
struct RoundContext {
    const BipartiteGraph* graph = nullptr;
    const std::vector<Vertex>* map_left = nullptr;  // null: identity
    const std::vector<Vertex>* map_right = nullptr;
    ThresholdPair prune_thresholds;
};

struct InstanceSnapshot {
    std::vector<Vertex> partial_left, partial_right, cand_left, cand_right;

    explicit InstanceSnapshot(const SearchInstance& inst) {
        auto copy = [](std::span<const Vertex> s) { return std::vector<Vertex>(s.begin(), s.end()); };
        partial_left = copy(inst.partial(Side::Left));
        partial_right = copy(inst.partial(Side::Right));
        cand_left = copy(inst.candidates(Side::Left));
        cand_right = copy(inst.candidates(Side::Right));
    }
};

class Searcher {
public:
    Searcher(const SearchContext& ctx, const RoundContext& round)
        : ctx_(ctx), round_(round), rng_(ctx.cfg->seed) {}

    void run(SearchInstance& inst) {
        const SolverConfig& cfg = *ctx_.cfg;
        ctx_.stats->branches.fetch_add(1, std::memory_order_relaxed);

        if (ctx_.timed_out->load(std::memory_order_relaxed)) return;
        if (ctx_.has_deadline && Clock::now() >= ctx_.deadline) {
            ctx_.timed_out->store(true, std::memory_order_relaxed);
            return;
        }

        if (inst.candidate_size(Side::Left) == 0 || inst.candidate_size(Side::Right) == 0) {
            // One side is settled, so the other side has no interactions of
            // its own: the optimal completion is a smallest-non-degree prefix
            // and can be taken in closed form instead of branching per vertex.
            record_exhausted_side(inst);
            return;
        }

        if (cfg.use_upper_bounds) {
            BoundTriple b = upper_bounds(inst, ws_);
            if (can_prune(b, round_.prune_thresholds, ctx_.best->edges())) {
                ctx_.stats->pruned_by_bounds.fetch_add(1, std::memory_order_relaxed);
                if (cfg.on_prune) cfg.on_prune(inst, b);
                return;
            }
        }

        BranchPlan plan = make_plan(inst);
        if (plan.kind == BranchPlan::Kind::Binary) {
            const VertexRef u = plan.branching_vertex;
            {
                auto token = inst.update_after_add(u);
                descend(inst);
                inst.rollback(token);
            }
            const bool onn = cfg.use_one_non_neighbor &&
                             inst.nd_to_partial(u) + inst.nd_to_candidates(u) == 1;
            auto token = inst.remove_candidate(u);
            if (onn) {
                auto removed = one_non_neighbor_prune(inst, u);
                ctx_.stats->onn_removed.fetch_add(static_cast<std::int64_t>(removed.size()),
                                                  std::memory_order_relaxed);
            }
            descend(inst);
            inst.rollback(token);
        } else {
            auto token = inst.checkpoint();
            for (VertexRef v : plan.fan) {
                auto inner = inst.update_after_add(v);
                descend(inst);
                inst.rollback(inner);
                inst.remove_candidate(v);
            }
            inst.rollback(token);
        }
    }

private:
    BranchPlan make_plan(const SearchInstance& inst) {
        switch (ctx_.cfg->algorithm) {
            case Algorithm::Bb:
                return BranchPlan{BranchPlan::Kind::Binary, inst.select_binary_branching_vertex(), {}};
            case Algorithm::Pivot:
                return inst.select_pivot_branching();
            case Algorithm::BaselineRandom: {
                std::int64_t total = inst.candidate_total();
                std::int64_t r = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(total));
                Vertex nl = inst.candidate_size(Side::Left);
                VertexRef u = r < nl ? VertexRef{Side::Left, inst.candidates(Side::Left)[static_cast<std::size_t>(r)]}
                                     : VertexRef{Side::Right, inst.candidates(Side::Right)[static_cast<std::size_t>(r - nl)]};
                return BranchPlan{BranchPlan::Kind::Binary, u, {}};
            }
        }
        throw ContractViolation("unknown algorithm");
    }

    void offer_solution(const SearchInstance& inst, std::span<const Vertex> extra, Side extra_side,
                        std::int64_t edges) {
        Solution sol;
        sol.edges = edges;
        auto remap = [](std::vector<Vertex> out, const std::vector<Vertex>* map) {
            if (map)
                for (Vertex& v : out) v = (*map)[static_cast<std::size_t>(v)];
            std::sort(out.begin(), out.end());
            return out;
        };
        std::vector<Vertex> left(inst.partial(Side::Left).begin(), inst.partial(Side::Left).end());
        std::vector<Vertex> right(inst.partial(Side::Right).begin(),
                                  inst.partial(Side::Right).end());
        (extra_side == Side::Left ? left : right).insert(
            (extra_side == Side::Left ? left : right).end(), extra.begin(), extra.end());
        sol.left = remap(std::move(left), round_.map_left);
        sol.right = remap(std::move(right), round_.map_right);
        ctx_.best->offer(std::move(sol));
    }

    // Best completion when at most one candidate side is populated: for any
    // target size the cheapest vertices by non-degree to S dominate, so one
    // sorted prefix scan is exact.
    void record_exhausted_side(const SearchInstance& inst) {
        const SolverConfig& cfg = *ctx_.cfg;
        const Side open = inst.candidate_size(Side::Left) > 0 ? Side::Left : Side::Right;
        const Side fixed = opposite(open);
        const std::int64_t fixed_count = inst.partial_size(fixed);

        scratch_sorted_.assign(inst.candidates(open).begin(), inst.candidates(open).end());
        std::sort(scratch_sorted_.begin(), scratch_sorted_.end(), [&](Vertex a, Vertex b) {
            auto na = inst.nd_to_partial({open, a}), nb = inst.nd_to_partial({open, b});
            if (na != nb) return na < nb;
            return a < b;
        });

        std::int64_t base = inst.partial_size(open);
        std::int64_t non_edges = inst.non_edges();
        std::int64_t best_edges = -1;
        std::size_t best_take = 0;

        auto consider = [&](std::int64_t size_open, std::int64_t ne, std::size_t take) {
            std::int64_t edges = size_open * fixed_count - ne;
            std::int64_t left_sz = open == Side::Left ? size_open : fixed_count;
            std::int64_t right_sz = open == Side::Left ? fixed_count : size_open;
            if (left_sz < cfg.theta || right_sz < cfg.theta) return;
            if (edges > best_edges) {
                best_edges = edges;
                best_take = take;
            }
        };
        consider(base, non_edges, 0);
        for (std::size_t i = 0; i < scratch_sorted_.size(); ++i) {
            non_edges += inst.nd_to_partial({open, scratch_sorted_[i]});
            if (non_edges > inst.defect_budget()) break;
            consider(base + static_cast<std::int64_t>(i) + 1, non_edges, i + 1);
        }

        if (best_edges > ctx_.best->edges())
            offer_solution(inst, {scratch_sorted_.data(), best_take}, open, best_edges);
    }

    // Recurse inline, or hand the sub-instance to the pool while the global
    // outstanding-task count is under the cap.
    void descend(SearchInstance& inst) {
        if (ctx_.pool && ctx_.pool->below_cap()) {
            InstanceSnapshot snap(inst);
            SearchContext ctx = ctx_;
            RoundContext round = round_;
            const BipartiteGraph* g = round_.graph;
            std::int64_t k = inst.defect_budget();
            bool queued = ctx_.pool->try_submit([ctx, round, g, k, snap = std::move(snap)] {
                SearchInstance clone(*g, k, snap.partial_left, snap.partial_right, snap.cand_left,
                                     snap.cand_right);
                Searcher child(ctx, round);
                child.run(clone);
            });
            if (queued) return;
        }
        run(inst);
    }

    SearchContext ctx_;
    RoundContext round_;
    BoundsWorkspace ws_;
    std::vector<Vertex> scratch_sorted_;
    std::mt19937_64 rng_;
};

struct EngineResult {
    std::optional<Solution> solution;
    SolverStats stats;
};

EngineResult run_engine(const BipartiteGraph& base, const SolverConfig& cfg) {
    const auto t0 = Clock::now();

    BestRegister best;
    SharedStats shared;
    std::atomic<bool> timed_out{false};

    std::optional<TaskPool> pool;
    if (cfg.threads > 1) {
        int cap = cfg.task_threshold > 0 ? cfg.task_threshold : 4 * cfg.threads;
        pool.emplace(cfg.threads, cap);
    }

    SearchContext ctx;
    ctx.cfg = &cfg;
    ctx.best = &best;
    ctx.stats = &shared;
    ctx.pool = pool ? &*pool : nullptr;
    ctx.timed_out = &timed_out;
    if (cfg.time_limit_seconds) {
        ctx.has_deadline = true;
        ctx.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(*cfg.time_limit_seconds));
    }

    SolverStats stats;

    if (cfg.use_heuristic) {
        if (auto h = greedy_initial(base, cfg.k, cfg.theta)) best.offer(std::move(*h));
    }

    auto run_round = [&](const ThresholdPair& pair) {
        ++stats.rounds;

        ReducedGraph reduced;
        RoundContext round;
        round.prune_thresholds = pair;
        round.graph = &base;
        if (cfg.use_cn_reduce) {
            reduced = cn_reduce(base, cfg.k, std::min(pair.theta_u, pair.theta_v), false,
                                cfg.threads);
            stats.reductions.cn_edges_removed += reduced.edges_removed;
            stats.reductions.cn_vertices_removed += reduced.vertices_removed;
            round.graph = &reduced.graph;
            round.map_left = &reduced.kept_left;
            round.map_right = &reduced.kept_right;
        }
        const BipartiteGraph& rg = *round.graph;

        if (cfg.use_ordering) {
            auto order = descending_degree_order(rg);
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (timed_out.load(std::memory_order_relaxed)) break;
                InstanceSeed seed = ordering_seed(rg, order, i);
                stats.reductions.red_i_removed += static_cast<std::int64_t>(
                    red_i(rg, seed.seed_left, pair, cfg.k, seed.cand_left, seed.cand_right));
                ++stats.reductions.ordering_seeds;

                auto solve_seed = [&ctx, &round, &rg, &cfg, seed = std::move(seed)] {
                    std::array<Vertex, 1> s_left = {seed.seed_left};
                    SearchInstance inst(rg, cfg.k, s_left, {}, seed.cand_left, seed.cand_right);
                    Searcher searcher(ctx, round);
                    searcher.run(inst);
                };
                if (!pool || !pool->try_submit(solve_seed)) solve_seed();
            }
        } else {
            SearchInstance inst(rg, cfg.k);
            Searcher searcher(ctx, round);
            searcher.run(inst);
        }
        if (pool) pool->wait_idle();
    };

    if (cfg.use_progressive) {
        std::int64_t max_right_degree = 0;
        for (Vertex v = 0; v < base.n_right(); ++v)
            max_right_degree = std::max<std::int64_t>(max_right_degree, base.degree(Side::Right, v));
        // Every right vertex of a solution misses at most k left partners,
        // so no solution's left side can exceed this.
        std::int64_t theta_u_prev = std::min<std::int64_t>(base.n_left(), max_right_degree + cfg.k);
        if (theta_u_prev >= cfg.theta) {
            do {
                ThresholdPair pair;
                pair.theta_v = std::max(cfg.theta, best.edges() / theta_u_prev);
                pair.theta_u = std::max(cfg.theta, theta_u_prev / 2);
                run_round(pair);
                theta_u_prev = pair.theta_u;
            } while (theta_u_prev > cfg.theta && !timed_out.load(std::memory_order_relaxed));
        }
    } else {
        run_round(ThresholdPair{cfg.theta, cfg.theta});
    }

    EngineResult out;
    out.solution = best.take();
    stats.branches = shared.branches.load();
    stats.pruned_by_bounds = shared.pruned_by_bounds.load();
    stats.reductions.one_non_neighbor_removed = shared.onn_removed.load();
    stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    stats.status = timed_out.load() ? SolveStatus::TimeoutBestKnown
                   : out.solution   ? SolveStatus::Optimal
                                    : SolveStatus::NoSolution;
    out.stats = stats;
    return out;
}

SolveResult run_solve(const BipartiteGraph& input, const SolverConfig& cfg0) {
    cfg0.validate();
    SolverConfig cfg = cfg0;
    if (cfg.theta <= cfg.k) {
        // Solutions may be disconnected in this regime; the techniques whose
        // safety arguments rely on theta > k stay off. The core search and
        // the threshold-free bounds remain exact.
        cfg.use_heuristic = false;
        cfg.use_cn_reduce = false;
        cfg.use_ordering = false;
        cfg.use_progressive = false;
    }
    BipartiteGraph swapped;
    const BipartiteGraph* base = &input;
    if (cfg.swap_sides) {
        swapped = input.transposed();
        base = &swapped;
    }

    EngineResult engine = run_engine(*base, cfg);

    SolveResult result;
    result.stats = engine.stats;
    if (engine.solution) {
        if (cfg.swap_sides) std::swap(engine.solution->left, engine.solution->right);
        result.solution = std::move(engine.solution);
    }
    return result;
}

}  // namespace

SolveResult solve_bb(const BipartiteGraph& g, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.algorithm = Algorithm::Bb;
    c.disable_all_optimizations();
    return run_solve(g, c);
}

SolveResult solve_pivot(const BipartiteGraph& g, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.algorithm = Algorithm::Pivot;
    c.disable_all_optimizations();
    return run_solve(g, c);
}

SolveResult solve_optimized(const BipartiteGraph& g, const SolverConfig& cfg) {
    return run_solve(g, cfg);
}

double branching_factor(int k, BranchingVariant variant) {
    if (k < 0) throw ContractViolation("k must be nonnegative");
    if (k == 0) return variant == BranchingVariant::Alpha ? (1.0 + std::sqrt(5.0)) / 2.0
                                                          : std::sqrt(2.0);

    auto f = [&](double x) {
        double head = std::pow(x, 2 * k + 5) - 2.0 * std::pow(x, 2 * k + 4);
        if (variant == BranchingVariant::Alpha) return head + x * x * x - x * x + 1.0;
        return head + std::pow(x, k + 3) - 2.0 * x + 2.0;
    };

    // f(2) > 0 for both families; walk down until the sign flips, then bisect.
    const double step = 1e-4;
    double hi = 2.0;
    double lo = hi - step;
    while (lo > 1.0 && f(lo) > 0.0) {
        hi = lo;
        lo -= step;
    }
    if (lo <= 1.0) throw ContractViolation("no branching-factor root located in (1, 2)");
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace mdb
