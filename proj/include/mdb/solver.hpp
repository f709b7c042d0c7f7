#ifndef MDB_SOLVER_HPP
#define MDB_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "mdb/bounds.hpp"
#include "mdb/graph.hpp"
#include "mdb/instance.hpp"
#include "mdb/solution.hpp"

namespace mdb {

enum class Algorithm { Bb, Pivot, BaselineRandom };
enum class SolveStatus { Optimal, NoSolution, TimeoutBestKnown };

/// Per-technique instrumentation counters.
struct ReductionStats {
    std::int64_t cn_edges_removed = 0;
    std::int64_t cn_vertices_removed = 0;
    std::int64_t one_non_neighbor_removed = 0;
    std::int64_t ordering_seeds = 0;
    std::int64_t red_i_removed = 0;

    std::int64_t total() const {
        return cn_edges_removed + cn_vertices_removed + one_non_neighbor_removed + ordering_seeds +
               red_i_removed;
    }
};

struct SolverStats {
    std::int64_t branches = 0;
    std::int64_t pruned_by_bounds = 0;
    ReductionStats reductions;
    int rounds = 0;
    double elapsed_seconds = 0.0;
    SolveStatus status = SolveStatus::NoSolution;
};

/// Debug hook invoked for every node discarded by the bound check.
using PruneHook = std::function<void(const SearchInstance&, const BoundTriple&)>;

struct SolverConfig {
    std::int64_t k = 1;
    std::int64_t theta = 2;
    Algorithm algorithm = Algorithm::Pivot;

    bool use_heuristic = true;
    bool use_upper_bounds = true;
    bool use_cn_reduce = true;
    bool use_one_non_neighbor = true;
    bool use_ordering = true;
    bool use_progressive = true;

    int threads = 1;
    int task_threshold = 0;  // outstanding-task cap; 0 means 4 * threads
    std::optional<double> time_limit_seconds;
    bool swap_sides = false;
    std::uint64_t seed = 12345;  // baseline branching only

    PruneHook on_prune;

    void validate() const;
    void disable_all_optimizations() {
        use_heuristic = use_upper_bounds = use_cn_reduce = use_one_non_neighbor = use_ordering =
            use_progressive = false;
    }
};

struct SolveResult {
    std::optional<Solution> solution;
    SolverStats stats;
};

/// Plain branch-and-bound with the binary branching strategy; no reductions,
/// bounds, or heuristic.
SolveResult solve_bb(const BipartiteGraph& g, const SolverConfig& cfg);

/// Plain search with the pivoting-based branching strategy; no reductions,
/// bounds, or heuristic.
SolveResult solve_pivot(const BipartiteGraph& g, const SolverConfig& cfg);

/// Full driver: heuristic seed, progressive threshold rounds, parallel
/// common-neighbor reduction, ordering-based sub-searches with the seed
/// filter, bound pruning and exclusion-side pruning in the recursion, and
/// a worker pool. Each technique honors its config toggle; with everything
/// off this is exactly the configured core algorithm.
SolveResult solve_optimized(const BipartiteGraph& g, const SolverConfig& cfg);

enum class BranchingVariant { Alpha, Beta };

/// Worst-case branching factor: the largest real root in (1, 2) of the
/// characteristic polynomial of the chosen strategy's recurrence, located by
/// bisection to 1e-9. k = 0 degenerates to the golden ratio (alpha) and
/// sqrt(2) (beta).
double branching_factor(int k, BranchingVariant variant);

}  // namespace mdb

#endif
