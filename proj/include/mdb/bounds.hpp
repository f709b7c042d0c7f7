#ifndef MDB_BOUNDS_HPP
#define MDB_BOUNDS_HPP

#include <cstdint>
#include <vector>

#include "mdb/instance.hpp"

namespace mdb {

/// Upper bounds on what any completion of an instance can still reach.
struct BoundTriple {
    std::int64_t ub_left = 0;
    std::int64_t ub_right = 0;
    std::int64_t ub_edges = 0;
};

/// Size thresholds a search round is allowed to assume on the two sides.
struct ThresholdPair {
    std::int64_t theta_u = 0;
    std::int64_t theta_v = 0;

    friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

/// Reusable scratch buffers for upper_bounds; avoids per-node allocation.
struct BoundsWorkspace {
    std::vector<std::int64_t> bucket;
    std::vector<std::int64_t> prefix_left;
    std::vector<std::int64_t> prefix_right;
};

/// Vertex and edge upper bounds for any solution derived from the instance.
///
/// Candidates on each side are ordered by ascending non-degree to S (bucket
/// sort); the side bounds take the longest prefix that fits the remaining
/// defect budget, and the edge bound maximizes
///   (|U_S|+i)(|V_S|+j) - |nonedges(S)| - ndsum_U(i) - ndsum_V(j)
/// over prefix pairs (i, j) that jointly fit the budget, via one two-pointer
/// scan. Runs in O(|S| + |C|).
BoundTriple upper_bounds(const SearchInstance& inst, BoundsWorkspace& ws);
BoundTriple upper_bounds(const SearchInstance& inst);

/// True when the bounds show the instance cannot reach the active size
/// thresholds or cannot strictly beat the incumbent edge count.
inline bool can_prune(const BoundTriple& bounds, const ThresholdPair& thresholds,
                      std::int64_t best_edges) {
    return bounds.ub_left < thresholds.theta_u || bounds.ub_right < thresholds.theta_v ||
           bounds.ub_edges <= best_edges;
}

}  // namespace mdb

#endif
