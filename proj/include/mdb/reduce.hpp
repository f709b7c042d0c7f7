#ifndef MDB_REDUCE_HPP
#define MDB_REDUCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdb/bounds.hpp"
#include "mdb/graph.hpp"
#include "mdb/instance.hpp"

namespace mdb {

/// A reduced graph plus the maps back to the input graph's vertex indices.
struct ReducedGraph {
    BipartiteGraph graph;
    std::vector<Vertex> kept_left;
    std::vector<Vertex> kept_right;
    std::int64_t edges_removed = 0;
    std::int64_t vertices_removed = 0;
};

/// Common-neighbor reduction sweep.
///
/// Walks all vertices in ascending degree order; an edge (u,v) is dropped
/// when v has fewer than theta-k neighbors w with cn(u,w) >= theta-k, and a
/// vertex is dropped when its degree falls below theta-k. One sweep per call
/// unless to_fixpoint is set. With threads > 1 the per-vertex scan marks
/// edges against a snapshot and deletions commit sequentially.
/// Any optimum with both sides >= theta survives.
ReducedGraph cn_reduce(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                       bool to_fixpoint = false, int threads = 1);

/// One-non-neighbor pruning, applied right after a binary exclude-branch.
///
/// Precondition: `removed` was just dropped from C and had exactly one
/// non-neighbor across S and C at that moment. Prunes every same-side
/// candidate with a non-neighbor in S; when the unique non-neighbor sits in
/// C, also prunes that vertex's candidate non-neighbors. Any strictly better
/// solution avoiding `removed` is preserved (ones using it belong to the
/// sibling branch). Returns the removed vertices; the caller's checkpoint
/// covers them.
std::vector<VertexRef> one_non_neighbor_prune(SearchInstance& inst, VertexRef removed);

/// Seed data for one ordering-based sub-search: the seed vertex plus the
/// candidate sets restricted to its distance-3 neighborhood, later-ordered
/// vertices only on the left.
struct InstanceSeed {
    Vertex seed_left = 0;
    std::size_t order_pos = 0;
    std::vector<Vertex> cand_left;
    std::vector<Vertex> cand_right;
};

/// Left vertices sorted by descending degree, ties to the smaller index.
std::vector<Vertex> descending_degree_order(const BipartiteGraph& g);

/// Builds the seed for position `pos` of the order: S = ({u}, {}),
/// C = (two-hop neighbors after u, their neighborhoods plus N(u)).
InstanceSeed ordering_seed(const BipartiteGraph& g, std::span<const Vertex> order, std::size_t pos);

/// All ordering seeds for the descending-degree order. The union of optima
/// over the seeds (seed i excluding all earlier seed vertices) covers the
/// global optimum.
std::vector<InstanceSeed> ordering_instances(const BipartiteGraph& g);

/// Next progressive-bounding round: theta_v from the previous theta_u and
/// the incumbent edge count, then theta_u halves (both floored at theta).
/// Empty once the previous round already ran at theta_u == theta.
std::optional<ThresholdPair> progressive_thresholds(const ThresholdPair& prev,
                                                    std::int64_t best_edges, std::int64_t theta);

/// Threshold filter for an ordering seed: left candidates need
/// cn(seed, v) >= theta_v - k, right candidates need degree >= theta_u - k.
/// Returns the number of candidates dropped.
std::size_t red_i(const BipartiteGraph& g, Vertex seed_left, const ThresholdPair& thresholds,
                  std::int64_t k, std::vector<Vertex>& cand_left, std::vector<Vertex>& cand_right);

}  // namespace mdb

#endif
