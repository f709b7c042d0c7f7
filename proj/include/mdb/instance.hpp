#ifndef MDB_INSTANCE_HPP
#define MDB_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mdb/graph.hpp"

namespace mdb {

/// How a node splits into sub-instances.
struct BranchPlan {
    enum class Kind { Binary, PivotFan };

    Kind kind = Kind::Binary;
    /// Binary: the branching vertex (include branch, then exclude branch).
    VertexRef branching_vertex;
    /// PivotFan: the pivot followed by its candidate non-neighbors in
    /// ascending (side, index) order. Produces fan.size() sub-instances,
    /// the i-th excluding all earlier fan members.
    std::vector<VertexRef> fan;
};

/// Branch-and-bound state over a partial set S and a candidate set C.
///
/// Every vertex of the working graph is in exactly one of three places:
/// the partial set, the candidate set, or excluded. Neighbor counts into S
/// and C are maintained incrementally so non-degrees are O(1) reads. All
/// mutations append to an undo trail; rollback restores any earlier
/// checkpoint under LIFO discipline.
///
/// Maintained invariants:
///   - non_edges() <= k at all times.
///   - every candidate v satisfies non_edges() + nd_to_partial(v) <= k.
class SearchInstance {
public:
    using Checkpoint = std::size_t;

    /// Root state: S empty, C = every vertex of g.
    SearchInstance(const BipartiteGraph& g, std::int64_t k);

    /// State seeded with explicit partial/candidate sets. Candidates that
    /// could not extend the partial set within budget are dropped up front.
    SearchInstance(const BipartiteGraph& g, std::int64_t k, std::span<const Vertex> partial_left,
                   std::span<const Vertex> partial_right, std::span<const Vertex> cand_left,
                   std::span<const Vertex> cand_right);

    const BipartiteGraph& graph() const { return *g_; }
    std::int64_t defect_budget() const { return k_; }

    std::int64_t non_edges() const { return non_edges_in_s_; }
    Vertex partial_size(Side s) const { return static_cast<Vertex>(partial_[side_index(s)].size()); }
    Vertex candidate_size(Side s) const { return cand_size_[side_index(s)]; }
    Vertex candidate_total() const { return cand_size_[0] + cand_size_[1]; }
    std::span<const Vertex> partial(Side s) const { return partial_[side_index(s)]; }
    std::span<const Vertex> candidates(Side s) const {
        return {cand_[side_index(s)].data(), static_cast<std::size_t>(cand_size_[side_index(s)])};
    }

    bool in_candidates(VertexRef v) const { return state_of(v) == State::Candidate; }
    bool in_partial(VertexRef v) const { return state_of(v) == State::Partial; }

    /// Count of v's opposite-side non-neighbors inside S.
    std::int64_t nd_to_partial(VertexRef v) const {
        return partial_size(opposite(v.side)) - deg_s_[side_index(v.side)][static_cast<std::size_t>(v.index)];
    }
    /// Count of v's opposite-side non-neighbors inside C.
    std::int64_t nd_to_candidates(VertexRef v) const {
        return candidate_size(opposite(v.side)) - deg_c_[side_index(v.side)][static_cast<std::size_t>(v.index)];
    }

    /// Edge count of the subgraph induced by S.
    std::int64_t partial_edges() const {
        return static_cast<std::int64_t>(partial_size(Side::Left)) * partial_size(Side::Right) -
               non_edges_in_s_;
    }

    Checkpoint checkpoint() const { return trail_.size(); }

    /// Moves u from C into S and refreshes the candidate set: candidates that
    /// no longer fit the remaining defect budget are dropped, then candidates
    /// with zero non-neighbors across the whole surviving subgraph are
    /// absorbed straight into S. Returns a checkpoint restoring the state
    /// from before the call.
    Checkpoint update_after_add(VertexRef u);

    /// Removes u from the candidate set. Returns a checkpoint restoring the
    /// state from before the call.
    Checkpoint remove_candidate(VertexRef u);

    /// Rewinds every mutation made after the checkpoint was taken.
    void rollback(Checkpoint token);

    /// Binary strategy: the candidate with the most non-neighbors in S, or if
    /// all candidates are fully adjacent to S, the one with the most
    /// non-neighbors in C. Ties break to the smallest (side, index).
    VertexRef select_binary_branching_vertex() const;

    /// Pivoting strategy decision tree; falls back to binary branching when
    /// the fully-adjacent candidate set is empty or the remaining budget
    /// cannot cover the candidates outside it.
    BranchPlan select_pivot_branching() const;

    /// Recomputed-from-scratch counter check; test support.
    bool counters_consistent() const;

private:
    enum class State : std::uint8_t { Excluded, Candidate, Partial };
    enum class Op : std::uint8_t { MoveToPartial, RemoveFromCand };

    struct TrailEntry {
        Op op;
        VertexRef v;
    };

    State state_of(VertexRef v) const { return state_[side_index(v.side)][static_cast<std::size_t>(v.index)]; }

    void init_arrays();
    void seed(std::span<const Vertex> partial_left, std::span<const Vertex> partial_right,
              std::span<const Vertex> cand_left, std::span<const Vertex> cand_right);
    void cand_push(VertexRef v);
    void cand_swap_out(VertexRef v);
    void cand_swap_in(VertexRef v);
    void move_to_partial(VertexRef v);
    void undo_move_to_partial(VertexRef v);
    void remove_from_candidates(VertexRef v);
    void undo_remove_from_candidates(VertexRef v);

    const BipartiteGraph* g_ = nullptr;
    std::int64_t k_ = 0;
    std::int64_t non_edges_in_s_ = 0;

    std::array<std::vector<Vertex>, 2> partial_;
    // Candidate sets as swap-removal arrays: the live prefix [0, cand_size_)
    // plus removed elements parked past the end in removal order.
    std::array<std::vector<Vertex>, 2> cand_;
    std::array<std::vector<Vertex>, 2> cand_pos_;
    std::array<Vertex, 2> cand_size_ = {0, 0};

    std::array<std::vector<Vertex>, 2> deg_s_;  // neighbors in S, per vertex
    std::array<std::vector<Vertex>, 2> deg_c_;  // neighbors in C, per vertex
    std::array<std::vector<State>, 2> state_;

    std::vector<TrailEntry> trail_;
    std::vector<VertexRef> scratch_;
};

}  // namespace mdb

#endif
