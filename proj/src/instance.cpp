#include "mdb/instance.hpp"

#include <algorithm>

#include "mdb/errors.hpp"

namespace mdb {

SearchInstance::SearchInstance(const BipartiteGraph& g, std::int64_t k) : g_(&g), k_(k) {
    if (k < 0) throw ContractViolation("defect budget must be nonnegative");
    init_arrays();
    std::vector<Vertex> all_left(static_cast<std::size_t>(g.n_left()));
    std::vector<Vertex> all_right(static_cast<std::size_t>(g.n_right()));
    for (std::size_t i = 0; i < all_left.size(); ++i) all_left[i] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < all_right.size(); ++i) all_right[i] = static_cast<Vertex>(i);
    seed({}, {}, all_left, all_right);
}

SearchInstance::SearchInstance(const BipartiteGraph& g, std::int64_t k,
                               std::span<const Vertex> partial_left,
                               std::span<const Vertex> partial_right,
                               std::span<const Vertex> cand_left,
                               std::span<const Vertex> cand_right)
    : g_(&g), k_(k) {
    if (k < 0) throw ContractViolation("defect budget must be nonnegative");
    init_arrays();
    seed(partial_left, partial_right, cand_left, cand_right);
}

void SearchInstance::init_arrays() {
    for (Side s : {Side::Left, Side::Right}) {
        auto n = static_cast<std::size_t>(g_->n(s));
        auto i = side_index(s);
        deg_s_[i].assign(n, 0);
        deg_c_[i].assign(n, 0);
        state_[i].assign(n, State::Excluded);
        cand_pos_[i].assign(n, -1);
        cand_[i].clear();
        partial_[i].clear();
        cand_size_[i] = 0;
    }
}

void SearchInstance::cand_push(VertexRef v) {
    auto i = side_index(v.side);
    cand_pos_[i][static_cast<std::size_t>(v.index)] = static_cast<Vertex>(cand_[i].size());
    cand_[i].push_back(v.index);
    ++cand_size_[i];
    state_[i][static_cast<std::size_t>(v.index)] = State::Candidate;
}

void SearchInstance::seed(std::span<const Vertex> partial_left, std::span<const Vertex> partial_right,
                          std::span<const Vertex> cand_left, std::span<const Vertex> cand_right) {
    auto add_partial = [&](Side s, std::span<const Vertex> verts) {
        for (Vertex v : verts) {
            partial_[side_index(s)].push_back(v);
            state_[side_index(s)][static_cast<std::size_t>(v)] = State::Partial;
            for (Vertex w : g_->neighbors(s, v)) ++deg_s_[side_index(opposite(s))][static_cast<std::size_t>(w)];
        }
    };
    add_partial(Side::Left, partial_left);
    add_partial(Side::Right, partial_right);

    for (Vertex v : cand_left) cand_push({Side::Left, v});
    for (Vertex v : cand_right) cand_push({Side::Right, v});
    for (Vertex v : cand_left)
        for (Vertex w : g_->neighbors(Side::Left, v)) ++deg_c_[1][static_cast<std::size_t>(w)];
    for (Vertex v : cand_right)
        for (Vertex w : g_->neighbors(Side::Right, v)) ++deg_c_[0][static_cast<std::size_t>(w)];

    std::int64_t s_edges = 0;
    for (Vertex v : partial_[0]) s_edges += deg_s_[0][static_cast<std::size_t>(v)];
    non_edges_in_s_ =
        static_cast<std::int64_t>(partial_[0].size()) * static_cast<std::int64_t>(partial_[1].size()) -
        s_edges;
    if (non_edges_in_s_ > k_) throw ContractViolation("seed partial set exceeds the defect budget");

    // Drop candidates that cannot extend S within budget. Removal order is
    // irrelevant here: nd_to_partial does not change as C shrinks.
    scratch_.clear();
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s))
            if (non_edges_in_s_ + nd_to_partial({s, v}) > k_) scratch_.push_back({s, v});
    for (VertexRef v : scratch_) remove_from_candidates(v);
    trail_.clear();
}

void SearchInstance::cand_swap_out(VertexRef v) {
    auto i = side_index(v.side);
    Vertex pos = cand_pos_[i][static_cast<std::size_t>(v.index)];
    Vertex last = cand_size_[i] - 1;
    Vertex moved = cand_[i][static_cast<std::size_t>(last)];
    std::swap(cand_[i][static_cast<std::size_t>(pos)], cand_[i][static_cast<std::size_t>(last)]);
    cand_pos_[i][static_cast<std::size_t>(moved)] = pos;
    cand_pos_[i][static_cast<std::size_t>(v.index)] = last;
    --cand_size_[i];
}

void SearchInstance::cand_swap_in(VertexRef v) {
    // LIFO rollback discipline guarantees v parks exactly at the live end.
    auto i = side_index(v.side);
    ++cand_size_[i];
}

void SearchInstance::move_to_partial(VertexRef v) {
    auto side = side_index(v.side);
    auto opp = side_index(opposite(v.side));
    cand_swap_out(v);
    state_[side][static_cast<std::size_t>(v.index)] = State::Partial;
    non_edges_in_s_ += nd_to_partial(v);
    partial_[side].push_back(v.index);
    for (Vertex w : g_->neighbors(v)) {
        ++deg_s_[opp][static_cast<std::size_t>(w)];
        --deg_c_[opp][static_cast<std::size_t>(w)];
    }
    trail_.push_back({Op::MoveToPartial, v});
}

void SearchInstance::undo_move_to_partial(VertexRef v) {
    auto side = side_index(v.side);
    auto opp = side_index(opposite(v.side));
    for (Vertex w : g_->neighbors(v)) {
        --deg_s_[opp][static_cast<std::size_t>(w)];
        ++deg_c_[opp][static_cast<std::size_t>(w)];
    }
    partial_[side].pop_back();
    non_edges_in_s_ -= nd_to_partial(v);
    state_[side][static_cast<std::size_t>(v.index)] = State::Candidate;
    cand_swap_in(v);
}

void SearchInstance::remove_from_candidates(VertexRef v) {
    auto side = side_index(v.side);
    auto opp = side_index(opposite(v.side));
    cand_swap_out(v);
    state_[side][static_cast<std::size_t>(v.index)] = State::Excluded;
    for (Vertex w : g_->neighbors(v)) --deg_c_[opp][static_cast<std::size_t>(w)];
    trail_.push_back({Op::RemoveFromCand, v});
}

void SearchInstance::undo_remove_from_candidates(VertexRef v) {
    auto side = side_index(v.side);
    auto opp = side_index(opposite(v.side));
    for (Vertex w : g_->neighbors(v)) ++deg_c_[opp][static_cast<std::size_t>(w)];
    state_[side][static_cast<std::size_t>(v.index)] = State::Candidate;
    cand_swap_in(v);
}

SearchInstance::Checkpoint SearchInstance::update_after_add(VertexRef u) {
    if (!in_candidates(u)) throw ContractViolation("update_after_add: vertex not in candidate set");
    if (non_edges_in_s_ + nd_to_partial(u) > k_)
        throw ContractViolation("update_after_add: adding vertex exceeds the defect budget");
    Checkpoint token = trail_.size();

    move_to_partial(u);

    // Drop candidates whose non-degree to the grown S exceeds what is left
    // of the budget.
    const std::int64_t budget = k_ - non_edges_in_s_;
    scratch_.clear();
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s))
            if (nd_to_partial({s, v}) > budget) scratch_.push_back({s, v});
    for (VertexRef v : scratch_) remove_from_candidates(v);

    // Absorb candidates with no non-neighbor anywhere in the surviving
    // subgraph; they extend any completion for free. Absorbing one leaves
    // the (nd_to_partial + nd_to_candidates) sum of the others unchanged,
    // so a single pass suffices.
    scratch_.clear();
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s))
            if (nd_to_partial({s, v}) + nd_to_candidates({s, v}) == 0) scratch_.push_back({s, v});
    for (VertexRef v : scratch_) move_to_partial(v);

    return token;
}

SearchInstance::Checkpoint SearchInstance::remove_candidate(VertexRef u) {
    if (!in_candidates(u)) throw ContractViolation("remove_candidate: vertex not in candidate set");
    Checkpoint token = trail_.size();
    remove_from_candidates(u);
    return token;
}

void SearchInstance::rollback(Checkpoint token) {
    if (token > trail_.size()) throw ContractViolation("rollback: checkpoint from the future");
    while (trail_.size() > token) {
        TrailEntry e = trail_.back();
        trail_.pop_back();
        if (e.op == Op::MoveToPartial)
            undo_move_to_partial(e.v);
        else
            undo_remove_from_candidates(e.v);
    }
}

VertexRef SearchInstance::select_binary_branching_vertex() const {
    if (candidate_total() == 0) throw ContractViolation("branching on an empty candidate set");
    VertexRef best{};
    std::int64_t best_nd = -1;
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s)) {
            std::int64_t nd = nd_to_partial({s, v});
            if (nd > best_nd || (nd == best_nd && VertexRef{s, v} < best)) {
                best_nd = nd;
                best = {s, v};
            }
        }
    if (best_nd > 0) return best;

    best = {};
    best_nd = -1;
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s)) {
            std::int64_t nd = nd_to_candidates({s, v});
            if (nd > best_nd || (nd == best_nd && VertexRef{s, v} < best)) {
                best_nd = nd;
                best = {s, v};
            }
        }
    return best;
}

BranchPlan SearchInstance::select_pivot_branching() const {
    if (candidate_total() == 0) throw ContractViolation("branching on an empty candidate set");
    const std::int64_t budget = k_ - non_edges_in_s_;

    std::int64_t outside_c0 = 0;
    bool have_c0 = false;
    VertexRef pivot{};
    std::int64_t pivot_nd_c = -1;
    VertexRef max_nd_s{};
    std::int64_t max_nd_s_val = -1;
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s)) {
            VertexRef ref{s, v};
            std::int64_t nd_s = nd_to_partial(ref);
            if (nd_s > max_nd_s_val || (nd_s == max_nd_s_val && ref < max_nd_s)) {
                max_nd_s_val = nd_s;
                max_nd_s = ref;
            }
            if (nd_s == 0) {
                std::int64_t nd_c = nd_to_candidates(ref);
                if (!have_c0 || nd_c < pivot_nd_c || (nd_c == pivot_nd_c && ref < pivot)) {
                    have_c0 = true;
                    pivot_nd_c = nd_c;
                    pivot = ref;
                }
            } else {
                ++outside_c0;
            }
        }

    if (!have_c0 || outside_c0 > budget)
        return BranchPlan{BranchPlan::Kind::Binary, max_nd_s, {}};
    if (pivot_nd_c > budget && budget > 0) return BranchPlan{BranchPlan::Kind::Binary, pivot, {}};

    BranchPlan plan;
    plan.kind = BranchPlan::Kind::PivotFan;
    plan.fan.push_back(pivot);
    Side opp = opposite(pivot.side);
    for (Vertex v : candidates(opp)) {
        bool adjacent = pivot.side == Side::Left ? g_->has_edge(pivot.index, v)
                                                 : g_->has_edge(v, pivot.index);
        if (!adjacent) plan.fan.push_back({opp, v});
    }
    std::sort(plan.fan.begin() + 1, plan.fan.end());
    return plan;
}

bool SearchInstance::counters_consistent() const {
    std::int64_t s_nonedges = 0;
    for (Vertex u : partial_[0])
        for (Vertex v : partial_[1])
            if (!g_->has_edge(u, v)) ++s_nonedges;
    if (s_nonedges != non_edges_in_s_) return false;

    for (Side s : {Side::Left, Side::Right}) {
        auto check = [&](Vertex v) {
            VertexRef ref{s, v};
            std::int64_t nds = 0, ndc = 0;
            Side opp = opposite(s);
            for (Vertex w : partial(opp)) {
                bool adj = s == Side::Left ? g_->has_edge(v, w) : g_->has_edge(w, v);
                nds += !adj;
            }
            for (Vertex w : candidates(opp)) {
                bool adj = s == Side::Left ? g_->has_edge(v, w) : g_->has_edge(w, v);
                ndc += !adj;
            }
            return nds == nd_to_partial(ref) && ndc == nd_to_candidates(ref);
        };
        for (Vertex v : candidates(s))
            if (!check(v)) return false;
        for (Vertex v : partial(s))
            if (!check(v)) return false;
    }

    for (Side s : {Side::Left, Side::Right})
        for (Vertex v : candidates(s))
            if (non_edges_in_s_ + nd_to_partial({s, v}) > k_) return false;
    return true;
}

}  // namespace mdb
