#include "mdb/bounds.hpp"

#include <algorithm>

namespace mdb {

namespace {

// Fills `prefix` with prefix sums of the candidate non-degrees to S on one
// side, in ascending non-degree order (counting sort over 0..|S_opp|).
void sorted_nd_prefix(const SearchInstance& inst, Side side, std::vector<std::int64_t>& bucket,
                      std::vector<std::int64_t>& prefix) {
    const std::int64_t max_nd = inst.partial_size(opposite(side));
    bucket.assign(static_cast<std::size_t>(max_nd) + 1, 0);
    for (Vertex v : inst.candidates(side))
        ++bucket[static_cast<std::size_t>(inst.nd_to_partial({side, v}))];

    prefix.clear();
    prefix.reserve(static_cast<std::size_t>(inst.candidate_size(side)) + 1);
    prefix.push_back(0);
    for (std::int64_t nd = 0; nd <= max_nd; ++nd)
        for (std::int64_t c = 0; c < bucket[static_cast<std::size_t>(nd)]; ++c)
            prefix.push_back(prefix.back() + nd);
}

}  // namespace

BoundTriple upper_bounds(const SearchInstance& inst, BoundsWorkspace& ws) {
    const std::int64_t budget = inst.defect_budget() - inst.non_edges();
    const std::int64_t us = inst.partial_size(Side::Left);
    const std::int64_t vs = inst.partial_size(Side::Right);

    sorted_nd_prefix(inst, Side::Left, ws.bucket, ws.prefix_left);
    sorted_nd_prefix(inst, Side::Right, ws.bucket, ws.prefix_right);
    const auto& pu = ws.prefix_left;
    const auto& pv = ws.prefix_right;

    std::size_t cu = 0;
    while (cu + 1 < pu.size() && pu[cu + 1] <= budget) ++cu;
    std::size_t cv = 0;
    while (cv + 1 < pv.size() && pv[cv + 1] <= budget) ++cv;

    // Largest joint prefix pair per budget; j grows as i shrinks.
    std::int64_t best = 0;
    std::size_t j = 0;
    for (std::size_t i = cu + 1; i-- > 0;) {
        while (j + 1 < pv.size() && pu[i] + pv[j + 1] <= budget) ++j;
        std::int64_t e = (us + static_cast<std::int64_t>(i)) * (vs + static_cast<std::int64_t>(j)) -
                         inst.non_edges() - pu[i] - pv[j];
        best = std::max(best, e);
    }

    return BoundTriple{us + static_cast<std::int64_t>(cu), vs + static_cast<std::int64_t>(cv), best};
}

BoundTriple upper_bounds(const SearchInstance& inst) {
    BoundsWorkspace ws;
    return upper_bounds(inst, ws);
}

}  // namespace mdb
