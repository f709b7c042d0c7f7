#include "mdb/oracle.hpp"

#include <algorithm>
#include <vector>

#include "mdb/errors.hpp"

namespace mdb {

namespace {

std::optional<Solution> enumerate_side(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                                       Side enum_side) {
    const Side pick_side = opposite(enum_side);
    const Vertex ne = g.n(enum_side);
    const Vertex np = g.n(pick_side);

    std::optional<Solution> best;
    std::int64_t best_edges = 0;

    std::vector<std::int64_t> nd(static_cast<std::size_t>(np));
    std::vector<Vertex> order(static_cast<std::size_t>(np));
    std::vector<Vertex> chosen;

    for (std::uint32_t mask = 1; mask < (1u << ne); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size < theta) continue;

        for (Vertex v = 0; v < np; ++v) nd[static_cast<std::size_t>(v)] = size;
        chosen.clear();
        for (Vertex u = 0; u < ne; ++u)
            if (mask & (1u << u)) {
                chosen.push_back(u);
                for (Vertex v : g.neighbors(enum_side, u)) --nd[static_cast<std::size_t>(v)];
            }

        for (Vertex v = 0; v < np; ++v) order[static_cast<std::size_t>(v)] = v;
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            if (nd[static_cast<std::size_t>(a)] != nd[static_cast<std::size_t>(b)])
                return nd[static_cast<std::size_t>(a)] < nd[static_cast<std::size_t>(b)];
            return a < b;
        });

        std::int64_t total_nd = 0;
        for (std::int64_t s = 1; s <= np; ++s) {
            total_nd += nd[static_cast<std::size_t>(order[static_cast<std::size_t>(s - 1)])];
            if (total_nd > k) break;
            if (s < theta) continue;
            std::int64_t edges = s * size - total_nd;
            if (edges > best_edges) {
                best_edges = edges;
                Solution sol;
                sol.edges = edges;
                auto& enum_list = enum_side == Side::Left ? sol.left : sol.right;
                auto& pick_list = enum_side == Side::Left ? sol.right : sol.left;
                enum_list = chosen;
                pick_list.assign(order.begin(), order.begin() + s);
                std::sort(pick_list.begin(), pick_list.end());
                best = std::move(sol);
            }
        }
    }
    return best;
}

}  // namespace

std::optional<Solution> brute_force_mdb(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                                        int max_enum_side) {
    if (theta < 1 || k < 0) throw ContractViolation("requires theta >= 1 and k >= 0");
    const Side enum_side = g.n_left() <= g.n_right() ? Side::Left : Side::Right;
    if (g.n(enum_side) > std::min(max_enum_side, 30))
        throw ContractViolation("graph too large for exhaustive enumeration");
    if (g.n(enum_side) == 0) return std::nullopt;
    return enumerate_side(g, k, theta, enum_side);
}

}  // namespace mdb
