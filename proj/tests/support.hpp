#ifndef MDB_TESTS_SUPPORT_HPP
#define MDB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mdb/graph.hpp"
#include "mdb/solution.hpp"

namespace mdb::test {

// 2x2 graph missing the (u1, v1) edge.
inline BipartiteGraph g1() {
    return BipartiteGraph::from_edges(2, 2, {{0, 0}, {0, 1}, {1, 0}});
}

inline BipartiteGraph complete(Vertex a, Vertex b) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, v);
    return BipartiteGraph::from_edges(a, b, std::move(edges));
}

// K_{3,3} with the perfect matching (u_i, v_i) removed.
inline BipartiteGraph k33_minus_matching() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 0; v < 3; ++v)
            if (u != v) edges.emplace_back(u, v);
    return BipartiteGraph::from_edges(3, 3, std::move(edges));
}

inline BipartiteGraph random_graph(std::mt19937_64& rng, Vertex max_side, double min_density = 0.1,
                                   double max_density = 0.9) {
    Vertex a = static_cast<Vertex>(1 + rng() % static_cast<std::uint64_t>(max_side));
    Vertex b = static_cast<Vertex>(1 + rng() % static_cast<std::uint64_t>(max_side));
    double density =
        min_density + (max_density - min_density) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) edges.emplace_back(u, v);
    return BipartiteGraph::from_edges(a, b, std::move(edges));
}

// Graph with sides (a, b) whose adjacency matrix is the bit mask, row-major.
inline BipartiteGraph graph_from_mask(Vertex a, Vertex b, std::uint32_t mask) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v)
            if (mask & (1u << (u * b + v))) edges.emplace_back(u, v);
    return BipartiteGraph::from_edges(a, b, std::move(edges));
}

// Fully naive reference: enumerates the power sets of BOTH sides with no
// pruning at all. Only the edge count is reported.
inline std::optional<std::int64_t> naive_best_edges(const BipartiteGraph& g, std::int64_t k,
                                                    std::int64_t theta) {
    std::optional<std::int64_t> best;
    for (std::uint32_t ml = 0; ml < (1u << g.n_left()); ++ml) {
        if (__builtin_popcount(ml) < theta) continue;
        for (std::uint32_t mr = 0; mr < (1u << g.n_right()); ++mr) {
            if (__builtin_popcount(mr) < theta) continue;
            std::int64_t edges = 0;
            for (Vertex u = 0; u < g.n_left(); ++u)
                if (ml & (1u << u))
                    for (Vertex v : g.neighbors(Side::Left, u))
                        if (mr & (1u << v)) ++edges;
            std::int64_t pairs = static_cast<std::int64_t>(__builtin_popcount(ml)) *
                                 __builtin_popcount(mr);
            if (pairs - edges > k || edges < 1) continue;
            if (!best || edges > *best) best = edges;
        }
    }
    return best;
}

// Membership constraints for constrained_best_edges, as bit masks per side.
struct SubsetConstraints {
    std::uint32_t include_left = 0, exclude_left = 0;
    std::uint32_t include_right = 0, exclude_right = 0;
};

// Like naive_best_edges with forced-in / forced-out vertices on either side.
inline std::optional<std::int64_t> constrained_best_edges(const BipartiteGraph& g, std::int64_t k,
                                                          std::int64_t theta,
                                                          const SubsetConstraints& c) {
    std::optional<std::int64_t> best;
    for (std::uint32_t ml = 0; ml < (1u << g.n_left()); ++ml) {
        if ((ml & c.include_left) != c.include_left || (ml & c.exclude_left)) continue;
        if (__builtin_popcount(ml) < theta) continue;
        for (std::uint32_t mr = 0; mr < (1u << g.n_right()); ++mr) {
            if ((mr & c.include_right) != c.include_right || (mr & c.exclude_right)) continue;
            if (__builtin_popcount(mr) < theta) continue;
            std::int64_t edges = 0;
            for (Vertex u = 0; u < g.n_left(); ++u)
                if (ml & (1u << u))
                    for (Vertex v : g.neighbors(Side::Left, u))
                        if (mr & (1u << v)) ++edges;
            std::int64_t pairs = static_cast<std::int64_t>(__builtin_popcount(ml)) *
                                 __builtin_popcount(mr);
            if (pairs - edges > k || edges < 1) continue;
            if (!best || edges > *best) best = edges;
        }
    }
    return best;
}

// Dedicated maximum-edge-biclique reference for the k = 0 case.
inline std::optional<std::int64_t> biclique_best_edges(const BipartiteGraph& g, std::int64_t theta) {
    std::optional<std::int64_t> best;
    for (std::uint32_t ml = 1; ml < (1u << g.n_left()); ++ml) {
        std::int64_t size = __builtin_popcount(ml);
        if (size < theta) continue;
        std::int64_t common = 0;
        for (Vertex v = 0; v < g.n_right(); ++v) {
            bool all = true;
            for (Vertex u = 0; u < g.n_left() && all; ++u)
                if ((ml & (1u << u)) && !g.has_edge(u, v)) all = false;
            common += all;
        }
        if (common < theta) continue;
        std::int64_t edges = size * common;
        if (!best || edges > *best) best = edges;
    }
    return best;
}

// Exhaustive best completion of a branch-and-bound state: S forced in,
// anything else limited to the candidate lists. Reports the best reachable
// edge count and the largest feasible side sizes.
struct CompletionBest {
    std::int64_t edges = 0;
    std::int64_t max_left = 0;
    std::int64_t max_right = 0;
};

inline CompletionBest best_completion(const BipartiteGraph& g, std::int64_t k,
                                      std::span<const Vertex> s_left,
                                      std::span<const Vertex> s_right,
                                      std::span<const Vertex> c_left,
                                      std::span<const Vertex> c_right) {
    CompletionBest best;
    bool any = false;
    std::vector<Vertex> left_base(s_left.begin(), s_left.end());
    for (std::uint32_t mask = 0; mask < (1u << c_left.size()); ++mask) {
        std::vector<Vertex> left = left_base;
        for (std::size_t i = 0; i < c_left.size(); ++i)
            if (mask & (1u << i)) left.push_back(c_left[i]);

        std::vector<Vertex> right(s_right.begin(), s_right.end());
        std::int64_t base_ne = non_edge_count(g, left, right);
        if (base_ne > k) continue;

        std::vector<std::int64_t> nd;
        nd.reserve(c_right.size());
        for (Vertex v : c_right) {
            std::int64_t miss = 0;
            for (Vertex u : left) miss += !g.has_edge(u, v);
            nd.push_back(miss);
        }
        std::sort(nd.begin(), nd.end());

        std::int64_t edges =
            static_cast<std::int64_t>(left.size()) * static_cast<std::int64_t>(right.size()) -
            base_ne;
        std::int64_t ne = base_ne;
        std::int64_t rsize = static_cast<std::int64_t>(right.size());
        auto note = [&](std::int64_t e, std::int64_t r) {
            if (!any || e > best.edges) best.edges = e;
            best.max_left = std::max(best.max_left, static_cast<std::int64_t>(left.size()));
            best.max_right = std::max(best.max_right, r);
            any = true;
        };
        note(edges, rsize);
        for (std::int64_t s : nd) {
            ne += s;
            if (ne > k) break;
            ++rsize;
            edges = static_cast<std::int64_t>(left.size()) * rsize - ne;
            note(edges, rsize);
        }
    }
    return best;
}

inline bool solution_is_valid(const BipartiteGraph& g, const Solution& sol, std::int64_t k,
                              std::int64_t theta) {
    if (static_cast<std::int64_t>(sol.left.size()) < theta ||
        static_cast<std::int64_t>(sol.right.size()) < theta)
        return false;
    std::int64_t ne = non_edge_count(g, sol.left, sol.right);
    if (ne > k) return false;
    std::int64_t pairs = static_cast<std::int64_t>(sol.left.size()) *
                         static_cast<std::int64_t>(sol.right.size());
    return sol.edges == pairs - ne && sol.edges >= 1;
}

inline bool solution_is_connected(const BipartiteGraph& g, const Solution& sol) {
    if (sol.left.empty() || sol.right.empty()) return true;
    std::vector<int> lid(static_cast<std::size_t>(g.n_left()), -1);
    std::vector<int> rid(static_cast<std::size_t>(g.n_right()), -1);
    for (std::size_t i = 0; i < sol.left.size(); ++i) lid[static_cast<std::size_t>(sol.left[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < sol.right.size(); ++i) rid[static_cast<std::size_t>(sol.right[i])] = static_cast<int>(i);
    std::vector<char> seen_l(sol.left.size(), 0), seen_r(sol.right.size(), 0);
    std::vector<VertexRef> queue = {{Side::Left, sol.left[0]}};
    seen_l[0] = 1;
    std::size_t visited = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [side, v] = queue[head];
        ++visited;
        for (Vertex w : g.neighbors(side, v)) {
            if (side == Side::Left) {
                int id = rid[static_cast<std::size_t>(w)];
                if (id >= 0 && !seen_r[static_cast<std::size_t>(id)]) {
                    seen_r[static_cast<std::size_t>(id)] = 1;
                    queue.push_back({Side::Right, w});
                }
            } else {
                int id = lid[static_cast<std::size_t>(w)];
                if (id >= 0 && !seen_l[static_cast<std::size_t>(id)]) {
                    seen_l[static_cast<std::size_t>(id)] = 1;
                    queue.push_back({Side::Left, w});
                }
            }
        }
    }
    return visited == sol.left.size() + sol.right.size();
}

}  // namespace mdb::test

#endif
