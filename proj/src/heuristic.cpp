#include "mdb/heuristic.hpp"

#include <algorithm>
#include <vector>

#include "mdb/errors.hpp"

namespace mdb {

namespace {

// One orientation: grow `grow` side to exactly theta vertices while the
// other side only shrinks. O(theta * n + m): victims come from non-degree
// buckets rebuilt once per pick.
std::optional<Solution> greedy_pass(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                                    Side grow) {
    const Side keep = opposite(grow);
    if (g.n(grow) < theta) return std::nullopt;

    std::vector<char> grown(static_cast<std::size_t>(g.n(grow)), 0);
    std::vector<char> kept(static_cast<std::size_t>(g.n(keep)), 1);
    // deg_into_kept: for grow-side vertices, neighbors still in the kept set.
    // deg_into_grown: for kept vertices, neighbors already picked.
    std::vector<std::int64_t> deg_into_kept(static_cast<std::size_t>(g.n(grow)));
    std::vector<std::int64_t> deg_into_grown(static_cast<std::size_t>(g.n(keep)), 0);
    for (Vertex u = 0; u < g.n(grow); ++u) deg_into_kept[static_cast<std::size_t>(u)] = g.degree(grow, u);

    std::vector<char> pick_nbr(static_cast<std::size_t>(g.n(keep)), 0);
    std::vector<std::vector<Vertex>> bucket;
    std::vector<std::size_t> cursor;

    std::int64_t n_grown = 0;
    std::int64_t n_kept = g.n(keep);
    std::int64_t non_edges = 0;

    while (n_grown < theta) {
        Vertex pick = -1;
        std::int64_t best_deg = -1;
        for (Vertex u = 0; u < g.n(grow); ++u)
            if (!grown[static_cast<std::size_t>(u)] && deg_into_kept[static_cast<std::size_t>(u)] > best_deg) {
                best_deg = deg_into_kept[static_cast<std::size_t>(u)];
                pick = u;
            }

        for (Vertex v : g.neighbors(grow, pick)) pick_nbr[static_cast<std::size_t>(v)] = 1;

        // Kept vertices bucketed by non-degree to grown + pick; deleting a
        // kept vertex never changes another one's bucket.
        bucket.assign(static_cast<std::size_t>(n_grown) + 2, {});
        cursor.assign(bucket.size(), 0);
        for (Vertex v = 0; v < g.n(keep); ++v)
            if (kept[static_cast<std::size_t>(v)]) {
                std::int64_t nd = (n_grown + 1) - deg_into_grown[static_cast<std::size_t>(v)] -
                                  pick_nbr[static_cast<std::size_t>(v)];
                bucket[static_cast<std::size_t>(nd)].push_back(v);
            }

        std::int64_t ne = non_edges + (n_kept - deg_into_kept[static_cast<std::size_t>(pick)]);
        std::int64_t level = n_grown + 1;
        while (ne > k && n_kept > 0) {
            while (level > 0 && cursor[static_cast<std::size_t>(level)] >=
                                    bucket[static_cast<std::size_t>(level)].size())
                --level;
            Vertex victim = bucket[static_cast<std::size_t>(level)]
                                  [cursor[static_cast<std::size_t>(level)]++];
            kept[static_cast<std::size_t>(victim)] = 0;
            --n_kept;
            ne -= level;
            for (Vertex w : g.neighbors(keep, victim)) --deg_into_kept[static_cast<std::size_t>(w)];
        }

        grown[static_cast<std::size_t>(pick)] = 1;
        ++n_grown;
        non_edges = ne;
        for (Vertex v : g.neighbors(grow, pick)) {
            pick_nbr[static_cast<std::size_t>(v)] = 0;
            if (kept[static_cast<std::size_t>(v)]) ++deg_into_grown[static_cast<std::size_t>(v)];
        }
    }

    if (n_kept < theta) return std::nullopt;
    Solution sol;
    sol.edges = n_grown * n_kept - non_edges;
    if (sol.edges <= 0) return std::nullopt;
    auto& grow_list = grow == Side::Left ? sol.left : sol.right;
    auto& keep_list = grow == Side::Left ? sol.right : sol.left;
    for (Vertex u = 0; u < g.n(grow); ++u)
        if (grown[static_cast<std::size_t>(u)]) grow_list.push_back(u);
    for (Vertex v = 0; v < g.n(keep); ++v)
        if (kept[static_cast<std::size_t>(v)]) keep_list.push_back(v);
    return sol;
}

}  // namespace

std::optional<Solution> greedy_initial(const BipartiteGraph& g, std::int64_t k, std::int64_t theta) {
    if (theta <= k) throw ContractViolation("greedy_initial requires theta > k");
    auto a = greedy_pass(g, k, theta, Side::Left);
    auto b = greedy_pass(g, k, theta, Side::Right);
    if (!a) return b;
    if (!b) return a;
    return a->edges >= b->edges ? a : b;
}

}  // namespace mdb
