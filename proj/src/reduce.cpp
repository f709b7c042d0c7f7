#include "mdb/reduce.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "mdb/errors.hpp"

namespace mdb {

namespace {

struct GlobalId {
    Side side;
    Vertex index;
};

// Mutable adjacency copy the sweep works on.
struct MutableGraph {
    std::array<std::vector<std::vector<Vertex>>, 2> adj;
    std::array<std::vector<char>, 2> alive;

    explicit MutableGraph(const BipartiteGraph& g) {
        for (Side s : {Side::Left, Side::Right}) {
            auto i = side_index(s);
            adj[i].resize(static_cast<std::size_t>(g.n(s)));
            alive[i].assign(static_cast<std::size_t>(g.n(s)), 1);
            for (Vertex v = 0; v < g.n(s); ++v) {
                auto nb = g.neighbors(s, v);
                adj[i][static_cast<std::size_t>(v)].assign(nb.begin(), nb.end());
            }
        }
    }

    std::vector<Vertex>& nbr(Side s, Vertex v) { return adj[side_index(s)][static_cast<std::size_t>(v)]; }
    bool is_alive(Side s, Vertex v) const { return alive[side_index(s)][static_cast<std::size_t>(v)]; }

    void erase_directed(Side s, Vertex from, Vertex to) {
        auto& list = nbr(s, from);
        auto it = std::lower_bound(list.begin(), list.end(), to);
        if (it != list.end() && *it == to) list.erase(it);
    }

    std::int64_t kill(Side s, Vertex v) {
        auto& list = nbr(s, v);
        std::int64_t dropped = static_cast<std::int64_t>(list.size());
        for (Vertex w : list) erase_directed(opposite(s), w, v);
        list.clear();
        alive[side_index(s)][static_cast<std::size_t>(v)] = 0;
        return dropped;
    }
};

std::vector<GlobalId> ascending_degree_order(const BipartiteGraph& g) {
    std::vector<GlobalId> order;
    order.reserve(static_cast<std::size_t>(g.n_left() + g.n_right()));
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v = 0; v < g.n(s); ++v) order.push_back({s, v});
    std::stable_sort(order.begin(), order.end(), [&](const GlobalId& a, const GlobalId& b) {
        Vertex da = g.degree(a.side, a.index), db = g.degree(b.side, b.index);
        if (da != db) return da < db;
        if (a.side != b.side) return a.side == Side::Left;
        return a.index < b.index;
    });
    return order;
}

// Edges (u, v) from u's neighborhood failing the common-neighbor test: v must
// have at least `need` neighbors w with cn(u, w) >= need. cn is accumulated
// over the two-hop neighborhood of u in `graph`.
template <typename Adj>
void collect_failing_edges(const Adj& nbr_of, Side us, Vertex u, std::int64_t need,
                           std::vector<std::int64_t>& cn, std::vector<Vertex>& out) {
    out.clear();
    const auto& nu = nbr_of(us, u);
    for (Vertex v : nu)
        for (Vertex w : nbr_of(opposite(us), v)) cn[static_cast<std::size_t>(w)] = 0;
    for (Vertex v : nu)
        for (Vertex w : nbr_of(opposite(us), v)) ++cn[static_cast<std::size_t>(w)];
    for (Vertex v : nu) {
        std::int64_t good = 0;
        for (Vertex w : nbr_of(opposite(us), v))
            if (cn[static_cast<std::size_t>(w)] >= need) ++good;
        if (good < need) out.push_back(v);
    }
}

// One sequential sweep; deletions take effect immediately for later vertices.
bool cn_sweep_sequential(MutableGraph& mg, std::span<const GlobalId> order, std::int64_t need,
                         std::int64_t& edges_removed, std::int64_t& vertices_removed) {
    bool changed = false;
    std::array<std::vector<std::int64_t>, 2> cn;
    cn[0].assign(mg.adj[0].size(), 0);
    cn[1].assign(mg.adj[1].size(), 0);
    std::vector<Vertex> failing;
    std::vector<Vertex> touched;

    auto nbr_of = [&](Side s, Vertex v) -> const std::vector<Vertex>& { return mg.nbr(s, v); };

    for (const GlobalId& id : order) {
        if (!mg.is_alive(id.side, id.index)) continue;
        const Side us = id.side;
        const Side vs = opposite(us);

        touched = mg.nbr(us, id.index);
        collect_failing_edges(nbr_of, us, id.index, need, cn[side_index(us)], failing);
        for (Vertex v : failing) {
            mg.erase_directed(us, id.index, v);
            mg.erase_directed(vs, v, id.index);
            ++edges_removed;
            changed = true;
        }
        if (static_cast<std::int64_t>(mg.nbr(us, id.index).size()) < need) {
            edges_removed += mg.kill(us, id.index);
            ++vertices_removed;
            changed = true;
        }
        for (Vertex v : touched) {
            if (mg.is_alive(vs, v) && static_cast<std::int64_t>(mg.nbr(vs, v).size()) < need) {
                edges_removed += mg.kill(vs, v);
                ++vertices_removed;
                changed = true;
            }
        }
    }
    return changed;
}

// Parallel variant: every thread marks failing edges against the same
// snapshot, then deletions commit on one thread; vertices below the degree
// floor peel afterwards.
bool cn_sweep_parallel(MutableGraph& mg, std::span<const GlobalId> order, std::int64_t need,
                       int threads, std::int64_t& edges_removed, std::int64_t& vertices_removed) {
    auto nbr_of = [&](Side s, Vertex v) -> const std::vector<Vertex>& { return mg.nbr(s, v); };

    std::vector<std::vector<std::pair<GlobalId, Vertex>>> marks(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::array<std::vector<std::int64_t>, 2> cn;
            cn[0].assign(mg.adj[0].size(), 0);
            cn[1].assign(mg.adj[1].size(), 0);
            std::vector<Vertex> failing;
            for (std::size_t i = static_cast<std::size_t>(t); i < order.size();
                 i += static_cast<std::size_t>(threads)) {
                const GlobalId id = order[i];
                if (!mg.is_alive(id.side, id.index)) continue;
                collect_failing_edges(nbr_of, id.side, id.index, need, cn[side_index(id.side)],
                                      failing);
                for (Vertex v : failing) marks[static_cast<std::size_t>(t)].push_back({id, v});
            }
        });
    }
    for (auto& th : pool) th.join();

    bool changed = false;
    for (const auto& chunk : marks)
        for (const auto& [id, v] : chunk) {
            auto& list = mg.nbr(id.side, id.index);
            auto it = std::lower_bound(list.begin(), list.end(), v);
            if (it == list.end() || *it != v) continue;  // both endpoints may mark one edge
            list.erase(it);
            mg.erase_directed(opposite(id.side), v, id.index);
            ++edges_removed;
            changed = true;
        }

    std::vector<GlobalId> queue;
    for (Side s : {Side::Left, Side::Right})
        for (Vertex v = 0; v < static_cast<Vertex>(mg.adj[side_index(s)].size()); ++v)
            if (mg.is_alive(s, v) && static_cast<std::int64_t>(mg.nbr(s, v).size()) < need)
                queue.push_back({s, v});
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [s, v] = queue[head];
        if (!mg.is_alive(s, v)) continue;
        std::vector<Vertex> nb = mg.nbr(s, v);
        edges_removed += mg.kill(s, v);
        ++vertices_removed;
        changed = true;
        for (Vertex w : nb)
            if (mg.is_alive(opposite(s), w) &&
                static_cast<std::int64_t>(mg.nbr(opposite(s), w).size()) < need)
                queue.push_back({opposite(s), w});
    }
    return changed;
}

}  // namespace

ReducedGraph cn_reduce(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                       bool to_fixpoint, int threads) {
    if (theta <= k) throw ContractViolation("cn_reduce requires theta > k");
    const std::int64_t need = theta - k;

    MutableGraph mg(g);
    auto order = ascending_degree_order(g);
    ReducedGraph out;

    bool changed = true;
    while (changed) {
        if (threads > 1)
            changed = cn_sweep_parallel(mg, order, need, threads, out.edges_removed,
                                        out.vertices_removed);
        else
            changed = cn_sweep_sequential(mg, order, need, out.edges_removed, out.vertices_removed);
        if (!to_fixpoint) break;
    }

    std::array<std::vector<Vertex>, 2> remap;
    std::array<std::vector<Vertex>*, 2> kept = {&out.kept_left, &out.kept_right};
    for (Side s : {Side::Left, Side::Right}) {
        auto i = side_index(s);
        remap[i].assign(static_cast<std::size_t>(g.n(s)), -1);
        for (Vertex v = 0; v < g.n(s); ++v)
            if (mg.is_alive(s, v)) {
                remap[i][static_cast<std::size_t>(v)] = static_cast<Vertex>(kept[i]->size());
                kept[i]->push_back(v);
            }
    }

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u : out.kept_left)
        for (Vertex v : mg.nbr(Side::Left, u))
            edges.emplace_back(remap[0][static_cast<std::size_t>(u)],
                               remap[1][static_cast<std::size_t>(v)]);
    out.graph = BipartiteGraph::from_edges(static_cast<Vertex>(out.kept_left.size()),
                                           static_cast<Vertex>(out.kept_right.size()),
                                           std::move(edges));

    std::vector<std::int64_t> left_labels, right_labels;
    left_labels.reserve(out.kept_left.size());
    right_labels.reserve(out.kept_right.size());
    for (Vertex v : out.kept_left) left_labels.push_back(g.label(Side::Left, v));
    for (Vertex v : out.kept_right) right_labels.push_back(g.label(Side::Right, v));
    out.graph.set_labels(std::move(left_labels), std::move(right_labels));
    return out;
}

std::vector<VertexRef> one_non_neighbor_prune(SearchInstance& inst, VertexRef removed) {
    const BipartiteGraph& g = inst.graph();
    const Side same = removed.side;
    const Side opp = opposite(same);
    std::vector<VertexRef> pruned;

    std::vector<Vertex> group;
    for (Vertex v : inst.candidates(same))
        if (inst.nd_to_partial({same, v}) >= 1) group.push_back(v);
    for (Vertex v : group) {
        inst.remove_candidate({same, v});
        pruned.push_back({same, v});
    }

    if (inst.nd_to_partial(removed) == 0) {
        // The unique non-neighbor sits in C; drop its candidate non-neighbors.
        Vertex witness = -1;
        for (Vertex w : inst.candidates(opp)) {
            bool adj = same == Side::Left ? g.has_edge(removed.index, w) : g.has_edge(w, removed.index);
            if (!adj) {
                witness = w;
                break;
            }
        }
        if (witness >= 0) {
            group.clear();
            for (Vertex v : inst.candidates(same)) {
                bool adj = same == Side::Left ? g.has_edge(v, witness) : g.has_edge(witness, v);
                if (!adj) group.push_back(v);
            }
            for (Vertex v : group) {
                inst.remove_candidate({same, v});
                pruned.push_back({same, v});
            }
        }
    }
    return pruned;
}

std::vector<Vertex> descending_degree_order(const BipartiteGraph& g) {
    std::vector<Vertex> order(static_cast<std::size_t>(g.n_left()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        Vertex da = g.degree(Side::Left, a), db = g.degree(Side::Left, b);
        if (da != db) return da > db;
        return a < b;
    });
    return order;
}

InstanceSeed ordering_seed(const BipartiteGraph& g, std::span<const Vertex> order, std::size_t pos) {
    InstanceSeed seed;
    seed.seed_left = order[pos];
    seed.order_pos = pos;
    seed.cand_left = two_hop_after(g, order, pos);

    std::vector<char> seen(static_cast<std::size_t>(g.n_right()), 0);
    auto take = [&](Vertex u) {
        for (Vertex v : g.neighbors(Side::Left, u))
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                seed.cand_right.push_back(v);
            }
    };
    take(seed.seed_left);
    for (Vertex u : seed.cand_left) take(u);
    std::sort(seed.cand_right.begin(), seed.cand_right.end());
    return seed;
}

std::vector<InstanceSeed> ordering_instances(const BipartiteGraph& g) {
    auto order = descending_degree_order(g);
    std::vector<InstanceSeed> seeds;
    seeds.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) seeds.push_back(ordering_seed(g, order, i));
    return seeds;
}

std::optional<ThresholdPair> progressive_thresholds(const ThresholdPair& prev,
                                                    std::int64_t best_edges, std::int64_t theta) {
    if (prev.theta_u < theta) throw ContractViolation("previous theta_u below the user threshold");
    if (prev.theta_u == theta) return std::nullopt;
    ThresholdPair next;
    next.theta_v = std::max(theta, best_edges / prev.theta_u);
    next.theta_u = std::max(theta, prev.theta_u / 2);
    return next;
}

std::size_t red_i(const BipartiteGraph& g, Vertex seed_left, const ThresholdPair& thresholds,
                  std::int64_t k, std::vector<Vertex>& cand_left, std::vector<Vertex>& cand_right) {
    const std::int64_t cn_need = thresholds.theta_v - k;
    const std::int64_t deg_need = thresholds.theta_u - k;
    std::size_t before = cand_left.size() + cand_right.size();

    if (cn_need > 0) {
        std::vector<char> mark(static_cast<std::size_t>(g.n_right()), 0);
        for (Vertex v : g.neighbors(Side::Left, seed_left)) mark[static_cast<std::size_t>(v)] = 1;
        std::erase_if(cand_left, [&](Vertex u) {
            std::int64_t cn = 0;
            for (Vertex v : g.neighbors(Side::Left, u)) cn += mark[static_cast<std::size_t>(v)];
            return cn < cn_need;
        });
    }
    if (deg_need > 0)
        std::erase_if(cand_right,
                      [&](Vertex v) { return g.degree(Side::Right, v) < deg_need; });

    return before - (cand_left.size() + cand_right.size());
}

}  // namespace mdb
