#include "mdb/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mdb/errors.hpp"

namespace mdb {

namespace {

void sort_dedup(std::vector<Vertex>& list, std::size_t* dupes) {
    std::sort(list.begin(), list.end());
    auto last = std::unique(list.begin(), list.end());
    if (dupes) *dupes += static_cast<std::size_t>(list.end() - last);
    list.erase(last, list.end());
}

void identity_labels(std::vector<std::int64_t>& labels, Vertex n, std::int64_t base) {
    labels.resize(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), base);
}

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(Vertex n_left, Vertex n_right,
                                          std::vector<std::pair<Vertex, Vertex>> edges) {
    if (n_left < 0 || n_right < 0) throw ContractViolation("negative side size");
    BipartiteGraph g;
    g.adj_[0].resize(static_cast<std::size_t>(n_left));
    g.adj_[1].resize(static_cast<std::size_t>(n_right));
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n_left || v < 0 || v >= n_right)
            throw ContractViolation("edge endpoint out of range");
        g.adj_[0][static_cast<std::size_t>(u)].push_back(v);
        g.adj_[1][static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& side : g.adj_)
        for (auto& list : side) sort_dedup(list, nullptr);
    for (const auto& list : g.adj_[0]) g.m_ += static_cast<std::int64_t>(list.size());
    identity_labels(g.labels_[0], n_left, 0);
    identity_labels(g.labels_[1], n_right, 0);
    return g;
}

bool BipartiteGraph::has_edge(Vertex left, Vertex right) const {
    const auto& list = adj_[0][static_cast<std::size_t>(left)];
    return std::binary_search(list.begin(), list.end(), right);
}

void BipartiteGraph::set_labels(std::vector<std::int64_t> left, std::vector<std::int64_t> right) {
    if (left.size() != adj_[0].size() || right.size() != adj_[1].size())
        throw ContractViolation("label vector size mismatch");
    labels_[0] = std::move(left);
    labels_[1] = std::move(right);
}

BipartiteGraph BipartiteGraph::transposed() const {
    BipartiteGraph g;
    g.adj_[0] = adj_[1];
    g.adj_[1] = adj_[0];
    g.labels_[0] = labels_[1];
    g.labels_[1] = labels_[0];
    g.m_ = m_;
    return g;
}

BipartiteGraph load_edge_list(std::istream& in, const LoadOptions& opts, LoadStats* stats) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::int64_t declared_left = -1, declared_right = -1;
    std::int64_t max_left = -1, max_right = -1;
    const std::int64_t base = opts.one_based ? 1 : 0;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (opts.comment_prefixes.find(line[start]) != std::string::npos) {
            // KONECT-style size header: "% <m> <n_left> <n_right>"
            std::istringstream hs(line.substr(start + 1));
            std::int64_t hm, hl, hr;
            std::string extra;
            if (declared_left < 0 && (hs >> hm >> hl >> hr) && !(hs >> extra)) {
                declared_left = hl;
                declared_right = hr;
            }
            continue;
        }
        std::istringstream ls(line);
        std::int64_t a, b;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra)) throw ParseError("expected two integer tokens", lineno);
        a -= base;
        b -= base;
        if (a < 0 || b < 0) throw ParseError("vertex id below index base", lineno);
        if (a > INT32_MAX || b > INT32_MAX) throw ParseError("vertex id out of range", lineno);
        max_left = std::max(max_left, a);
        max_right = std::max(max_right, b);
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }

    std::int64_t n_left = std::max(declared_left, max_left + 1);
    std::int64_t n_right = std::max(declared_right, max_right + 1);

    BipartiteGraph g;
    g.adj_[0].resize(static_cast<std::size_t>(n_left));
    g.adj_[1].resize(static_cast<std::size_t>(n_right));
    for (auto [u, v] : edges) {
        g.adj_[0][static_cast<std::size_t>(u)].push_back(v);
        g.adj_[1][static_cast<std::size_t>(v)].push_back(u);
    }
    std::size_t dupes = 0;
    for (auto& list : g.adj_[0]) sort_dedup(list, &dupes);
    for (auto& list : g.adj_[1]) sort_dedup(list, nullptr);
    for (const auto& list : g.adj_[0]) g.m_ += static_cast<std::int64_t>(list.size());

    std::vector<std::int64_t> ll, rl;
    identity_labels(ll, static_cast<Vertex>(n_left), base);
    identity_labels(rl, static_cast<Vertex>(n_right), base);
    g.labels_[0] = std::move(ll);
    g.labels_[1] = std::move(rl);

    if (stats) {
        stats->lines_read = lineno;
        stats->duplicate_edges = dupes;
    }
    return g;
}

BipartiteGraph load_edge_list_file(const std::string& path, const LoadOptions& opts,
                                   LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_edge_list(in, opts, stats);
}

void write_edge_list(const BipartiteGraph& g, std::ostream& out) {
    out << "% " << g.edge_count() << ' ' << g.n_left() << ' ' << g.n_right() << '\n';
    for (Vertex u = 0; u < g.n_left(); ++u)
        for (Vertex v : g.neighbors(Side::Left, u))
            out << g.label(Side::Left, u) << ' ' << g.label(Side::Right, v) << '\n';
}

std::int64_t common_neighbors(const BipartiteGraph& g, VertexRef a, VertexRef b) {
    if (a.side != b.side) throw ContractViolation("common_neighbors requires same-side vertices");
    if (!g.valid(a) || !g.valid(b)) throw ContractViolation("vertex out of range");
    if (a.index == b.index) return g.degree(a);
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::int64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
        if (na[i] < nb[j])
            ++i;
        else if (na[i] > nb[j])
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::vector<Vertex> two_hop_after(const BipartiteGraph& g, std::span<const Vertex> order,
                                  std::size_t pos) {
    const Vertex u = order[pos];
    std::vector<std::size_t> rank(static_cast<std::size_t>(g.n_left()));
    for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = i;

    std::vector<char> seen(static_cast<std::size_t>(g.n_left()), 0);
    std::vector<Vertex> result;
    for (Vertex v : g.neighbors(Side::Left, u))
        for (Vertex w : g.neighbors(Side::Right, v)) {
            if (w == u || seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            if (rank[static_cast<std::size_t>(w)] > pos) result.push_back(w);
        }
    std::sort(result.begin(), result.end());
    return result;
}

std::int64_t non_edge_count(const BipartiteGraph& g, std::span<const Vertex> left,
                            std::span<const Vertex> right) {
    std::vector<char> in_right(static_cast<std::size_t>(g.n_right()), 0);
    for (Vertex v : right) in_right[static_cast<std::size_t>(v)] = 1;
    std::int64_t edges = 0;
    for (Vertex u : left)
        for (Vertex v : g.neighbors(Side::Left, u)) edges += in_right[static_cast<std::size_t>(v)];
    return static_cast<std::int64_t>(left.size()) * static_cast<std::int64_t>(right.size()) - edges;
}

}  // namespace mdb
