#ifndef MDB_GRAPH_HPP
#define MDB_GRAPH_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mdb {

using Vertex = std::int32_t;

/// The two sides of a bipartite graph. Left holds the U vertices, Right the V vertices.
enum class Side : std::uint8_t { Left = 0, Right = 1 };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
constexpr std::size_t side_index(Side s) { return static_cast<std::size_t>(s); }

/// A vertex reference: a side plus a dense 0-based index within that side.
struct VertexRef {
    Side side = Side::Left;
    Vertex index = 0;

    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct LoadOptions {
    bool one_based = false;
    std::string comment_prefixes = "%#";
};

struct LoadStats {
    std::size_t lines_read = 0;
    std::size_t duplicate_edges = 0;
};

/// Immutable bipartite graph with per-vertex sorted neighbor lists.
///
/// Vertices are dense 0-based indices per side. Adjacency is symmetric by
/// construction: v appears in neighbors(u) iff u appears in neighbors(v).
/// Original input labels are retained for reporting.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    /// Builds a graph from explicit side sizes and an edge list.
    /// Duplicate edges are collapsed; out-of-range endpoints are rejected.
    static BipartiteGraph from_edges(Vertex n_left, Vertex n_right,
                                     std::vector<std::pair<Vertex, Vertex>> edges);

    Vertex n(Side s) const { return static_cast<Vertex>(adj_[side_index(s)].size()); }
    Vertex n_left() const { return n(Side::Left); }
    Vertex n_right() const { return n(Side::Right); }
    std::int64_t edge_count() const { return m_; }

    std::span<const Vertex> neighbors(Side s, Vertex v) const {
        return adj_[side_index(s)][static_cast<std::size_t>(v)];
    }
    std::span<const Vertex> neighbors(VertexRef v) const { return neighbors(v.side, v.index); }

    Vertex degree(Side s, Vertex v) const {
        return static_cast<Vertex>(adj_[side_index(s)][static_cast<std::size_t>(v)].size());
    }
    Vertex degree(VertexRef v) const { return degree(v.side, v.index); }

    bool has_edge(Vertex left, Vertex right) const;
    bool valid(VertexRef v) const { return v.index >= 0 && v.index < n(v.side); }

    /// Original input label of a vertex (file ids for loaded graphs, the
    /// pre-reduction label for reduced graphs).
    std::int64_t label(Side s, Vertex v) const { return labels_[side_index(s)][static_cast<std::size_t>(v)]; }

    /// Replaces the label maps; used by reductions to keep reporting ids stable.
    void set_labels(std::vector<std::int64_t> left, std::vector<std::int64_t> right);

    /// Graph with the two sides exchanged.
    BipartiteGraph transposed() const;

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.adj_ == b.adj_ && a.labels_ == b.labels_;
    }

private:
    std::array<std::vector<std::vector<Vertex>>, 2> adj_;
    std::array<std::vector<std::int64_t>, 2> labels_;
    std::int64_t m_ = 0;

    friend BipartiteGraph load_edge_list(std::istream&, const LoadOptions&, LoadStats*);
};

/// Parses a whitespace-separated two-column edge list.
///
/// Lines starting with a comment prefix are skipped, except that a comment of
/// the form "% <m> <n_left> <n_right>" declares side sizes so trailing isolated
/// vertices survive. Without such a header, sizes are max observed id + 1.
/// Duplicate edges are collapsed (counted in stats); malformed tokens raise
/// ParseError with the line number.
BipartiteGraph load_edge_list(std::istream& in, const LoadOptions& opts = {},
                              LoadStats* stats = nullptr);
BipartiteGraph load_edge_list_file(const std::string& path, const LoadOptions& opts = {},
                                   LoadStats* stats = nullptr);

/// Writes the graph in the edge-list format accepted by load_edge_list,
/// including the size header, using original labels. load(write(g)) == g.
void write_edge_list(const BipartiteGraph& g, std::ostream& out);

/// |N(a) ∩ N(b)| for two same-side vertices; equals degree(a) when a == b.
std::int64_t common_neighbors(const BipartiteGraph& g, VertexRef a, VertexRef b);

/// Left vertices w != order[pos] sharing at least one neighbor with order[pos]
/// and placed after position pos in `order`. Result is sorted by index.
std::vector<Vertex> two_hop_after(const BipartiteGraph& g, std::span<const Vertex> order,
                                  std::size_t pos);

/// |U_S|*|V_S| minus the number of edges induced on (U_S, V_S).
std::int64_t non_edge_count(const BipartiteGraph& g, std::span<const Vertex> left,
                            std::span<const Vertex> right);

}  // namespace mdb

#endif
