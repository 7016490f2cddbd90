#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lbga {

using Vertex = std::uint32_t;
using LayerMask = std::uint64_t;

inline constexpr std::size_t kMaxLayers = 64;

/// Raised for malformed user input (bad vertex ids, self-loops, bad files).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::uint64_t edgeKey(Edge e) {
    return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

/// Unweighted undirected simple graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    /// Builds from arbitrary pairs; reversed and repeated pairs collapse.
    /// Throws InputError on self-loops or ids >= n.
    static Graph fromEdgeList(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs);

    /// Builds from edges already known to be valid, sorted and unique.
    static Graph fromSortedEdges(std::size_t n, std::vector<Edge> edges);

    std::size_t numberOfNodes() const { return adjacency_.size(); }
    std::size_t numberOfEdges() const { return edges_.size(); }

    /// Sorted neighbor list. Throws InputError if u >= n.
    std::span<const Vertex> neighbors(Vertex u) const;
    std::size_t degree(Vertex u) const { return neighbors(u).size(); }

    bool hasEdge(Vertex u, Vertex v) const;
    bool hasEdge(Edge e) const { return edgeSet_.contains(edgeKey(e)); }

    /// Edges in lexicographic (u, v) order.
    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edgeSet_;
};

/// Size of the intersection of two sorted vertex lists.
std::size_t countCommon(std::span<const Vertex> a, std::span<const Vertex> b);

/// m layers on a shared vertex set together with their union edge set U.
class GraphCollection {
public:
    /// Throws InputError on an empty list, mismatched vertex counts or m > 64.
    static GraphCollection collect(std::vector<Graph> layers);

    std::size_t numberOfNodes() const { return layers_.front().numberOfNodes(); }
    std::size_t numberOfLayers() const { return layers_.size(); }
    const Graph& layer(std::size_t i) const { return layers_.at(i); }
    const std::vector<Graph>& layers() const { return layers_; }

    /// Union edges in lexicographic order; indices into this vector are the
    /// stable edge ids used throughout the engine.
    const std::vector<Edge>& unionEdges() const { return unionEdges_; }
    std::span<const LayerMask> membership() const { return membership_; }
    LayerMask membership(std::size_t edgeIndex) const { return membership_[edgeIndex]; }

    /// Index of e in unionEdges(), or -1 when e is not a union edge.
    std::ptrdiff_t indexOf(Edge e) const;

    Graph unionGraph() const;

private:
    std::vector<Graph> layers_;
    std::vector<Edge> unionEdges_;
    std::vector<LayerMask> membership_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// |E(g) ∩ U| / |U|. Throws InputError when U is empty or vertex counts differ.
double sparsity(const Graph& g, const GraphCollection& coll);

/// Maps external string labels to dense vertex ids, in first-seen order.
class LabelTable {
public:
    Vertex intern(std::string_view label);
    /// Id for a known label; throws InputError otherwise.
    Vertex id(std::string_view label) const;
    bool contains(std::string_view label) const;
    const std::string& label(Vertex v) const { return labels_.at(v); }
    std::size_t size() const { return labels_.size(); }

    /// Labels "0".."n-1" mapped to themselves.
    static LabelTable identity(std::size_t n);

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> ids_;
};

/// Reads one edge-list layer: two whitespace-separated labels per line,
/// lines starting with '#' and blank lines ignored. New labels are interned.
std::vector<std::pair<Vertex, Vertex>> readEdgeList(std::istream& in, LabelTable& labels);

/// Reads every layer file with one shared label table. Vertices already
/// present in `labels` keep their ids; n is the final table size.
GraphCollection readLayers(std::span<const std::filesystem::path> paths, LabelTable& labels);

void writeEdgeList(std::ostream& out, const Graph& g, const LabelTable& labels);
void writeEdgeList(const std::filesystem::path& path, const Graph& g, const LabelTable& labels);

} // namespace lbga
