#include <lbga/graph.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lbga {

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph Graph::fromEdgeList(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) {
            throw InputError("vertex id " + std::to_string(std::max(a, b))
                             + " out of range for n=" + std::to_string(n));
        }
        if (a == b) {
            throw InputError("self-loop on vertex " + std::to_string(a));
        }
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return fromSortedEdges(n, std::move(edges));
}

Graph Graph::fromSortedEdges(std::size_t n, std::vector<Edge> edges) {
    Graph g(n);
    std::vector<std::size_t> deg(n, 0);
    for (const Edge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (std::size_t v = 0; v < n; ++v) {
        g.adjacency_[v].reserve(deg[v]);
    }
    // smaller neighbors first, then larger; lexicographic edge order keeps both runs sorted
    for (const Edge& e : edges) {
        g.adjacency_[e.v].push_back(e.u);
    }
    for (const Edge& e : edges) {
        g.adjacency_[e.u].push_back(e.v);
    }
    g.edgeSet_.reserve(edges.size());
    for (const Edge& e : edges) {
        g.edgeSet_.insert(edgeKey(e));
    }
    g.edges_ = std::move(edges);
    return g;
}

std::span<const Vertex> Graph::neighbors(Vertex u) const {
    if (u >= adjacency_.size()) {
        throw InputError("vertex id " + std::to_string(u) + " out of range");
    }
    return adjacency_[u];
}

bool Graph::hasEdge(Vertex u, Vertex v) const {
    if (u == v) {
        return false;
    }
    return hasEdge(Edge(u, v));
}

std::size_t countCommon(std::span<const Vertex> a, std::span<const Vertex> b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

GraphCollection GraphCollection::collect(std::vector<Graph> layers) {
    if (layers.empty()) {
        throw InputError("graph collection needs at least one layer");
    }
    if (layers.size() > kMaxLayers) {
        throw InputError("at most 64 layers are supported");
    }
    const std::size_t n = layers.front().numberOfNodes();
    for (const Graph& g : layers) {
        if (g.numberOfNodes() != n) {
            throw InputError("layers disagree on vertex count");
        }
    }

    std::vector<std::pair<Edge, LayerMask>> tagged;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        for (const Edge& e : layers[i].edges()) {
            tagged.emplace_back(e, LayerMask{1} << i);
        }
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    GraphCollection coll;
    for (const auto& [e, bit] : tagged) {
        if (!coll.unionEdges_.empty() && coll.unionEdges_.back() == e) {
            coll.membership_.back() |= bit;
        } else {
            coll.unionEdges_.push_back(e);
            coll.membership_.push_back(bit);
        }
    }
    coll.index_.reserve(coll.unionEdges_.size());
    for (std::size_t k = 0; k < coll.unionEdges_.size(); ++k) {
        coll.index_.emplace(edgeKey(coll.unionEdges_[k]), k);
    }
    coll.layers_ = std::move(layers);
    return coll;
}

std::ptrdiff_t GraphCollection::indexOf(Edge e) const {
    auto it = index_.find(edgeKey(e));
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

Graph GraphCollection::unionGraph() const {
    return Graph::fromSortedEdges(numberOfNodes(), unionEdges_);
}

double sparsity(const Graph& g, const GraphCollection& coll) {
    if (coll.unionEdges().empty()) {
        throw InputError("sparsity is undefined for an empty union edge set");
    }
    if (g.numberOfNodes() != coll.numberOfNodes()) {
        throw InputError("graph and collection disagree on vertex count");
    }
    std::size_t kept = 0;
    for (const Edge& e : g.edges()) {
        if (coll.indexOf(e) >= 0) {
            ++kept;
        }
    }
    return static_cast<double>(kept) / static_cast<double>(coll.unionEdges().size());
}

Vertex LabelTable::intern(std::string_view label) {
    std::string key(label);
    auto it = ids_.find(key);
    if (it != ids_.end()) {
        return it->second;
    }
    const auto id = static_cast<Vertex>(labels_.size());
    ids_.emplace(key, id);
    labels_.push_back(std::move(key));
    return id;
}

Vertex LabelTable::id(std::string_view label) const {
    auto it = ids_.find(std::string(label));
    if (it == ids_.end()) {
        throw InputError("unknown vertex label '" + std::string(label) + "'");
    }
    return it->second;
}

bool LabelTable::contains(std::string_view label) const {
    return ids_.contains(std::string(label));
}

LabelTable LabelTable::identity(std::size_t n) {
    LabelTable t;
    for (std::size_t v = 0; v < n; ++v) {
        t.intern(std::to_string(v));
    }
    return t;
}

std::vector<std::pair<Vertex, Vertex>> readEdgeList(std::istream& in, LabelTable& labels) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream fields(line);
        std::string a;
        std::string b;
        if (!(fields >> a) || a.front() == '#') {
            continue;
        }
        if (!(fields >> b)) {
            throw InputError("line " + std::to_string(lineNo) + ": expected two vertex labels");
        }
        // two statements: argument evaluation order would otherwise decide vertex ids
        const Vertex u = labels.intern(a);
        const Vertex v = labels.intern(b);
        pairs.emplace_back(u, v);
    }
    return pairs;
}

GraphCollection readLayers(std::span<const std::filesystem::path> paths, LabelTable& labels) {
    std::vector<std::vector<std::pair<Vertex, Vertex>>> raw;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            throw InputError("cannot open layer file " + path.string());
        }
        try {
            raw.push_back(readEdgeList(in, labels));
        } catch (const InputError& e) {
            throw InputError(path.string() + ": " + e.what());
        }
    }
    std::vector<Graph> layers;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
            layers.push_back(Graph::fromEdgeList(labels.size(), raw[i]));
        } catch (const InputError& e) {
            throw InputError(paths[i].string() + ": " + e.what());
        }
    }
    return GraphCollection::collect(std::move(layers));
}

void writeEdgeList(std::ostream& out, const Graph& g, const LabelTable& labels) {
    for (const Edge& e : g.edges()) {
        out << labels.label(e.u) << ' ' << labels.label(e.v) << '\n';
    }
}

void writeEdgeList(const std::filesystem::path& path, const Graph& g, const LabelTable& labels) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    writeEdgeList(out, g, labels);
}

} // namespace lbga
