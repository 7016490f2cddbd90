#include <lbga/clustering.hpp>
#include <lbga/walktrap.hpp>

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lbga {

Clustering::Clustering(std::vector<ClusterId> assignment) : assignment_(std::move(assignment)) {
    std::unordered_map<ClusterId, ClusterId> relabel;
    for (ClusterId& c : assignment_) {
        auto [it, fresh] = relabel.try_emplace(c, static_cast<ClusterId>(relabel.size()));
        c = it->second;
    }
    clusterCount_ = relabel.size();
}

Clustering Clustering::singletons(std::size_t n) {
    std::vector<ClusterId> a(n);
    for (std::size_t v = 0; v < n; ++v) {
        a[v] = static_cast<ClusterId>(v);
    }
    return Clustering(std::move(a));
}

Clustering Clustering::single(std::size_t n) {
    return Clustering(std::vector<ClusterId>(n, 0));
}

std::vector<std::size_t> Clustering::clusterSizes() const {
    std::vector<std::size_t> sizes(clusterCount_, 0);
    for (ClusterId c : assignment_) {
        ++sizes[c];
    }
    return sizes;
}

Clustering SingletonClustering::run(const Graph& g) const {
    return Clustering::singletons(g.numberOfNodes());
}

Clustering cluster(const ClusteringAlgorithm& algo, const Graph& g) {
    Clustering c = algo.run(g);
    if (c.size() != g.numberOfNodes()) {
        throw std::logic_error(algo.name() + " returned a clustering of the wrong size");
    }
    return c;
}

std::unique_ptr<ClusteringAlgorithm> makeClusteringAlgorithm(const std::string& name) {
    if (name == "walktrap") {
        return std::make_unique<Walktrap>();
    }
    if (name == "singletons") {
        return std::make_unique<SingletonClustering>();
    }
    throw InputError("unknown clustering algorithm '" + name + "'");
}

void writeClustering(std::ostream& out, const Clustering& c, const LabelTable& labels) {
    for (Vertex v = 0; v < c.size(); ++v) {
        out << labels.label(v) << ' ' << c[v] << '\n';
    }
}

Clustering readClustering(std::istream& in, LabelTable& labels) {
    constexpr auto kUnset = std::numeric_limits<ClusterId>::max();
    std::vector<ClusterId> assignment;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream fields(line);
        std::string label;
        long long id = -1;
        if (!(fields >> label) || label.front() == '#') {
            continue;
        }
        if (!(fields >> id) || id < 0 || id >= kUnset) {
            throw InputError("line " + std::to_string(lineNo) + ": expected '<label> <cluster>'");
        }
        const Vertex v = labels.intern(label);
        if (assignment.size() <= v) {
            assignment.resize(v + 1, kUnset);
        }
        assignment[v] = static_cast<ClusterId>(id);
    }
    if (assignment.size() < labels.size()) {
        assignment.resize(labels.size(), kUnset);
    }
    for (Vertex v = 0; v < assignment.size(); ++v) {
        if (assignment[v] == kUnset) {
            throw InputError("vertex '" + labels.label(v) + "' has no cluster assignment");
        }
    }
    return Clustering(std::move(assignment));
}

} // namespace lbga
