#include <lbga/eval.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace lbga {

namespace {

double entropy(const std::vector<std::size_t>& sizes, double n) {
    double h = 0.0;
    for (std::size_t s : sizes) {
        if (s > 0) {
            const double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

} // namespace

double nmi(const Clustering& a, const Clustering& b) {
    if (a.size() != b.size()) {
        throw InputError("clusterings disagree on vertex count");
    }
    const std::size_t n = a.size();
    if (n == 0 || a == b) {
        return 1.0;
    }
    std::unordered_map<std::uint64_t, std::size_t> joint;
    for (Vertex v = 0; v < n; ++v) {
        ++joint[(static_cast<std::uint64_t>(a[v]) << 32) | b[v]];
    }
    const auto sizesA = a.clusterSizes();
    const auto sizesB = b.clusterSizes();
    const double total = static_cast<double>(n);
    const double ha = entropy(sizesA, total);
    const double hb = entropy(sizesB, total);
    if (ha + hb == 0.0) {
        // both partitions are a single cluster, hence identical
        return 1.0;
    }
    double mutual = 0.0;
    for (const auto& [key, count] : joint) {
        const double nab = static_cast<double>(count);
        const double na = static_cast<double>(sizesA[key >> 32]);
        const double nb = static_cast<double>(sizesB[key & 0xffffffffULL]);
        mutual += nab / total * std::log(nab * total / (na * nb));
    }
    return std::clamp(2.0 * mutual / (ha + hb), 0.0, 1.0);
}

double modularity(const Graph& g, const Clustering& c) {
    if (g.numberOfNodes() != c.size()) {
        throw InputError("graph and clustering disagree on vertex count");
    }
    if (g.numberOfEdges() == 0) {
        throw InputError("modularity is undefined for a graph without edges");
    }
    std::vector<double> internal(c.numberOfClusters(), 0.0);
    std::vector<double> volume(c.numberOfClusters(), 0.0);
    for (const Edge& e : g.edges()) {
        if (c[e.u] == c[e.v]) {
            internal[c[e.u]] += 1.0;
        }
    }
    for (Vertex v = 0; v < g.numberOfNodes(); ++v) {
        volume[c[v]] += static_cast<double>(g.degree(v));
    }
    const double m = static_cast<double>(g.numberOfEdges());
    double q = 0.0;
    for (std::size_t k = 0; k < internal.size(); ++k) {
        const double share = volume[k] / (2.0 * m);
        q += internal[k] / m - share * share;
    }
    return q;
}

std::vector<double> sourceWeightProfile(const WeightState& state) {
    const std::size_t m = state.numberOfLayers();
    const std::size_t edges = state.numberOfEdges();
    std::vector<double> profile(m, 0.0);
    if (edges == 0) {
        std::fill(profile.begin(), profile.end(), 1.0 / static_cast<double>(m));
        return profile;
    }
    for (std::size_t e = 0; e < edges; ++e) {
        const auto w = state.weights(e);
        double total = 0.0;
        for (double x : w) {
            total += x;
        }
        for (std::size_t i = 0; i < m; ++i) {
            profile[i] += w[i] / total;
        }
    }
    for (double& p : profile) {
        p /= static_cast<double>(edges);
    }
    return profile;
}

double unionBaseline(const GraphCollection& coll, const GroundTruth& truth) {
    return modularity(coll.unionGraph(), truth);
}

std::string formatValue(std::optional<double> v) {
    if (!v || std::isnan(*v)) {
        return {};
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    return buf;
}

void writeTraceCsv(std::ostream& out, const RunTrace& trace, std::size_t layers) {
    out << "round,nmi,modularity,num_edges,active_edges";
    for (std::size_t i = 0; i < layers; ++i) {
        out << ",w_src_" << i;
    }
    out << '\n';
    for (const TraceRow& row : trace.rows) {
        out << row.round << ',' << formatValue(row.nmi) << ',' << formatValue(row.modularity) << ','
            << row.numEdges << ',' << row.activeEdges;
        for (double w : row.sourceWeights) {
            out << ',' << formatValue(w);
        }
        out << '\n';
    }
}

void writeSummaryHeader(std::ostream& out) {
    out << "dataset,union_modularity,measure,modularity,nmi,sparsity,source_weights,seed,rounds,terminated_by\n";
}

void writeSummaryRow(std::ostream& out, const SummaryRow& row) {
    out << row.dataset << ',' << formatValue(row.unionModularity) << ',' << row.measure << ','
        << formatValue(row.modularity) << ',' << formatValue(row.nmi) << ',' << formatValue(row.sparsity) << ',';
    for (std::size_t i = 0; i < row.sourceWeights.size(); ++i) {
        out << (i ? ";" : "") << formatValue(row.sourceWeights[i]);
    }
    out << ',' << row.seed << ',' << row.rounds << ',' << row.terminatedBy << '\n';
}

} // namespace lbga
