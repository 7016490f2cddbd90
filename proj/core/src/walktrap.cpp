#include <lbga/walktrap.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>

namespace lbga {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Neighbor community and the number of original edges joining the two.
/// Links to merged communities are left in place and skipped when read.
using Link = std::pair<int, double>;

/// Agglomeration state. Communities 0..a-1 are the non-isolated vertices;
/// merge number s creates community a+s. Each live community owns one row of
/// the Gram matrix of its scaled walk vectors x_C = D^{-1/2} P^t_C., so
/// squared walk distances are G_11 + G_22 - 2 G_12.
class WalktrapRun {
public:
    WalktrapRun(const Graph& g, unsigned walkLength);
    Clustering result() const;

private:
    void computeGram(unsigned walkLength, const std::vector<int>& local);
    double deltaSigma(int a, int b) const;
    void merge(int a, int b);

    const Graph& g_;
    std::vector<Vertex> vertices_; // local id -> vertex
    Eigen::MatrixXd gram_;
    std::vector<int> slot_;        // community -> Gram row
    std::vector<double> size_;
    std::vector<double> degree_;   // degree sum in the original graph
    std::vector<char> alive_;
    std::vector<std::vector<Link>> links_; // sorted by community id
    std::priority_queue<std::tuple<double, int, int>, std::vector<std::tuple<double, int, int>>,
                        std::greater<>>
        candidates_;
    std::vector<std::pair<int, int>> merges_;
    double totalEdges_ = 0;
    double modularity_ = 0;
    double bestModularity_ = 0;
    std::size_t bestLevel_ = 0;
};

WalktrapRun::WalktrapRun(const Graph& g, unsigned walkLength) : g_(g) {
    const std::size_t n = g.numberOfNodes();
    totalEdges_ = static_cast<double>(g.numberOfEdges());
    if (totalEdges_ == 0) {
        return;
    }
    std::vector<int> local(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) > 0) {
            local[v] = static_cast<int>(vertices_.size());
            vertices_.push_back(v);
        }
    }
    const std::size_t count = vertices_.size();
    const std::size_t slots = 2 * count - 1;
    slot_.assign(slots, -1);
    size_.assign(slots, 0.0);
    degree_.assign(slots, 0.0);
    alive_.assign(slots, 0);
    links_.resize(slots);

    computeGram(walkLength, local);

    for (std::size_t i = 0; i < count; ++i) {
        slot_[i] = static_cast<int>(i);
        size_[i] = 1.0;
        degree_[i] = static_cast<double>(g.degree(vertices_[i]));
        alive_[i] = 1;
        const double share = degree_[i] / (2 * totalEdges_);
        modularity_ -= share * share;
        for (Vertex k : g.neighbors(vertices_[i])) {
            links_[i].emplace_back(local[k], 1.0);
        }
    }
    for (const Edge& e : g.edges()) {
        const int a = local[e.u];
        const int b = local[e.v];
        candidates_.emplace(deltaSigma(a, b), a, b);
    }
    bestModularity_ = modularity_;
    while (!candidates_.empty()) {
        auto [ds, a, b] = candidates_.top();
        candidates_.pop();
        // a pair's Δσ never changes while both ends live, so stale entries are
        // exactly those with a merged end
        if (!alive_[a] || !alive_[b]) {
            continue;
        }
        merge(a, b);
        if (modularity_ > bestModularity_) {
            bestModularity_ = modularity_;
            bestLevel_ = merges_.size();
        }
    }
}

void WalktrapRun::computeGram(unsigned walkLength, const std::vector<int>& local) {
    const auto count = static_cast<Eigen::Index>(vertices_.size());
    std::vector<double> invDegree(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        invDegree[i] = 1.0 / static_cast<double>(g_.degree(vertices_[i]) + 1);
    }
    // closed neighborhood N[i] = N(i) ∪ {i}: the walk has a unit loop at every vertex
    auto forClosed = [&](Eigen::Index i, auto&& fn) {
        fn(i);
        for (Vertex k : g_.neighbors(vertices_[i])) {
            fn(static_cast<Eigen::Index>(local[k]));
        }
    };

    // the first two steps are sparse scatters, the rest dense row sums
    RowMatrix walk = RowMatrix::Zero(count, count);
    for (Eigen::Index i = 0; i < count; ++i) {
        if (walkLength == 1) {
            forClosed(i, [&](Eigen::Index k) { walk(i, k) = invDegree[i]; });
            continue;
        }
        forClosed(i, [&](Eigen::Index k) {
            const double w = invDegree[i] * invDegree[k];
            forClosed(k, [&](Eigen::Index l) { walk(i, l) += w; });
        });
    }
    RowMatrix next(count, count);
    for (unsigned step = 2; step < walkLength; ++step) {
        for (Eigen::Index i = 0; i < count; ++i) {
            auto row = next.row(i);
            row.setZero();
            forClosed(i, [&](Eigen::Index k) { row.noalias() += walk.row(k); });
            row *= invDegree[i];
        }
        walk.swap(next);
    }
    for (Eigen::Index k = 0; k < count; ++k) {
        walk.col(k) *= std::sqrt(invDegree[k]);
    }
    gram_.resize(count, count);
    gram_.setZero();
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(walk);
    gram_.triangularView<Eigen::StrictlyUpper>() = gram_.transpose();
}

double WalktrapRun::deltaSigma(int a, int b) const {
    const int sa = slot_[a];
    const int sb = slot_[b];
    const double distance = std::max(0.0, gram_(sa, sa) + gram_(sb, sb) - 2.0 * gram_(sa, sb));
    return size_[a] * size_[b] / (size_[a] + size_[b]) * distance / static_cast<double>(vertices_.size());
}

void WalktrapRun::merge(int a, int b) {
    const int merged = static_cast<int>(vertices_.size() + merges_.size());
    const double total = size_[a] + size_[b];
    const double wa = size_[a] / total;
    const double wb = size_[b] / total;
    const int sa = slot_[a];
    const int sb = slot_[b];

    // x_merged = wa·x_a + wb·x_b; reuse a's Gram row
    const double self = wa * wa * gram_(sa, sa) + 2 * wa * wb * gram_(sa, sb) + wb * wb * gram_(sb, sb);
    gram_.col(sa) = wa * gram_.col(sa) + wb * gram_.col(sb);
    gram_.row(sa) = gram_.col(sa).transpose();
    gram_(sa, sa) = self;

    slot_[merged] = sa;
    size_[merged] = total;
    degree_[merged] = degree_[a] + degree_[b];
    alive_[a] = 0;
    alive_[b] = 0;
    alive_[merged] = 1;

    auto& la = links_[a];
    auto& lb = links_[b];
    const double between = std::lower_bound(la.begin(), la.end(), Link{b, 0.0})->second;
    modularity_ += between / totalEdges_ - degree_[a] * degree_[b] / (2 * totalEdges_ * totalEdges_);

    auto& lm = links_[merged];
    lm.reserve(la.size() + lb.size());
    auto ia = la.begin();
    auto ib = lb.begin();
    while (ia != la.end() || ib != lb.end()) {
        Link next;
        if (ib == lb.end() || (ia != la.end() && ia->first < ib->first)) {
            next = *ia++;
        } else if (ia == la.end() || ib->first < ia->first) {
            next = *ib++;
        } else {
            next = {ia->first, ia->second + ib->second};
            ++ia;
            ++ib;
        }
        if (alive_[next.first]) {
            lm.push_back(next);
        }
    }
    for (const auto& [other, edges] : lm) {
        links_[other].emplace_back(merged, edges); // merged is the largest id so far
        candidates_.emplace(deltaSigma(other, merged), other, merged);
    }
    la.clear();
    la.shrink_to_fit();
    lb.clear();
    lb.shrink_to_fit();
    merges_.emplace_back(a, b);
}

Clustering WalktrapRun::result() const {
    const std::size_t n = g_.numberOfNodes();
    std::vector<ClusterId> assignment(n);
    for (Vertex v = 0; v < n; ++v) {
        assignment[v] = v;
    }
    if (vertices_.empty()) {
        return Clustering(std::move(assignment));
    }
    std::vector<int> parent(slot_.size());
    for (std::size_t c = 0; c < parent.size(); ++c) {
        parent[c] = static_cast<int>(c);
    }
    for (std::size_t level = 0; level < bestLevel_; ++level) {
        const int merged = static_cast<int>(vertices_.size() + level);
        parent[merges_[level].first] = merged;
        parent[merges_[level].second] = merged;
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        int c = static_cast<int>(i);
        while (parent[c] != c) {
            c = parent[c];
        }
        // offset past n so community ids never collide with isolated vertices' ids
        assignment[vertices_[i]] = static_cast<ClusterId>(n + c);
    }
    return Clustering(std::move(assignment));
}

} // namespace

Walktrap::Walktrap(unsigned walkLength) : walkLength_(walkLength) {
    if (walkLength == 0) {
        throw InputError("walktrap walk length must be positive");
    }
}

Clustering Walktrap::run(const Graph& g) const {
    return WalktrapRun(g, walkLength_).result();
}

Clustering walktrap(const Graph& g, unsigned walkLength) {
    return Walktrap(walkLength).run(g);
}

} // namespace lbga
