#include "homonym/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace homonym {

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<std::size_t> parent;
};

} // namespace

std::size_t pick_representative(const Cluster& cluster, const Corpus& corpus) {
    if (cluster.member_ids.empty()) throw std::invalid_argument("empty cluster");
    auto better = [&](std::size_t a, std::size_t b) {
        const auto& ra = corpus.records.at(a);
        const auto& rb = corpus.records.at(b);
        if (ra.citations != rb.citations) return ra.citations > rb.citations;
        const int ya = ra.year_value().value_or(std::numeric_limits<int>::max());
        const int yb = rb.year_value().value_or(std::numeric_limits<int>::max());
        if (ya != yb) return ya < yb;
        return a < b;
    };
    return *std::min_element(cluster.member_ids.begin(), cluster.member_ids.end(), better);
}

std::vector<Cluster> build_clusters(const DistanceMatrix& matrix, const Corpus& corpus, double tol) {
    const std::size_t n = matrix.n;
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix.closed(i, j) <= tol) sets.unite(i, j);
        }
    }

    std::vector<Cluster> clusters;
    std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = sets.find(i);
        if (slot[root] == std::numeric_limits<std::size_t>::max()) {
            slot[root] = clusters.size();
            clusters.emplace_back();
        }
        Cluster& c = clusters[slot[root]];
        c.member_ids.push_back(i);
        const auto& rec = corpus.records.at(i);
        c.total_citations += rec.citations;
        if (auto y = rec.year_value()) {
            c.year_min = c.year_min ? std::min(*c.year_min, *y) : *y;
            c.year_max = c.year_max ? std::max(*c.year_max, *y) : *y;
        }
    }
    for (auto& c : clusters) {
        c.paper_count = c.member_ids.size();
        c.representative_id = pick_representative(c, corpus);
    }

    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.total_citations != b.total_citations) return a.total_citations > b.total_citations;
        if (a.paper_count != b.paper_count) return a.paper_count > b.paper_count;
        return a.member_ids.front() < b.member_ids.front();
    });
    for (std::size_t k = 0; k < clusters.size(); ++k) clusters[k].id = static_cast<int>(k + 1);
    return clusters;
}

double cluster_distance(const Cluster& a, const Cluster& b, const DistanceMatrix& matrix) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : a.member_ids) {
        for (std::size_t j : b.member_ids) best = std::min(best, matrix.closed(i, j));
    }
    return best;
}

ClusterSet build_cluster_set(const DistanceMatrix& matrix, const Corpus& corpus, double tol) {
    ClusterSet set;
    set.clusters = build_clusters(matrix, corpus, tol);
    const std::size_t k = set.clusters.size();
    set.linkage = SquareMatrix(k);
    const auto sk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t sa = 0; sa < sk; ++sa) {
        const auto a = static_cast<std::size_t>(sa);
        for (std::size_t b = a; b < k; ++b) {
            const double d = a == b ? 0.0 : cluster_distance(set.clusters[a], set.clusters[b], matrix);
            set.linkage(a, b) = d;
            set.linkage(b, a) = d;
        }
    }
    return set;
}

} // namespace homonym
