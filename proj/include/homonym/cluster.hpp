#pragma once
// Zero-distance clusters and per-cluster presentation data.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "homonym/distance.hpp"
#include "homonym/record.hpp"

namespace homonym {

inline constexpr double kDefaultTolerance = 1e-9;

struct Cluster {
    int id = 0; // 1-based, in presentation order
    std::vector<std::size_t> member_ids; // ascending
    std::size_t paper_count = 0;
    std::uint64_t total_citations = 0;
    std::optional<int> year_min;
    std::optional<int> year_max;
    std::size_t representative_id = 0;

    bool operator==(const Cluster&) const = default;
};

// Connected components of the graph joining records whose closed distance is
// <= tol. Ordered by total citations (desc), paper count (desc), then smallest
// member id; ids are 1..K in that order.
std::vector<Cluster> build_clusters(const DistanceMatrix& matrix, const Corpus& corpus,
                                    double tol = kDefaultTolerance);

// Most-cited member; ties go to the earliest year, then the lowest id.
std::size_t pick_representative(const Cluster& cluster, const Corpus& corpus);

// Single linkage over closed distances.
double cluster_distance(const Cluster& a, const Cluster& b, const DistanceMatrix& matrix);

// Clusters together with the K x K table of cluster_distance values.
struct ClusterSet {
    std::vector<Cluster> clusters;
    SquareMatrix linkage;

    std::size_t size() const { return clusters.size(); }
    bool contains(int id) const { return id >= 1 && static_cast<std::size_t>(id) <= clusters.size(); }
    const Cluster& at(int id) const { return clusters.at(static_cast<std::size_t>(id - 1)); }
    double distance(int a, int b) const {
        return linkage(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
    }
};

ClusterSet build_cluster_set(const DistanceMatrix& matrix, const Corpus& corpus,
                             double tol = kDefaultTolerance);

} // namespace homonym
