#pragma once
// Pairwise coincidence distances, their clamp at zero and the shortest-path
// closure that lets two groups of one author connect through a bridging
// record.
//
// The default kernels are OpenMP-parallel. Serial implementations of the same
// algorithms live in homonym::serial and are kept for testing and benchmarks.

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "homonym/coincidence.hpp"
#include "homonym/record.hpp"

namespace homonym {

// Dense row-major n x n matrix.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const double* row(std::size_t i) const { return data_.data() + i * n_; }
    double* row(std::size_t i) { return data_.data() + i * n_; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct DistanceMatrix {
    std::size_t n = 0;
    SquareMatrix raw;     // log10 N_D + sum of field tail log-probabilities
    SquareMatrix clamped; // max(raw, 0), zero diagonal
    SquareMatrix closed;  // shortest paths over clamped edges
};

struct DistanceOptions {
    // Count the shared query author as an author-field coincidence.
    bool include_query_name = false;
};

double pair_distance(const PublicationRecord& a, const PublicationRecord& b, const FieldModel& model,
                     std::string_view query_name, DistanceOptions options = {});

// Fills raw and clamped; closed is left equal to clamped.
DistanceMatrix build_matrix(const Corpus& corpus, const FieldModel& model, DistanceOptions options = {});

// All-pairs shortest paths over the clamped layer (Floyd-Warshall, rows of
// each pivot step in parallel).
DistanceMatrix close_distances(DistanceMatrix matrix);

// One pass of d_ij = min_k (in_ik + in_kj) over all k; returns the number of
// entries that changed.
std::size_t relax_once(const SquareMatrix& in, SquareMatrix& out);

enum class MatrixLayer { raw, clamped, closed };

// CSV with record ids as row and column headers.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix, MatrixLayer layer);

namespace serial {

DistanceMatrix build_matrix(const Corpus& corpus, const FieldModel& model, DistanceOptions options = {});
DistanceMatrix close_distances(DistanceMatrix matrix);

} // namespace serial

} // namespace homonym
