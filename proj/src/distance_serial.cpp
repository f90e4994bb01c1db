// Serial reference kernels: same algorithms as distance.cpp, no OpenMP.

#include <algorithm>

#include "homonym/distance.hpp"

namespace homonym::serial {

DistanceMatrix build_matrix(const Corpus& corpus, const FieldModel& model, DistanceOptions options) {
    const std::size_t n = corpus.size();
    DistanceMatrix m{n, SquareMatrix(n), SquareMatrix(n), SquareMatrix(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double d = pair_distance(corpus.records[i], corpus.records[j], model, corpus.query_name, options);
            m.raw(i, j) = m.raw(j, i) = d;
            m.clamped(i, j) = m.clamped(j, i) = i == j ? 0.0 : std::max(d, 0.0);
        }
    }
    m.closed = m.clamped;
    return m;
}

DistanceMatrix close_distances(DistanceMatrix m) {
    const std::size_t n = m.n;
    SquareMatrix& d = m.closed;
    d = m.clamped;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
            }
        }
    }
    return m;
}

} // namespace homonym::serial
