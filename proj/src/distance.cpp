#include "homonym/distance.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace homonym {

double pair_distance(const PublicationRecord& a, const PublicationRecord& b, const FieldModel& model,
                     std::string_view query_name, DistanceOptions options) {
    double d = model.log10_n_docs;
    for (Field f : kAllFields) {
        const WordSet& wa = a.words(f);
        const WordSet& wb = b.words(f);
        std::uint64_t n_a = wa.size();
        std::uint64_t n_b = wb.size();
        std::uint64_t common = wa.common_with(wb);
        if (f == Field::authors && !options.include_query_name && !query_name.empty()) {
            const bool in_a = wa.contains(query_name);
            const bool in_b = wb.contains(query_name);
            n_a -= in_a;
            n_b -= in_b;
            common -= (in_a && in_b);
        }
        d += coincidence_from_counts(common, n_a, n_b, model.n_values(f));
    }
    return d;
}

DistanceMatrix build_matrix(const Corpus& corpus, const FieldModel& model, DistanceOptions options) {
    const std::size_t n = corpus.size();
    DistanceMatrix m{n, SquareMatrix(n), SquareMatrix(n), SquareMatrix(n)};
    const auto& recs = corpus.records;
    const std::string_view query = corpus.query_name;
    const auto sn = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t si = 0; si < sn; ++si) {
        const auto i = static_cast<std::size_t>(si);
        for (std::size_t j = i; j < n; ++j) {
            const double d = pair_distance(recs[i], recs[j], model, query, options);
            m.raw(i, j) = d;
            m.raw(j, i) = d;
            const double c = i == j ? 0.0 : std::max(d, 0.0);
            m.clamped(i, j) = c;
            m.clamped(j, i) = c;
        }
    }
    m.closed = m.clamped;
    return m;
}

DistanceMatrix close_distances(DistanceMatrix m) {
    const std::size_t n = m.n;
    SquareMatrix& d = m.closed;
    d = m.clamped;
    const auto sn = static_cast<std::ptrdiff_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Row k is invariant during pivot k because d(k, k) == 0.
        const double* dk = d.row(k);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t si = 0; si < sn; ++si) {
            const auto i = static_cast<std::size_t>(si);
            double* di = d.row(i);
            const double dik = di[k];
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dik + dk[j];
                if (via < di[j]) di[j] = via;
            }
        }
    }
    return m;
}

std::size_t relax_once(const SquareMatrix& in, SquareMatrix& out) {
    const std::size_t n = in.size();
    out = SquareMatrix(n);
    std::size_t changed = 0;
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : changed)
    for (std::ptrdiff_t si = 0; si < sn; ++si) {
        const auto i = static_cast<std::size_t>(si);
        for (std::size_t j = 0; j < n; ++j) {
            double best = in(i, j);
            for (std::size_t k = 0; k < n; ++k) best = std::min(best, in(i, k) + in(k, j));
            out(i, j) = best;
            changed += best != in(i, j);
        }
    }
    return changed;
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix, MatrixLayer layer) {
    const SquareMatrix& s = layer == MatrixLayer::raw ? matrix.raw
                            : layer == MatrixLayer::clamped ? matrix.clamped
                                                            : matrix.closed;
    out << "id";
    for (std::size_t j = 0; j < matrix.n; ++j) out << ',' << j;
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < matrix.n; ++i) {
        out << i;
        for (std::size_t j = 0; j < matrix.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.6f", s(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

} // namespace homonym
