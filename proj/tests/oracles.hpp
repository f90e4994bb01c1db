#pragma once
// Brute-force reference computations used as test oracles. Deliberately
// naive: linear-domain sums, explicit enumeration, no shared code with the
// library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homonym/coincidence.hpp"
#include "homonym/distance.hpp"
#include "homonym/record.hpp"

namespace oracle {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(HOMONYM_TEST_DATA) + "/" + name; }

// ln C(n, r) in long double.
inline long double ln_choose(std::uint64_t n, std::uint64_t r) {
    return std::lgammal(static_cast<long double>(n) + 1) - std::lgammal(static_cast<long double>(r) + 1) -
           std::lgammal(static_cast<long double>(n - r) + 1);
}

// P(X >= k) for the overlap of two uniform draws, summed in the linear domain.
inline double tail_probability(std::uint64_t k, std::uint64_t ni, std::uint64_t nj, std::uint64_t n) {
    const std::uint64_t hi = std::min(ni, nj);
    long double sum = 0;
    for (std::uint64_t x = k; x <= hi; ++x) {
        if (nj - x > n - ni) continue;
        sum += std::exp(ln_choose(ni, x) + ln_choose(n - ni, nj - x) - ln_choose(n, nj));
    }
    return static_cast<double>(sum);
}

// Counts, over every pair of subsets (A, B) with |A| = ni, |B| = nj of an
// n-element universe, how many share exactly x elements. n <= 20.
inline std::vector<std::uint64_t> enumerate_overlaps(unsigned ni, unsigned nj, unsigned n) {
    std::vector<std::uint32_t> a_sets, b_sets;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        const auto c = static_cast<unsigned>(__builtin_popcount(m));
        if (c == ni) a_sets.push_back(m);
        if (c == nj) b_sets.push_back(m);
    }
    std::vector<std::uint64_t> counts(std::min(ni, nj) + 1, 0);
    for (auto a : a_sets) {
        for (auto b : b_sets) ++counts[static_cast<std::size_t>(__builtin_popcount(a & b))];
    }
    return counts;
}

// Overlap of two independent uniform random subsets.
inline unsigned sample_overlap(std::mt19937_64& rng, unsigned ni, unsigned nj, unsigned n) {
    std::vector<unsigned> u(n);
    for (unsigned i = 0; i < n; ++i) u[i] = i;
    std::vector<char> in_a(n, 0);
    for (unsigned i = 0; i < ni; ++i) {
        std::uniform_int_distribution<unsigned> pick(i, n - 1);
        std::swap(u[i], u[pick(rng)]);
        in_a[u[i]] = 1;
    }
    unsigned common = 0;
    for (unsigned i = 0; i < nj; ++i) {
        std::uniform_int_distribution<unsigned> pick(i, n - 1);
        std::swap(u[i], u[pick(rng)]);
        common += static_cast<unsigned>(in_a[u[i]]);
    }
    return common;
}

// D_ij evaluated directly from its definition: log10 N_D plus, per field with
// both sides non-empty, log10 of the linear-domain tail probability.
inline double direct_distance(const homonym::PublicationRecord& a, const homonym::PublicationRecord& b,
                              const homonym::FieldModel& model, const std::string& query_name) {
    double d = model.log10_n_docs;
    for (auto f : homonym::kAllFields) {
        std::vector<std::string> wa(a.words(f).begin(), a.words(f).end());
        std::vector<std::string> wb(b.words(f).begin(), b.words(f).end());
        if (f == homonym::Field::authors) {
            std::erase(wa, query_name);
            std::erase(wb, query_name);
        }
        if (wa.empty() || wb.empty()) continue;
        std::vector<std::string> common;
        std::set_intersection(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(common));
        const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, model.log10_size(f))));
        const std::uint64_t ni = std::min<std::uint64_t>(wa.size(), n);
        const std::uint64_t nj = std::min<std::uint64_t>(wb.size(), n);
        const std::uint64_t k = std::min<std::uint64_t>(common.size(), std::min(ni, nj));
        d += std::log10(tail_probability(k, ni, nj, n));
    }
    return d;
}

// Shortest i -> j distance by enumerating every simple path of at most
// max_edges edges.
inline homonym::SquareMatrix enumerate_paths(const homonym::SquareMatrix& w, std::size_t max_edges) {
    const std::size_t n = w.size();
    homonym::SquareMatrix best(n, std::numeric_limits<double>::infinity());
    std::vector<char> used(n, 0);
    std::function<void(std::size_t, std::size_t, double, std::size_t)> walk = [&](std::size_t src, std::size_t at,
                                                                                 double len, std::size_t edges) {
        best(src, at) = std::min(best(src, at), len);
        if (edges == max_edges) return;
        for (std::size_t next = 0; next < n; ++next) {
            if (used[next]) continue;
            used[next] = 1;
            walk(src, next, len + w(at, next), edges + 1);
            used[next] = 0;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        used[s] = 1;
        walk(s, s, 0.0, 0);
        used[s] = 0;
    }
    return best;
}

// Random symmetric nonnegative matrix with zero diagonal; a fraction of the
// entries is exactly zero so that zero-paths occur.
inline homonym::SquareMatrix random_clamped(std::mt19937_64& rng, std::size_t n, double zero_rate = 0.15) {
    homonym::SquareMatrix m(n, 0.0);
    std::uniform_real_distribution<double> value(0.0, 8.0);
    std::bernoulli_distribution zero(zero_rate);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = zero(rng) ? 0.0 : value(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

inline homonym::DistanceMatrix as_distance_matrix(const homonym::SquareMatrix& clamped) {
    homonym::DistanceMatrix d;
    d.n = clamped.size();
    d.raw = clamped;
    d.clamped = clamped;
    d.closed = clamped;
    return d;
}

} // namespace oracle
