#pragma once
// Probability of word coincidences between two records under the uniform,
// uncorrelated field model. Everything is returned as log10 probabilities.

#include <array>
#include <cstdint>

#include "homonym/record.hpp"
#include "homonym/word_set.hpp"

namespace homonym {

// Assumed value-space sizes per field, as log10(N), plus log10 of the total
// number of documents. Sizes are deliberately small: 1/N approximates the
// probability of the most frequent value in the field.
struct FieldModel {
    double log10_n_docs = 8.0;
    std::array<double, kFieldCount> log10_sizes{4.0, 6.0, 2.0, 2.0, 3.0, 2.0, 2.0, 1.0};

    double log10_size(Field f) const { return log10_sizes[static_cast<std::size_t>(f)]; }
    void set_log10_size(Field f, double v) { log10_sizes[static_cast<std::size_t>(f)] = v; }

    // round(10^log10_size)
    std::uint64_t n_values(Field f) const;

    // Throws std::invalid_argument unless every size is > 0 and N >= 2.
    void validate() const;
};

// log10 C(n, r); exact summation of log10 ratios for short products,
// log-gamma otherwise.
double log10_binomial(std::uint64_t n, std::uint64_t r);

// log10 of the probability that two independent draws of n_i and n_j
// distinct values out of n_values share exactly n_common values:
//
//   p = C(n_i, k) C(N - n_i, n_j - k) / C(N, n_j)
//
// -infinity when k is below the feasible minimum n_i + n_j - N.
// Throws std::domain_error when k > min(n_i, n_j) or n_i, n_j > N.
double log_p_exact(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j, std::uint64_t n_values);

// log10 P(X >= n_common), summed upward from n_common in the log domain.
double log_p_tail(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j, std::uint64_t n_values);

// Tail probability for raw counts, after clamping n_i and n_j to N and the
// common count to min(n_i, n_j). 0.0 when either side is empty.
double coincidence_from_counts(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j,
                               std::uint64_t n_values);

double field_coincidence(const WordSet& words_i, const WordSet& words_j, Field field,
                         const FieldModel& model);

} // namespace homonym
