#include "homonym/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace homonym {

namespace {

constexpr std::uint64_t kSummationLimit = 256;
const double kLn10 = std::log(10.0);

// log10(10^a + 10^b), never smaller than max(a, b).
double log10_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log10(1.0 + std::pow(10.0, b - a));
}

void check_counts(std::uint64_t k, std::uint64_t n_i, std::uint64_t n_j, std::uint64_t n) {
    if (n_i > n || n_j > n) {
        throw std::domain_error("draw size exceeds the number of values (" + std::to_string(n_i) + ", " +
                                std::to_string(n_j) + " > " + std::to_string(n) + ")");
    }
    if (k > std::min(n_i, n_j)) {
        throw std::domain_error("common count " + std::to_string(k) + " exceeds min(" + std::to_string(n_i) +
                                ", " + std::to_string(n_j) + ")");
    }
}

} // namespace

std::uint64_t FieldModel::n_values(Field f) const {
    return static_cast<std::uint64_t>(std::llround(std::pow(10.0, log10_size(f))));
}

void FieldModel::validate() const {
    if (!(log10_n_docs > 0.0)) throw std::invalid_argument("document count exponent must be positive");
    for (Field f : kAllFields) {
        if (!(log10_size(f) > 0.0) || n_values(f) < 2) {
            throw std::invalid_argument("field size for " + std::string(field_name(f)) +
                                        " must be positive with at least 2 values");
        }
    }
}

double log10_binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return -std::numeric_limits<double>::infinity();
    r = std::min(r, n - r);
    if (r <= kSummationLimit) {
        double acc = 0.0;
        for (std::uint64_t t = 1; t <= r; ++t) {
            acc += std::log10(static_cast<double>(n - r + t) / static_cast<double>(t));
        }
        return acc;
    }
    const double nn = static_cast<double>(n);
    const double rr = static_cast<double>(r);
    return (std::lgamma(nn + 1.0) - std::lgamma(rr + 1.0) - std::lgamma(nn - rr + 1.0)) / kLn10;
}

double log_p_exact(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j, std::uint64_t n_values) {
    check_counts(n_common, n_i, n_j, n_values);
    // Order the draws so the result is bitwise symmetric in (n_i, n_j).
    if (n_i > n_j) std::swap(n_i, n_j);
    if (n_common + n_values < n_i + n_j) return -std::numeric_limits<double>::infinity();
    return log10_binomial(n_i, n_common) + log10_binomial(n_values - n_i, n_j - n_common) -
           log10_binomial(n_values, n_j);
}

double log_p_tail(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j, std::uint64_t n_values) {
    check_counts(n_common, n_i, n_j, n_values);
    const std::uint64_t lowest = n_i + n_j > n_values ? n_i + n_j - n_values : 0;
    if (n_common <= lowest) return 0.0;
    const std::uint64_t hi = std::min(n_i, n_j);
    double acc = log_p_exact(hi, n_i, n_j, n_values);
    for (std::uint64_t n = hi; n-- > n_common;) {
        acc = log10_add(acc, log_p_exact(n, n_i, n_j, n_values));
    }
    return std::min(acc, 0.0);
}

double coincidence_from_counts(std::uint64_t n_common, std::uint64_t n_i, std::uint64_t n_j,
                               std::uint64_t n_values) {
    if (n_i == 0 || n_j == 0) return 0.0;
    n_i = std::min(n_i, n_values);
    n_j = std::min(n_j, n_values);
    n_common = std::min(n_common, std::min(n_i, n_j));
    return log_p_tail(n_common, n_i, n_j, n_values);
}

double field_coincidence(const WordSet& words_i, const WordSet& words_j, Field field, const FieldModel& model) {
    if (words_i.empty() || words_j.empty()) return 0.0;
    return coincidence_from_counts(words_i.common_with(words_j), words_i.size(), words_j.size(),
                                   model.n_values(field));
}

} // namespace homonym
