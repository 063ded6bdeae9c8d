#pragma once

#include <cstdint>

#include "bmcm/error.hpp"

namespace bmcm {

/// Outcome of a significance test. All operations producing one are pure.
struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    unsigned dof = 0;

    bool operator==(const TestResult&) const = default;
};

/// 2x2 contingency table. Row 1 is the predictor-positive row
/// (a: outcome 1, b: outcome 0); row 2 is predictor-negative (c, d).
struct Table2x2 {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t total() const { return a + b + c + d; }
    bool operator==(const Table2x2&) const = default;
};

/// Tests H0: p = 1/2 for a two-category count via the chi-square statistic
/// (count_and - n/2)^2/(n/2) + (count_or - n/2)^2/(n/2), df 1, no
/// continuity correction. Throws StatsError when both counts are zero.
TestResult binomial_chisq(std::uint64_t count_and, std::uint64_t count_or);

/// 2x2 chi-square with df 1. Uncorrected: N(ad-bc)^2 / ((a+b)(c+d)(a+c)(b+d)).
/// Corrected applies the continuity shift N/2 to |ad-bc| without clamping at
/// zero, i.e. N(|ad-bc| - N/2)^2 / denom; the shifted difference is squared
/// even when the shift overshoots. Throws StatsError on a zero row or
/// column margin.
TestResult contingency_chisq(const Table2x2& t, bool corrected = true);

/// Two-sided Fisher exact test: the sum of hypergeometric probabilities of
/// all margin-preserving tables no more probable than the observed one
/// (within relative tolerance 1e-7). The statistic field carries the
/// observed table's hypergeometric probability; dof is 0. Degenerate
/// margins give p = 1. Probabilities are computed via log-factorials.
TestResult fisher_exact(const Table2x2& t);

/// Survival function of chi-square with 1 degree of freedom,
/// erfc(sqrt(x/2)). Throws StatsError for x < 0 or dof != 1.
double chi2_sf(double x, unsigned dof = 1);

/// log10 of chi2_sf, finite for large x where the plain survival function
/// underflows; uses the asymptotic erfc expansion in the far tail.
double chi2_log10_sf(double x, unsigned dof = 1);

}  // namespace bmcm
