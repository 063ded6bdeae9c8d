#include "bmcm/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace bmcm {

namespace {

constexpr double kLnSqrtPi = 0.5723649429247000870717136756765293558;  // ln(sqrt(pi))
constexpr double kLn10 = 2.302585092994045684017991454684364208;

// log(n!) with a fixed table for the sizes Fisher enumeration touches
// constantly; lgamma covers the rest. Table init is a thread-safe magic
// static and the table is immutable afterwards.
double log_factorial(std::uint64_t n) {
    static constexpr std::size_t kTableSize = 4096;
    static const std::array<double, kTableSize> table = [] {
        std::array<double, kTableSize> t{};
        t[0] = 0.0;
        for (std::size_t i = 1; i < kTableSize; ++i) {
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        }
        return t;
    }();
    if (n < kTableSize) return table[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// ln erfc(z) for large z from the asymptotic series
//   erfc(z) = exp(-z^2) / (z sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2 z^2)^k.
double log_erfc_asymptotic(double z) {
    const double inv2zz = 1.0 / (2.0 * z * z);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
        term *= -static_cast<double>(2 * k - 1) * inv2zz;
        sum += term;
        if (std::abs(term) < 1e-17 * sum) break;
    }
    return -z * z - std::log(z) - kLnSqrtPi + std::log(sum);
}

void require_dof1(unsigned dof) {
    if (dof != 1) {
        throw StatsError("only 1 degree of freedom is supported, got " + std::to_string(dof));
    }
}

}  // namespace

double chi2_sf(double x, unsigned dof) {
    require_dof1(dof);
    if (std::isnan(x) || x < 0.0) throw StatsError("chi-square statistic must be >= 0");
    return std::erfc(std::sqrt(x / 2.0));
}

double chi2_log10_sf(double x, unsigned dof) {
    require_dof1(dof);
    if (std::isnan(x) || x < 0.0) throw StatsError("chi-square statistic must be >= 0");
    const double z = std::sqrt(x / 2.0);
    const double p = std::erfc(z);
    // switch to the asymptotic form well before erfc reaches the denormal
    // range, where its relative accuracy degrades
    if (p >= 1e-280) return std::log10(p);
    return log_erfc_asymptotic(z) / kLn10;
}

TestResult binomial_chisq(std::uint64_t count_and, std::uint64_t count_or) {
    const std::uint64_t n = count_and + count_or;
    if (n == 0) throw StatsError("binomial test undefined: both counts are zero");
    const double half = static_cast<double>(n) / 2.0;
    const double da = static_cast<double>(count_and) - half;
    const double db = static_cast<double>(count_or) - half;
    const double statistic = da * da / half + db * db / half;
    return TestResult{statistic, chi2_sf(statistic, 1), 1};
}

TestResult contingency_chisq(const Table2x2& t, bool corrected) {
    const double a = static_cast<double>(t.a);
    const double b = static_cast<double>(t.b);
    const double c = static_cast<double>(t.c);
    const double d = static_cast<double>(t.d);
    const double n = a + b + c + d;
    if (n < 1.0) throw StatsError("contingency test undefined: empty table");
    const double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
    if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) {
        throw StatsError("degenerate 2x2 table: zero row or column margin");
    }
    const double cross = a * d - b * c;
    const double diff = corrected ? std::abs(cross) - n / 2.0 : cross;
    const double statistic = n * diff * diff / (r1 * r2 * c1 * c2);
    return TestResult{statistic, chi2_sf(statistic, 1), 1};
}

TestResult fisher_exact(const Table2x2& t) {
    const std::uint64_t n = t.total();
    if (n == 0) throw StatsError("Fisher test undefined: empty table");
    const std::uint64_t r1 = t.a + t.b;
    const std::uint64_t c1 = t.a + t.c;
    const std::uint64_t r2 = t.c + t.d;
    const std::uint64_t c2 = t.b + t.d;

    // log P(cell a = k | margins), hypergeometric
    const double log_denom = log_factorial(n) - log_factorial(c1) - log_factorial(c2);
    const auto log_prob = [&](std::uint64_t k) {
        return log_factorial(r1) - log_factorial(k) - log_factorial(r1 - k) +
               log_factorial(r2) - log_factorial(c1 - k) - log_factorial(r2 - (c1 - k)) -
               log_denom;
    };

    const std::uint64_t k_min = c1 > r2 ? c1 - r2 : 0;
    const std::uint64_t k_max = std::min(r1, c1);
    const double log_p_obs = log_prob(t.a);

    if (k_min == k_max) {
        // single admissible table (a degenerate margin)
        return TestResult{std::exp(log_p_obs), 1.0, 0};
    }

    // two-sided: include every table whose probability is <= observed
    // within relative tolerance 1e-7; accumulate in log space
    const double cutoff = log_p_obs + std::log1p(1e-7);
    std::vector<double> included;
    included.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = k_min; k <= k_max; ++k) {
        const double lp = log_prob(k);
        if (lp <= cutoff) {
            included.push_back(lp);
            max_log = std::max(max_log, lp);
        }
    }
    double sum = 0.0;
    for (double lp : included) sum += std::exp(lp - max_log);
    const double p = std::min(1.0, std::exp(max_log) * sum);
    return TestResult{std::exp(log_p_obs), p, 0};
}

}  // namespace bmcm
