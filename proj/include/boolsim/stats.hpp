// Small statistics toolkit: Bernoulli estimates with Wilson intervals plus
// the tail functions the two-sample tests need.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace boolsim {

inline constexpr double kZ95 = 1.959963984540054;

// Monte Carlo event-probability estimate. point = successes/trials,
// [lo, hi] is the 95% Wilson score interval.
struct BernoulliEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double point = 0.0;
    double lo = 0.0;
    double hi = 1.0;

    static BernoulliEstimate from_counts(std::uint64_t successes,
                                         std::uint64_t trials) {
        if (trials == 0) throw std::invalid_argument("BernoulliEstimate: zero trials");
        BernoulliEstimate e;
        e.successes = successes;
        e.trials = trials;
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(successes) / n;
        const double z2 = kZ95 * kZ95;
        const double denom = 1.0 + z2 / n;
        const double center = (p + z2 / (2.0 * n)) / denom;
        const double half =
            kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
        e.point = p;
        e.lo = successes == 0 ? 0.0 : std::fmax(0.0, center - half);
        e.hi = successes == trials ? 1.0 : std::fmin(1.0, center + half);
        return e;
    }
};

// True if the two 95% intervals overlap; the "agree within joint CI" check.
inline bool ci_overlap(const BernoulliEstimate& a, const BernoulliEstimate& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

// Wilson interval at an arbitrary z, for multiplicity-adjusted checks.
inline std::pair<double, double> wilson_interval(std::uint64_t successes,
                                                 std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {successes == 0 ? 0.0 : std::fmax(0.0, center - half),
            successes == trials ? 1.0 : std::fmin(1.0, center + half)};
}

// Regularized incomplete gamma functions (series + continued fraction),
// good to ~1e-12 for the moderate arguments used in the tests.
namespace detail {

inline double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace detail

// P(a, x) = gamma(a,x)/Gamma(a)
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? detail::gamma_p_series(a, x)
                       : 1.0 - detail::gamma_q_contfrac(a, x);
}

// Survival function of a chi-square with df degrees of freedom.
inline double chi2_sf(double x, double df) {
    return 1.0 - gamma_p(df / 2.0, x / 2.0);
}

// Two-sided normal p-value for a z statistic.
inline double normal_two_sided_p(double z) {
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

struct MeanVar {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double std_error() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

} // namespace boolsim
