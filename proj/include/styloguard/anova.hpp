#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace styloguard {

// Continued fraction for the regularized incomplete beta function
// (modified Lentz), relative tolerance 1e-12.
namespace anova_detail {

inline double betacf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-12;
    constexpr int max_iter = 500;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    return h;  // converged enough for the tolerances used here
}

}  // namespace anova_detail

// I_x(a, b)
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("incomplete beta: a,b must be positive");
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * anova_detail::betacf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     anova_detail::betacf(b, a, 1.0 - x) / b;
}

// Survival function of the F distribution: P(F > f | d1, d2)
inline double f_distribution_sf(double f, double d1, double d2) {
    if (f <= 0) return 1.0;
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

struct AnovaResult {
    double f = 0;
    double df_between = 0;  // C - 1
    double df_within = 0;   // N - C
    double p = 1;
};

// One-way ANOVA: F = (SSB/(C-1)) / (SSW/(N-C)). Zero variance everywhere is
// defined as F = 0, p = 1.
inline AnovaResult anova_f(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("anova_f: needs at least 2 groups");
    size_t n_total = 0;
    double grand = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("anova_f: each group needs >= 2 values");
        for (double v : g) { grand += v; ++n_total; }
    }
    grand /= static_cast<double>(n_total);

    double ssb = 0, ssw = 0;
    for (const auto& g : groups) {
        double mean = 0;
        for (double v : g) mean += v;
        mean /= static_cast<double>(g.size());
        ssb += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
        for (double v : g) ssw += (v - mean) * (v - mean);
    }

    AnovaResult r;
    r.df_between = static_cast<double>(groups.size() - 1);
    r.df_within = static_cast<double>(n_total - groups.size());
    if (ssw <= 0) {
        if (ssb <= 0) { r.f = 0; r.p = 1; return r; }
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0;
        return r;
    }
    r.f = (ssb / r.df_between) / (ssw / r.df_within);
    r.p = f_distribution_sf(r.f, r.df_between, r.df_within);
    if (r.p <= 0) r.p = std::numeric_limits<double>::min();  // p is in (0,1]
    return r;
}

}  // namespace styloguard
