#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tempex/errors.hpp"

namespace tempex {

/// Summary statistics with a normal-approximation 95% confidence interval.
struct Summary {
    int count = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    double ci_lo = 0.0;  // mean -/+ 1.96 sd / sqrt(count)
    double ci_hi = 0.0;
};

/// Nearest-rank quantile of a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const auto n = static_cast<int>(sorted.size());
    int rank = static_cast<int>(std::ceil(q * n));
    rank = std::max(1, std::min(n, rank));
    return sorted[static_cast<std::size_t>(rank - 1)];
}

inline Summary summarize(std::vector<double> values) {
    if (values.empty()) fail(ErrorCode::BadParams, "cannot summarize an empty sample");
    Summary s;
    s.count = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.count;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = s.count > 1 ? std::sqrt(ss / (s.count - 1)) : 0.0;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.q05 = quantile_sorted(values, 0.05);
    s.q50 = quantile_sorted(values, 0.50);
    s.q95 = quantile_sorted(values, 0.95);
    const double half = 1.96 * s.sd / std::sqrt(static_cast<double>(s.count));
    s.ci_lo = s.mean - half;
    s.ci_hi = s.mean + half;
    return s;
}

/// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(int successes, int trials, double z = 1.96) {
    if (trials < 1) fail(ErrorCode::BadParams, "need at least one trial");
    const double p = static_cast<double>(successes) / trials;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / trials;
    const double centre = (p + z2 / (2.0 * trials)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace tempex
