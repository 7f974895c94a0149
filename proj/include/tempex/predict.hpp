#pragma once

#include <cmath>
#include <optional>

#include "tempex/errors.hpp"

namespace tempex {

/// Exact birthday survival Pr[tau_1 > t] = prod_{i=1}^{t-1} (1 - i/k),
/// evaluated in extended precision. Zero once t > k.
inline double predict_birthday_survival(int k, int t) {
    if (k < 1 || t < 1) fail(ErrorCode::BadParams, "need k >= 1 and t >= 1");
    long double p = 1.0L;
    for (int i = 1; i <= t - 1; ++i) {
        if (i >= k) return 0.0;
        p *= 1.0L - static_cast<long double>(i) / k;
    }
    return static_cast<double>(p);
}

/// Exact E[tau_1] = sum_{t>=0} Pr[tau_1 > t]; the support is finite
/// (tau_1 <= k + 1).
inline double exact_tau1_mean(int k) {
    long double sum = 1.0L;  // Pr[tau_1 > 0] = 1
    long double p = 1.0L;
    for (int t = 1; t <= k + 1; ++t) {
        // p = Pr[tau_1 > t]
        if (t - 1 >= 1) p *= 1.0L - static_cast<long double>(t - 1) / k;
        sum += p;
    }
    return static_cast<double>(sum);
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
};

/// E[tau_1] bracket: [sqrt(pi k / 2) - 2/5, sqrt(pi k / 2) + 8/5].
inline Interval predict_tau1_bounds(int k) {
    if (k < 1) fail(ErrorCode::BadParams, "need k >= 1");
    const double centre = std::sqrt(M_PI * k / 2.0);
    return {centre - 0.4, centre + 1.6};
}

/// Expected uncollected-coupon count after theta uniform draws: k(1-1/k)^theta.
inline double predict_coupon_mean(int k, double theta) {
    if (k < 2 || theta < 0) fail(ErrorCode::BadParams, "need k >= 2 and theta >= 0");
    return k * std::pow(1.0 - 1.0 / k, theta);
}

/// Closed-form envelope for exploring a uniform k-star model on [n].
struct StarPrediction {
    std::optional<double> f_minus;  // conservative lower envelope for the non-centre phase
    std::optional<double> f_plus;   // conservative upper envelope
    double centre_lower = 0.0;      // k ln k / 10
    double centre_upper = 0.0;      // C k ln k
    std::optional<double> weak_t;   // (n-k) sqrt(pi k / 2)
};

/// f_± evaluated with the E[tau_1] bracket substituted (lower bound inside
/// f_minus, upper inside f_plus). k = n leaves only the centre bounds.
inline StarPrediction predict_star_exploration(int n, int k, double c) {
    if (k < 2 || k > n) fail(ErrorCode::BadK, "need 2 <= k <= n");
    if (c < 2.0) fail(ErrorCode::BadParams, "need C >= 2");
    StarPrediction p;
    p.centre_lower = k * std::log(static_cast<double>(k)) / 10.0;
    p.centre_upper = c * k * std::log(static_cast<double>(k));
    if (k == n) return p;  // degenerate range: f_± undefined

    const Interval tau = predict_tau1_bounds(k);
    const double nk = static_cast<double>(n - k);
    const double spread = std::sqrt(c * std::log(static_cast<double>(k)) / nk) +
                          2.0 * std::sqrt(static_cast<double>(k) / (nk * nk));
    p.f_minus = tau.lo * nk * (1.0 - spread);
    p.f_plus = tau.hi * nk * (1.0 + spread);
    p.weak_t = nk * std::sqrt(M_PI * k / 2.0);
    return p;
}

/// Exploration-time threshold sqrt(d) * n / 50 for the bounded-degree model.
inline double predict_degree_lower(int d, int n) {
    if (d < 5 || d % 2 == 0 || n % (d - 1) != 0)
        fail(ErrorCode::BadParams, "need odd d >= 5 and n divisible by d-1");
    return std::sqrt(static_cast<double>(d)) * n / 50.0;
}

/// Online lower-bound threshold n^2 / 15 for uniform n/2-star models.
inline double predict_online_star_lower(int n) {
    if (n < 4 || n % 2 != 0) fail(ErrorCode::BadN, "need even n >= 4");
    return static_cast<double>(n) * n / 15.0;
}

}  // namespace tempex
