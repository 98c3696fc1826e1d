#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "campus/errors.hpp"

namespace campus {

// Parameters of the stranger co-occurrence probability model: m students pick
// one of n canteen windows uniformly at each of b meals; meal times are
// Normal(mu, sigma^2) discretized into N-1 slices of delta_t minutes centered
// on mu.
struct CooccurrenceModel {
    std::int64_t students = 30000;   // m
    std::int64_t windows = 160;      // n
    int meals = 90;                  // b
    int slices = 60;                 // N (N-1 intervals)
    double slice_minutes = 2.0;      // delta_t
    double sigma_minutes = 20.0;     // sigma

    void validate() const {
        if (students < 2) throw argument_error("model: students must be >= 2");
        if (windows < 1) throw argument_error("model: windows must be >= 1");
        if (meals < 1) throw argument_error("model: meals must be >= 1");
        if (slices < 2) throw argument_error("model: slices must be >= 2");
        if (!(slice_minutes > 0)) throw argument_error("model: slice width must be > 0");
        if (!(sigma_minutes > 0)) throw argument_error("model: sigma must be > 0");
    }

    double pair_count() const {
        return 0.5 * static_cast<double>(students) * static_cast<double>(students - 1);
    }
};

struct TieParams {
    int critical_count = 5;      // a_c
    int window_seconds = 120;    // co-occurrence time radius

    void validate() const {
        if (critical_count < 1) throw argument_error("tie params: a_c must be >= 1");
        if (window_seconds < 1) throw argument_error("tie params: window_seconds must be >= 1");
    }
};

inline double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// p1: both students at the same canteen window.
inline double window_collision_prob(const CooccurrenceModel& model) {
    model.validate();
    return 1.0 / static_cast<double>(model.windows);
}

// p2: both meal times fall in the same slice. Sum of squared Gaussian slice
// masses over the N-1 slices; translation-invariant in mu by centering.
inline double time_collision_prob(const CooccurrenceModel& model) {
    model.validate();
    const int k = model.slices - 1;
    const double half_span = 0.5 * k * model.slice_minutes;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        double a = -half_span + i * model.slice_minutes;
        double b = a + model.slice_minutes;
        double q = gaussian_cdf(b / model.sigma_minutes) - gaussian_cdf(a / model.sigma_minutes);
        total += q * q;
    }
    return total;
}

inline double collision_prob(const CooccurrenceModel& model) {
    return window_collision_prob(model) * time_collision_prob(model);
}

// P(X >= a) for X ~ Binomial(b, p). Log-space terms summed smallest-first so
// C(90,5)p^5-scale tails survive; no overflow for b <= 1e4.
inline double binomial_tail(int b, double p, int a) {
    if (a < 0) throw argument_error("binomial_tail: a must be >= 0");
    if (a > b) throw argument_error("binomial_tail: a must be <= b");
    if (!(p >= 0.0 && p <= 1.0)) throw argument_error("binomial_tail: p must be in [0,1]");
    if (a == 0) return 1.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;

    const double lp = std::log(p);
    const double l1p = std::log1p(-p);
    const double lgb = std::lgamma(static_cast<double>(b) + 1.0);
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(b - a + 1));
    double max_log = -HUGE_VAL;
    for (int x = a; x <= b; ++x) {
        double lt = lgb - std::lgamma(static_cast<double>(x) + 1.0) -
                    std::lgamma(static_cast<double>(b - x) + 1.0) + x * lp + (b - x) * l1p;
        logs.push_back(lt);
        if (lt > max_log) max_log = lt;
    }
    double acc = 0.0;
    for (auto it = logs.rbegin(); it != logs.rend(); ++it) acc += std::exp(*it - max_log);
    double r = std::exp(max_log) * acc;
    return r > 1.0 ? 1.0 : r;
}

struct TailResult {
    double probability = 0.0;   // P(x >= a) for one pair
    double expectation = 0.0;   // E = C(m,2) * P over all pairs
};

// Eq.-(1) tail at the model's p = p1*p2.
inline TailResult cooccurrence_tail(const CooccurrenceModel& model, int a) {
    model.validate();
    if (a < 1 || a > model.meals)
        throw argument_error("cooccurrence_tail: need 1 <= a <= meals");
    double P = binomial_tail(model.meals, collision_prob(model), a);
    return {P, model.pair_count() * P};
}

// Same tail with the collision chance supplied directly (small-instance
// oracles, generator-matched bounds).
inline TailResult cooccurrence_tail_at(const CooccurrenceModel& model, double p, int a) {
    model.validate();
    if (a < 1 || a > model.meals)
        throw argument_error("cooccurrence_tail: need 1 <= a <= meals");
    double P = binomial_tail(model.meals, p, a);
    return {P, model.pair_count() * P};
}

// Smallest a with E(x >= a) < ceiling. E is nonincreasing in a and reaches 0
// past the last achievable count, so the search terminates.
inline int critical_frequency(const CooccurrenceModel& model, double expectation_ceiling = 1.0) {
    model.validate();
    if (!(expectation_ceiling > 0))
        throw argument_error("critical_frequency: ceiling must be > 0");
    const double p = collision_prob(model);
    for (int a = 1; a <= model.meals; ++a) {
        if (model.pair_count() * binomial_tail(model.meals, p, a) < expectation_ceiling) return a;
    }
    return model.meals + 1;
}

} // namespace campus
