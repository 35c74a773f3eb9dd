#pragma once

#include <variant>

#include "winprob/weibull.hpp"

namespace winprob {

// Constant hazard `rate` (1/month).
struct Exponential {
    double rate;
    explicit Exponential(double rate_);
};

// Treatment hazard with an early advantage that fades: starts at 0.6*base_rate
// and rises log-linearly, h(t) = 0.6*base_rate*exp(ramp*t), until it meets
// base_rate at the knot t* = -log(0.6)/ramp; constant base_rate afterward.
struct EarlyEffect {
    double base_rate;  // reference (control) hazard, 1/month
    double ramp;       // > 0, 1/month
    EarlyEffect(double base_rate_, double ramp_);
};

// Treatment hazard with an advantage that emerges late: starts at base_rate
// and falls log-linearly, h(t) = base_rate*exp(ramp*t), until it reaches
// 0.5*base_rate at the knot t* = log(0.5)/ramp; constant afterward.
struct LateEffect {
    double base_rate;
    double ramp;  // < 0, 1/month
    LateEffect(double base_rate_, double ramp_);
};

// Parametric event-time distribution used for data generation and truth
// computation. All four variants have closed-form cumulative hazards and
// closed-form inverses, so sampling and quantiles never need root-finding.
using HazardSpec = std::variant<Exponential, WeibullParams, EarlyEffect, LateEffect>;

double early_knot(const EarlyEffect& e);
double late_knot(const LateEffect& l);

double hazard(const HazardSpec& spec, double t);              // t > 0
double cumulative_hazard(const HazardSpec& spec, double t);   // t >= 0
double survival(const HazardSpec& spec, double t);            // exp(-H(t))
double density(const HazardSpec& spec, double t);             // h(t)*exp(-H(t))

// Smallest t with H(t) = target, target >= 0 (piecewise closed form).
double inverse_cum_hazard(const HazardSpec& spec, double target);

// Inverse-CDF sampling: t solving H(t) = -log(u), u in (0,1).
double sample_event_time(const HazardSpec& spec, double u);

// F^{-1}(prob), prob in (0,1).
double quantile(const HazardSpec& spec, double prob);

double median_survival_time(const HazardSpec& spec);

// E[T] computed as the quantile integral int_0^1 F^{-1}(p) dp, which keeps
// the improper time integral on a finite interval.
double mean_survival_time(const HazardSpec& spec);

}  // namespace winprob
