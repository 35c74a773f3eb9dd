#include "winprob/hazard.hpp"

#include <cmath>
#include <stdexcept>

#include "winprob/quadrature.hpp"

namespace winprob {

namespace {
constexpr double kLog06 = -0.51082562376599072;  // log(0.6)
constexpr double kLog05 = -0.69314718055994531;  // log(0.5)
}  // namespace

Exponential::Exponential(double rate_) : rate(rate_) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::domain_error("Exponential: rate must be positive");
}

EarlyEffect::EarlyEffect(double base_rate_, double ramp_) : base_rate(base_rate_), ramp(ramp_) {
    if (!(base_rate > 0.0) || !std::isfinite(base_rate))
        throw std::domain_error("EarlyEffect: base rate must be positive");
    if (!(ramp > 0.0) || !std::isfinite(ramp))
        throw std::domain_error("EarlyEffect: ramp must be positive");
}

LateEffect::LateEffect(double base_rate_, double ramp_) : base_rate(base_rate_), ramp(ramp_) {
    if (!(base_rate > 0.0) || !std::isfinite(base_rate))
        throw std::domain_error("LateEffect: base rate must be positive");
    if (!(ramp < 0.0) || !std::isfinite(ramp))
        throw std::domain_error("LateEffect: ramp must be negative");
}

double early_knot(const EarlyEffect& e) { return -kLog06 / e.ramp; }
double late_knot(const LateEffect& l) { return kLog05 / l.ramp; }

double hazard(const HazardSpec& spec, double t) {
    if (!(t > 0.0)) throw std::domain_error("hazard: t must be positive");
    return std::visit(
        [t](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return s.rate;
            } else if constexpr (std::is_same_v<T, WeibullParams>) {
                return weibull_hazard(s, t);
            } else if constexpr (std::is_same_v<T, EarlyEffect>) {
                return t <= early_knot(s) ? 0.6 * s.base_rate * std::exp(s.ramp * t) : s.base_rate;
            } else {
                return t <= late_knot(s) ? s.base_rate * std::exp(s.ramp * t) : 0.5 * s.base_rate;
            }
        },
        spec);
}

double cumulative_hazard(const HazardSpec& spec, double t) {
    if (t < 0.0) throw std::domain_error("cumulative_hazard: t must be non-negative");
    return std::visit(
        [t](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return s.rate * t;
            } else if constexpr (std::is_same_v<T, WeibullParams>) {
                return weibull_cum_hazard(s, t);
            } else if constexpr (std::is_same_v<T, EarlyEffect>) {
                const double knot = early_knot(s);
                if (t <= knot) return 0.6 * s.base_rate * std::expm1(s.ramp * t) / s.ramp;
                const double at_knot = 0.4 * s.base_rate / s.ramp;
                return at_knot + s.base_rate * (t - knot);
            } else {
                const double knot = late_knot(s);
                if (t <= knot) return s.base_rate * std::expm1(s.ramp * t) / s.ramp;
                const double at_knot = -0.5 * s.base_rate / s.ramp;
                return at_knot + 0.5 * s.base_rate * (t - knot);
            }
        },
        spec);
}

double survival(const HazardSpec& spec, double t) {
    return std::exp(-cumulative_hazard(spec, t));
}

double density(const HazardSpec& spec, double t) {
    return hazard(spec, t) * survival(spec, t);
}

double inverse_cum_hazard(const HazardSpec& spec, double target) {
    if (target < 0.0 || !std::isfinite(target))
        throw std::domain_error("inverse_cum_hazard: target must be finite and non-negative");
    return std::visit(
        [target](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return target / s.rate;
            } else if constexpr (std::is_same_v<T, WeibullParams>) {
                return std::pow(target / s.scale, 1.0 / s.shape);
            } else if constexpr (std::is_same_v<T, EarlyEffect>) {
                const double at_knot = 0.4 * s.base_rate / s.ramp;
                if (target <= at_knot)
                    return std::log1p(s.ramp * target / (0.6 * s.base_rate)) / s.ramp;
                return early_knot(s) + (target - at_knot) / s.base_rate;
            } else {
                const double at_knot = -0.5 * s.base_rate / s.ramp;
                if (target <= at_knot)
                    return std::log1p(s.ramp * target / s.base_rate) / s.ramp;
                return late_knot(s) + (target - at_knot) / (0.5 * s.base_rate);
            }
        },
        spec);
}

double sample_event_time(const HazardSpec& spec, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("sample_event_time: u must lie in (0,1)");
    return inverse_cum_hazard(spec, -std::log(u));
}

double quantile(const HazardSpec& spec, double prob) {
    if (!(prob > 0.0 && prob < 1.0))
        throw std::domain_error("quantile: prob must lie in (0,1)");
    return inverse_cum_hazard(spec, -std::log1p(-prob));
}

double median_survival_time(const HazardSpec& spec) {
    return inverse_cum_hazard(spec, -kLog05);
}

double mean_survival_time(const HazardSpec& spec) {
    return integrate_adaptive([&spec](double p) { return quantile(spec, p); }, 0.0, 1.0, 1e-8,
                              20000);
}

}  // namespace winprob
