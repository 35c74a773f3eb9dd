#include "winprob/weibull.hpp"

#include <cmath>
#include <stdexcept>

namespace winprob {

WeibullParams::WeibullParams(double shape_, double scale_) : shape(shape_), scale(scale_) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw std::domain_error("WeibullParams: shape must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("WeibullParams: scale must be positive");
}

double weibull_pdf(const WeibullParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("weibull_pdf: t must be positive");
    return p.shape * p.scale * std::pow(t, p.shape - 1.0) * std::exp(-p.scale * std::pow(t, p.shape));
}

double weibull_log_pdf(const WeibullParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("weibull_log_pdf: t must be positive");
    const double log_t = std::log(t);
    return std::log(p.shape) + std::log(p.scale) + (p.shape - 1.0) * log_t -
           p.scale * std::exp(p.shape * log_t);
}

double weibull_survival(const WeibullParams& p, double t) {
    if (t < 0.0) throw std::domain_error("weibull_survival: t must be non-negative");
    if (t == 0.0) return 1.0;
    return std::exp(-p.scale * std::pow(t, p.shape));
}

double weibull_log_survival(const WeibullParams& p, double t) {
    if (t < 0.0) throw std::domain_error("weibull_log_survival: t must be non-negative");
    if (t == 0.0) return 0.0;
    return -p.scale * std::pow(t, p.shape);
}

double weibull_hazard(const WeibullParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("weibull_hazard: t must be positive");
    return p.shape * p.scale * std::pow(t, p.shape - 1.0);
}

double weibull_cum_hazard(const WeibullParams& p, double t) {
    if (t < 0.0) throw std::domain_error("weibull_cum_hazard: t must be non-negative");
    if (t == 0.0) return 0.0;
    return p.scale * std::pow(t, p.shape);
}

double weibull_quantile(const WeibullParams& p, double prob) {
    if (!(prob > 0.0 && prob < 1.0))
        throw std::domain_error("weibull_quantile: prob must lie in (0,1)");
    return std::pow(-std::log1p(-prob) / p.scale, 1.0 / p.shape);
}

double weibull_mean(const WeibullParams& p) {
    return std::pow(p.scale, -1.0 / p.shape) * std::tgamma(1.0 + 1.0 / p.shape);
}

}  // namespace winprob
