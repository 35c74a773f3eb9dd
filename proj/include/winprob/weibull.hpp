#pragma once

namespace winprob {

// Weibull(nu, lambda) with density f(t) = nu*lambda*t^(nu-1)*exp(-lambda*t^nu)
// and survival S(t) = exp(-lambda*t^nu). lambda has units month^(-nu);
// nu = 1 reduces to Exponential(lambda).
struct WeibullParams {
    double shape;  // nu
    double scale;  // lambda

    WeibullParams(double shape_, double scale_);
};

double weibull_pdf(const WeibullParams& p, double t);       // t > 0
double weibull_log_pdf(const WeibullParams& p, double t);   // t > 0
double weibull_survival(const WeibullParams& p, double t);  // t >= 0
double weibull_log_survival(const WeibullParams& p, double t);
double weibull_hazard(const WeibullParams& p, double t);      // t > 0
double weibull_cum_hazard(const WeibullParams& p, double t);  // lambda*t^nu
double weibull_quantile(const WeibullParams& p, double prob);  // F^{-1}, prob in (0,1)
double weibull_mean(const WeibullParams& p);  // lambda^(-1/nu) * Gamma(1 + 1/nu)

}  // namespace winprob
