#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "winprob/estimands.hpp"
#include "winprob/records.hpp"
#include "winprob/weibull.hpp"

namespace winprob {

struct GammaPrior {
    double shape;
    double rate;
};

// Second parameter is a precision (1/variance) on the log scale.
struct LogNormalPrior {
    double log_mean;
    double precision;
};

// Diffuse defaults: Gamma(1e-4, 1e-4) on each arm's Weibull shape and
// LogNormal(1.0005, precision 1e-4) on each arm's scale.
struct PriorConfig {
    GammaPrior shape_prior{1e-4, 1e-4};
    LogNormalPrior scale_prior{1.0005, 1e-4};
    void validate() const;
};

struct McmcConfig {
    int chains = 3;
    int iterations = 5000;  // per chain
    int burnin = -1;        // < 0 means iterations / 2
    std::uint64_t seed = 0;
    double target_acceptance = 0.3;  // random-walk scale adapted toward this during burn-in
    int adapt_batch = 50;

    int effective_burnin() const { return burnin < 0 ? iterations / 2 : burnin; }
    int retained_per_chain() const { return iterations - effective_burnin(); }
    void validate() const;
};

// One joint posterior sample of the four model parameters.
struct PosteriorDraw {
    double nu_a, lambda_a, nu_c, lambda_c;
};

struct FitDiagnostics {
    // Order: nu_a, lambda_a, nu_c, lambda_c.
    std::array<double, 4> rhat{};
    std::array<double, 4> acceptance{};  // post-burn-in acceptance rates
    std::vector<std::string> warnings;
};

struct PosteriorFit {
    std::vector<PosteriorDraw> draws;  // chain-major order, B = chains * retained
    FitDiagnostics diagnostics;
    PriorConfig prior;
    McmcConfig config;
};

// Right-censored Weibull log-likelihood for one arm:
// sum_i [event_i * log f(t_i) + (1 - event_i) * log S(t_i)].
// Returns -inf for non-positive parameters.
double log_likelihood(double shape, double scale, std::span<const SurvivalRecord> records);
double log_likelihood(const WeibullParams& params, std::span<const SurvivalRecord> records);

// Fits both arms independently (the model factorizes) with adaptive
// random-walk Metropolis on (log nu, log lambda); adaptation is frozen after
// burn-in. Deterministic given cfg.seed. Requires >= 2 records and >= 1
// observed event per arm. Arm a's draws depend only on arm a's data and the
// seed, never on arm c's data.
PosteriorFit sample_posterior(const Dataset& data, const PriorConfig& prior,
                              const McmcConfig& cfg);

// Plug each draw's (nu, lambda) pairs into the WP / RWP quadrature; one value
// per draw. Quadrature failures are reported with the offending draw index.
std::vector<double> transform_draws(std::span<const PosteriorDraw> draws,
                                    const EstimandKind& kind);

struct EstimandSummary {
    EstimandKind kind;
    double mean = 0.0;
    double ci_lo = 0.0;  // equal-tailed credible interval
    double ci_hi = 0.0;
    double pr_greater_half = 0.0;  // fraction of draws strictly above 0.5
    double level = 0.95;
    std::size_t n_draws = 0;
};

EstimandSummary summarize(std::span<const double> values, const EstimandKind& kind,
                          double level = 0.95);

enum class Decision { Superior, Inferior, Inconclusive };
const char* to_string(Decision d);

// superior if Pr(estimand > 0.5 | data) > 1 - alpha/2, inferior if < alpha/2.
Decision decide(const EstimandSummary& summary, double alpha = 0.05);

}  // namespace winprob
