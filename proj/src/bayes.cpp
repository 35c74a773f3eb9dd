#include "winprob/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "winprob/errors.hpp"
#include "winprob/rng.hpp"

namespace winprob {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sufficient pieces of one arm's data for repeated likelihood evaluation:
// log l(nu, lambda) = d*(log nu + log lambda) + (nu-1)*sum_ev log t - lambda * sum_all t^nu.
struct ArmStats {
    std::vector<double> log_times;  // all records
    double sum_log_t_events = 0.0;
    int n_events = 0;
};

ArmStats arm_stats(std::span<const SurvivalRecord> records) {
    ArmStats s;
    s.log_times.reserve(records.size());
    for (const auto& r : records) {
        const double lt = std::log(r.time);
        s.log_times.push_back(lt);
        if (r.event) {
            s.sum_log_t_events += lt;
            ++s.n_events;
        }
    }
    return s;
}

// sum_i t_i^nu, the only O(n) term that changes when nu moves.
double pow_sum(const ArmStats& s, double nu) {
    double acc = 0.0;
    for (double lt : s.log_times) acc += std::exp(nu * lt);
    return acc;
}

// Log posterior density of (x, y) = (log nu, log lambda) including the
// Jacobians of both transforms; pow_sum_nu must equal pow_sum(stats, e^x).
double log_post(const ArmStats& stats, const PriorConfig& prior, double x, double y,
                double pow_sum_nu) {
    const double nu = std::exp(x);
    const double lambda = std::exp(y);
    const double loglik =
        stats.n_events * (x + y) + (nu - 1.0) * stats.sum_log_t_events - lambda * pow_sum_nu;
    // Gamma(a,b) on nu in x-space contributes a*x - b*e^x; the log-normal on
    // lambda is Gaussian in y.
    const double dy = y - prior.scale_prior.log_mean;
    const double logprior =
        prior.shape_prior.shape * x - prior.shape_prior.rate * nu -
        0.5 * prior.scale_prior.precision * dy * dy;
    return loglik + logprior;
}

struct ChainDraws {
    std::vector<double> nu;
    std::vector<double> lambda;
    double acc_x = 0.0;  // post-burn-in acceptance rates
    double acc_y = 0.0;
};

// Method-of-moments start; falls back to an exponential guess matched to the
// observed median when events are too sparse to moment-match.
std::pair<double, double> initial_params(std::span<const SurvivalRecord> records) {
    std::vector<double> ev;
    std::vector<double> all;
    for (const auto& r : records) {
        all.push_back(r.time);
        if (r.event) ev.push_back(r.time);
    }
    auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    if (ev.size() >= 2) {
        double m = 0.0;
        for (double t : ev) m += t;
        m /= static_cast<double>(ev.size());
        double ss = 0.0;
        for (double t : ev) ss += (t - m) * (t - m);
        const double sd = std::sqrt(ss / (static_cast<double>(ev.size()) - 1.0));
        if (sd > 0.0 && m > 0.0) {
            const double cv = sd / m;
            const double nu0 = std::clamp(std::pow(cv, -1.086), 0.2, 10.0);
            const double lambda0 = std::log(2.0) / std::pow(median_of(ev), nu0);
            return {nu0, lambda0};
        }
    }
    return {1.0, std::log(2.0) / median_of(all)};
}

ChainDraws run_chain(const ArmStats& stats, const PriorConfig& prior, const McmcConfig& cfg,
                     double nu0, double lambda0, std::uint64_t seed) {
    Rng rng(seed);
    const int burnin = cfg.effective_burnin();
    const int retained = cfg.retained_per_chain();

    // Overdispersed starts: jitter the shared initial point per chain.
    double x = std::log(nu0) + 0.1 * rng.normal();
    double y = std::log(lambda0) + 0.1 * rng.normal();

    double psum = pow_sum(stats, std::exp(x));
    double lp = log_post(stats, prior, x, y, psum);
    if (!std::isfinite(lp)) throw NumericalError("sample_posterior: non-finite initial density");

    // Random-walk scales, adapted in batches during burn-in only.
    const double d_ev = std::max(1.0, static_cast<double>(stats.n_events));
    double step_x = std::max(0.02, 2.4 / std::sqrt(d_ev));
    double step_y = std::max(0.02, 2.4 / std::sqrt(d_ev));

    ChainDraws out;
    out.nu.reserve(retained);
    out.lambda.reserve(retained);

    int batch_acc_x = 0, batch_acc_y = 0, batch_n = 0, batch_index = 0;
    long long post_acc_x = 0, post_acc_y = 0;

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const bool adapting = iter < burnin;

        // shape move: pow_sum must be recomputed
        {
            const double xp = x + step_x * rng.normal();
            const double psum_p = pow_sum(stats, std::exp(xp));
            const double lp_p = log_post(stats, prior, xp, y, psum_p);
            if (std::log(rng.uniform()) < lp_p - lp) {
                x = xp;
                psum = psum_p;
                lp = lp_p;
                if (adapting) ++batch_acc_x;
                else ++post_acc_x;
            }
        }
        // scale move: O(1) given the cached pow_sum
        {
            const double yp = y + step_y * rng.normal();
            const double lp_p = log_post(stats, prior, x, yp, psum);
            if (std::log(rng.uniform()) < lp_p - lp) {
                y = yp;
                lp = lp_p;
                if (adapting) ++batch_acc_y;
                else ++post_acc_y;
            }
        }

        if (adapting) {
            if (++batch_n == cfg.adapt_batch) {
                ++batch_index;
                const double delta = std::min(0.25, 2.0 / std::sqrt(static_cast<double>(batch_index)));
                const double rx = static_cast<double>(batch_acc_x) / cfg.adapt_batch;
                const double ry = static_cast<double>(batch_acc_y) / cfg.adapt_batch;
                step_x *= std::exp(delta * (rx - cfg.target_acceptance));
                step_y *= std::exp(delta * (ry - cfg.target_acceptance));
                batch_acc_x = batch_acc_y = batch_n = 0;
            }
        } else {
            out.nu.push_back(std::exp(x));
            out.lambda.push_back(std::exp(y));
        }
    }

    const double denom = std::max(1, cfg.iterations - burnin);
    out.acc_x = static_cast<double>(post_acc_x) / denom;
    out.acc_y = static_cast<double>(post_acc_y) / denom;
    return out;
}

// Split R-hat: each chain is halved, then the usual between/within ratio.
double split_rhat(const std::vector<const std::vector<double>*>& chains) {
    const std::size_t n_half = chains.front()->size() / 2;
    if (n_half < 2) return 1.0;

    std::vector<double> means, vars;
    for (const auto* c : chains) {
        for (int h = 0; h < 2; ++h) {
            const std::size_t begin = h == 0 ? 0 : c->size() - n_half;
            double m = 0.0;
            for (std::size_t i = 0; i < n_half; ++i) m += (*c)[begin + i];
            m /= static_cast<double>(n_half);
            double ss = 0.0;
            for (std::size_t i = 0; i < n_half; ++i) {
                const double d = (*c)[begin + i] - m;
                ss += d * d;
            }
            means.push_back(m);
            vars.push_back(ss / (static_cast<double>(n_half) - 1.0));
        }
    }
    double w = 0.0;
    for (double v : vars) w += v;
    w /= static_cast<double>(vars.size());

    double gm = 0.0;
    for (double m : means) gm += m;
    gm /= static_cast<double>(means.size());
    double b_over_n = 0.0;
    for (double m : means) b_over_n += (m - gm) * (m - gm);
    b_over_n /= (static_cast<double>(means.size()) - 1.0);

    if (w <= 0.0) return 1.0;
    const double n = static_cast<double>(n_half);
    const double var_plus = (n - 1.0) / n * w + b_over_n;
    return std::sqrt(var_plus / w);
}

}  // namespace

void PriorConfig::validate() const {
    if (!(shape_prior.shape > 0.0) || !(shape_prior.rate > 0.0))
        throw std::invalid_argument("PriorConfig: gamma hyperparameters must be positive");
    if (!(scale_prior.precision > 0.0))
        throw std::invalid_argument("PriorConfig: log-normal precision must be positive");
    if (!std::isfinite(scale_prior.log_mean))
        throw std::invalid_argument("PriorConfig: log-normal mean must be finite");
}

void McmcConfig::validate() const {
    if (chains < 1) throw std::invalid_argument("McmcConfig: need at least one chain");
    if (iterations < 2) throw std::invalid_argument("McmcConfig: need at least two iterations");
    if (effective_burnin() < 0 || effective_burnin() >= iterations)
        throw std::invalid_argument("McmcConfig: iterations per chain must exceed burn-in");
    if (adapt_batch < 1) throw std::invalid_argument("McmcConfig: adapt_batch must be positive");
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
        throw std::invalid_argument("McmcConfig: target acceptance must lie in (0,1)");
}

double log_likelihood(double shape, double scale, std::span<const SurvivalRecord> records) {
    if (!(shape > 0.0) || !(scale > 0.0)) return kNegInf;
    double ll = 0.0;
    for (const auto& r : records) {
        if (!(r.time > 0.0)) throw std::domain_error("log_likelihood: times must be positive");
        const double lt = std::log(r.time);
        const double cum = scale * std::exp(shape * lt);
        if (r.event)
            ll += std::log(shape) + std::log(scale) + (shape - 1.0) * lt - cum;
        else
            ll += -cum;
    }
    return ll;
}

double log_likelihood(const WeibullParams& params, std::span<const SurvivalRecord> records) {
    return log_likelihood(params.shape, params.scale, records);
}

PosteriorFit sample_posterior(const Dataset& data, const PriorConfig& prior,
                              const McmcConfig& cfg) {
    prior.validate();
    cfg.validate();

    const auto active = arm_subset(data, Arm::Active);
    const auto control = arm_subset(data, Arm::Control);
    for (const auto* arm : {&active, &control}) {
        if (arm->size() < 2)
            throw DataError("sample_posterior: each arm needs at least two records");
        if (count_events(*arm) == 0)
            throw DataError("sample_posterior: an arm with zero events cannot identify the scale");
    }
    validate_records(data);

    // Arms are fitted independently with separate seed streams, so changing
    // one arm's data cannot perturb the other's draws.
    struct ArmFit {
        std::vector<ChainDraws> chains;
    };
    auto fit_arm = [&](const std::vector<SurvivalRecord>& records, int arm_index) {
        const ArmStats stats = arm_stats(records);
        const auto [nu0, lambda0] = initial_params(records);
        ArmFit fit;
        for (int chain = 0; chain < cfg.chains; ++chain) {
            const std::uint64_t seed =
                substream_seed(cfg.seed, static_cast<std::uint64_t>(arm_index),
                               static_cast<std::uint64_t>(chain));
            fit.chains.push_back(run_chain(stats, prior, cfg, nu0, lambda0, seed));
        }
        return fit;
    };
    const ArmFit fit_a = fit_arm(active, 0);
    const ArmFit fit_c = fit_arm(control, 1);

    PosteriorFit out;
    out.prior = prior;
    out.config = cfg;
    const int retained = cfg.retained_per_chain();
    out.draws.reserve(static_cast<std::size_t>(cfg.chains) * retained);
    for (int chain = 0; chain < cfg.chains; ++chain) {
        for (int i = 0; i < retained; ++i) {
            out.draws.push_back({fit_a.chains[chain].nu[i], fit_a.chains[chain].lambda[i],
                                 fit_c.chains[chain].nu[i], fit_c.chains[chain].lambda[i]});
        }
    }

    auto chain_ptrs = [&](const ArmFit& fit, bool shape_param) {
        std::vector<const std::vector<double>*> ptrs;
        for (const auto& c : fit.chains) ptrs.push_back(shape_param ? &c.nu : &c.lambda);
        return ptrs;
    };
    out.diagnostics.rhat = {split_rhat(chain_ptrs(fit_a, true)), split_rhat(chain_ptrs(fit_a, false)),
                            split_rhat(chain_ptrs(fit_c, true)), split_rhat(chain_ptrs(fit_c, false))};

    auto mean_acc = [&](const ArmFit& fit, bool shape_param) {
        double acc = 0.0;
        for (const auto& c : fit.chains) acc += shape_param ? c.acc_x : c.acc_y;
        return acc / static_cast<double>(fit.chains.size());
    };
    out.diagnostics.acceptance = {mean_acc(fit_a, true), mean_acc(fit_a, false),
                                  mean_acc(fit_c, true), mean_acc(fit_c, false)};

    static const char* kParamNames[4] = {"nu_a", "lambda_a", "nu_c", "lambda_c"};
    for (int k = 0; k < 4; ++k) {
        if (out.diagnostics.rhat[k] > 1.05)
            out.diagnostics.warnings.push_back(std::string("split R-hat above 1.05 for ") +
                                               kParamNames[k]);
    }
    return out;
}

std::vector<double> transform_draws(std::span<const PosteriorDraw> draws,
                                    const EstimandKind& kind) {
    if (draws.empty()) throw std::invalid_argument("transform_draws: no draws");
    std::vector<double> values;
    values.reserve(draws.size());
    for (std::size_t j = 0; j < draws.size(); ++j) {
        const auto& d = draws[j];
        try {
            const HazardSpec a = WeibullParams(d.nu_a, d.lambda_a);
            const HazardSpec c = WeibullParams(d.nu_c, d.lambda_c);
            const double v = kind.type == EstimandKind::Type::WP
                                 ? win_probability(a, c).value
                                 : restricted_win_probability(a, c, kind.tau).value;
            values.push_back(v);
        } catch (const std::exception& e) {
            throw NumericalError("transform_draws: draw " + std::to_string(j) + ": " + e.what());
        }
    }
    return values;
}

namespace {
double quantile_type7(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = (static_cast<double>(n) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}
}  // namespace

EstimandSummary summarize(std::span<const double> values, const EstimandKind& kind, double level) {
    if (values.empty()) throw std::invalid_argument("summarize: no values");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("summarize: bad level");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    EstimandSummary s;
    s.kind = kind;
    s.level = level;
    s.n_draws = values.size();
    double mean = 0.0;
    std::size_t above = 0;
    for (double v : values) {
        mean += v;
        if (v > 0.5) ++above;
    }
    s.mean = mean / static_cast<double>(values.size());
    const double tail = 0.5 * (1.0 - level);
    s.ci_lo = quantile_type7(sorted, tail);
    s.ci_hi = quantile_type7(sorted, 1.0 - tail);
    s.pr_greater_half = static_cast<double>(above) / static_cast<double>(values.size());
    return s;
}

const char* to_string(Decision d) {
    switch (d) {
        case Decision::Superior: return "superior";
        case Decision::Inferior: return "inferior";
        default: return "inconclusive";
    }
}

Decision decide(const EstimandSummary& summary, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("decide: bad alpha");
    if (summary.pr_greater_half > 1.0 - alpha / 2.0) return Decision::Superior;
    if (summary.pr_greater_half < alpha / 2.0) return Decision::Inferior;
    return Decision::Inconclusive;
}

}  // namespace winprob
