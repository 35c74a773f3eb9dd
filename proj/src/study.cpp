#include "winprob/study.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "winprob/comparators.hpp"
#include "winprob/rng.hpp"

namespace winprob {

std::vector<std::string> MethodSelection::names() const {
    std::vector<std::string> out;
    if (wp) out.push_back("wp");
    if (rwp) out.push_back("rwp");
    if (logrank) out.push_back("logrank");
    if (rmst) out.push_back("rmst");
    if (fwr) out.push_back("fwr");
    return out;
}

MethodSelection MethodSelection::from_names(const std::vector<std::string>& names) {
    MethodSelection sel{false, false, false, false, false};
    for (const auto& n : names) {
        if (n == "wp") sel.wp = true;
        else if (n == "rwp") sel.rwp = true;
        else if (n == "logrank" || n == "lr") sel.logrank = true;
        else if (n == "rmst") sel.rmst = true;
        else if (n == "fwr") sel.fwr = true;
        else throw std::invalid_argument("unknown method: " + n);
    }
    return sel;
}

McmcConfig desk_mcmc_defaults() {
    McmcConfig cfg;
    cfg.chains = 3;
    cfg.iterations = 1500;
    cfg.burnin = 500;
    return cfg;
}

void StudyConfig::validate() const {
    if (scenarios.empty()) throw std::invalid_argument("study: no scenarios");
    if (sample_sizes.empty()) throw std::invalid_argument("study: no sample sizes");
    for (int n : sample_sizes)
        if (n < 4) throw std::invalid_argument("study: sample sizes must be at least 4");
    if (replicates < 1) throw std::invalid_argument("study: replicates must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("study: tau must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("study: alpha must be in (0,1)");
    if (!methods.wp && !methods.rwp && !methods.logrank && !methods.rmst && !methods.fwr)
        throw std::invalid_argument("study: no methods selected");
    mcmc.validate();
}

namespace {

struct EstimatorRep {
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool rejected = false;
};

struct RepResult {
    bool ok = false;
    std::string error;
    std::map<std::string, bool> rejected;
    std::map<std::string, EstimatorRep> estimators;
};

RepResult run_replicate(const ScenarioSpec& spec, int n_total, const StudyConfig& cfg,
                        std::uint64_t rep_seed) {
    RepResult res;
    try {
        const int n_per_arm = n_total / 2;
        const Dataset data = generate_dataset(spec, n_per_arm, substream_seed(rep_seed, 0));

        if (cfg.methods.wp || cfg.methods.rwp) {
            McmcConfig mcmc = cfg.mcmc;
            mcmc.seed = substream_seed(rep_seed, 1);
            const PosteriorFit fit = sample_posterior(data, PriorConfig{}, mcmc);
            auto add_bayes = [&](const char* name, const EstimandKind& kind) {
                const auto values = transform_draws(fit.draws, kind);
                const auto summary = summarize(values, kind);
                EstimatorRep rep;
                rep.estimate = summary.mean;
                rep.ci_lo = summary.ci_lo;
                rep.ci_hi = summary.ci_hi;
                rep.rejected = decide(summary, cfg.alpha) != Decision::Inconclusive;
                res.estimators[name] = rep;
                res.rejected[name] = rep.rejected;
            };
            if (cfg.methods.wp) add_bayes("wp", EstimandKind::wp());
            if (cfg.methods.rwp) add_bayes("rwp", EstimandKind::rwp(cfg.tau));
        }
        if (cfg.methods.logrank)
            res.rejected["logrank"] = logrank_test(data).p_value < cfg.alpha;
        if (cfg.methods.rmst)
            res.rejected["rmst"] = rmst_difference(data, cfg.tau).p_value < cfg.alpha;
        if (cfg.methods.fwr) res.rejected["fwr"] = fwr_test(data).p_value < cfg.alpha;
        res.ok = true;
    } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
    }
    return res;
}

void parallel_for(int n_items, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, n_items);
    if (threads <= 1) {
        for (int i = 0; i < n_items; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

StudyMetrics run_study(const StudyConfig& cfg) {
    cfg.validate();

    StudyMetrics metrics;
    std::uint64_t cell_index = 0;
    std::mutex log_mutex;

    for (const auto& spec : cfg.scenarios) {
        const TrueEstimands truth = (cfg.methods.wp || cfg.methods.rwp)
                                        ? true_estimands(spec, cfg.tau)
                                        : TrueEstimands{};
        for (int n_total : cfg.sample_sizes) {
            const std::uint64_t cell_seed = substream_seed(cfg.master_seed, cell_index++);
            std::vector<RepResult> reps(static_cast<std::size_t>(cfg.replicates));

            parallel_for(cfg.replicates, cfg.threads, [&](int r) {
                reps[static_cast<std::size_t>(r)] = run_replicate(
                    spec, n_total, cfg, substream_seed(cell_seed, static_cast<std::uint64_t>(r)));
            });

            StudyCell cell;
            cell.scenario = to_string(spec.family);
            cell.effect = spec.effect_label;
            cell.sample_size = n_total;
            cell.replicates = cfg.replicates;

            // Aggregation walks replicates in index order, so the outcome is
            // identical however the workers interleaved.
            std::map<std::string, long long> reject_counts;
            struct Acc {
                double sum_err = 0.0, sum_sq_err = 0.0, sum_width = 0.0;
                long long covered = 0;
            };
            std::map<std::string, Acc> accs;
            long long ok_count = 0;

            for (const auto& rep : reps) {
                if (!rep.ok) {
                    ++cell.failures;
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::fprintf(stderr, "[study] replicate failed (%s N=%d): %s\n",
                                 cell.scenario.c_str(), n_total, rep.error.c_str());
                    continue;
                }
                ++ok_count;
                for (const auto& [method, rejected] : rep.rejected)
                    reject_counts[method] += rejected ? 1 : 0;
                for (const auto& [name, est] : rep.estimators) {
                    const double tr = name == "wp" ? truth.wp : truth.rwp;
                    Acc& acc = accs[name];
                    const double err = est.estimate - tr;
                    acc.sum_err += err;
                    acc.sum_sq_err += err * err;
                    acc.sum_width += est.ci_hi - est.ci_lo;
                    acc.covered += (est.ci_lo <= tr && tr <= est.ci_hi) ? 1 : 0;
                }
            }

            if (ok_count > 0) {
                for (const auto& [method, count] : reject_counts)
                    cell.rejection_rate[method] =
                        static_cast<double>(count) / static_cast<double>(ok_count);
                for (const auto& [name, acc] : accs) {
                    EstimatorMetrics em;
                    em.truth = name == "wp" ? truth.wp : truth.rwp;
                    const double mean_err = acc.sum_err / static_cast<double>(ok_count);
                    em.bias_is_absolute = std::fabs(em.truth) < 1e-12;
                    em.bias = em.bias_is_absolute ? mean_err : mean_err / em.truth;
                    em.rmse = std::sqrt(acc.sum_sq_err / static_cast<double>(ok_count));
                    em.coverage_pct =
                        100.0 * static_cast<double>(acc.covered) / static_cast<double>(ok_count);
                    em.ci_width = acc.sum_width / static_cast<double>(ok_count);
                    cell.estimators[name] = em;
                }
            }
            metrics.total_failures += cell.failures;
            metrics.cells.push_back(std::move(cell));
        }
    }
    return metrics;
}

}  // namespace winprob
