#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "winprob/bayes.hpp"
#include "winprob/scenario.hpp"

namespace winprob {

struct MethodSelection {
    bool wp = true;
    bool rwp = true;
    bool logrank = true;
    bool rmst = true;
    bool fwr = true;

    std::vector<std::string> names() const;
    static MethodSelection from_names(const std::vector<std::string>& names);
};

// Desk-scale sampler settings for simulation studies; full-scale settings are
// a config choice away.
McmcConfig desk_mcmc_defaults();

struct StudyConfig {
    std::vector<ScenarioSpec> scenarios;
    std::vector<int> sample_sizes;  // total N, split 1:1
    int replicates = 500;
    double tau = 12.0;
    double alpha = 0.05;
    MethodSelection methods;
    McmcConfig mcmc = desk_mcmc_defaults();
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

// Accuracy metrics for one estimator against the scenario truth.
struct EstimatorMetrics {
    double truth = 0.0;
    double bias = 0.0;  // relative, or absolute when the truth is zero
    bool bias_is_absolute = false;
    double rmse = 0.0;
    double coverage_pct = 0.0;  // 95% interval coverage, percent
    double ci_width = 0.0;
};

// One (scenario, N) cell of the study grid.
struct StudyCell {
    std::string scenario;
    std::string effect;
    int sample_size = 0;
    std::map<std::string, double> rejection_rate;        // per method
    std::map<std::string, EstimatorMetrics> estimators;  // "wp" / "rwp"
    int replicates = 0;
    int failures = 0;
};

struct StudyMetrics {
    std::vector<StudyCell> cells;
    int total_failures = 0;
};

// Runs the full grid: per replicate, generate a dataset, apply every selected
// method, record two-sided rejections (posterior decision rule for WP/RWP,
// p < alpha otherwise) and estimator summaries; aggregate per cell. Replicate
// r uses an RNG substream derived from (master_seed, cell, r), so results are
// independent of the worker count and of replicate execution order.
StudyMetrics run_study(const StudyConfig& cfg);

}  // namespace winprob
