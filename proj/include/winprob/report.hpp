#pragma once

#include <optional>
#include <string>
#include <vector>

#include "winprob/bayes.hpp"
#include "winprob/comparators.hpp"
#include "winprob/study.hpp"

namespace winprob {

struct ArmSummary {
    int n = 0;
    int events = 0;
    double median_observed_time = 0.0;
};

struct AnalyzeOptions {
    double alpha = 0.05;
    std::optional<double> tau;  // default: last observed event time across arms
    MethodSelection methods;    // all five by default
    McmcConfig mcmc;            // full-scale default (3 x 5000, half burn-in)
    PriorConfig prior;
    TiePolicy ties = TiePolicy::Error;
};

// Everything a reader needs to interpret one two-arm analysis, plus the
// provenance block that makes the run reproducible bit-for-bit.
struct AnalysisReport {
    ArmSummary active;
    ArmSummary control;
    double tau = 0.0;
    std::string tau_rule;  // "last_event" or "user"

    std::optional<EstimandSummary> wp;
    std::optional<EstimandSummary> rwp;
    std::optional<Decision> wp_decision;
    std::optional<Decision> rwp_decision;
    std::optional<double> empirical_wp_value;  // pairwise WP, uncensored data only
    std::vector<TestResult> comparators;
    std::vector<std::string> warnings;

    FitDiagnostics diagnostics;  // meaningful when wp/rwp were fitted
    AnalyzeOptions options;
};

AnalysisReport analyze_dataset(const Dataset& data, const AnalyzeOptions& options);

std::string report_to_json(const AnalysisReport& report);  // versioned schema
std::string report_to_text(const AnalysisReport& report);

}  // namespace winprob
