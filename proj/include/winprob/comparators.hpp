#pragma once

#include <limits>
#include <optional>
#include <string>

#include "winprob/records.hpp"

namespace winprob {

// Win/loss/tie counts over all active x control pairs;
// wins + losses + ties == n_a * n_c always.
struct PairwiseTally {
    long long wins = 0;
    long long losses = 0;
    long long ties = 0;
};

struct TestResult {
    std::string method;
    double estimate = 0.0;   // method-specific: O-E for log-rank, RMST difference, win ratio
    double statistic = 0.0;  // chi-square for log-rank, z otherwise
    double p_value = 1.0;    // two-sided
    double ci_lo = std::numeric_limits<double>::quiet_NaN();  // 95% CI where defined
    double ci_hi = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> tau_effective;  // RMST: the restriction actually used
    std::optional<PairwiseTally> tally;   // FWR
};

// Mantel log-rank test with hypergeometric variance; events precede
// censorings at tied times. Requires at least one event overall.
TestResult logrank_test(const Dataset& data);

// Difference in restricted mean survival time (active - control). The
// effective restriction is min(tau_requested, max observed time per arm) and
// is reported in the result; the curve is never extrapolated.
TestResult rmst_difference(const Dataset& data, double tau_requested);

// Frequentist win ratio over all pairs of observed outcomes: active subject i
// beats control subject j when j's event is observed and T_i > T_j (a
// censoring at exactly T_j counts as surviving past it); the reverse for a
// loss; anything else is indeterminate and tallied as a tie. Inference on
// log(wins/losses) with a two-sample U-statistic variance; a seeded
// bootstrap supplies the interval when one side of the ratio is empty.
TestResult fwr_test(const Dataset& data);

}  // namespace winprob
