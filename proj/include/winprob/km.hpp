#pragma once

#include <span>
#include <vector>

#include "winprob/records.hpp"

namespace winprob {

// Product-limit estimate for a single arm. Entries exist only at distinct
// event times (censorings change the risk set but not the curve).
struct KMCurve {
    std::vector<double> time;      // distinct event times, increasing
    std::vector<double> survival;  // estimate just after each event time
    std::vector<int> at_risk;      // n_j at risk just before each event time
    std::vector<int> events;       // d_j events at each event time
    std::vector<double> variance;  // Greenwood variance of the estimate
    int n = 0;                     // subjects
    double max_observed_time = 0.0;  // largest time, event or censoring

    // Step-function lookup; 1 before the first event time.
    double survival_at(double t) const;
};

// Kaplan-Meier with the standard tie rule: at tied times events happen first,
// so a subject censored at an event time is still in that risk set.
KMCurve km_estimate(std::span<const SurvivalRecord> records);

// Area under the KM step function from 0 to tau.
double km_rmst(const KMCurve& curve, double tau);

// Variance of the restricted mean, sum_j A(t_j)^2 * d_j / (n_j (n_j - d_j))
// with A(t_j) the remaining area under the curve from t_j to tau. Terms with
// n_j == d_j contribute zero in the limit and are skipped.
double km_rmst_variance(const KMCurve& curve, double tau);

}  // namespace winprob
