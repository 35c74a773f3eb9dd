#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "winprob/hazard.hpp"
#include "winprob/records.hpp"

namespace winprob {

enum class ScenarioFamily { PH, Early, Late, Null };

const char* to_string(ScenarioFamily f);
ScenarioFamily scenario_family_from_string(const std::string& name);

// Two-arm generative scenario: exponential control (median 9 months unless
// overridden), a treatment-effect hazard for the active arm, and a uniform
// administrative censoring window in months.
struct ScenarioSpec {
    ScenarioFamily family = ScenarioFamily::Null;
    std::string effect_label;  // e.g. "hr=0.65", "ramp=0.0101", "null"
    HazardSpec control = Exponential(0.07701635339554948);
    HazardSpec active = Exponential(0.07701635339554948);
    double censor_lo = 12.0;
    double censor_hi = 21.0;

    void validate() const;
};

constexpr double kControlMedianMonths = 9.0;
double control_rate();  // log(2) / 9

// Reference effect sizes: three per family, calibrated so the unrestricted
// win probability against the exponential control equals the target column.
struct EffectGrid {
    static constexpr std::array<double, 3> target_wp{0.606, 0.556, 0.526};
    static constexpr std::array<double, 3> ph_hr{0.65, 0.80, 0.90};
    static constexpr std::array<double, 3> early_ramp{0.0101410117, 0.0508673554, 0.1402072059};
    static constexpr std::array<double, 3> late_ramp{-0.0964905542, -0.0344384189, -0.0153649506};
};

// Scenario from the reference grid; effect_index in {0,1,2} (ignored for Null).
ScenarioSpec make_scenario(ScenarioFamily family, int effect_index, double censor_lo = 12.0,
                           double censor_hi = 21.0);

// Scenario with an explicit effect parameter (HR for PH, hazard ramp for
// Early/Late; ignored for Null).
ScenarioSpec make_scenario_with_parameter(ScenarioFamily family, double parameter,
                                          double censor_lo = 12.0, double censor_hi = 21.0,
                                          double control_median = kControlMedianMonths);

// The nine effect rows (PH, Early, Late x three sizes) plus the null row.
std::vector<ScenarioSpec> reference_grid(double censor_lo = 12.0, double censor_hi = 21.0);

// Event times by inverse-CDF sampling, censoring times uniform on the window,
// observed time = min of the two; 1:1 allocation; deterministic given seed.
Dataset generate_dataset(const ScenarioSpec& spec, int n_per_arm, std::uint64_t seed);

// Population values of every summary the scenario grid tracks.
struct TrueEstimands {
    double wp = 0.5;      // Pr(Y_a > Y_c)
    double rwp = 0.5;     // restricted at tau
    double avg_hr = 1.0;  // H_a(tau) / H_c(tau); the plain HR under PH
    double d_rmst = 0.0;  // E[min(Y,tau)] difference, active - control
    double d_mst = 0.0;   // median difference
    double d_mu = 0.0;    // mean difference
    double tau = 0.0;
};

TrueEstimands true_estimands(const ScenarioSpec& spec, double tau);

}  // namespace winprob
