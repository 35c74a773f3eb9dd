#include "winprob/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "winprob/estimands.hpp"
#include "winprob/quadrature.hpp"
#include "winprob/rng.hpp"

namespace winprob {

const char* to_string(ScenarioFamily f) {
    switch (f) {
        case ScenarioFamily::PH: return "PH";
        case ScenarioFamily::Early: return "Early";
        case ScenarioFamily::Late: return "Late";
        default: return "Null";
    }
}

ScenarioFamily scenario_family_from_string(const std::string& name) {
    if (name == "PH" || name == "ph") return ScenarioFamily::PH;
    if (name == "Early" || name == "early") return ScenarioFamily::Early;
    if (name == "Late" || name == "late") return ScenarioFamily::Late;
    if (name == "Null" || name == "null") return ScenarioFamily::Null;
    throw std::invalid_argument("unknown scenario family: " + name);
}

double control_rate() { return std::log(2.0) / kControlMedianMonths; }

void ScenarioSpec::validate() const {
    if (!(censor_lo > 0.0) || !(censor_hi > censor_lo))
        throw std::invalid_argument("ScenarioSpec: censoring window must satisfy 0 < lo < hi");
}

ScenarioSpec make_scenario(ScenarioFamily family, int effect_index, double censor_lo,
                           double censor_hi) {
    if (family == ScenarioFamily::Null)
        return make_scenario_with_parameter(family, 0.0, censor_lo, censor_hi);
    if (effect_index < 0 || effect_index > 2)
        throw std::invalid_argument("make_scenario: effect_index must be 0, 1 or 2");
    double param = 0.0;
    switch (family) {
        case ScenarioFamily::PH: param = EffectGrid::ph_hr[effect_index]; break;
        case ScenarioFamily::Early: param = EffectGrid::early_ramp[effect_index]; break;
        default: param = EffectGrid::late_ramp[effect_index]; break;
    }
    return make_scenario_with_parameter(family, param, censor_lo, censor_hi);
}

ScenarioSpec make_scenario_with_parameter(ScenarioFamily family, double parameter,
                                          double censor_lo, double censor_hi,
                                          double control_median) {
    if (!(control_median > 0.0))
        throw std::invalid_argument("make_scenario_with_parameter: control median must be positive");
    const double rate = std::log(2.0) / control_median;

    ScenarioSpec spec;
    spec.family = family;
    spec.control = Exponential(rate);
    spec.censor_lo = censor_lo;
    spec.censor_hi = censor_hi;

    char label[64];
    switch (family) {
        case ScenarioFamily::PH:
            if (!(parameter > 0.0))
                throw std::invalid_argument("PH scenario: hazard ratio must be positive");
            spec.active = Exponential(parameter * rate);
            std::snprintf(label, sizeof label, "hr=%g", parameter);
            break;
        case ScenarioFamily::Early:
            spec.active = EarlyEffect(rate, parameter);
            std::snprintf(label, sizeof label, "ramp=%g", parameter);
            break;
        case ScenarioFamily::Late:
            spec.active = LateEffect(rate, parameter);
            std::snprintf(label, sizeof label, "ramp=%g", parameter);
            break;
        default:
            spec.active = spec.control;
            std::snprintf(label, sizeof label, "null");
            break;
    }
    spec.effect_label = label;
    spec.validate();
    return spec;
}

std::vector<ScenarioSpec> reference_grid(double censor_lo, double censor_hi) {
    std::vector<ScenarioSpec> grid;
    for (ScenarioFamily f : {ScenarioFamily::PH, ScenarioFamily::Early, ScenarioFamily::Late})
        for (int i = 0; i < 3; ++i) grid.push_back(make_scenario(f, i, censor_lo, censor_hi));
    grid.push_back(make_scenario(ScenarioFamily::Null, 0, censor_lo, censor_hi));
    return grid;
}

Dataset generate_dataset(const ScenarioSpec& spec, int n_per_arm, std::uint64_t seed) {
    if (n_per_arm < 1) throw std::invalid_argument("generate_dataset: n_per_arm must be >= 1");
    spec.validate();

    Dataset data;
    data.reserve(static_cast<std::size_t>(2 * n_per_arm));
    Rng rng(seed);
    for (int arm_index = 0; arm_index < 2; ++arm_index) {
        const Arm arm = arm_index == 0 ? Arm::Active : Arm::Control;
        const HazardSpec& dist = arm_index == 0 ? spec.active : spec.control;
        for (int i = 0; i < n_per_arm; ++i) {
            const double event_time = sample_event_time(dist, rng.uniform());
            const double censor_time = rng.uniform(spec.censor_lo, spec.censor_hi);
            const bool event = event_time <= censor_time;
            data.push_back({event ? event_time : censor_time, event, arm});
        }
    }
    return data;
}

TrueEstimands true_estimands(const ScenarioSpec& spec, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("true_estimands: tau must be positive");

    TrueEstimands out;
    out.tau = tau;
    out.wp = win_probability(spec.active, spec.control).value;
    out.rwp = restricted_win_probability(spec.active, spec.control, tau).value;
    out.avg_hr = cumulative_hazard(spec.active, tau) / cumulative_hazard(spec.control, tau);
    out.d_rmst = integrate_adaptive(
        [&](double t) { return survival(spec.active, t) - survival(spec.control, t); }, 0.0, tau,
        1e-10);
    out.d_mst = median_survival_time(spec.active) - median_survival_time(spec.control);
    out.d_mu = mean_survival_time(spec.active) - mean_survival_time(spec.control);
    return out;
}

}  // namespace winprob
