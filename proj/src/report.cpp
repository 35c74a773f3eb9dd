#include "winprob/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "winprob/errors.hpp"
#include "winprob/version.hpp"

namespace winprob {

namespace {

ArmSummary summarize_arm(const std::vector<SurvivalRecord>& records) {
    ArmSummary s;
    s.n = static_cast<int>(records.size());
    s.events = static_cast<int>(count_events(records));
    std::vector<double> times;
    times.reserve(records.size());
    for (const auto& r : records) times.push_back(r.time);
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    s.median_observed_time = n % 2 == 1 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    return s;
}

double last_event_time(const Dataset& data) {
    double last = 0.0;
    for (const auto& r : data)
        if (r.event) last = std::max(last, r.time);
    return last;
}

}  // namespace

AnalysisReport analyze_dataset(const Dataset& data, const AnalyzeOptions& options) {
    if (data.empty()) throw DataError("analyze: empty dataset");
    validate_records(data);
    const auto active = arm_subset(data, Arm::Active);
    const auto control = arm_subset(data, Arm::Control);
    if (active.empty() || control.empty())
        throw DataError("analyze: dataset must contain both arms");
    if (count_events(data) == 0) throw DataError("analyze: dataset has no events");

    AnalysisReport report;
    report.options = options;
    report.active = summarize_arm(active);
    report.control = summarize_arm(control);

    if (options.tau) {
        if (!(*options.tau > 0.0)) throw std::invalid_argument("analyze: tau must be positive");
        report.tau = *options.tau;
        report.tau_rule = "user";
    } else {
        report.tau = last_event_time(data);
        report.tau_rule = "last_event";
    }

    if (options.methods.wp || options.methods.rwp) {
        const PosteriorFit fit = sample_posterior(data, options.prior, options.mcmc);
        report.diagnostics = fit.diagnostics;
        for (const auto& w : fit.diagnostics.warnings) report.warnings.push_back(w);
        if (options.methods.wp) {
            const auto values = transform_draws(fit.draws, EstimandKind::wp());
            report.wp = summarize(values, EstimandKind::wp());
            report.wp_decision = decide(*report.wp, options.alpha);
        }
        if (options.methods.rwp) {
            const auto kind = EstimandKind::rwp(report.tau);
            const auto values = transform_draws(fit.draws, kind);
            report.rwp = summarize(values, kind);
            report.rwp_decision = decide(*report.rwp, options.alpha);
        }
    }

    if (options.methods.logrank) report.comparators.push_back(logrank_test(data));
    if (options.methods.rmst) report.comparators.push_back(rmst_difference(data, report.tau));
    if (options.methods.fwr) report.comparators.push_back(fwr_test(data));

    // Pairwise WP is only defined on complete data; offer it when available.
    const bool uncensored = count_events(data) == data.size();
    if (uncensored) {
        std::vector<double> ta, tc;
        for (const auto& r : active) ta.push_back(r.time);
        for (const auto& r : control) tc.push_back(r.time);
        try {
            report.empirical_wp_value = empirical_wp(ta, tc, std::nullopt, options.ties);
        } catch (const std::invalid_argument& e) {
            report.warnings.push_back(std::string("pairwise WP skipped: ") + e.what());
        }
    }
    return report;
}

namespace {

nlohmann::json summary_json(const EstimandSummary& s) {
    nlohmann::json j{{"kind", s.kind.label()},
                     {"mean", s.mean},
                     {"ci_lo", s.ci_lo},
                     {"ci_hi", s.ci_hi},
                     {"level", s.level},
                     {"pr_greater_half", s.pr_greater_half},
                     {"n_draws", s.n_draws}};
    if (s.kind.type == EstimandKind::Type::RWP) j["tau"] = s.kind.tau;
    return j;
}

nlohmann::json test_json(const TestResult& t) {
    nlohmann::json j{{"method", t.method},
                     {"estimate", t.estimate},
                     {"statistic", t.statistic},
                     {"p_value", t.p_value}};
    if (std::isfinite(t.ci_lo) || std::isfinite(t.ci_hi)) {
        j["ci_lo"] = t.ci_lo;
        j["ci_hi"] = t.ci_hi;
    }
    if (t.tau_effective) j["tau_effective"] = *t.tau_effective;
    if (t.tally)
        j["tally"] = {{"wins", t.tally->wins}, {"losses", t.tally->losses}, {"ties", t.tally->ties}};
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["dataset"] = {
        {"active",
         {{"n", r.active.n}, {"events", r.active.events}, {"median_observed_time", r.active.median_observed_time}}},
        {"control",
         {{"n", r.control.n}, {"events", r.control.events}, {"median_observed_time", r.control.median_observed_time}}}};
    j["tau"] = r.tau;
    j["tau_rule"] = r.tau_rule;

    nlohmann::json estimands = nlohmann::json::object();
    nlohmann::json decisions = nlohmann::json::object();
    if (r.wp) {
        estimands["wp"] = summary_json(*r.wp);
        decisions["wp"] = to_string(*r.wp_decision);
    }
    if (r.rwp) {
        estimands["rwp"] = summary_json(*r.rwp);
        decisions["rwp"] = to_string(*r.rwp_decision);
    }
    j["estimands"] = estimands;
    j["decisions"] = decisions;

    nlohmann::json comps = nlohmann::json::array();
    for (const auto& t : r.comparators) comps.push_back(test_json(t));
    j["comparators"] = comps;

    if (r.empirical_wp_value) j["empirical_wp"] = *r.empirical_wp_value;
    j["warnings"] = r.warnings;

    const auto& o = r.options;
    j["provenance"] = {
        {"tool", "winprob"},
        {"version", kVersion},
        {"alpha", o.alpha},
        {"tie_policy", o.ties == TiePolicy::Error ? "error" : "half"},
        {"mcmc",
         {{"chains", o.mcmc.chains},
          {"iterations", o.mcmc.iterations},
          {"burnin", o.mcmc.effective_burnin()},
          {"seed", o.mcmc.seed},
          {"target_acceptance", o.mcmc.target_acceptance},
          {"adapt_batch", o.mcmc.adapt_batch}}},
        {"priors",
         {{"shape", {{"dist", "gamma"}, {"shape", o.prior.shape_prior.shape}, {"rate", o.prior.shape_prior.rate}}},
          {"scale",
           {{"dist", "lognormal"},
            {"log_mean", o.prior.scale_prior.log_mean},
            {"precision", o.prior.scale_prior.precision}}}}},
        {"diagnostics",
         {{"rhat",
           {{"nu_a", r.diagnostics.rhat[0]},
            {"lambda_a", r.diagnostics.rhat[1]},
            {"nu_c", r.diagnostics.rhat[2]},
            {"lambda_c", r.diagnostics.rhat[3]}}},
          {"acceptance",
           {{"nu_a", r.diagnostics.acceptance[0]},
            {"lambda_a", r.diagnostics.acceptance[1]},
            {"nu_c", r.diagnostics.acceptance[2]},
            {"lambda_c", r.diagnostics.acceptance[3]}}}}}};
    return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out.precision(4);
    out << std::fixed;
    out << "two-arm survival analysis\n";
    out << "  active : n=" << r.active.n << " events=" << r.active.events
        << " median observed=" << r.active.median_observed_time << "\n";
    out << "  control: n=" << r.control.n << " events=" << r.control.events
        << " median observed=" << r.control.median_observed_time << "\n";
    out << "  tau=" << r.tau << " (" << r.tau_rule << ")  alpha=" << r.options.alpha << "\n\n";

    auto print_summary = [&](const char* name, const EstimandSummary& s, Decision d) {
        out << name << ": mean=" << s.mean << "  " << 100 * s.level << "% CI [" << s.ci_lo << ", "
            << s.ci_hi << "]  Pr(>0.5)=" << s.pr_greater_half << "  decision=" << to_string(d)
            << "\n";
    };
    if (r.wp) print_summary("WP ", *r.wp, *r.wp_decision);
    if (r.rwp) print_summary("RWP", *r.rwp, *r.rwp_decision);
    if (r.empirical_wp_value) out << "pairwise WP (uncensored): " << *r.empirical_wp_value << "\n";
    if (r.wp || r.rwp) out << "\n";

    for (const auto& t : r.comparators) {
        out << t.method << ": estimate=" << t.estimate << "  p=" << t.p_value;
        if (std::isfinite(t.ci_lo)) out << "  95% CI [" << t.ci_lo << ", " << t.ci_hi << "]";
        if (t.tau_effective) out << "  tau_eff=" << *t.tau_effective;
        if (t.tally)
            out << "  wins/losses/ties=" << t.tally->wins << "/" << t.tally->losses << "/"
                << t.tally->ties;
        out << "\n";
    }
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

}  // namespace winprob
