// winprob: win-probability estimation and trial simulation for two-arm
// right-censored time-to-event data.
//
// Subcommands:
//   analyze   fit the Bayesian model to a dataset CSV and report WP/RWP
//             alongside log-rank, RMST and win-ratio tests
//   truth     population summary table for a scenario grid
//   simulate  generate a dataset CSV from a scenario
//   power     Monte Carlo power / type-I-error / estimator-quality study

#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "winprob/config.hpp"
#include "winprob/csv.hpp"
#include "winprob/errors.hpp"
#include "winprob/report.hpp"
#include "winprob/version.hpp"

namespace {

using namespace winprob;

struct WindowOption {
    double lo = 12.0;
    double hi = 21.0;
};

void parse_window(const std::string& text, WindowOption& w) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--window", "expected lo,hi");
    try {
        w.lo = std::stod(text.substr(0, comma));
        w.hi = std::stod(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected numeric lo,hi");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find(',', start);
        if (pos == std::string::npos) {
            if (start < text.size()) out.push_back(text.substr(start));
            break;
        }
        if (pos > start) out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

// Scenario list from a config file plus command-line overrides. Families come
// from `families`; per-family effect parameters come from explicit lists
// (ph_hr / early_ramp / late_ramp) or 1-based reference-grid indices in
// `effects` (default: all three).
std::vector<ScenarioSpec> scenarios_from_config(const KeyValueConfig& cfg, const WindowOption& w) {
    const double control_median = cfg.get_double("control_median", kControlMedianMonths);

    std::vector<std::string> families = cfg.get_list("families");
    if (families.empty()) families = {"PH", "Early", "Late", "Null"};

    std::vector<int> effect_indices;
    for (const auto& e : cfg.get_list("effects")) {
        const int idx = static_cast<int>(std::stol(e));
        if (idx < 1 || idx > 3) throw DataError("config key 'effects': indices must be 1..3");
        effect_indices.push_back(idx - 1);
    }
    if (effect_indices.empty()) effect_indices = {0, 1, 2};

    std::vector<ScenarioSpec> out;
    for (const auto& name : families) {
        const ScenarioFamily family = scenario_family_from_string(name);
        if (family == ScenarioFamily::Null) {
            out.push_back(make_scenario_with_parameter(family, 0.0, w.lo, w.hi, control_median));
            continue;
        }
        const char* key = family == ScenarioFamily::PH
                              ? "ph_hr"
                              : (family == ScenarioFamily::Early ? "early_ramp" : "late_ramp");
        const auto explicit_params = cfg.get_double_list(key);
        if (!explicit_params.empty()) {
            for (double p : explicit_params)
                out.push_back(make_scenario_with_parameter(family, p, w.lo, w.hi, control_median));
        } else {
            for (int idx : effect_indices) {
                ScenarioSpec spec = make_scenario(family, idx, w.lo, w.hi);
                if (control_median != kControlMedianMonths) {
                    double param = 0.0;
                    switch (family) {
                        case ScenarioFamily::PH: param = EffectGrid::ph_hr[idx]; break;
                        case ScenarioFamily::Early: param = EffectGrid::early_ramp[idx]; break;
                        default: param = EffectGrid::late_ramp[idx]; break;
                    }
                    spec = make_scenario_with_parameter(family, param, w.lo, w.hi, control_median);
                }
                out.push_back(spec);
            }
        }
    }
    return out;
}

const std::vector<std::string> kGridConfigKeys = {
    "families", "effects",  "ph_hr", "early_ramp", "late_ramp", "control_median",
    "window",   "n",        "replicates", "tau",   "alpha",     "seed",
    "methods",  "chains",   "iterations", "burnin", "threads"};

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_atomic(out_path, content);
}

int cmd_analyze(const std::string& input, const std::string& out_path,
                const std::string& json_path, AnalyzeOptions options) {
    const Dataset data = read_dataset_csv(input);
    const AnalysisReport report = analyze_dataset(data, options);
    emit(out_path, report_to_text(report));
    if (!json_path.empty()) write_text_atomic(json_path, report_to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"win-probability survival analysis and trial simulation"};
    app.set_version_flag("--version", winprob::kVersion);
    app.require_subcommand(1);

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "analyze a two-arm dataset CSV");
    std::string an_input, an_out, an_json, an_methods = "wp,rwp,logrank,rmst,fwr";
    std::string an_ties = "error";
    double an_tau = -1.0, an_alpha = 0.05;
    McmcConfig an_mcmc;
    analyze->add_option("input", an_input, "dataset CSV (time,status,arm)")->required();
    analyze->add_option("--tau", an_tau, "restriction time (default: last observed event time)");
    analyze->add_option("--alpha", an_alpha, "two-sided significance level", true);
    analyze->add_option("--chains", an_mcmc.chains, "MCMC chains", true);
    analyze->add_option("--iters", an_mcmc.iterations, "iterations per chain", true);
    analyze->add_option("--burnin", an_mcmc.burnin, "burn-in per chain (default: half)");
    analyze->add_option("--seed", an_mcmc.seed, "RNG seed", true);
    analyze->add_option("--methods", an_methods, "comma list: wp,rwp,logrank,rmst,fwr", true);
    analyze->add_option("--ties", an_ties, "exact-tie policy for pairwise WP: error|half", true);
    analyze->add_option("--out", an_out, "text report path (default: stdout)");
    analyze->add_option("--json", an_json, "JSON report path");

    // ---- truth ----
    auto* truth = app.add_subcommand("truth", "population summary table for a scenario grid");
    std::string tr_config, tr_out, tr_window;
    double tr_tau = -1.0;
    truth->add_option("--config", tr_config, "grid config file");
    truth->add_option("--tau", tr_tau, "restriction time (default: window lower bound)");
    truth->add_option("--window", tr_window, "censoring window lo,hi (default 12,21)");
    truth->add_option("--out", tr_out, "output CSV path (default: stdout)");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "generate a dataset CSV from a scenario");
    std::string si_family = "Null", si_window, si_out;
    int si_effect = 1, si_n = 100;
    double si_param = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t si_seed = 1;
    simulate->add_option("--scenario", si_family, "PH|Early|Late|Null", true);
    simulate->add_option("--effect", si_effect, "reference effect size 1..3", true);
    simulate->add_option("--param", si_param, "explicit effect parameter (overrides --effect)");
    simulate->add_option("--n", si_n, "subjects per arm", true);
    simulate->add_option("--seed", si_seed, "RNG seed", true);
    simulate->add_option("--window", si_window, "censoring window lo,hi (default 12,21)");
    simulate->add_option("--out", si_out, "output CSV path")->required();

    // ---- power ----
    auto* power = app.add_subcommand("power", "Monte Carlo operating characteristics");
    std::string po_config, po_out, po_power_out, po_window, po_methods;
    int po_replicates = -1, po_threads = -1, po_chains = -1, po_iters = -1, po_burnin = -2;
    double po_tau = -1.0, po_alpha = -1.0;
    long long po_seed = -1;
    std::string po_n;
    power->add_option("--config", po_config, "grid config file");
    power->add_option("--n", po_n, "comma list of total sample sizes");
    power->add_option("--replicates", po_replicates, "Monte Carlo replicates");
    power->add_option("--tau", po_tau, "restriction time (default: window lower bound)");
    power->add_option("--alpha", po_alpha, "two-sided significance level");
    power->add_option("--seed", po_seed, "master seed");
    power->add_option("--methods", po_methods, "comma list: wp,rwp,logrank,rmst,fwr");
    power->add_option("--window", po_window, "censoring window lo,hi");
    power->add_option("--chains", po_chains, "MCMC chains");
    power->add_option("--iters", po_iters, "MCMC iterations per chain");
    power->add_option("--burnin", po_burnin, "MCMC burn-in per chain");
    power->add_option("--threads", po_threads, "worker threads (default: all cores)");
    power->add_option("--out", po_out, "metrics CSV path")->required();
    power->add_option("--power-out", po_power_out, "power-curve CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*analyze) {
            AnalyzeOptions options;
            options.alpha = an_alpha;
            if (an_tau >= 0.0) options.tau = an_tau;
            options.mcmc = an_mcmc;
            options.methods = MethodSelection::from_names(split_commas(an_methods));
            if (an_ties == "error") options.ties = TiePolicy::Error;
            else if (an_ties == "half") options.ties = TiePolicy::HalfCredit;
            else throw std::invalid_argument("--ties must be 'error' or 'half'");
            return cmd_analyze(an_input, an_out, an_json, options);
        }

        if (*truth) {
            KeyValueConfig cfg = tr_config.empty() ? KeyValueConfig::parse_string("")
                                                   : KeyValueConfig::parse_file(tr_config);
            cfg.require_known(kGridConfigKeys);
            WindowOption w;
            const auto cfg_window = cfg.get_double_list("window");
            if (cfg_window.size() == 2) {
                w.lo = cfg_window[0];
                w.hi = cfg_window[1];
            }
            if (!tr_window.empty()) parse_window(tr_window, w);
            const double tau = tr_tau > 0.0 ? tr_tau : cfg.get_double("tau", w.lo);

            std::vector<TruthRow> rows;
            for (const auto& spec : scenarios_from_config(cfg, w))
                rows.push_back({to_string(spec.family), spec.effect_label,
                                true_estimands(spec, tau)});
            emit(tr_out, truth_table_to_csv(rows));
            return 0;
        }

        if (*simulate) {
            WindowOption w;
            if (!si_window.empty()) parse_window(si_window, w);
            const ScenarioFamily family = scenario_family_from_string(si_family);
            ScenarioSpec spec;
            if (std::isfinite(si_param)) {
                spec = make_scenario_with_parameter(family, si_param, w.lo, w.hi);
            } else {
                if (si_effect < 1 || si_effect > 3)
                    throw std::invalid_argument("--effect must be 1, 2 or 3");
                spec = make_scenario(family, si_effect - 1, w.lo, w.hi);
            }
            write_dataset_csv(generate_dataset(spec, si_n, si_seed), si_out);
            return 0;
        }

        if (*power) {
            KeyValueConfig cfg = po_config.empty() ? KeyValueConfig::parse_string("")
                                                   : KeyValueConfig::parse_file(po_config);
            cfg.require_known(kGridConfigKeys);
            WindowOption w;
            const auto cfg_window = cfg.get_double_list("window");
            if (cfg_window.size() == 2) {
                w.lo = cfg_window[0];
                w.hi = cfg_window[1];
            }
            if (!po_window.empty()) parse_window(po_window, w);

            StudyConfig study;
            study.scenarios = scenarios_from_config(cfg, w);
            for (double n : cfg.get_double_list("n")) study.sample_sizes.push_back(static_cast<int>(n));
            if (!po_n.empty()) {
                study.sample_sizes.clear();
                for (const auto& s : split_commas(po_n)) study.sample_sizes.push_back(std::stoi(s));
            }
            study.replicates = static_cast<int>(cfg.get_int("replicates", 500));
            if (po_replicates >= 0) study.replicates = po_replicates;
            study.tau = po_tau > 0.0 ? po_tau : cfg.get_double("tau", w.lo);
            study.alpha = po_alpha > 0.0 ? po_alpha : cfg.get_double("alpha", 0.05);
            study.master_seed = po_seed >= 0 ? static_cast<std::uint64_t>(po_seed)
                                             : static_cast<std::uint64_t>(cfg.get_int("seed", 1));
            const std::string methods_text =
                !po_methods.empty() ? po_methods
                                    : cfg.get_string("methods", "wp,rwp,logrank,rmst,fwr");
            study.methods = MethodSelection::from_names(split_commas(methods_text));
            study.mcmc = desk_mcmc_defaults();
            study.mcmc.chains = static_cast<int>(cfg.get_int("chains", study.mcmc.chains));
            study.mcmc.iterations = static_cast<int>(cfg.get_int("iterations", study.mcmc.iterations));
            study.mcmc.burnin = static_cast<int>(cfg.get_int("burnin", study.mcmc.burnin));
            if (po_chains > 0) study.mcmc.chains = po_chains;
            if (po_iters > 0) study.mcmc.iterations = po_iters;
            if (po_burnin >= -1) study.mcmc.burnin = po_burnin;
            study.threads = po_threads >= 0 ? po_threads
                                            : static_cast<int>(cfg.get_int("threads", 0));

            const StudyMetrics metrics = run_study(study);
            write_text_atomic(po_out, metrics_to_csv(metrics));
            const std::string power_path =
                po_power_out.empty() ? po_out + ".power.csv" : po_power_out;
            write_text_atomic(power_path, power_to_csv(metrics));
            if (metrics.total_failures > 0)
                std::fprintf(stderr, "warning: %d replicate(s) failed and were excluded\n",
                             metrics.total_failures);
            return 0;
        }
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid arguments: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid arguments: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
