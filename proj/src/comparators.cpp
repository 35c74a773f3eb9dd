#include "winprob/comparators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "winprob/errors.hpp"
#include "winprob/km.hpp"
#include "winprob/rng.hpp"

namespace winprob {

namespace {

constexpr double kZ975 = 1.959963984540054;

double norm_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730951); }

// P(X > s) for X ~ chi-square with 1 df.
double chisq1_sf(double s) { return std::erfc(std::sqrt(0.5 * s)); }

double two_sided_p(double z) { return 2.0 * (1.0 - norm_cdf(std::fabs(z))); }

struct Obs {
    double time;
    bool event;
};

std::vector<Obs> sorted_arm(const Dataset& data, Arm arm) {
    std::vector<Obs> out;
    for (const auto& r : data)
        if (r.arm == arm) out.push_back({r.time, r.event});
    std::sort(out.begin(), out.end(), [](const Obs& a, const Obs& b) { return a.time < b.time; });
    return out;
}

}  // namespace

TestResult logrank_test(const Dataset& data) {
    const auto a = sorted_arm(data, Arm::Active);
    const auto c = sorted_arm(data, Arm::Control);
    if (a.empty() || c.empty()) throw DataError("logrank_test: both arms must be non-empty");

    // Sweep distinct pooled times; everyone with T >= t is at risk at t, so
    // censorings at t stay in that risk set (events before censorings).
    std::size_t ia = 0, ic = 0;
    long long n_a = static_cast<long long>(a.size());
    long long n_c = static_cast<long long>(c.size());
    double obs_minus_exp = 0.0;
    double variance = 0.0;
    long long total_events = 0;

    while (ia < a.size() || ic < c.size()) {
        double t = std::numeric_limits<double>::infinity();
        if (ia < a.size()) t = a[ia].time;
        if (ic < c.size()) t = std::min(t, c[ic].time);

        long long d_a = 0, removed_a = 0;
        while (ia < a.size() && a[ia].time == t) {
            if (a[ia].event) ++d_a;
            ++removed_a;
            ++ia;
        }
        long long d_c = 0, removed_c = 0;
        while (ic < c.size() && c[ic].time == t) {
            if (c[ic].event) ++d_c;
            ++removed_c;
            ++ic;
        }

        const long long d = d_a + d_c;
        const long long n = n_a + n_c;
        if (d > 0) {
            total_events += d;
            const double frac_a = static_cast<double>(n_a) / static_cast<double>(n);
            obs_minus_exp += static_cast<double>(d_a) - static_cast<double>(d) * frac_a;
            if (n > 1) {
                variance += static_cast<double>(d) * frac_a * (1.0 - frac_a) *
                            static_cast<double>(n - d) / static_cast<double>(n - 1);
            }
        }
        n_a -= removed_a;
        n_c -= removed_c;
    }
    if (total_events == 0) throw DataError("logrank_test: no events in either arm");

    TestResult res;
    res.method = "logrank";
    res.estimate = obs_minus_exp;
    if (variance > 0.0) {
        res.statistic = obs_minus_exp * obs_minus_exp / variance;
        res.p_value = chisq1_sf(res.statistic);
    } else {
        res.statistic = 0.0;
        res.p_value = 1.0;
    }
    return res;
}

TestResult rmst_difference(const Dataset& data, double tau_requested) {
    if (!(tau_requested > 0.0))
        throw std::domain_error("rmst_difference: tau must be positive");
    const auto a = arm_subset(data, Arm::Active);
    const auto c = arm_subset(data, Arm::Control);
    if (a.empty() || c.empty()) throw DataError("rmst_difference: both arms must be non-empty");

    const KMCurve km_a = km_estimate(a);
    const KMCurve km_c = km_estimate(c);
    const double tau =
        std::min({tau_requested, km_a.max_observed_time, km_c.max_observed_time});
    if (!(tau > 0.0)) throw DataError("rmst_difference: effective tau is not positive");

    const double rmst_a = km_rmst(km_a, tau);
    const double rmst_c = km_rmst(km_c, tau);
    const double var = km_rmst_variance(km_a, tau) + km_rmst_variance(km_c, tau);
    const double se = std::sqrt(var);

    TestResult res;
    res.method = "rmst";
    res.estimate = rmst_a - rmst_c;
    res.tau_effective = tau;
    if (se > 0.0) {
        res.statistic = res.estimate / se;
        res.p_value = two_sided_p(res.statistic);
        res.ci_lo = res.estimate - kZ975 * se;
        res.ci_hi = res.estimate + kZ975 * se;
    } else {
        res.statistic = 0.0;
        res.p_value = 1.0;
        res.ci_lo = res.ci_hi = res.estimate;
    }
    return res;
}

namespace {

PairwiseTally tally_pairs(const std::vector<Obs>& a, const std::vector<Obs>& c,
                          std::vector<double>* win_rows, std::vector<double>* loss_rows,
                          std::vector<double>* win_cols, std::vector<double>* loss_cols) {
    PairwiseTally t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            const bool win = c[j].event &&
                             (a[i].time > c[j].time || (a[i].time == c[j].time && !a[i].event));
            const bool loss = a[i].event &&
                              (c[j].time > a[i].time || (c[j].time == a[i].time && !c[j].event));
            if (win) {
                ++t.wins;
                if (win_rows) {
                    (*win_rows)[i] += 1.0;
                    (*win_cols)[j] += 1.0;
                }
            } else if (loss) {
                ++t.losses;
                if (loss_rows) {
                    (*loss_rows)[i] += 1.0;
                    (*loss_cols)[j] += 1.0;
                }
            } else {
                ++t.ties;
            }
        }
    }
    return t;
}

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / (static_cast<double>(v.size()) - 1.0);
}

double sample_covariance(const std::vector<double>& u, const std::vector<double>& v, double mu,
                         double mv) {
    if (u.size() < 2) return 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) ss += (u[i] - mu) * (v[i] - mv);
    return ss / (static_cast<double>(u.size()) - 1.0);
}

}  // namespace

TestResult fwr_test(const Dataset& data) {
    const auto a = sorted_arm(data, Arm::Active);
    const auto c = sorted_arm(data, Arm::Control);
    if (a.empty() || c.empty()) throw DataError("fwr_test: both arms must be non-empty");
    const double n_a = static_cast<double>(a.size());
    const double n_c = static_cast<double>(c.size());

    std::vector<double> win_rows(a.size(), 0.0), loss_rows(a.size(), 0.0);
    std::vector<double> win_cols(c.size(), 0.0), loss_cols(c.size(), 0.0);
    const PairwiseTally tally = tally_pairs(a, c, &win_rows, &loss_rows, &win_cols, &loss_cols);

    TestResult res;
    res.method = "fwr";
    res.tally = tally;

    if (tally.losses == 0 || tally.wins == 0) {
        // Degenerate tally: the normal approximation on the log ratio has
        // nothing to stand on. Report the ratio's limit and a seeded
        // bootstrap interval.
        res.estimate = tally.wins == 0
                           ? (tally.losses == 0 ? std::numeric_limits<double>::quiet_NaN() : 0.0)
                           : std::numeric_limits<double>::infinity();
        if (tally.wins == 0 && tally.losses == 0) {
            res.statistic = 0.0;
            res.p_value = 1.0;
            return res;
        }
        Rng rng(substream_seed(0x57524254ULL, a.size(), c.size()));
        const int n_boot = 1000;
        std::vector<double> ratios;
        ratios.reserve(n_boot);
        std::vector<Obs> ra(a.size()), rc(c.size());
        int above = 0, below = 0;
        for (int b = 0; b < n_boot; ++b) {
            for (auto& o : ra) o = a[static_cast<std::size_t>(rng.uniform() * n_a) % a.size()];
            for (auto& o : rc) o = c[static_cast<std::size_t>(rng.uniform() * n_c) % c.size()];
            const PairwiseTally tb = tally_pairs(ra, rc, nullptr, nullptr, nullptr, nullptr);
            double r;
            if (tb.losses == 0)
                r = tb.wins == 0 ? 1.0 : std::numeric_limits<double>::infinity();
            else
                r = static_cast<double>(tb.wins) / static_cast<double>(tb.losses);
            ratios.push_back(r);
            if (r >= 1.0) ++above;
            if (r <= 1.0) ++below;
        }
        std::sort(ratios.begin(), ratios.end());
        res.ci_lo = ratios[static_cast<std::size_t>(0.025 * (n_boot - 1))];
        res.ci_hi = ratios[static_cast<std::size_t>(0.975 * (n_boot - 1))];
        res.p_value = std::min(1.0, 2.0 * std::min(above, below) / static_cast<double>(n_boot));
        res.statistic = std::numeric_limits<double>::quiet_NaN();
        return res;
    }

    const double win_frac = static_cast<double>(tally.wins) / (n_a * n_c);
    const double loss_frac = static_cast<double>(tally.losses) / (n_a * n_c);
    res.estimate = static_cast<double>(tally.wins) / static_cast<double>(tally.losses);

    // Two-sample U-statistic variance of (win_frac, loss_frac) from the
    // per-subject mean win/loss fractions in each sample.
    for (auto& x : win_rows) x /= n_c;
    for (auto& x : loss_rows) x /= n_c;
    for (auto& x : win_cols) x /= n_a;
    for (auto& x : loss_cols) x /= n_a;

    const double var_u = sample_variance(win_rows, win_frac) / n_a +
                         sample_variance(win_cols, win_frac) / n_c;
    const double var_v = sample_variance(loss_rows, loss_frac) / n_a +
                         sample_variance(loss_cols, loss_frac) / n_c;
    const double cov_uv = sample_covariance(win_rows, loss_rows, win_frac, loss_frac) / n_a +
                          sample_covariance(win_cols, loss_cols, win_frac, loss_frac) / n_c;

    const double var_log = var_u / (win_frac * win_frac) + var_v / (loss_frac * loss_frac) -
                           2.0 * cov_uv / (win_frac * loss_frac);
    const double se = var_log > 0.0 ? std::sqrt(var_log) : 0.0;
    const double log_wr = std::log(res.estimate);

    if (se > 0.0) {
        res.statistic = log_wr / se;
        res.p_value = two_sided_p(res.statistic);
        res.ci_lo = std::exp(log_wr - kZ975 * se);
        res.ci_hi = std::exp(log_wr + kZ975 * se);
    } else {
        res.statistic = 0.0;
        res.p_value = log_wr == 0.0 ? 1.0 : 0.0;
        res.ci_lo = res.ci_hi = res.estimate;
    }
    return res;
}

}  // namespace winprob
