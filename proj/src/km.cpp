#include "winprob/km.hpp"

#include <algorithm>
#include <cmath>

#include "winprob/errors.hpp"

namespace winprob {

double KMCurve::survival_at(double t) const {
    // Last entry with event time <= t.
    auto it = std::upper_bound(time.begin(), time.end(), t);
    if (it == time.begin()) return 1.0;
    return survival[static_cast<std::size_t>(it - time.begin()) - 1];
}

KMCurve km_estimate(std::span<const SurvivalRecord> records) {
    if (records.empty()) throw DataError("km_estimate: empty input");

    struct Obs {
        double time;
        bool event;
    };
    std::vector<Obs> obs;
    obs.reserve(records.size());
    for (const auto& r : records) {
        if (!(r.time > 0.0)) throw DataError("km_estimate: times must be positive");
        obs.push_back({r.time, r.event});
    }
    std::sort(obs.begin(), obs.end(), [](const Obs& a, const Obs& b) { return a.time < b.time; });

    KMCurve curve;
    curve.n = static_cast<int>(obs.size());
    curve.max_observed_time = obs.back().time;

    double surv = 1.0;
    double greenwood_sum = 0.0;
    std::size_t i = 0;
    while (i < obs.size()) {
        const double t = obs[i].time;
        const int at_risk = static_cast<int>(obs.size() - i);
        int d = 0;
        std::size_t j = i;
        while (j < obs.size() && obs[j].time == t) {
            if (obs[j].event) ++d;
            ++j;
        }
        if (d > 0) {
            surv *= 1.0 - static_cast<double>(d) / at_risk;
            if (at_risk > d)
                greenwood_sum += static_cast<double>(d) / (static_cast<double>(at_risk) * (at_risk - d));
            curve.time.push_back(t);
            curve.survival.push_back(surv);
            curve.at_risk.push_back(at_risk);
            curve.events.push_back(d);
            // surv == 0 at the last event when everyone fails; variance is 0 there.
            curve.variance.push_back(surv > 0.0 ? surv * surv * greenwood_sum : 0.0);
        }
        i = j;
    }
    return curve;
}

double km_rmst(const KMCurve& curve, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("km_rmst: tau must be positive");
    double area = 0.0;
    double prev_t = 0.0;
    double prev_s = 1.0;
    for (std::size_t k = 0; k < curve.time.size() && curve.time[k] <= tau; ++k) {
        area += prev_s * (curve.time[k] - prev_t);
        prev_t = curve.time[k];
        prev_s = curve.survival[k];
    }
    area += prev_s * (tau - prev_t);
    return area;
}

double km_rmst_variance(const KMCurve& curve, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("km_rmst_variance: tau must be positive");

    std::vector<std::size_t> idx;  // event times within [0, tau]
    for (std::size_t k = 0; k < curve.time.size() && curve.time[k] <= tau; ++k) idx.push_back(k);
    if (idx.empty()) return 0.0;

    // Remaining area A(t_j) via a suffix sweep from tau back to each event time.
    const std::size_t m = idx.size();
    std::vector<double> remaining(m);
    double area = curve.survival[idx[m - 1]] * (tau - curve.time[idx[m - 1]]);
    remaining[m - 1] = area;
    for (std::size_t k = m - 1; k-- > 0;) {
        area += curve.survival[idx[k]] * (curve.time[idx[k + 1]] - curve.time[idx[k]]);
        remaining[k] = area;
    }

    double var = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const int nj = curve.at_risk[idx[k]];
        const int dj = curve.events[idx[k]];
        if (nj > dj)
            var += remaining[k] * remaining[k] * static_cast<double>(dj) /
                   (static_cast<double>(nj) * (nj - dj));
    }
    return var;
}

}  // namespace winprob
