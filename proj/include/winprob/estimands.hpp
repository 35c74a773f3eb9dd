#pragma once

#include <optional>
#include <span>
#include <string>

#include "winprob/hazard.hpp"

namespace winprob {

// Outcome of one active-vs-control pairwise comparison.
enum class WinOutcome { Loss, Tie, Win };

inline double win_value(WinOutcome o) {
    return o == WinOutcome::Win ? 1.0 : (o == WinOutcome::Tie ? 0.5 : 0.0);
}

// Exactly tied observed times are rejected by default: the win functions are
// defined for continuous outcomes, and a tie below the restriction time has
// no defined value. HalfCredit is an opt-in for rounded data.
enum class TiePolicy { Error, HalfCredit };

// Unrestricted win function: 1 if y_a > y_c, 0 if y_a < y_c.
WinOutcome win_function(double y_a, double y_c, TiePolicy ties = TiePolicy::Error);

// Restricted win function: win/loss decided only when the smaller time is
// <= tau; pairs with both times beyond tau are ties.
WinOutcome win_function_restricted(double y_a, double y_c, double tau,
                                   TiePolicy ties = TiePolicy::Error);

// Identifies which estimand a value refers to; RWP values carry their
// restriction time so results with different tau are never mixed silently.
struct EstimandKind {
    enum class Type { WP, RWP };
    Type type = Type::WP;
    double tau = 0.0;  // meaningful for RWP only

    static EstimandKind wp() { return {Type::WP, 0.0}; }
    static EstimandKind rwp(double tau);
    std::string label() const;
    bool operator==(const EstimandKind&) const = default;
};

struct EstimandValue {
    EstimandKind kind;
    double value;  // in [0,1]
};

// WP(a,c) = Pr(Y_a > Y_c) = int_0^inf S_a(t) f_c(t) dt, evaluated after the
// substitution p = F_c(t) as int_0^1 S_a(F_c^{-1}(p)) dp, which keeps the
// improper upper limit off the quadrature grid.
EstimandValue win_probability(const HazardSpec& active, const HazardSpec& control);

// WP_tau(a,c) = int_0^tau S_a(t) f_c(t) dt + 0.5 * S_a(tau) * S_c(tau).
EstimandValue restricted_win_probability(const HazardSpec& active, const HazardSpec& control,
                                         double tau);

// Derived summaries of the same estimand.
double net_benefit(double wp_value);   // WP(a,c) - WP(c,a) = 2*wp - 1
double win_odds(double wp_value);      // WP(a,c) / WP(c,a) = wp / (1 - wp)
double wp_from_hr_under_ph(double hr);  // 1 / (1 + hr)

// Mean of the (restricted) win function over all n_a * n_c pairs of
// uncensored times; the Mann-Whitney statistic scaled to [0,1] when tau is
// absent. Brute force by construction -- this is the oracle the quadrature
// routes are checked against.
double empirical_wp(std::span<const double> times_a, std::span<const double> times_c,
                    std::optional<double> tau = std::nullopt,
                    TiePolicy ties = TiePolicy::Error);

}  // namespace winprob
