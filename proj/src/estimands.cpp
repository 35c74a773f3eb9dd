#include "winprob/estimands.hpp"

#include <cmath>
#include <stdexcept>

#include "winprob/quadrature.hpp"

namespace winprob {

namespace {
// Inner tolerance for the win-probability integrals. Tighter than the module
// default so that identities combining two integrals (e.g. the antisymmetry
// sum) still hold to 1e-8.
constexpr double kWpTol = 1e-10;
}  // namespace

WinOutcome win_function(double y_a, double y_c, TiePolicy ties) {
    if (y_a > y_c) return WinOutcome::Win;
    if (y_a < y_c) return WinOutcome::Loss;
    if (ties == TiePolicy::HalfCredit) return WinOutcome::Tie;
    throw std::invalid_argument("win_function: exact tie in continuous outcomes");
}

WinOutcome win_function_restricted(double y_a, double y_c, double tau, TiePolicy ties) {
    if (!(tau > 0.0)) throw std::domain_error("win_function_restricted: tau must be positive");
    if (y_a > tau && y_c > tau) return WinOutcome::Tie;
    if (y_a > y_c && y_c <= tau) return WinOutcome::Win;
    if (y_a < y_c && y_a <= tau) return WinOutcome::Loss;
    // Only y_a == y_c <= tau reaches here.
    if (ties == TiePolicy::HalfCredit) return WinOutcome::Tie;
    throw std::invalid_argument("win_function_restricted: exact tie at or below tau");
}

EstimandKind EstimandKind::rwp(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("EstimandKind::rwp: tau must be positive");
    return {Type::RWP, tau};
}

std::string EstimandKind::label() const {
    return type == Type::WP ? "wp" : "rwp";
}

namespace {

// int_0^upper_p S_a(F_c^{-1}(p)) dp
double win_integral(const HazardSpec& active, const HazardSpec& control, double upper_p) {
    if (!(upper_p > 0.0)) return 0.0;
    return integrate_adaptive(
        [&](double p) { return survival(active, quantile(control, p)); }, 0.0, upper_p, kWpTol);
}

}  // namespace

EstimandValue win_probability(const HazardSpec& active, const HazardSpec& control) {
    return {EstimandKind::wp(), win_integral(active, control, 1.0)};
}

EstimandValue restricted_win_probability(const HazardSpec& active, const HazardSpec& control,
                                         double tau) {
    if (!(tau > 0.0)) throw std::domain_error("restricted_win_probability: tau must be positive");
    const double s_a = survival(active, tau);
    const double s_c = survival(control, tau);
    const double value = win_integral(active, control, 1.0 - s_c) + 0.5 * s_a * s_c;
    return {EstimandKind::rwp(tau), value};
}

double net_benefit(double wp_value) { return 2.0 * wp_value - 1.0; }

double win_odds(double wp_value) {
    if (!(wp_value < 1.0)) throw std::domain_error("win_odds: undefined at wp = 1");
    return wp_value / (1.0 - wp_value);
}

double wp_from_hr_under_ph(double hr) {
    if (!(hr > 0.0)) throw std::domain_error("wp_from_hr_under_ph: hr must be positive");
    return 1.0 / (1.0 + hr);
}

double empirical_wp(std::span<const double> times_a, std::span<const double> times_c,
                    std::optional<double> tau, TiePolicy ties) {
    if (times_a.empty() || times_c.empty())
        throw std::invalid_argument("empirical_wp: both samples must be non-empty");
    double sum = 0.0;
    for (double ya : times_a) {
        for (double yc : times_c) {
            const WinOutcome o =
                tau ? win_function_restricted(ya, yc, *tau, ties) : win_function(ya, yc, ties);
            sum += win_value(o);
        }
    }
    return sum / (static_cast<double>(times_a.size()) * static_cast<double>(times_c.size()));
}

}  // namespace winprob
