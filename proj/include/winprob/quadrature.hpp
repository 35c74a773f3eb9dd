#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "winprob/errors.hpp"

namespace winprob {

namespace detail {

// Gauss-Kronrod 7-15 node/weight table on [-1,1]. Column 0: abscissa,
// column 1: Gauss-7 weight (zero at Kronrod-only nodes), column 2: Kronrod-15
// weight. Symmetric nodes share a row.
inline constexpr double kGk15[8][3] = {
    {0.000000000000000e+00, 4.179591836734694e-01, 2.094821410847278e-01},
    {4.058451513773972e-01, 3.818300505051189e-01, 1.903505780647854e-01},
    {7.415311855993944e-01, 2.797053914892767e-01, 1.406532597155259e-01},
    {9.491079123427585e-01, 1.294849661688697e-01, 6.309209262997855e-02},
    {2.077849550078985e-01, 0.0, 2.044329400752989e-01},
    {5.860872354676911e-01, 0.0, 1.690047266392679e-01},
    {8.648644233597691e-01, 0.0, 1.047900103222502e-01},
    {9.914553711208126e-01, 0.0, 2.293532201052922e-02},
};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double y0 = f(mid);
    double g7 = kGk15[0][1] * y0;
    double k15 = kGk15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGk15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kGk15[i][1] * yi;
        k15 += kGk15[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;

    // QUADPACK-style rescaled error estimate.
    double err = std::fabs(k15 - g7) * 200.0;
    err *= std::sqrt(err);
    return {k15, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a,b] with interval bisection.
// Splits segments until the summed error estimate is within abs_tol; each
// segment gets an error budget proportional to its length. Throws
// NumericalError when the segment budget runs out, which signals a
// pathological integrand rather than a tolerance that merely needs more work.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-8,
                          int max_segments = 4000) {
    if (!(a < b)) throw std::domain_error("integrate_adaptive: requires a < b");
    if (!(abs_tol > 0.0)) throw std::domain_error("integrate_adaptive: tol must be positive");

    struct Segment {
        double a, b;
    };
    std::vector<Segment> stack;
    stack.push_back({a, b});
    const double total_len = b - a;
    double sum = 0.0;
    int used = 0;

    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        if (++used > max_segments)
            throw NumericalError("integrate_adaptive: segment budget exhausted");

        auto [value, err] = detail::gk15(f, seg.a, seg.b);
        if (!std::isfinite(value))
            throw NumericalError("integrate_adaptive: non-finite integrand value");

        const double mid = 0.5 * (seg.a + seg.b);
        const bool splittable = mid > seg.a && mid < seg.b;
        if (err <= abs_tol * ((seg.b - seg.a) / total_len) || !splittable) {
            sum += value;
        } else {
            stack.push_back({seg.a, mid});
            stack.push_back({mid, seg.b});
        }
    }
    return sum;
}

}  // namespace winprob
