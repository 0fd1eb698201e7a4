#pragma once

#include <cmath>
#include <stdexcept>

namespace lorentz::quad {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || m - a <= 0.0) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with an absolute tolerance.
///
/// The interval is pre-split into 8 panels so that integrands with a narrow
/// feature are not mistaken for flat on the first estimate.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 48)
{
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("integrate: tolerance must be positive");
    }
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -integrate(f, b, a, abs_tol, max_depth);
    }
    constexpr int panels = 8;
    const double h = (b - a) / panels;
    double total = 0.0;
    double x0 = a;
    double f0 = f(x0);
    for (int i = 0; i < panels; ++i) {
        const double x1 = (i + 1 == panels) ? b : a + (i + 1) * h;
        const double f1 = f(x1);
        const double m = 0.5 * (x0 + x1);
        const double fm = f(m);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += detail::simpson_step(f, x0, f0, x1, f1, m, fm, whole,
                                      abs_tol / panels, max_depth);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

}  // namespace lorentz::quad
