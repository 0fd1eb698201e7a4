#pragma once

#include <numbers>

namespace lorentz::special {

/// Absolute accuracy promised by the evaluators in this header.
struct AccuracyContract {
    double absolute_tolerance = 1e-14;
};

inline constexpr AccuracyContract dilog_accuracy{};

/// zeta(2) = pi^2 / 6.
constexpr double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }

/// Dilogarithm Li_2(x) = sum x^n / n^2 on [0, 1]; throws std::domain_error
/// outside that range.
double dilog(double x);

/// int_a^b (1/u) ln(1/(1-u)) du for 0 <= a <= b <= 1, via Li_2(b) - Li_2(a).
double log_kernel_integral(double a, double b);

}  // namespace lorentz::special
