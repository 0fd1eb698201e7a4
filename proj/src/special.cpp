#include "lorentz/special.hpp"

#include <cmath>
#include <stdexcept>

namespace lorentz::special {

namespace {

// Power series, intended for x <= 1/2 where 55 terms reach 2^-55 / 55^2.
double dilog_series(double x)
{
    double sum = 0.0;
    double power = x;
    for (int n = 1; n <= 200; ++n) {
        const double term = power / (static_cast<double>(n) * n);
        sum += term;
        if (term < 1e-18 * sum) {
            break;
        }
        power *= x;
    }
    return sum;
}

}  // namespace

double dilog(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("dilog: argument outside [0, 1]");
    }
    if (x == 1.0) {
        return zeta2();
    }
    if (x <= 0.5) {
        return dilog_series(x);
    }
    // Reflection Li2(x) + Li2(1-x) = zeta(2) - ln(x) ln(1-x).
    const double y = 1.0 - x;
    return zeta2() - std::log(x) * std::log1p(-x) - dilog_series(y);
}

double log_kernel_integral(double a, double b)
{
    if (!(0.0 <= a && a <= b && b <= 1.0)) {
        throw std::domain_error("log_kernel_integral: need 0 <= a <= b <= 1");
    }
    return dilog(b) - dilog(a);
}

}  // namespace lorentz::special
