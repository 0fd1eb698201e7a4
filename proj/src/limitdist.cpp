#include "lorentz/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lorentz/quadrature.hpp"
#include "lorentz/special.hpp"

namespace lorentz::limitdist {

using special::dilog;
using special::zeta2;

namespace {

constexpr double inv_zeta2 = 1.0 / zeta2();

void require_modulus(std::int64_t ell)
{
    if (ell < 2) {
        throw std::invalid_argument("congruence modulus must be >= 2");
    }
}

void require_positive(double lambda, const char* what)
{
    if (!(lambda > 0.0)) {
        throw std::domain_error(std::string(what) + ": lambda must be > 0");
    }
}

// x ln x with the removable singularity at 0.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double constant_C(std::int64_t ell)
{
    require_modulus(ell);
    // phi(ell)/ell * prod (1 - p^-2)^-1 over p | ell collapses to prod p/(p+1).
    double ratio = 1.0;
    std::int64_t n = ell;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ratio *= static_cast<double>(p) / static_cast<double>(p + 1);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        ratio *= static_cast<double>(n) / static_cast<double>(n + 1);
    }
    return ratio * inv_zeta2;
}

double constant_A(std::int64_t ell)
{
    return inv_zeta2 - 2.0 * constant_C(ell) / static_cast<double>(ell);
}

CongruenceModulus::CongruenceModulus(std::int64_t ell)
    : ell_(ell), c_(constant_C(ell)), a_(constant_A(ell))
{
    if (!(c_ > 0.0 && c_ <= inv_zeta2 * (1.0 + 1e-15)) || a_ < 0.0) {
        throw std::logic_error("CongruenceModulus: constants out of range");
    }
}

double H2(double lambda)
{
    if (!(lambda >= 0.5 && lambda <= 1.0)) {
        throw std::domain_error("H2: lambda outside [1/2, 1]");
    }
    const double d = 1.0 - lambda;
    const double log_l = std::log(lambda);
    // 2 (1 - l) ln(1/l - 1) = 2 (d ln d - d ln l), zero at l = 1.
    const double mixed = 2.0 * (xlogx(d) - d * log_l);
    return 3.0 * lambda - 2.0 + zeta2() - log_l * log_l + mixed - 2.0 * dilog(lambda);
}

double H3(double lambda)
{
    if (!(lambda >= 1.0)) {
        throw std::domain_error("H3: lambda must be >= 1");
    }
    if (lambda >= 2.0) {
        // sum_{n>=1} x^n / (n^2 (n+1)) with x = 1/lambda; avoids the O(1)
        // cancellation in the closed form for large lambda.
        const double x = 1.0 / lambda;
        double sum = 0.0;
        double power = x;
        for (int n = 1; n <= 200; ++n) {
            const double nn = n;
            const double term = power / (nn * nn * (nn + 1.0));
            sum += term;
            if (term < 1e-18 * sum) {
                break;
            }
            power *= x;
        }
        return sum;
    }
    const double d = lambda - 1.0;
    const double tail = (d == 0.0) ? 0.0 : d * (std::log(d) - std::log(lambda));
    return dilog(1.0 / lambda) - tail - 1.0;
}

double G(const CongruenceModulus& m, double lambda)
{
    require_positive(lambda, "G");
    if (lambda <= 0.5) {
        return 1.0 - (inv_zeta2 + m.A()) * lambda;
    }
    if (lambda <= 1.0) {
        return 1.0 - lambda * inv_zeta2 + m.A() * H2(lambda);
    }
    return m.sink_weight() * H3(lambda);
}

double G(std::int64_t ell, double lambda) { return G(CongruenceModulus(ell), lambda); }

double g(const CongruenceModulus& m, double lambda)
{
    require_positive(lambda, "g");
    if (lambda <= 0.5) {
        return inv_zeta2 + m.A();
    }
    if (lambda <= 1.0) {
        const double r = 1.0 / lambda - 1.0;
        return inv_zeta2 + m.A() * (-3.0 + 2.0 / lambda - 2.0 * xlogx(r));
    }
    const double x = 1.0 / lambda;
    if (lambda >= 2.0) {
        // x + (1-x) ln(1-x) = sum_{n>=2} x^n / (n (n-1)).
        double sum = 0.0;
        double power = x * x;
        for (int n = 2; n <= 200; ++n) {
            const double term = power / (static_cast<double>(n) * (n - 1));
            sum += term;
            if (term < 1e-18 * sum) {
                break;
            }
            power *= x;
        }
        return m.sink_weight() * sum;
    }
    return m.sink_weight() * (x + (1.0 - x) * std::log1p(-x));
}

double g(std::int64_t ell, double lambda) { return g(CongruenceModulus(ell), lambda); }

double I1(double lambda)
{
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::domain_error("I1: lambda outside (0, 1]");
    }
    const double log_l = std::log(lambda);
    if (lambda >= 0.5) {
        return log_l * log_l;
    }
    return log_l * std::log1p(-lambda) + special::log_kernel_integral(lambda, 1.0 - lambda);
}

double I2(double lambda)
{
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::domain_error("I2: lambda outside (0, 1]");
    }
    const double m = std::max(lambda, 1.0 - lambda);
    const double d = 1.0 - m;
    const double log_l = std::log(lambda);
    // int_m^1 (1/x - 1) (ln l - ln(1-x)) dx, split into elementary pieces.
    return log_l * (-std::log(m) - d) + (zeta2() - dilog(m)) - (d - xlogx(d));
}

double G1_partial(double lambda)
{
    require_positive(lambda, "G1_partial");
    if (lambda >= 1.0) {
        return 0.0;
    }
    return I1(lambda) + 2.0 * I2(lambda);
}

double G_limit(double lambda)
{
    require_positive(lambda, "G_limit");
    if (lambda <= 0.5) {
        return 1.0 - 2.0 * inv_zeta2 * lambda;
    }
    if (lambda <= 1.0) {
        return 1.0 - lambda * inv_zeta2 + inv_zeta2 * H2(lambda);
    }
    return 0.0;
}

double H1_bracket_quadrature(double lambda)
{
    if (!(lambda > 0.0 && lambda <= 0.5)) {
        throw std::domain_error("H1 bracket: lambda outside (0, 1/2]");
    }
    constexpr double tol = 1e-13;
    // u = 1 - e^{-s} turns (1/u) ln(1/(1-u)) du into s / (e^s - 1) ds.
    auto kernel = [](double s) { return s == 0.0 ? 1.0 : s / std::expm1(s); };
    const double s_lo = -std::log1p(-lambda);
    const double s_hi = -std::log(lambda);
    const double middle = quad::integrate(kernel, s_lo, s_hi, tol);
    // y = 1 - u on the last piece: y / (1 - y) ln(lambda / y) over (0, lambda].
    auto edge = [lambda](double y) {
        return y == 0.0 ? 0.0 : y / (1.0 - y) * std::log(lambda / y);
    };
    const double last = quad::integrate(edge, 0.0, lambda, tol);
    return lambda - zeta2() + std::log(lambda) * std::log1p(-lambda) + middle + 2.0 * last;
}

std::vector<CurveRow> LimitCurve::rows() const
{
    std::vector<CurveRow> out;
    for (double lambda : grid.values()) {
        out.push_back({lambda, G(modulus, lambda), g(modulus, lambda)});
    }
    return out;
}

void LimitCurve::write_csv(std::ostream& os) const
{
    os << "lambda,G,g\n";
    char buf[128];
    for (const CurveRow& r : rows()) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.lambda, r.G, r.g);
        os << buf;
    }
}

}  // namespace lorentz::limitdist
