#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lorentz/quadrature.hpp"
#include "lorentz/special.hpp"

using lorentz::special::dilog;
using lorentz::special::zeta2;

namespace {

// Plain power series in long double, summed until the terms vanish.
double dilog_series(double x)
{
    long double sum = 0.0L, power = 1.0L;
    for (int n = 1; n < 2'000'000; ++n) {
        power *= x;
        const long double term = power / (static_cast<long double>(n) * n);
        sum += term;
        if (term < 1e-22L) {
            break;
        }
    }
    return static_cast<double>(sum);
}

double dilog_quadrature(double x)
{
    return lorentz::quad::integrate(
        [](double t) { return t == 0.0 ? 1.0 : -std::log1p(-t) / t; }, 0.0, x, 1e-14);
}

}  // namespace

TEST_CASE("dilog reference values")
{
    CHECK(dilog(0.0) == 0.0);
    CHECK(dilog(1.0) == zeta2());
    const double ln2 = std::numbers::ln2;
    CHECK(std::abs(dilog(0.5) - (zeta2() - ln2 * ln2) / 2.0) <= 1e-14);
    CHECK(std::abs(dilog(0.5) - 0.5822405264650125) <= 1e-15);
}

TEST_CASE("zeta2 constant")
{
    CHECK(zeta2() == doctest::Approx(1.6449340668482264).epsilon(1e-16));
    CHECK(std::abs(1.0 / zeta2() - 0.6079271018540267) <= 1e-16);
    CHECK(std::abs(dilog(1.0) - zeta2()) <= 1e-15);
}

TEST_CASE("dilog agrees with series and quadrature")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 0.999);
    for (int i = 0; i < 50; ++i) {
        const double x = unit(rng);
        CHECK(std::abs(dilog(x) - dilog_quadrature(x)) <= 1e-12);
        CHECK(std::abs(dilog(x) - dilog_series(x)) <= 1e-14);
    }
}

TEST_CASE("dilog reflection identity")
{
    for (int i = 1; i < 100; ++i) {
        const double x = i / 100.0;
        const double rhs = zeta2() - std::log(x) * std::log1p(-x);
        CHECK(std::abs(dilog(x) + dilog(1.0 - x) - rhs) <= 1e-14);
    }
}

TEST_CASE("dilog is strictly increasing")
{
    double prev = dilog(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double v = dilog(i / 1000.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("dilog domain")
{
    CHECK_THROWS_AS(dilog(-0.1), std::domain_error);
    CHECK_THROWS_AS(dilog(1.0000001), std::domain_error);
    CHECK(lorentz::special::dilog_accuracy.absolute_tolerance <= 1e-10);
}

TEST_CASE("log kernel integral")
{
    for (double a : {0.0, 0.1, 0.37}) {
        for (double b : {0.4, 0.8, 0.95}) {
            const double quad = lorentz::quad::integrate(
                [](double u) { return u == 0.0 ? 1.0 : -std::log1p(-u) / u; }, a, b, 1e-14);
            CHECK(std::abs(lorentz::special::log_kernel_integral(a, b) - quad) <= 1e-12);
        }
    }
}
