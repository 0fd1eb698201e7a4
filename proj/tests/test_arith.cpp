#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lorentz/arith.hpp"
#include "lorentz/limitdist.hpp"

namespace ar = lorentz::arith;

namespace {

std::uint64_t brute_totient(std::uint64_t n)
{
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) {
            ++count;
        }
    }
    return count;
}

int brute_mobius(std::uint64_t n)
{
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            sign = -sign;
        }
    }
    return n > 1 ? -sign : sign;
}

}  // namespace

TEST_CASE("gcd examples")
{
    CHECK(ar::gcd(0, 7) == 7);
    CHECK(ar::gcd(12, 18) == 6);
    CHECK(ar::gcd(1, 1) == 1);
    CHECK_THROWS_AS(ar::gcd(0, 0), std::invalid_argument);
}

TEST_CASE("totient and mobius examples")
{
    CHECK(ar::totient(1) == 1);
    CHECK(ar::totient(12) == 4);
    CHECK(ar::totient(10007) == 10006);
    CHECK(ar::mobius(1) == 1);
    CHECK(ar::mobius(4) == 0);
    CHECK(ar::mobius(6) == 1);
    CHECK(ar::mobius(30) == -1);
}

TEST_CASE("totient and mobius match brute force")
{
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        REQUIRE(ar::totient(n) == brute_totient(n));
        REQUIRE(ar::mobius(n) == brute_mobius(n));
    }
}

TEST_CASE("multiplicativity on coprime pairs")
{
    for (std::uint64_t a = 1; a <= 500; a += 7) {
        for (std::uint64_t b = 1; b <= 500; b += 11) {
            if (std::gcd(a, b) != 1) {
                continue;
            }
            CHECK(ar::totient(a * b) == ar::totient(a) * ar::totient(b));
            CHECK(ar::mobius(a * b) == ar::mobius(a) * ar::mobius(b));
        }
    }
}

TEST_CASE("divisor sums")
{
    for (std::uint64_t n = 1; n <= 400; ++n) {
        std::uint64_t phi_sum = 0;
        int mu_sum = 0;
        for (std::uint64_t d = 1; d <= n; ++d) {
            if (n % d == 0) {
                phi_sum += ar::totient(d);
                mu_sum += ar::mobius(d);
            }
        }
        CHECK(phi_sum == n);
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("values above the sieve bound fall back to trial division")
{
    const ar::Sieve small(100);
    CHECK(small.totient(1009 * 1013ULL) == 1008ULL * 1012ULL);
    CHECK(small.mobius(1009 * 1013ULL) == 1);
    CHECK(small.mobius(4 * 1009ULL) == 0);
    const auto f = small.prime_factors(2ULL * 3 * 3 * 1013);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 2);
    CHECK(f[1] == 3);
    CHECK(f[2] == 1013);
    CHECK(ar::totient(1'000'000'007ULL) == 1'000'000'006ULL);
}

TEST_CASE("mod_inverse")
{
    CHECK(ar::mod_inverse(1, 9) == 1);
    CHECK(ar::mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(ar::mod_inverse(2, 4), ar::NoInverseError);
    CHECK(ar::mod_inverse(-1, 7) == 6);
    for (std::int64_t m = 2; m < 200; ++m) {
        for (std::int64_t a = 0; a < m; ++a) {
            if (std::gcd(a, m) == 1) {
                const std::int64_t x = ar::mod_inverse(a, m);
                CHECK(x >= 0);
                CHECK(x < m);
                CHECK((a * x) % m == 1 % m);
            }
        }
    }
}

TEST_CASE("checked arithmetic")
{
    constexpr auto big = std::numeric_limits<std::int64_t>::max();
    CHECK(ar::checked_mul(3, 4) == 12);
    CHECK_THROWS_AS(ar::checked_mul(big, 2), std::overflow_error);
    CHECK_THROWS_AS(ar::checked_add(big, 1), std::overflow_error);
}

TEST_CASE("coprime totient sum examples")
{
    const auto one = ar::SummandFunction::estimate([](double) { return 1.0; }, 1000.0);

    const auto tiny = ar::coprime_totient_sum(2, 1, one);
    CHECK(tiny.exact_sum == 1.0);

    const auto r = ar::coprime_totient_sum(3, 1000, one);
    CHECK(std::abs(r.main_term - 9000.0 / (2.0 * std::numbers::pi * std::numbers::pi)) <= 1e-6);
    CHECK(std::abs(r.residual) <= 40.0 * std::log(1000.0));

    // Direct summation oracle.
    double direct = 0.0;
    for (std::uint64_t k = 1; k <= 1000; ++k) {
        if (k % 3 != 0) {
            direct += static_cast<double>(brute_totient(k)) / static_cast<double>(k);
        }
    }
    CHECK(std::abs(r.exact_sum - direct) <= 1e-9);

    const auto ramp = ar::SummandFunction::estimate([](double x) { return x / 1000.0; }, 1000.0);
    const auto s = ar::coprime_totient_sum(2, 1000, ramp);
    CHECK(std::abs(s.residual) <= 40.0 * std::log(1000.0));
}

TEST_CASE("scaled totient sum examples")
{
    const auto one = ar::SummandFunction::estimate([](double) { return 1.0; }, 1000.0);
    CHECK(ar::scaled_totient_sum(2, 1, one).exact_sum == 1.0);

    const auto r = ar::scaled_totient_sum(3, 1000, one);
    CHECK(std::abs(r.main_term - 3.0 * lorentz::limitdist::constant_C(3) * 1000.0) <= 1e-6);
    CHECK(std::abs(r.main_term - 1367.8) <= 0.1);
    CHECK(std::abs(r.residual) <= 60.0 * std::pow(1000.0, 0.1));

    const auto v = ar::SummandFunction::estimate([](double x) { return 1.0 - x / 500.0; }, 500.0);
    const auto s = ar::scaled_totient_sum(6, 500, v);
    CHECK(std::abs(s.residual) <= 0.05 * std::abs(s.main_term));
}

TEST_CASE("residuals stay below 60 ln N")
{
    for (std::int64_t ell : {2, 3, 6}) {
        for (std::int64_t n : {1000, 10000}) {
            const double nn = static_cast<double>(n);
            const auto v = ar::SummandFunction::estimate([nn](double x) { return 1.0 - x / nn; }, nn);
            CHECK(std::abs(ar::coprime_totient_sum(ell, n, v).residual) <= 60.0 * std::log(nn));
            CHECK(std::abs(ar::scaled_totient_sum(ell, n, v).residual) <= 60.0 * std::log(nn));
        }
    }
}

TEST_CASE("summand estimate")
{
    const auto v = ar::SummandFunction::estimate([](double x) { return std::sin(x); }, 2.0 * std::numbers::pi, 10000);
    CHECK(v.sup_norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(v.total_variation == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("sum arguments are validated")
{
    const auto one = ar::SummandFunction::estimate([](double) { return 1.0; }, 10.0);
    CHECK_THROWS_AS(ar::coprime_totient_sum(1, 10, one), std::invalid_argument);
    CHECK_THROWS_AS(ar::scaled_totient_sum(2, 0, one), std::invalid_argument);
}

TEST_CASE("inverse equidistribution examples")
{
    const auto a = ar::inverse_equidistribution_check(2, 1, {0, 2}, {0, 2});
    CHECK(a.count == 1);
    CHECK(a.prediction == doctest::Approx(1.0));

    const auto b = ar::inverse_equidistribution_check(101, -1, {0, 101}, {0, 101});
    CHECK(b.count == 100);
    CHECK(b.prediction == doctest::Approx(100.0));

    const double q = 10007.0;
    const auto c = ar::inverse_equidistribution_check(10007, -1, {0, 5000}, {0, 5000});
    CHECK(std::abs(static_cast<double>(c.count) - c.prediction) <= 3.0 * std::sqrt(q) * std::log(q));
}

TEST_CASE("inverse equidistribution matches enumeration")
{
    for (std::int64_t q : {12, 30, 97}) {
        for (std::int64_t h : {-1, 1, 5}) {
            const ar::Interval ia{2.5, q * 0.7};
            const ar::Interval ib{1.0, q * 0.9};
            std::int64_t brute = 0;
            for (std::int64_t x = 0; x < q; ++x) {
                for (std::int64_t y = 0; y < q; ++y) {
                    if (x < ia.lo || x >= ia.hi || y < ib.lo || y >= ib.hi) {
                        continue;
                    }
                    if (std::gcd(y, q) == 1 && ((x * y - h) % q + q) % q == 0) {
                        ++brute;
                    }
                }
            }
            CHECK(ar::inverse_equidistribution_check(q, h, ia, ib).count == brute);
        }
    }
}
