#include "lorentz/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>

#include "lorentz/limitdist.hpp"
#include "lorentz/quadrature.hpp"

namespace lorentz::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b)
{
    if (a == 0 && b == 0) {
        throw std::invalid_argument("gcd(0, 0) is undefined");
    }
    return std::gcd(a, b);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("64-bit multiplication overflow");
    }
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("64-bit addition overflow");
    }
    return out;
}

Sieve::Sieve(std::uint32_t bound) : bound_(std::max<std::uint32_t>(bound, 2)), spf_(bound_ + 1, 0)
{
    std::vector<std::uint32_t> primes;
    primes.reserve(bound_ / 10 + 16);
    spf_[1] = 1;
    for (std::uint32_t i = 2; i <= bound_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes.push_back(i);
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
            if (p > spf_[i] || ip > bound_) {
                break;
            }
            spf_[ip] = p;
        }
    }
}

std::vector<std::uint64_t> Sieve::prime_factors(std::uint64_t n) const
{
    if (n == 0) {
        throw std::invalid_argument("prime_factors: n must be positive");
    }
    std::vector<std::uint64_t> out;
    if (n <= bound_) {
        auto m = static_cast<std::uint32_t>(n);
        while (m > 1) {
            const std::uint32_t p = spf_[m];
            out.push_back(p);
            while (m % p == 0) {
                m /= p;
            }
        }
        return out;
    }
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::uint64_t Sieve::totient(std::uint64_t n) const
{
    std::uint64_t result = n;
    for (std::uint64_t p : prime_factors(n)) {
        result -= result / p;
    }
    return result;
}

int Sieve::mobius(std::uint64_t n) const
{
    if (n == 0) {
        throw std::invalid_argument("mobius: n must be positive");
    }
    int sign = 1;
    for (std::uint64_t p : prime_factors(n)) {
        if ((n / p) % p == 0) {
            return 0;
        }
        sign = -sign;
    }
    return sign;
}

const Sieve& shared_sieve()
{
    static const Sieve sieve(default_sieve_bound);
    return sieve;
}

std::uint64_t totient(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("totient: n must be positive");
    }
    return shared_sieve().totient(n);
}

int mobius(std::uint64_t n) { return shared_sieve().mobius(n); }

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    return shared_sieve().prime_factors(n);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    if (m <= 0) {
        throw std::invalid_argument("mod_inverse: modulus must be positive");
    }
    std::int64_t r0 = ((a % m) + m) % m;
    std::int64_t r1 = m;
    std::int64_t s0 = 1;
    std::int64_t s1 = 0;
    while (r1 != 0) {
        const std::int64_t quot = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - quot * s1};
    }
    if (r0 != 1) {
        throw NoInverseError("mod_inverse: no inverse, gcd(a, m) != 1");
    }
    return ((s0 % m) + m) % m;
}

SummandFunction SummandFunction::estimate(std::function<double(double)> f,
                                          double n, int samples)
{
    SummandFunction out;
    samples = std::max(samples, 1);
    double prev = f(0.0);
    double sup = std::abs(prev);
    double var = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double x = n * static_cast<double>(i) / samples;
        const double y = f(x);
        sup = std::max(sup, std::abs(y));
        var += std::abs(y - prev);
        prev = y;
    }
    out.f = std::move(f);
    out.sup_norm = sup;
    out.total_variation = var;
    return out;
}

namespace {

double integrate_summand(const SummandFunction& v, std::int64_t n)
{
    const double upper = static_cast<double>(n);
    const double tol = std::max(1e-10 * upper * v.sup_norm, 1e-300);
    return quad::integrate([&](double x) { return v(x); }, 0.0, upper, tol);
}

void require_sum_args(std::int64_t ell, std::int64_t n)
{
    if (ell < 2) {
        throw std::invalid_argument("modulus must be >= 2");
    }
    if (n < 1) {
        throw std::invalid_argument("summation bound must be >= 1");
    }
}

}  // namespace

SumComparison coprime_totient_sum(std::int64_t ell, std::int64_t n,
                                  const SummandFunction& v)
{
    require_sum_args(ell, n);
    SumComparison out;
    for (std::int64_t k = 1; k <= n; ++k) {
        if (std::gcd(ell, k) != 1) {
            continue;
        }
        out.exact_sum += static_cast<double>(totient(k)) / k * v(static_cast<double>(k));
    }
    out.main_term = limitdist::constant_C(ell) * integrate_summand(v, n);
    out.residual = out.exact_sum - out.main_term;
    return out;
}

SumComparison scaled_totient_sum(std::int64_t ell, std::int64_t n,
                                 const SummandFunction& v)
{
    require_sum_args(ell, n);
    SumComparison out;
    for (std::int64_t k = 1; k <= n; ++k) {
        const auto lk = static_cast<std::uint64_t>(checked_mul(ell, k));
        out.exact_sum += static_cast<double>(totient(lk)) / k * v(static_cast<double>(k));
    }
    out.main_term = static_cast<double>(ell) * limitdist::constant_C(ell) *
                    integrate_summand(v, n);
    out.residual = out.exact_sum - out.main_term;
    return out;
}

EquidistributionCount inverse_equidistribution_check(std::int64_t q,
                                                     std::int64_t h,
                                                     Interval box_a,
                                                     Interval box_b)
{
    if (q < 1) {
        throw std::invalid_argument("modulus must be positive");
    }
    if (box_a.length() < 0.0 || box_b.length() < 0.0) {
        throw std::invalid_argument("box intervals must be non-empty");
    }
    const std::int64_t hq = ((h % q) + q) % q;
    const auto a_lo = static_cast<std::int64_t>(std::ceil(box_a.lo));
    const auto a_hi = static_cast<std::int64_t>(std::ceil(box_a.hi));  // exclusive
    const auto b_lo = static_cast<std::int64_t>(std::ceil(box_b.lo));
    const auto b_hi = static_cast<std::int64_t>(std::ceil(box_b.hi));

    // Integers in [a_lo, a_hi) congruent to r mod q.
    auto count_residue = [&](std::int64_t r) {
        auto first_at_least = [&](std::int64_t lo) {
            const std::int64_t shift = ((r - lo) % q + q) % q;
            return lo + shift;
        };
        const std::int64_t first = first_at_least(a_lo);
        if (first >= a_hi) {
            return std::int64_t{0};
        }
        return (a_hi - 1 - first) / q + 1;
    };

    EquidistributionCount out;
    for (std::int64_t b = b_lo; b < b_hi; ++b) {
        const std::int64_t bq = ((b % q) + q) % q;
        if (std::gcd(bq, q) != 1) {
            continue;
        }
        const std::int64_t inv = mod_inverse(bq, q);
        const std::int64_t a_res = static_cast<std::int64_t>(
            (static_cast<__int128>(hq) * inv) % q);
        out.count += count_residue(a_res);
    }
    out.prediction = static_cast<double>(totient(static_cast<std::uint64_t>(q))) /
                     (static_cast<double>(q) * q) * box_a.length() * box_b.length();
    return out;
}

}  // namespace lorentz::arith
