#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lorentz::arith {

/// Thrown by mod_inverse when gcd(a, m) != 1.
class NoInverseError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// a * b with overflow detection (throws std::overflow_error).
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

/// Smallest-prime-factor table for [0, bound]; immutable once built.
class Sieve {
public:
    explicit Sieve(std::uint32_t bound);

    std::uint32_t bound() const { return bound_; }
    std::uint32_t smallest_factor(std::uint32_t n) const { return spf_[n]; }

    /// Distinct prime factors, ascending. Falls back to trial division above
    /// the bound.
    std::vector<std::uint64_t> prime_factors(std::uint64_t n) const;
    std::uint64_t totient(std::uint64_t n) const;
    int mobius(std::uint64_t n) const;

private:
    std::uint32_t bound_;
    std::vector<std::uint32_t> spf_;
};

inline constexpr std::uint32_t default_sieve_bound = 10'000'000;

/// Process-wide sieve with the default bound, built on first use.
const Sieve& shared_sieve();

std::uint64_t totient(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// x in [0, m) with a*x = 1 (mod m). Throws NoInverseError if gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// A real summand on [0, N] with its sup-norm and total variation.
struct SummandFunction {
    std::function<double(double)> f;
    double sup_norm = 0.0;
    double total_variation = 0.0;

    double operator()(double x) const { return f(x); }

    /// Sup-norm and variation estimated on a uniform grid of `samples` + 1
    /// points over [0, n].
    static SummandFunction estimate(std::function<double(double)> f, double n,
                                    int samples = 4096);
};

struct SumComparison {
    double exact_sum = 0.0;
    double main_term = 0.0;
    double residual = 0.0;
};

/// Sum over k <= N, gcd(ell, k) = 1 of (phi(k)/k) V(k), against C(ell) * int_0^N V.
SumComparison coprime_totient_sum(std::int64_t ell, std::int64_t n,
                                  const SummandFunction& v);

/// Sum over n <= N of (phi(ell n)/n) V(n), against ell C(ell) * int_0^N V.
SumComparison scaled_totient_sum(std::int64_t ell, std::int64_t n,
                                 const SummandFunction& v);

/// Half-open real interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct EquidistributionCount {
    std::int64_t count = 0;
    double prediction = 0.0;
};

/// Counts integer pairs (a, b) in box_a x box_b with a*b = h (mod q) and
/// gcd(b, q) = 1; prediction is phi(q)/q^2 times the box area.
EquidistributionCount inverse_equidistribution_check(std::int64_t q,
                                                     std::int64_t h,
                                                     Interval box_a,
                                                     Interval box_b);

}  // namespace lorentz::arith
