#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace lorentz::farey {

/// a/q in lowest terms with 0 <= a <= q.
struct ReducedFraction {
    std::int64_t a = 0;
    std::int64_t q = 1;

    /// Validating constructor; throws std::invalid_argument if the fraction
    /// is not reduced or not in [0, 1].
    static ReducedFraction make(std::int64_t a, std::int64_t q);

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }

    friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;
    friend std::strong_ordering operator<=>(const ReducedFraction& x, const ReducedFraction& y)
    {
        return static_cast<__int128>(x.a) * y.q <=> static_cast<__int128>(y.a) * x.q;
    }
};

/// Consecutive elements left < right of the Farey sequence of order `order`.
struct FareyPair {
    ReducedFraction left;
    ReducedFraction right;
    std::int64_t order = 1;

    /// a'q - aq' = 1, q + q' > Q, max(q, q') <= Q.
    bool satisfies_invariants() const;
};

/// Closed slope interval inside [0, 1].
struct SlopeInterval {
    double lo = 0.0;
    double hi = 1.0;

    /// c_I = int_I du / (1 + u^2).
    double angular_measure() const { return std::atan(hi) - std::atan(lo); }
};

/// Fractions of F_Q inside [lo, hi], ascending.
std::vector<ReducedFraction> enumerate(std::int64_t order, SlopeInterval interval = {});

/// Calls fn(left, right) for every consecutive pair of F_Q, in order.
void for_each_pair(std::int64_t order,
                   const std::function<void(const ReducedFraction&, const ReducedFraction&)>& fn);

/// Successor of pair.right in F_Q, or nullopt when pair.right is 1/1.
std::optional<ReducedFraction> next_in_sequence(const FareyPair& pair);

/// Consecutive gamma <= x < gamma' in F_Q by Stern-Brocot descent, O(log Q).
FareyPair bracket(double x, std::int64_t order);

/// ell | (q - a).
bool in_congruence_class(const ReducedFraction& f, std::int64_t ell);

/// Exact sign of x - p/r for a double x and integers p, r > 0 with |p| < 2^53.
int compare_slope(double x, std::int64_t p, std::int64_t r);

/// x*X - Y with a single rounding. Every engine tests scatterer contact with
/// this so that independent code paths agree bit for bit.
inline double vertical_gap(double x, std::int64_t big_x, std::int64_t y)
{
    return std::fma(x, static_cast<double>(big_x), -static_cast<double>(y));
}

/// Mediant chain between gamma and its right neighbour gamma':
///   a_k = k a + a', q_k = k q + q', t_k = (a_k - eps) / q_k, t_{-1} = gamma'
/// and the mirrored chain a'_k = k a' + a, q'_k = k q' + q, u_k = (a'_k + eps) / q'_k.
struct MediantChain {
    FareyPair base;

    std::int64_t a(std::int64_t k) const { return k * base.left.a + base.right.a; }
    std::int64_t q(std::int64_t k) const { return k * base.left.q + base.right.q; }
    double gamma(std::int64_t k) const { return static_cast<double>(a(k)) / q(k); }
    double t(std::int64_t k, double eps) const;

    std::int64_t a_mirror(std::int64_t k) const { return k * base.right.a + base.left.a; }
    std::int64_t q_mirror(std::int64_t k) const { return k * base.right.q + base.left.q; }
    double u(std::int64_t k, double eps) const;
};

enum class ChainStatus {
    ok,
    at_boundary,     // the slope touches a chain scatterer tangentially
    beyond_horizon,  // exit denominator exceeds the caller's cap
};

struct ChainExit {
    std::int64_t k = -1;       // t_{k+1} < x <= t_k
    std::int64_t q_exit = 0;   // q_{k+1}
    std::int64_t a_exit = 0;   // a_{k+1}
    ChainStatus status = ChainStatus::ok;
};

/// Exit through the chain descending onto a sink gamma = pair.left.
/// q_limit caps the exit denominator; above it the status is beyond_horizon.
ChainExit sink_chain_value(const FareyPair& pair, double x, double eps,
                           std::int64_t q_limit);

/// Mirror image: the sink is gamma' = pair.right and the chain climbs
/// from gamma through u_k.
ChainExit source_chain_value(const FareyPair& pair, double x, double eps,
                             std::int64_t q_limit);

struct SumRecord {
    double enumerated = 0.0;
    double predicted = 0.0;
    double relative_error() const { return std::abs(enumerated - predicted) / std::abs(predicted); }
};

/// Pairs with neither fraction in F^(ell) and min(q, q') > lambda Q.
SumRecord sum_A(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell);
/// Pairs with neither fraction in F^(ell) and q <= lambda Q < q'.
SumRecord sum_B(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell);
/// Pairs with neither fraction in F^(ell) and q' <= lambda Q < q.
SumRecord sum_C(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell);
/// Left-sink contributions for lambda > 1.
SumRecord sum_sink(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell);

}  // namespace lorentz::farey
