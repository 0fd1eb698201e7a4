#include "lorentz/farey.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "lorentz/arith.hpp"
#include "lorentz/limitdist.hpp"

namespace lorentz::farey {

ReducedFraction ReducedFraction::make(std::int64_t a, std::int64_t q)
{
    if (q <= 0 || a < 0 || a > q) {
        throw std::invalid_argument("fraction outside [0, 1]");
    }
    if (arith::gcd(a, q) != 1) {
        throw std::invalid_argument("fraction not in lowest terms");
    }
    return {a, q};
}

bool FareyPair::satisfies_invariants() const
{
    return right.a * left.q - left.a * right.q == 1 && left.q + right.q > order &&
           std::max(left.q, right.q) <= order;
}

int compare_slope(double x, std::int64_t p, std::int64_t r)
{
    const double rd = static_cast<double>(r);
    const double hi = x * rd;
    const double lo = std::fma(x, rd, -hi);
    const double diff = hi - static_cast<double>(p);
    if (diff != 0.0) {
        return diff > 0.0 ? 1 : -1;
    }
    return (lo > 0.0) - (lo < 0.0);
}

std::optional<ReducedFraction> next_in_sequence(const FareyPair& pair)
{
    const ReducedFraction& l = pair.left;
    const ReducedFraction& r = pair.right;
    if (r.a == r.q) {
        return std::nullopt;
    }
    const std::int64_t s = (pair.order + l.q) / r.q;
    return ReducedFraction{s * r.a - l.a, s * r.q - l.q};
}

void for_each_pair(std::int64_t order,
                   const std::function<void(const ReducedFraction&, const ReducedFraction&)>& fn)
{
    if (order < 1) {
        throw std::invalid_argument("Farey order must be >= 1");
    }
    FareyPair pair{{0, 1}, {1, order}, order};
    while (true) {
        fn(pair.left, pair.right);
        const auto next = next_in_sequence(pair);
        if (!next) {
            return;
        }
        pair.left = pair.right;
        pair.right = *next;
    }
}

std::vector<ReducedFraction> enumerate(std::int64_t order, SlopeInterval interval)
{
    if (order < 1) {
        throw std::invalid_argument("Farey order must be >= 1");
    }
    if (!(interval.lo >= 0.0 && interval.hi <= 1.0 && interval.lo <= interval.hi)) {
        throw std::invalid_argument("interval must lie in [0, 1]");
    }
    std::vector<ReducedFraction> out;
    FareyPair pair = interval.lo < 1.0 ? bracket(interval.lo, order)
                                       : FareyPair{{order - 1, order}, {1, 1}, order};
    auto inside = [&](const ReducedFraction& f) {
        return compare_slope(interval.lo, f.a, f.q) <= 0 && compare_slope(interval.hi, f.a, f.q) >= 0;
    };
    if (inside(pair.left)) {
        out.push_back(pair.left);
    }
    while (inside(pair.right)) {
        out.push_back(pair.right);
        const auto next = next_in_sequence(pair);
        if (!next) {
            break;
        }
        pair.left = pair.right;
        pair.right = *next;
    }
    return out;
}

FareyPair bracket(double x, std::int64_t order)
{
    if (order < 1) {
        throw std::invalid_argument("Farey order must be >= 1");
    }
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::domain_error("bracket: x outside [0, 1)");
    }
    std::int64_t la = 0, lq = 1, ra = 1, rq = 1;
    while (lq + rq <= order) {
        const std::int64_t ma = la + ra;
        const std::int64_t mq = lq + rq;
        if (compare_slope(x, ma, mq) < 0) {
            // R_k = (k L + R) descends toward L; take the largest k keeping x < R_k.
            const std::int64_t k_cap = (order - rq) / lq;
            auto keeps = [&](std::int64_t k) { return compare_slope(x, k * la + ra, k * lq + rq) < 0; };
            const double num = static_cast<double>(ra) - x * static_cast<double>(rq);
            const double den = x * static_cast<double>(lq) - static_cast<double>(la);
            std::int64_t k = k_cap;
            if (den > 0.0 && num / den < static_cast<double>(k_cap)) {
                k = std::max<std::int64_t>(1, static_cast<std::int64_t>(num / den));
            }
            while (k < k_cap && keeps(k + 1)) {
                ++k;
            }
            while (k > 1 && !keeps(k)) {
                --k;
            }
            ra = k * la + ra;
            rq = k * lq + rq;
        } else {
            // L_k = (L + k R) climbs toward R; take the largest k keeping L_k <= x.
            const std::int64_t k_cap = (order - lq) / rq;
            auto keeps = [&](std::int64_t k) { return compare_slope(x, la + k * ra, lq + k * rq) >= 0; };
            const double num = x * static_cast<double>(lq) - static_cast<double>(la);
            const double den = static_cast<double>(ra) - x * static_cast<double>(rq);
            std::int64_t k = k_cap;
            if (den > 0.0 && num / den < static_cast<double>(k_cap)) {
                k = std::max<std::int64_t>(1, static_cast<std::int64_t>(num / den));
            }
            while (k < k_cap && keeps(k + 1)) {
                ++k;
            }
            while (k > 1 && !keeps(k)) {
                --k;
            }
            la = la + k * ra;
            lq = lq + k * rq;
        }
    }
    return {{la, lq}, {ra, rq}, order};
}

bool in_congruence_class(const ReducedFraction& f, std::int64_t ell)
{
    if (ell < 1) {
        throw std::invalid_argument("modulus must be >= 1");
    }
    return (f.q - f.a) % ell == 0;
}

double MediantChain::t(std::int64_t k, double eps) const
{
    if (k < 0) {
        return base.right.value();
    }
    return (static_cast<double>(a(k)) - eps) / static_cast<double>(q(k));
}

double MediantChain::u(std::int64_t k, double eps) const
{
    if (k < 0) {
        return base.left.value();
    }
    return (static_cast<double>(a_mirror(k)) + eps) / static_cast<double>(q_mirror(k));
}

namespace {

// Points P_j = (q0 + j dq, a0 + j da) approach the ray from the side `side`
// (+1 above, -1 below); the signed gap side * (a_j - x q_j) shrinks linearly in j.
// Returns the first j whose point lies within eps of the ray.
ChainExit solve_chain(std::int64_t q0, std::int64_t a0, std::int64_t dq, std::int64_t da, int side,
                      double x, double eps, std::int64_t q_limit)
{
    ChainExit out;
    if (q_limit < q0) {
        out.status = ChainStatus::beyond_horizon;
        return out;
    }
    const std::int64_t j_max = (q_limit - q0) / dq;
    auto gap = [&](std::int64_t j) { return -side * vertical_gap(x, q0 + j * dq, a0 + j * da); };
    const double g0 = gap(0);
    const double delta = side * (x * static_cast<double>(dq) - static_cast<double>(da));

    std::int64_t j = 0;
    if (g0 > eps) {
        if (!(delta > 0.0)) {
            out.status = ChainStatus::beyond_horizon;
            return out;
        }
        const double est = std::ceil((g0 - eps) / delta);
        if (est > static_cast<double>(j_max) + 2.0) {
            out.status = ChainStatus::beyond_horizon;
            return out;
        }
        j = std::max<std::int64_t>(0, static_cast<std::int64_t>(est));
        while (j > 0 && gap(j - 1) <= eps) {
            --j;
        }
        while (gap(j) > eps) {
            ++j;
        }
    }
    if (j > j_max) {
        out.status = ChainStatus::beyond_horizon;
        return out;
    }
    out.k = j - 1;
    out.q_exit = q0 + j * dq;
    out.a_exit = a0 + j * da;
    if (std::abs(gap(j)) == eps) {
        out.status = ChainStatus::at_boundary;
    }
    return out;
}

}  // namespace

ChainExit sink_chain_value(const FareyPair& pair, double x, double eps, std::int64_t q_limit)
{
    const ReducedFraction& l = pair.left;
    const ReducedFraction& r = pair.right;
    return solve_chain(r.q, r.a, l.q, l.a, +1, x, eps, q_limit);
}

ChainExit source_chain_value(const FareyPair& pair, double x, double eps, std::int64_t q_limit)
{
    const ReducedFraction& l = pair.left;
    const ReducedFraction& r = pair.right;
    return solve_chain(l.q, l.a, r.q, r.a, -1, x, eps, q_limit);
}

namespace {

void require_sum_args(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell)
{
    if (order < 1 || order > 10'000'000) {
        throw std::invalid_argument("sum: order out of range");
    }
    if (!(interval.lo >= 0.0 && interval.hi <= 1.0 && interval.lo < interval.hi)) {
        throw std::invalid_argument("sum: interval must be a nonempty subset of [0, 1]");
    }
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("sum: lambda must be > 0");
    }
    if (ell < 2) {
        throw std::invalid_argument("sum: modulus must be >= 2");
    }
}

// Sum of weight(l, r) over consecutive pairs with left fraction in the interval.
template <class Weight>
double pair_sum(SlopeInterval interval, std::int64_t order, Weight&& weight)
{
    double total = 0.0;
    for_each_pair(order, [&](const ReducedFraction& l, const ReducedFraction& r) {
        if (compare_slope(interval.lo, l.a, l.q) <= 0 && compare_slope(interval.hi, l.a, l.q) >= 0) {
            total += weight(l, r);
        }
    });
    return total;
}

double angular(double gamma) { return 1.0 / (1.0 + gamma * gamma); }

}  // namespace

SumRecord sum_A(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell)
{
    require_sum_args(interval, order, lambda, ell);
    const double cut = lambda * static_cast<double>(order);
    SumRecord rec;
    rec.enumerated = pair_sum(interval, order, [&](const ReducedFraction& l, const ReducedFraction& r) {
        if (in_congruence_class(l, ell) || in_congruence_class(r, ell)) {
            return 0.0;
        }
        if (!(static_cast<double>(std::min(l.q, r.q)) > cut)) {
            return 0.0;
        }
        return angular(l.value()) / (static_cast<double>(l.q) * static_cast<double>(r.q));
    });
    rec.predicted = lambda >= 1.0 ? 0.0
                                  : interval.angular_measure() * limitdist::constant_A(ell) *
                                        limitdist::I1(lambda);
    return rec;
}

SumRecord sum_B(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell)
{
    require_sum_args(interval, order, lambda, ell);
    const double cut = lambda * static_cast<double>(order);
    const double eps = 1.0 / static_cast<double>(order);
    SumRecord rec;
    rec.enumerated = pair_sum(interval, order, [&](const ReducedFraction& l, const ReducedFraction& r) {
        if (in_congruence_class(l, ell) || in_congruence_class(r, ell)) {
            return 0.0;
        }
        if (!(static_cast<double>(l.q) <= cut && static_cast<double>(r.q) > cut)) {
            return 0.0;
        }
        const double qq = static_cast<double>(l.q) * static_cast<double>(r.q);
        return (1.0 - eps * static_cast<double>(r.q)) / qq * angular(r.value());
    });
    rec.predicted = lambda >= 1.0 ? 0.0
                                  : interval.angular_measure() * limitdist::constant_A(ell) *
                                        limitdist::I2(lambda);
    return rec;
}

SumRecord sum_C(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell)
{
    require_sum_args(interval, order, lambda, ell);
    const double cut = lambda * static_cast<double>(order);
    const double eps = 1.0 / static_cast<double>(order);
    SumRecord rec;
    rec.enumerated = pair_sum(interval, order, [&](const ReducedFraction& l, const ReducedFraction& r) {
        if (in_congruence_class(l, ell) || in_congruence_class(r, ell)) {
            return 0.0;
        }
        if (!(static_cast<double>(r.q) <= cut && static_cast<double>(l.q) > cut)) {
            return 0.0;
        }
        const double qq = static_cast<double>(l.q) * static_cast<double>(r.q);
        return (1.0 - eps * static_cast<double>(l.q)) / qq * angular(l.value());
    });
    rec.predicted = lambda >= 1.0 ? 0.0
                                  : interval.angular_measure() * limitdist::constant_A(ell) *
                                        limitdist::I2(lambda);
    return rec;
}

SumRecord sum_sink(SlopeInterval interval, std::int64_t order, double lambda, std::int64_t ell)
{
    require_sum_args(interval, order, lambda, ell);
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("sum_sink: lambda must be > 1");
    }
    const double cut = lambda * static_cast<double>(order);
    const double eps = 1.0 / static_cast<double>(order);
    SumRecord rec;
    rec.enumerated = pair_sum(interval, order, [&](const ReducedFraction& l, const ReducedFraction& r) {
        if (!in_congruence_class(l, ell)) {
            return 0.0;
        }
        const double q = static_cast<double>(l.q);
        const double k = std::max(0.0, std::floor((cut - static_cast<double>(r.q)) / q));
        return (1.0 - eps * q) / (q * (k * q + static_cast<double>(r.q))) * angular(l.value());
    });
    rec.predicted = interval.angular_measure() * limitdist::constant_C(ell) /
                    static_cast<double>(ell) * limitdist::H3(lambda);
    return rec;
}

}  // namespace lorentz::farey
