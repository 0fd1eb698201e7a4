#include "lorentz/freepath.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "lorentz/lattice_ray.hpp"
#include "lorentz/limitdist.hpp"

namespace lorentz::freepath {

void LatticeConfig::validate() const
{
    if (ell < 2) {
        throw std::invalid_argument("ell must be >= 2");
    }
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    }
}

std::int64_t horizon_denominator(const LatticeConfig& cfg, double lambda_max)
{
    if (!(lambda_max > 0.0)) {
        throw std::invalid_argument("lambda_max must be > 0");
    }
    return static_cast<std::int64_t>(std::floor(lambda_max * static_cast<double>(cfg.order())));
}

PathSample horizontal_free_path_brute(const LatticeConfig& cfg, double slope, std::int64_t q_max)
{
    cfg.validate();
    if (q_max < 1) {
        throw std::invalid_argument("q_max must be >= 1");
    }
    PathSample out;
    out.omega = slope;
    for (std::int64_t x = 1; x <= q_max; ++x) {
        const auto y = static_cast<std::int64_t>(std::nearbyint(slope * static_cast<double>(x)));
        if (cfg.eligible(x, y) && std::abs(farey::vertical_gap(slope, x, y)) <= cfg.eps) {
            out.outcome = static_cast<double>(x);
            out.hit = LatticePoint{x, y};
            return out;
        }
    }
    return out;
}

PathSample horizontal_free_path_farey(const LatticeConfig& cfg, double slope, double lambda_max)
{
    cfg.validate();
    if (!(slope >= 0.0 && slope <= 1.0)) {
        throw std::domain_error("slope outside [0, 1]");
    }
    PathSample out;
    out.omega = slope;
    if (slope == 1.0) {
        // Only the diagonal itself lies within eps < 1/2, and it is excluded.
        return out;
    }
    const std::int64_t order = cfg.order();
    const std::int64_t q_limit = horizon_denominator(cfg, lambda_max);
    const farey::FareyPair pair = farey::bracket(slope, order);
    const farey::ReducedFraction& l = pair.left;
    const farey::ReducedFraction& r = pair.right;

    std::int64_t q = 0, a = 0;
    if (farey::in_congruence_class(l, cfg.ell) || farey::in_congruence_class(r, cfg.ell)) {
        const farey::ChainExit exit = farey::in_congruence_class(l, cfg.ell)
                                          ? farey::sink_chain_value(pair, slope, cfg.eps, q_limit)
                                          : farey::source_chain_value(pair, slope, cfg.eps, q_limit);
        if (exit.status == farey::ChainStatus::beyond_horizon) {
            return out;
        }
        q = exit.q_exit;
        a = exit.a_exit;
    } else {
        const bool hit_left = std::abs(farey::vertical_gap(slope, l.q, l.a)) <= cfg.eps;
        const bool hit_right = std::abs(farey::vertical_gap(slope, r.q, r.a)) <= cfg.eps;
        if (hit_left && (!hit_right || l.q < r.q)) {
            q = l.q;
            a = l.a;
        } else if (hit_right) {
            q = r.q;
            a = r.a;
        } else {
            throw std::logic_error("Farey bracket left the slope uncovered");
        }
        if (q > q_limit) {
            return out;
        }
    }
    out.outcome = static_cast<double>(q);
    out.hit = LatticePoint{q, a};
    return out;
}

PathSample exit_time_disc(const LatticeConfig& cfg, double omega, double lambda_max)
{
    cfg.validate();
    if (!(lambda_max > 0.0)) {
        throw std::invalid_argument("lambda_max must be > 0");
    }
    PathSample out;
    out.omega = omega;
    const geom::Vec2 dir{std::cos(omega), std::sin(omega)};
    const auto hit = geom::first_disc_hit(
        geom::LatticeFrame{}, geom::Vec2{}, dir, cfg.eps, lambda_max / cfg.eps,
        [&cfg](std::int64_t m, std::int64_t n) { return cfg.eligible(m, n); });
    if (hit) {
        out.outcome = hit->t;
        out.hit = LatticePoint{hit->m, hit->n};
    }
    return out;
}

namespace {

void require_horizon(const LambdaGrid& grid, const sampling::SweepSpec& spec)
{
    grid.validate();
    if (spec.n_samples == 0) {
        throw std::invalid_argument("n_samples must be >= 1");
    }
    if (!(spec.lambda_max >= grid.max)) {
        throw std::invalid_argument("lambda_max must cover the grid");
    }
}

}  // namespace

DistributionTable empirical_sector_G(const LatticeConfig& cfg, farey::SlopeInterval interval,
                                     const LambdaGrid& grid, const sampling::SweepSpec& spec)
{
    cfg.validate();
    require_horizon(grid, spec);
    if (!(interval.lo >= 0.0 && interval.hi <= 1.0 && interval.lo < interval.hi)) {
        throw std::invalid_argument("slope interval must be a nonempty subset of [0, 1]");
    }
    const double q_scale = static_cast<double>(cfg.order());
    const sampling::StratifiedAngles angles{std::atan(interval.lo), std::atan(interval.hi),
                                            spec.n_samples, spec.seed};
    auto values = sampling::parallel_map(spec.n_samples, spec.workers, [&](std::uint64_t i) {
        const double slope = std::clamp(std::tan(angles(i)), interval.lo, interval.hi);
        return horizontal_free_path_farey(cfg, slope, spec.lambda_max).outcome / q_scale;
    });
    const double c_i = interval.angular_measure();
    const limitdist::CongruenceModulus modulus(cfg.ell);
    DistributionTable t = survival_table(values, grid.values(), c_i, [&](double lambda) {
        return c_i * limitdist::G(modulus, lambda);
    });
    t.seed = spec.seed;
    return t;
}

DistributionTable empirical_P(const LatticeConfig& cfg, const LambdaGrid& grid,
                              const sampling::SweepSpec& spec)
{
    cfg.validate();
    require_horizon(grid, spec);
    const sampling::StratifiedAngles angles{0.0, 2.0 * std::numbers::pi, spec.n_samples, spec.seed};
    auto values = sampling::parallel_map(spec.n_samples, spec.workers, [&](std::uint64_t i) {
        return cfg.eps * exit_time_disc(cfg, angles(i), spec.lambda_max).outcome;
    });
    const limitdist::CongruenceModulus modulus(cfg.ell);
    DistributionTable t = survival_table(values, grid.values(), 1.0,
                                         [&](double lambda) { return limitdist::G(modulus, lambda); });
    t.seed = spec.seed;
    return t;
}

}  // namespace lorentz::freepath
