#include "lorentz/billiards.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lorentz/limitdist.hpp"

namespace lorentz::billiards {

using geom::Vec2;
using freepath::LatticePoint;
using freepath::PathSample;

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;
constexpr double half_sqrt3 = sqrt3 / 2.0;
constexpr double inf = std::numeric_limits<double>::infinity();

constexpr std::array<Vec2, 6> hex_vertices{{
    {1.0, 0.0}, {0.5, half_sqrt3}, {-0.5, half_sqrt3}, {-1.0, 0.0}, {-0.5, -half_sqrt3}, {0.5, -half_sqrt3},
}};
// Outward normal of the edge from vertex k to vertex k+1, at angle pi/6 + k pi/3.
constexpr std::array<Vec2, 6> hex_normals{{
    {half_sqrt3, 0.5}, {0.0, 1.0}, {-half_sqrt3, 0.5}, {-half_sqrt3, -0.5}, {0.0, -1.0}, {half_sqrt3, -0.5},
}};
// cos and sin of j pi / 3.
constexpr std::array<double, 6> rot_cos{1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
constexpr std::array<double, 6> rot_sin{0.0, half_sqrt3, half_sqrt3, 0.0, -half_sqrt3, -half_sqrt3};

constexpr std::array<Vec2, 4> square_vertices{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};

const geom::LatticeFrame hex_frame{{1.0, 0.0}, {0.5, half_sqrt3}, {0.0, 0.0}};
const geom::LatticeFrame square_frame{};

// Earliest entry parameter into any pocket along p + t d, t in [0, limit].
template <std::size_t N>
double pocket_entry(const std::array<Vec2, N>& pockets, Vec2 p, Vec2 d, double eps, double limit)
{
    double best = inf;
    for (const Vec2& v : pockets) {
        const Vec2 rel = v - p;
        const double perp = geom::cross(rel, d);
        if (std::abs(perp) > eps) {
            continue;
        }
        const double along = geom::dot(rel, d);
        const double half_chord = std::sqrt(eps * eps - perp * perp);
        if (along + half_chord < 0.0) {
            continue;
        }
        const double t = std::max(0.0, along - half_chord);
        if (t <= limit && t < best) {
            best = t;
        }
    }
    return best;
}

// Neumaier-compensated running sum; the path length adds up ~1/eps segments.
struct PathLength {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x)
    {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

LatticePoint nearest_index(const geom::LatticeFrame& frame, Vec2 p)
{
    const Vec2 c = frame.coordinates(p);
    return {static_cast<std::int64_t>(std::llround(c.x)), static_cast<std::int64_t>(std::llround(c.y))};
}

ReflectiveTrace finish(ReflectiveTrace tr, const geom::LatticeFrame& frame, Vec2 start, double omega)
{
    if (tr.sample.finite()) {
        const double t = tr.sample.outcome;
        const Vec2 contact{start.x + t * std::cos(omega), start.y + t * std::sin(omega)};
        tr.sample.hit = nearest_index(frame, contact);
    }
    return tr;
}

ReflectiveTrace trace_hexagon(double eps, double omega, double max_t)
{
    ReflectiveTrace tr;
    tr.sample.omega = omega;
    const double c = std::cos(omega);
    const double s = std::sin(omega);
    int sigma = 1;
    int j = 0;
    Vec2 p{0.0, 0.0};
    Vec2 d{c, s};
    PathLength travelled;
    while (true) {
        double exit = inf;
        int edge = -1;
        for (int k = 0; k < 6; ++k) {
            const double dn = geom::dot(d, hex_normals[k]);
            if (dn > 0.0) {
                const double t = (half_sqrt3 - geom::dot(p, hex_normals[k])) / dn;
                if (t < exit) {
                    exit = t;
                    edge = k;
                }
            }
        }
        exit = std::max(exit, 0.0);
        const double entry = pocket_entry(hex_vertices, p, d, eps, exit);
        if (entry < inf) {
            PathLength at = travelled;
            at.add(entry);
            const double total = at.value();
            tr.length = std::min(total, max_t);
            if (total <= max_t) {
                tr.sample.outcome = total;
            }
            return finish(tr, hex_frame, {0.0, 0.0}, omega);
        }
        travelled.add(exit);
        if (travelled.value() > max_t) {
            tr.length = max_t;
            return tr;
        }
        p = p + exit * d;
        // Reflection in the edge with normal angle pi/6 + k pi/3 maps the
        // direction angle sigma omega + j pi/3 to -sigma omega + (4 + 2k - j) pi/3.
        sigma = -sigma;
        j = ((4 + 2 * edge - j) % 6 + 6) % 6;
        const double ss = sigma * s;
        d = {c * rot_cos[j] - ss * rot_sin[j], ss * rot_cos[j] + c * rot_sin[j]};
        ++tr.reflections;
    }
}

ReflectiveTrace trace_square(double eps, double omega, double max_t)
{
    ReflectiveTrace tr;
    tr.sample.omega = omega;
    Vec2 p{0.5, 0.5};
    Vec2 d{std::cos(omega), std::sin(omega)};
    PathLength travelled;
    while (true) {
        const double tx = d.x > 0.0 ? (1.0 - p.x) / d.x : d.x < 0.0 ? -p.x / d.x : inf;
        const double ty = d.y > 0.0 ? (1.0 - p.y) / d.y : d.y < 0.0 ? -p.y / d.y : inf;
        const double exit = std::max(0.0, std::min(tx, ty));
        const double entry = pocket_entry(square_vertices, p, d, eps, exit);
        if (entry < inf) {
            PathLength at = travelled;
            at.add(entry);
            const double total = at.value();
            tr.length = std::min(total, max_t);
            if (total <= max_t) {
                tr.sample.outcome = total;
            }
            return finish(tr, square_frame, {0.5, 0.5}, omega);
        }
        travelled.add(exit);
        if (travelled.value() > max_t) {
            tr.length = max_t;
            return tr;
        }
        p = p + exit * d;
        if (tx <= ty) {
            d.x = -d.x;
        }
        if (ty <= tx) {
            d.y = -d.y;
        }
        ++tr.reflections;
    }
}

void require_eps(double eps)
{
    if (!(eps > 0.0 && eps < 0.25)) {
        throw std::invalid_argument("pocket radius must lie in (0, 1/4)");
    }
}

void require_horizon(double lambda_max)
{
    if (!(lambda_max > 0.0)) {
        throw std::invalid_argument("lambda_max must be > 0");
    }
}

PathSample unfolded(const geom::LatticeFrame& frame, Vec2 start, double eps, double omega,
                    double lambda_max, bool (*eligible)(std::int64_t, std::int64_t))
{
    PathSample out;
    out.omega = omega;
    const auto hit = geom::first_disc_hit(frame, start, {std::cos(omega), std::sin(omega)}, eps,
                                          lambda_max / eps, eligible);
    if (hit) {
        out.outcome = hit->t;
        out.hit = LatticePoint{hit->m, hit->n};
    }
    return out;
}

bool honeycomb_vertex(std::int64_t m, std::int64_t n) { return (m - n) % 3 != 0; }
bool any_point(std::int64_t, std::int64_t) { return true; }

}  // namespace

Shape parse_shape(const std::string& name)
{
    if (name == "hex" || name == "hexagon") {
        return Shape::hexagon;
    }
    if (name == "square") {
        return Shape::square;
    }
    throw std::invalid_argument("unknown table '" + name + "' (expected hex or square)");
}

std::string shape_name(Shape s) { return s == Shape::hexagon ? "hex" : "square"; }

void BilliardTable::validate() const { require_eps(eps); }

Vec2 BilliardTable::start() const { return shape == Shape::hexagon ? Vec2{0.0, 0.0} : Vec2{0.5, 0.5}; }

std::vector<Vec2> BilliardTable::vertices() const
{
    if (shape == Shape::hexagon) {
        return {hex_vertices.begin(), hex_vertices.end()};
    }
    return {square_vertices.begin(), square_vertices.end()};
}

ReflectiveTrace reflective_trace(const BilliardTable& table, double omega, double lambda_max)
{
    table.validate();
    require_horizon(lambda_max);
    const double max_t = lambda_max / table.eps;
    return table.shape == Shape::hexagon ? trace_hexagon(table.eps, omega, max_t)
                                         : trace_square(table.eps, omega, max_t);
}

PathSample reflective_exit_time(const BilliardTable& table, double omega, double lambda_max)
{
    return reflective_trace(table, omega, lambda_max).sample;
}

PathSample unfolded_exit_time_hex(double eps, double omega, double lambda_max)
{
    require_eps(eps);
    require_horizon(lambda_max);
    return unfolded(hex_frame, {0.0, 0.0}, eps, omega, lambda_max, honeycomb_vertex);
}

PathSample unfolded_exit_time_square(double eps, double omega, double lambda_max)
{
    require_eps(eps);
    require_horizon(lambda_max);
    return unfolded(square_frame, {0.5, 0.5}, eps, omega, lambda_max, any_point);
}

PathSample square_via_congruence_lattice(double eps, double omega, double lambda_max)
{
    require_eps(eps);
    require_horizon(lambda_max);
    const freepath::LatticeConfig cfg{2, eps * std::numbers::sqrt2, freepath::Geometry::disc};
    // eps' tau' = 2 eps tau, so the lattice horizon doubles.
    PathSample lattice =
        freepath::exit_time_disc(cfg, omega + std::numbers::pi / 4.0, 2.0 * lambda_max);
    PathSample out;
    out.omega = omega;
    if (lattice.finite()) {
        out.outcome = lattice.outcome / std::numbers::sqrt2;
        // (p, r) = (m - n, m + n - 1) for the corner (m, n).
        const std::int64_t p = lattice.hit->m;
        const std::int64_t r = lattice.hit->n;
        out.hit = LatticePoint{(p + r + 1) / 2, (r - p + 1) / 2};
    }
    return out;
}

Vec2 transform_T(Vec2 p) { return {p.x - p.y / sqrt3, 2.0 * p.y / sqrt3}; }

Vec2 transform_T_inv(Vec2 p) { return {p.x + 0.5 * p.y, half_sqrt3 * p.y}; }

double phi(double mu)
{
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw std::domain_error("phi: argument outside [0, 1]");
    }
    return mu * sqrt3 / (2.0 + mu);
}

double phi_inv(double x)
{
    if (!(x >= 0.0 && x <= 1.0 / sqrt3 * (1.0 + 1e-15))) {
        throw std::domain_error("phi_inv: argument outside [0, 1/sqrt 3]");
    }
    return std::min(1.0, 2.0 * x / (sqrt3 - x));
}

double sine_rule_path(double q, double omega)
{
    if (!(omega >= 0.0 && omega <= std::numbers::pi / 6.0 * (1.0 + 1e-15))) {
        throw std::domain_error("sine_rule_path: angle outside [0, pi/6]");
    }
    return half_sqrt3 * q / std::cos(std::numbers::pi / 6.0 + omega);
}

double theory_hex(double lambda) { return limitdist::G(3, 2.0 * lambda / sqrt3); }

double theory_square(double lambda) { return limitdist::G(2, lambda / std::numbers::sqrt2); }

BilliardRun empirical_P_billiard(const BilliardTable& table, const LambdaGrid& grid,
                                 const sampling::SweepSpec& spec, AngleRange range,
                                 std::uint64_t cross_check)
{
    table.validate();
    grid.validate();
    if (spec.n_samples == 0) {
        throw std::invalid_argument("n_samples must be >= 1");
    }
    if (!(spec.lambda_max >= grid.max)) {
        throw std::invalid_argument("lambda_max must cover the grid");
    }
    if (!(range.hi > range.lo)) {
        throw std::invalid_argument("empty angle range");
    }
    const bool hex = table.shape == Shape::hexagon;
    const sampling::StratifiedAngles angles{range.lo, range.hi, spec.n_samples, spec.seed};
    auto unfolded_path = [&](double omega) {
        return hex ? unfolded_exit_time_hex(table.eps, omega, spec.lambda_max)
                   : unfolded_exit_time_square(table.eps, omega, spec.lambda_max);
    };
    auto values = sampling::parallel_map(spec.n_samples, spec.workers, [&](std::uint64_t i) {
        return table.eps * unfolded_path(angles(i)).outcome;
    });

    BilliardRun run;
    run.cross_checked = std::min(cross_check, spec.n_samples);
    const auto gaps = sampling::parallel_map(run.cross_checked, spec.workers, [&](std::uint64_t k) {
        const double omega = angles(k * spec.n_samples / run.cross_checked);
        const double a = unfolded_path(omega).outcome;
        const double b = reflective_exit_time(table, omega, spec.lambda_max).outcome;
        if (std::isinf(a) && std::isinf(b)) {
            return 0.0;
        }
        return std::abs(a - b);
    });
    for (double g : gaps) {
        run.max_engine_gap = std::max(run.max_engine_gap, g);
    }
    run.table = survival_table(values, grid.values(), 1.0, hex ? theory_hex : theory_square);
    run.table.seed = spec.seed;
    return run;
}

BilliardRun empirical_P_hex(double eps, const LambdaGrid& grid, const sampling::SweepSpec& spec,
                            std::uint64_t cross_check)
{
    return empirical_P_billiard({Shape::hexagon, eps}, grid, spec, {}, cross_check);
}

BilliardRun empirical_P_square(double eps, const LambdaGrid& grid, const sampling::SweepSpec& spec,
                               std::uint64_t cross_check)
{
    return empirical_P_billiard({Shape::square, eps}, grid, spec, {}, cross_check);
}

}  // namespace lorentz::billiards
