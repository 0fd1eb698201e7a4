#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/freepath.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/lattice_ray.hpp"
#include "lorentz/sampling.hpp"
#include "lorentz/table.hpp"

namespace lorentz::billiards {

enum class Shape {
    hexagon,  // circumradius 1, centre at the origin, a vertex at (1, 0)
    square,   // [0, 1]^2
};

Shape parse_shape(const std::string& name);
std::string shape_name(Shape s);

/// Table with circular pockets of radius eps at every vertex; the ball starts
/// at the centroid.
struct BilliardTable {
    Shape shape = Shape::hexagon;
    double eps = 1e-3;

    /// Throws std::invalid_argument unless 0 < eps < 1/4.
    void validate() const;
    geom::Vec2 start() const;
    std::vector<geom::Vec2> vertices() const;
};

struct ReflectiveTrace {
    freepath::PathSample sample;  // hit is the pocket's lattice index in the unfolded plane
    std::uint64_t reflections = 0;
    double length = 0.0;          // distance travelled before the pocket or the horizon
};

/// Specular reflection off the cushions until a pocket is reached; escaped
/// beyond lambda_max / eps.
ReflectiveTrace reflective_trace(const BilliardTable& table, double omega, double lambda_max);
freepath::PathSample reflective_exit_time(const BilliardTable& table, double omega,
                                          double lambda_max);

/// Straight line from the origin to the first disc at m (1, 0) + n (1/2, sqrt 3 / 2),
/// m != n (mod 3).
freepath::PathSample unfolded_exit_time_hex(double eps, double omega, double lambda_max);

/// Straight line from (1/2, 1/2) to the first disc at an integer point.
freepath::PathSample unfolded_exit_time_square(double eps, double omega, double lambda_max);

/// Square exit time through the equivalent lattice Z^2 with m != n (mod 2):
/// rotating the corner set about the centre by pi/4 and scaling by sqrt 2 maps
/// it onto that lattice, so tau(omega, eps) = tau_2(omega + pi/4, eps sqrt 2) / sqrt 2.
freepath::PathSample square_via_congruence_lattice(double eps, double omega, double lambda_max);

/// (x, y) -> (x - y / sqrt 3, 2 y / sqrt 3): honeycomb vertices to integer points.
geom::Vec2 transform_T(geom::Vec2 p);
geom::Vec2 transform_T_inv(geom::Vec2 p);
/// mu sqrt 3 / (2 + mu) on [0, 1].
double phi(double mu);
/// 2 x / (sqrt 3 - x) on [0, 1 / sqrt 3].
double phi_inv(double x);

/// (sqrt 3 / 2) q / cos(pi / 6 + omega) for omega in [0, pi / 6].
double sine_rule_path(double q, double omega);

/// G_3(2 lambda / sqrt 3).
double theory_hex(double lambda);
/// G_2(lambda / sqrt 2).
double theory_square(double lambda);

struct AngleRange {
    double lo = 0.0;
    double hi = 6.283185307179586;
};

struct BilliardRun {
    DistributionTable table;
    /// Largest |tau_unfolded - tau_reflective| over the cross-checked subsample.
    double max_engine_gap = 0.0;
    std::uint64_t cross_checked = 0;
};

/// Empirical survival of eps tau over stratified directions in `range` from the
/// unfolded engine, with an evenly spaced subsample replayed on the reflective
/// engine. Theory column theory_hex or theory_square.
BilliardRun empirical_P_billiard(const BilliardTable& table, const LambdaGrid& grid,
                                 const sampling::SweepSpec& spec, AngleRange range = {},
                                 std::uint64_t cross_check = 1000);

BilliardRun empirical_P_hex(double eps, const LambdaGrid& grid, const sampling::SweepSpec& spec,
                            std::uint64_t cross_check = 1000);
BilliardRun empirical_P_square(double eps, const LambdaGrid& grid, const sampling::SweepSpec& spec,
                               std::uint64_t cross_check = 1000);

}  // namespace lorentz::billiards
