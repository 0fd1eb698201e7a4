#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "lorentz/farey.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/sampling.hpp"
#include "lorentz/table.hpp"

namespace lorentz::freepath {

enum class Geometry {
    segment,  // vertical segments {m} x [n - eps, n + eps]
    disc,     // discs of radius eps
};

/// Scatterers at (m, n) with m != n (mod ell).
struct LatticeConfig {
    std::int64_t ell = 2;
    double eps = 1e-3;
    Geometry geometry = Geometry::disc;

    /// Q = floor(1 / eps).
    std::int64_t order() const { return static_cast<std::int64_t>(std::floor(1.0 / eps)); }
    bool eligible(std::int64_t m, std::int64_t n) const { return (m - n) % ell != 0; }
    /// Throws std::invalid_argument unless ell >= 2 and 0 < eps < 1/2.
    void validate() const;
};

struct LatticePoint {
    std::int64_t m = 0;
    std::int64_t n = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct PathSample {
    double omega = 0.0;  // angle, or slope for the horizontal model
    double outcome = std::numeric_limits<double>::infinity();
    std::optional<LatticePoint> hit;

    bool finite() const { return std::isfinite(outcome); }
};

/// Largest horizontal distance reported before a path counts as escaped.
std::int64_t horizon_denominator(const LatticeConfig& cfg, double lambda_max);

/// Scans X = 1..q_max for the first X with an eligible Y, |X slope - Y| <= eps.
PathSample horizontal_free_path_brute(const LatticeConfig& cfg, double slope, std::int64_t q_max);

/// Same quantity from the Farey bracket of the slope and its mediant chains.
/// Paths beyond lambda_max * Q are reported as escaped.
PathSample horizontal_free_path_farey(const LatticeConfig& cfg, double slope, double lambda_max);

/// Distance from the origin to the first eligible disc of radius eps in
/// direction omega; escaped beyond lambda_max / eps.
PathSample exit_time_disc(const LatticeConfig& cfg, double omega, double lambda_max);

/// Measure of {omega in arctan I : q(omega) > lambda Q} on the grid, from
/// stratified directions; theory column c_I G(ell, lambda).
DistributionTable empirical_sector_G(const LatticeConfig& cfg, farey::SlopeInterval interval,
                                     const LambdaGrid& grid, const sampling::SweepSpec& spec);

/// Fraction of directions in [0, 2 pi) with eps tau > lambda; theory column G(ell, lambda).
DistributionTable empirical_P(const LatticeConfig& cfg, const LambdaGrid& grid,
                              const sampling::SweepSpec& spec);

}  // namespace lorentz::freepath
