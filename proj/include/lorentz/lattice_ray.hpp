#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace lorentz::geom {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Lattice points origin + m e1 + n e2.
struct LatticeFrame {
    Vec2 e1{1.0, 0.0};
    Vec2 e2{0.0, 1.0};
    Vec2 origin{0.0, 0.0};

    Vec2 point(std::int64_t m, std::int64_t n) const
    {
        return {origin.x + static_cast<double>(m) * e1.x + static_cast<double>(n) * e2.x,
                origin.y + static_cast<double>(m) * e1.y + static_cast<double>(n) * e2.y};
    }

    /// Coordinates of p in the (e1, e2) basis relative to the origin.
    Vec2 coordinates(Vec2 p) const
    {
        const double det = e1.x * e2.y - e2.x * e1.y;
        const Vec2 r = p - origin;
        return {(e2.y * r.x - e2.x * r.y) / det, (-e1.y * r.x + e1.x * r.y) / det};
    }
};

struct DiscHit {
    double t = std::numeric_limits<double>::infinity();
    std::int64_t m = 0;
    std::int64_t n = 0;
};

/// First disc of radius r centred at an eligible lattice point met by the ray
/// start + t dir (dir a unit vector), with t <= max_t. Tangency counts as a hit.
///
/// The ray is marched through the integer columns of its image in lattice
/// coordinates (rows when it is steeper there). Only lattice points whose
/// image lies within the transported radius of the image ray are tested.
template <class Eligible>
std::optional<DiscHit> first_disc_hit(const LatticeFrame& frame, Vec2 start, Vec2 dir, double r,
                                      double max_t, Eligible&& eligible)
{
    const double det = frame.e1.x * frame.e2.y - frame.e2.x * frame.e1.y;
    const double t00 = frame.e2.y / det, t01 = -frame.e2.x / det;
    const double t10 = -frame.e1.y / det, t11 = frame.e1.x / det;
    const double norm_t = std::sqrt(t00 * t00 + t01 * t01 + t10 * t10 + t11 * t11);

    const Vec2 s = frame.coordinates(start);
    const Vec2 d{t00 * dir.x + t01 * dir.y, t10 * dir.x + t11 * dir.y};

    const bool by_m = std::abs(d.x) >= std::abs(d.y);
    const double s_major = by_m ? s.x : s.y;
    const double s_minor = by_m ? s.y : s.x;
    const double d_major = by_m ? d.x : d.y;
    const double d_minor = by_m ? d.y : d.x;
    const double speed = std::abs(d_major);
    const double step = d_major > 0.0 ? 1.0 : -1.0;

    const double reach = norm_t * r;
    const double slack = reach * std::hypot(d.x, d.y) / speed + 1e-9;
    const double r2 = r * r;

    DiscHit best;
    double i = step > 0.0 ? std::floor(s_major - reach) : std::ceil(s_major + reach);
    for (;; i += step) {
        const double ahead = (i - s_major) * step;
        const double lower = (ahead - reach) / speed - r;
        if (lower > best.t || lower > max_t) {
            break;
        }
        const double minor = s_minor + (i - s_major) / d_major * d_minor;
        const double n_lo = std::ceil(minor - slack);
        const double n_hi = std::floor(minor + slack);
        for (double n = n_lo; n <= n_hi; n += 1.0) {
            const auto mi = static_cast<std::int64_t>(by_m ? i : n);
            const auto ni = static_cast<std::int64_t>(by_m ? n : i);
            const Vec2 rel = frame.point(mi, ni) - start;
            const double perp = cross(rel, dir);
            if (std::abs(perp) > r) {
                continue;
            }
            const double along = dot(rel, dir);
            if (along <= 0.0) {
                continue;
            }
            const double t = along - std::sqrt(r2 - perp * perp);
            if (t < best.t && eligible(mi, ni)) {
                best = {t, mi, ni};
            }
        }
    }
    if (best.t <= max_t) {
        return best;
    }
    return std::nullopt;
}

}  // namespace lorentz::geom
