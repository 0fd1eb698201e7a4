#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lorentz/grid.hpp"

namespace lorentz::limitdist {

/// Congruence modulus ell >= 2 with its cached constants C(ell) and A(ell).
class CongruenceModulus {
public:
    explicit CongruenceModulus(std::int64_t ell);

    std::int64_t ell() const { return ell_; }
    double C() const { return c_; }
    double A() const { return a_; }
    /// 2 C(ell) / ell, the weight of the sink contributions.
    double sink_weight() const { return 2.0 * c_ / static_cast<double>(ell_); }

private:
    std::int64_t ell_;
    double c_;
    double a_;
};

/// C(ell) = phi(ell) / (zeta(2) ell) * prod_{p | ell} (1 - p^-2)^-1.
double constant_C(std::int64_t ell);
/// A(ell) = 1/zeta(2) - 2 C(ell) / ell.
double constant_A(std::int64_t ell);

/// Bulk correction on [1/2, 1].
double H2(double lambda);
/// Tail profile on [1, inf); equals int_0^1 (1-u)/u ln(lambda/(lambda-u)) du.
double H3(double lambda);

/// Limiting survival function of the rescaled free path.
double G(const CongruenceModulus& m, double lambda);
double G(std::int64_t ell, double lambda);

/// Density -dG/dlambda. At the seams 1/2 and 1 the left branch is used; both
/// one-sided limits agree there.
double g(const CongruenceModulus& m, double lambda);
double g(std::int64_t ell, double lambda);

double I1(double lambda);
double I2(double lambda);

/// Partial curve I1 + 2 I2 on (0, 1), zero on [1, inf).
double G1_partial(double lambda);

/// The ell -> infinity curve, supported on (0, 1].
double G_limit(double lambda);

/// The bracket lambda - zeta(2) + ln(l) ln(1-l) + int_l^{1-l} (1/u) ln(1/(1-u))
/// + 2 int_{1-l}^1 ((1-u)/u) ln(l/(1-u)), evaluated by quadrature on (0, 1/2].
/// Collapses to -lambda.
double H1_bracket_quadrature(double lambda);

struct CurveRow {
    double lambda;
    double G;
    double g;
};

/// Tabulation of G and g for one modulus over a lambda grid.
struct LimitCurve {
    CongruenceModulus modulus;
    LambdaGrid grid;

    std::vector<CurveRow> rows() const;
    /// CSV with header `lambda,G,g`, 17 significant digits.
    void write_csv(std::ostream& os) const;
};

}  // namespace lorentz::limitdist
