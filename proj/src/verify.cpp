#include "lorentz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "lorentz/arith.hpp"
#include "lorentz/billiards.hpp"
#include "lorentz/farey.hpp"
#include "lorentz/freepath.hpp"
#include "lorentz/limitdist.hpp"
#include "lorentz/quadrature.hpp"
#include "lorentz/special.hpp"

namespace lorentz::verify {

namespace {

using std::numbers::pi;

void add(Report& r, std::string name, double deviation, double tol)
{
    r.checks.push_back({std::move(name), deviation <= tol, deviation, tol});
}

void identities(Report& r)
{
    const double ln2 = std::numbers::ln2;
    add(r, "dilog(1/2)", std::abs(special::dilog(0.5) - (pi * pi / 6.0 - ln2 * ln2) / 2.0), 1e-14);
    add(r, "dilog(1)", std::abs(special::dilog(1.0) - pi * pi / 6.0), 1e-15);

    add(r, "C(2) = 4/pi^2", std::abs(limitdist::constant_C(2) - 4.0 / (pi * pi)), 1e-13);
    add(r, "C(3) = 9/(2 pi^2)", std::abs(limitdist::constant_C(3) - 9.0 / (2.0 * pi * pi)), 1e-13);
    add(r, "A(2) = 2/pi^2", std::abs(limitdist::constant_A(2) - 2.0 / (pi * pi)), 1e-13);
    add(r, "A(3) = 3/pi^2", std::abs(limitdist::constant_A(3) - 3.0 / (pi * pi)), 1e-13);

    double g_jump = 0.0, g1 = 0.0, dens_jump = 0.0;
    const double h = 1e-8;
    for (std::int64_t ell = 2; ell <= 12; ++ell) {
        const limitdist::CongruenceModulus m(ell);
        for (double b : {0.5, 1.0}) {
            g_jump = std::max(g_jump, std::abs(limitdist::G(m, b - h) - limitdist::G(m, b + h)) / h);
            dens_jump = std::max(dens_jump, std::abs(limitdist::g(m, b - 1e-11) - limitdist::g(m, b + 1e-11)));
        }
        g1 = std::max(g1, std::abs(limitdist::G(m, 1.0) - m.sink_weight() * (special::zeta2() - 1.0)));
    }
    add(r, "G continuous at 1/2 and 1 (jump / h)", g_jump, 10.0);
    add(r, "G(1) = (2C/ell)(zeta(2) - 1)", g1, 1e-12);
    add(r, "g continuous at 1/2 and 1", dens_jump, 1e-9);

    double fd = 0.0;
    for (int i = 0; i < 300; ++i) {
        double lambda = 0.01 + i * (4.99 / 299.0);
        if (std::abs(lambda - 0.5) < 1e-4 || std::abs(lambda - 1.0) < 1e-4) {
            lambda += 2e-4;
        }
        const double dh = 1e-6;
        const double diff = (limitdist::G(3, lambda - dh) - limitdist::G(3, lambda + dh)) / (2.0 * dh);
        fd = std::max(fd, std::abs(diff - limitdist::g(3, lambda)));
    }
    add(r, "g = -dG/dlambda (finite differences)", fd, 1e-6);

    const limitdist::CongruenceModulus m3(3);
    auto dens = [&](double x) { return limitdist::g(m3, std::max(x, 1e-300)); };
    const double big = 1e4;
    double mass = quad::integrate(dens, 0.0, 0.5, 1e-12) + quad::integrate(dens, 0.5, 1.0, 1e-12) +
                  quad::integrate(dens, 1.0, 2.0, 1e-12) +
                  quad::integrate([&](double u) { return dens(std::exp(u)) * std::exp(u); },
                                  std::log(2.0), std::log(big), 1e-12);
    mass += limitdist::G(m3, big);
    add(r, "total mass of g", std::abs(mass - 1.0), 1e-4);

    double bracket = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double lambda = i / 42.0;
        bracket = std::max(bracket, std::abs(limitdist::H1_bracket_quadrature(lambda) + lambda));
    }
    add(r, "H1 bracket = -lambda", bracket, 1e-8);

    double assembly = 0.0;
    for (std::int64_t ell : {2, 3, 5, 12}) {
        const limitdist::CongruenceModulus m(ell);
        for (int i = 1; i <= 100; ++i) {
            const double lambda = i / 100.0;
            const double lhs = m.A() * limitdist::G1_partial(lambda) +
                               m.sink_weight() * (special::zeta2() - lambda);
            assembly = std::max(assembly, std::abs(lhs - limitdist::G(m, lambda)));
        }
    }
    add(r, "A G1 + (2C/ell)(zeta(2) - lambda) = G", assembly, 1e-9);

    const double k_frozen = 60.0;
    double worst = 0.0;
    for (std::int64_t ell : {2, 3, 6}) {
        for (std::int64_t n : {1000, 10000}) {
            const double nd = static_cast<double>(n);
            const auto v = arith::SummandFunction::estimate([nd](double x) { return 1.0 - x / nd; }, nd);
            const double a = std::abs(arith::coprime_totient_sum(ell, n, v).residual);
            const double b = std::abs(arith::scaled_totient_sum(ell, n, v).residual);
            worst = std::max(worst, std::max(a, b) / std::log(nd));
        }
    }
    add(r, "totient sum residual / ln N", worst, k_frozen);
}

void farey_suite(Report& r)
{
    double structure = 0.0;
    for (std::int64_t order = 1; order <= 300; ++order) {
        farey::for_each_pair(order, [&](const farey::ReducedFraction& l, const farey::ReducedFraction& rr) {
            const farey::FareyPair p{l, rr, order};
            bool ok = p.satisfies_invariants();
            for (std::int64_t ell = 2; ell <= 6 && ok; ++ell) {
                ok = !(farey::in_congruence_class(l, ell) && farey::in_congruence_class(rr, ell));
            }
            if (!ok) {
                structure += 1.0;
            }
        });
    }
    add(r, "consecutive pairs, Q <= 300 (violations)", structure, 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::int64_t order = 10000;
    const auto all = farey::enumerate(order);
    double bracket_bad = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = unit(rng);
        const auto it = std::upper_bound(all.begin(), all.end(), x, [](double v, const farey::ReducedFraction& f) {
            return farey::compare_slope(v, f.a, f.q) < 0;
        });
        const farey::FareyPair p = farey::bracket(x, order);
        if (!(p.left == *(it - 1) && p.right == *it)) {
            bracket_bad += 1.0;
        }
    }
    add(r, "bracket vs enumeration, Q = 10^4 (mismatches)", bracket_bad, 0.0);

    double mismatches = 0.0;
    for (std::int64_t ell : {2, 3, 5}) {
        for (double eps : {1e-2, 1e-3}) {
            const freepath::LatticeConfig cfg{ell, eps, freepath::Geometry::segment};
            const double lambda_max = 4.0;
            const std::int64_t q_max = freepath::horizon_denominator(cfg, lambda_max);
            for (int i = 0; i < 2000; ++i) {
                const double x = unit(rng);
                const auto fast = freepath::horizontal_free_path_farey(cfg, x, lambda_max);
                const auto slow = freepath::horizontal_free_path_brute(cfg, x, q_max);
                if (fast.outcome != slow.outcome || fast.hit != slow.hit) {
                    mismatches += 1.0;
                }
            }
        }
    }
    add(r, "Farey free path vs brute scan (mismatches)", mismatches, 0.0);
}

void sums_suite(Report& r, const Options& opts)
{
    const farey::SlopeInterval whole{0.0, 1.0};
    auto row = [&](const char* name, const farey::SumRecord& rec, double lambda, std::int64_t ell) {
        r.sums.push_back({name, opts.order, lambda, ell, rec.enumerated, rec.predicted, rec.relative_error()});
        char label[96];
        std::snprintf(label, sizeof label, "%s(lambda=%g, ell=%lld)", name, lambda,
                      static_cast<long long>(ell));
        add(r, label, rec.relative_error(), 0.05);
    };
    for (std::int64_t ell : {2, 3}) {
        for (double lambda : {0.4, 0.6, 0.8}) {
            row("A", farey::sum_A(whole, opts.order, lambda, ell), lambda, ell);
            row("B", farey::sum_B(whole, opts.order, lambda, ell), lambda, ell);
            row("C", farey::sum_C(whole, opts.order, lambda, ell), lambda, ell);
        }
        for (double lambda : {1.2, 1.5, 2.0}) {
            row("sink", farey::sum_sink(whole, opts.order, lambda, ell), lambda, ell);
        }
    }
}

void billiards_suite(Report& r)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    const double eps = 1e-3, lambda_max = 10.0;
    for (auto shape : {billiards::Shape::hexagon, billiards::Shape::square}) {
        double gap = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double omega = angle(rng);
            const auto a = shape == billiards::Shape::hexagon
                               ? billiards::unfolded_exit_time_hex(eps, omega, lambda_max)
                               : billiards::unfolded_exit_time_square(eps, omega, lambda_max);
            const auto b = billiards::reflective_exit_time({shape, eps}, omega, lambda_max);
            if (a.finite() != b.finite()) {
                gap = std::numeric_limits<double>::infinity();
            } else if (a.finite()) {
                gap = std::max(gap, std::abs(a.outcome - b.outcome));
            }
        }
        add(r, "fold/unfold agreement, " + billiards::shape_name(shape), gap, 1e-9);
    }

    double lattice = 0.0;
    for (std::int64_t q = -50; q <= 50; ++q) {
        for (std::int64_t a = -50; a <= 50; ++a) {
            const geom::Vec2 v{static_cast<double>(q) + 0.5 * static_cast<double>(a),
                               std::numbers::sqrt3 / 2.0 * static_cast<double>(a)};
            const geom::Vec2 w = billiards::transform_T(v);
            lattice = std::max(lattice, std::hypot(w.x - static_cast<double>(q), w.y - static_cast<double>(a)));
        }
    }
    add(r, "T maps honeycomb vertices to integer points", lattice, 1e-12);

    double phi_round = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0 / std::numbers::sqrt3;
        phi_round = std::max(phi_round, std::abs(billiards::phi(billiards::phi_inv(x)) - x));
    }
    add(r, "phi(phi_inv(x)) = x", phi_round, 1e-15);
    add(r, "sine rule at omega = 0", std::abs(billiards::sine_rule_path(7.0, 0.0) - 7.0), 1e-14);
}

}  // namespace

bool Report::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::print(std::ostream& os) const
{
    char buf[256];
    for (const Check& c : checks) {
        std::snprintf(buf, sizeof buf, "%s  %-48s %.3e (tol %.1e)\n", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.tolerance);
        os << buf;
    }
    if (!sums.empty()) {
        os << "sum,Q,lambda,ell,enumerated,predicted,rel_err\n";
        for (const SumRow& s : sums) {
            std::snprintf(buf, sizeof buf, "%s,%lld,%g,%lld,%.10g,%.10g,%.4e\n", s.sum.c_str(),
                          static_cast<long long>(s.order), s.lambda, static_cast<long long>(s.ell),
                          s.enumerated, s.predicted, s.rel_err);
            os << buf;
        }
    }
}

std::vector<std::string> suite_names() { return {"identities", "farey", "sums", "billiards", "all"}; }

Report run_suite(const std::string& name, const Options& opts)
{
    Report r;
    const bool all = name == "all";
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    if (all || name == "identities") {
        identities(r);
    }
    if (all || name == "farey") {
        farey_suite(r);
    }
    if (all || name == "sums") {
        sums_suite(r, opts);
    }
    if (all || name == "billiards") {
        billiards_suite(r);
    }
    return r;
}

}  // namespace lorentz::verify
