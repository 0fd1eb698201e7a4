#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <string>
#include <tuple>

#include "lorentz/arith.hpp"
#include "lorentz/billiards.hpp"
#include "lorentz/freepath.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/limitdist.hpp"
#include "lorentz/special.hpp"
#include "lorentz/table.hpp"

namespace py = pybind11;
using namespace lorentz;

namespace {

using Hit = std::optional<std::tuple<std::int64_t, std::int64_t>>;

py::tuple sample_tuple(const freepath::PathSample& s)
{
    Hit hit;
    if (s.hit) {
        hit = std::make_tuple(s.hit->m, s.hit->n);
    }
    return py::make_tuple(s.outcome, hit);
}

py::dict table_dict(const DistributionTable& t)
{
    py::dict d;
    d["lambda"] = t.lambda;
    d["empirical"] = t.empirical;
    d["theory"] = t.theory;
    d["abs_err"] = t.abs_err;
    d["n_samples"] = t.n_samples;
    d["seed"] = t.seed;
    d["sup_error"] = t.sup_error();
    return d;
}

sampling::SweepSpec sweep_spec(std::uint64_t samples, std::uint64_t seed, unsigned workers, double lambda_max)
{
    sampling::SweepSpec spec;
    spec.n_samples = samples;
    spec.seed = seed;
    spec.workers = workers;
    spec.lambda_max = lambda_max;
    return spec;
}

freepath::Geometry geometry(const std::string& name)
{
    if (name == "disc") {
        return freepath::Geometry::disc;
    }
    if (name == "segment") {
        return freepath::Geometry::segment;
    }
    throw std::invalid_argument("geometry must be 'disc' or 'segment'");
}

}  // namespace

PYBIND11_MODULE(_lorentz, m)
{
    m.doc() = "Free path lengths in lattices with congruence-class scatterers";

    m.def("dilog", &special::dilog, py::arg("x"));
    m.def("zeta2", &special::zeta2);
    m.def("totient", &arith::totient, py::arg("n"));
    m.def("mobius", &arith::mobius, py::arg("n"));

    m.def("constant_C", &limitdist::constant_C, py::arg("ell"));
    m.def("constant_A", &limitdist::constant_A, py::arg("ell"));
    m.def("H2", &limitdist::H2, py::arg("lam"));
    m.def("H3", &limitdist::H3, py::arg("lam"));
    m.def("G", py::overload_cast<std::int64_t, double>(&limitdist::G), py::arg("ell"), py::arg("lam"));
    m.def("g", py::overload_cast<std::int64_t, double>(&limitdist::g), py::arg("ell"), py::arg("lam"));
    m.def("G_limit", &limitdist::G_limit, py::arg("lam"));

    m.def(
        "horizontal_free_path",
        [](double slope, std::int64_t ell, double eps, const std::string& engine, double lambda_max) {
            const freepath::LatticeConfig cfg{ell, eps, freepath::Geometry::segment};
            cfg.validate();
            if (engine == "farey") {
                return sample_tuple(freepath::horizontal_free_path_farey(cfg, slope, lambda_max));
            }
            if (engine == "brute") {
                return sample_tuple(freepath::horizontal_free_path_brute(
                    cfg, slope, freepath::horizon_denominator(cfg, lambda_max)));
            }
            throw std::invalid_argument("engine must be 'farey' or 'brute'");
        },
        py::arg("slope"), py::arg("ell") = 2, py::arg("eps") = 1e-3, py::arg("engine") = "farey",
        py::arg("lambda_max") = 20.0,
        "Returns (q or inf, (X, Y) or None).");

    m.def(
        "exit_time",
        [](double omega, std::int64_t ell, double eps, double lambda_max) {
            const freepath::LatticeConfig cfg{ell, eps, freepath::Geometry::disc};
            cfg.validate();
            return sample_tuple(freepath::exit_time_disc(cfg, omega, lambda_max));
        },
        py::arg("omega"), py::arg("ell") = 2, py::arg("eps") = 1e-3, py::arg("lambda_max") = 20.0,
        "Returns (tau or inf, (m, n) or None).");

    m.def(
        "empirical_P",
        [](std::int64_t ell, double eps, const std::string& grid, std::uint64_t samples, std::uint64_t seed,
           unsigned workers, const std::string& geom) {
            const freepath::LatticeConfig cfg{ell, eps, geometry(geom)};
            cfg.validate();
            const LambdaGrid g = LambdaGrid::parse(grid);
            DistributionTable t;
            {
                py::gil_scoped_release release;
                t = freepath::empirical_P(cfg, g, sweep_spec(samples, seed, workers, 4.0 * g.max));
            }
            return table_dict(t);
        },
        py::arg("ell") = 2, py::arg("eps") = 1e-3, py::arg("grid") = "0.01:5:500",
        py::arg("samples") = 100000, py::arg("seed") = sampling::default_seed, py::arg("workers") = 1,
        py::arg("geometry") = "disc");

    m.def("theory_hex", &billiards::theory_hex, py::arg("lam"));
    m.def("theory_square", &billiards::theory_square, py::arg("lam"));

    m.def(
        "billiard_exit_time",
        [](const std::string& table, double eps, double omega, const std::string& engine,
           double lambda_max) -> py::tuple {
            const billiards::BilliardTable t{billiards::parse_shape(table), eps};
            t.validate();
            if (engine == "reflective") {
                const auto tr = billiards::reflective_trace(t, omega, lambda_max);
                return py::make_tuple(tr.sample.outcome, py::int_(tr.reflections));
            }
            if (engine == "unfolded") {
                const auto s = t.shape == billiards::Shape::hexagon
                                   ? billiards::unfolded_exit_time_hex(eps, omega, lambda_max)
                                   : billiards::unfolded_exit_time_square(eps, omega, lambda_max);
                return py::make_tuple(s.outcome, py::none());
            }
            throw std::invalid_argument("engine must be 'reflective' or 'unfolded'");
        },
        py::arg("table"), py::arg("eps"), py::arg("omega"), py::arg("engine") = "unfolded",
        py::arg("lambda_max") = 20.0,
        "Returns (tau or inf, reflection count or None).");

    m.def(
        "empirical_billiard",
        [](const std::string& table, double eps, const std::string& grid, std::uint64_t samples,
           std::uint64_t seed, unsigned workers, std::uint64_t cross_check) {
            const billiards::BilliardTable t{billiards::parse_shape(table), eps};
            t.validate();
            const LambdaGrid g = LambdaGrid::parse(grid);
            billiards::BilliardRun run;
            {
                py::gil_scoped_release release;
                run = billiards::empirical_P_billiard(t, g, sweep_spec(samples, seed, workers, 4.0 * g.max), {},
                                                      cross_check);
            }
            py::dict d = table_dict(run.table);
            d["max_engine_gap"] = run.max_engine_gap;
            d["cross_checked"] = run.cross_checked;
            return d;
        },
        py::arg("table") = "hex", py::arg("eps") = 1e-3, py::arg("grid") = "0.01:5:500",
        py::arg("samples") = 100000, py::arg("seed") = sampling::default_seed, py::arg("workers") = 1,
        py::arg("cross_check") = 1000);
}
