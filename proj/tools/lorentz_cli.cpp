#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentz/billiards.hpp"
#include "lorentz/freepath.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/limitdist.hpp"
#include "lorentz/sampling.hpp"
#include "lorentz/table.hpp"
#include "lorentz/verify.hpp"

namespace {

using namespace lorentz;
using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_mismatch = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::int64_t ell = 3;
    std::vector<double> eps{1e-3};
    std::string grid = "0.01:5:200";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = sampling::default_seed;
    unsigned workers = 1;
    std::string out;
    std::string json_path;
    std::string svg;
    std::string engine;
    std::string table = "hex";
    std::int64_t order = 2000;
    double omega = 0.0;
    double slope = 0.0;
    std::uint64_t cross_check = 1000;
    std::string suite;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + path);
    }
    os << text;
}

std::string with_extension(const std::string& path, const std::string& ext)
{
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        return path.substr(0, dot) + ext;
    }
    return path + ext;
}

std::string tagged(const std::string& path, const std::string& tag)
{
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        return path.substr(0, dot) + tag + path.substr(dot);
    }
    return path + tag;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json sample_json(const freepath::PathSample& s)
{
    json j;
    if (s.finite()) {
        j["outcome"] = s.outcome;
        j["hit"] = {s.hit->m, s.hit->n};
    } else {
        j["outcome"] = "inf";
        j["hit"] = nullptr;
    }
    return j;
}

double single_eps(const RunConfig& cfg)
{
    if (cfg.eps.size() != 1) {
        throw UsageError("this command takes a single --eps value");
    }
    return cfg.eps.front();
}

sampling::SweepSpec sweep_spec(const RunConfig& cfg, const LambdaGrid& grid)
{
    if (cfg.samples == 0) {
        throw UsageError("--samples must be >= 1");
    }
    if (cfg.workers == 0) {
        throw UsageError("--workers must be >= 1");
    }
    return {cfg.samples, cfg.seed, cfg.workers, 4.0 * grid.max};
}

int cmd_dist(const RunConfig& cfg)
{
    const limitdist::LimitCurve curve{limitdist::CongruenceModulus(cfg.ell), LambdaGrid::parse(cfg.grid)};
    std::ostringstream os;
    curve.write_csv(os);
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        write_file(cfg.out, os.str());
    }
    return exit_ok;
}

int cmd_freepath(const RunConfig& cfg, bool has_omega, bool has_slope)
{
    if (has_omega == has_slope) {
        throw UsageError("give exactly one of --omega or --slope");
    }
    const double eps = single_eps(cfg);
    const double lambda_max = 20.0;
    std::string engine = cfg.engine.empty() ? (has_omega ? "disc" : "farey") : cfg.engine;
    json j;
    j["engine"] = engine;
    int code = exit_ok;

    if (has_slope) {
        const freepath::LatticeConfig seg{cfg.ell, eps, freepath::Geometry::segment};
        seg.validate();
        const std::int64_t q_max = freepath::horizon_denominator(seg, lambda_max);
        if (engine == "farey") {
            j.update(sample_json(freepath::horizontal_free_path_farey(seg, cfg.slope, lambda_max)));
        } else if (engine == "brute") {
            j.update(sample_json(freepath::horizontal_free_path_brute(seg, cfg.slope, q_max)));
        } else if (engine == "both") {
            const auto a = freepath::horizontal_free_path_farey(seg, cfg.slope, lambda_max);
            const auto b = freepath::horizontal_free_path_brute(seg, cfg.slope, q_max);
            const bool match = a.outcome == b.outcome && a.hit == b.hit;
            j["farey"] = sample_json(a);
            j["brute"] = sample_json(b);
            j["match"] = match;
            code = match ? exit_ok : exit_mismatch;
        } else {
            throw UsageError("--slope works with engines farey, brute, both");
        }
    } else {
        const freepath::LatticeConfig disc{cfg.ell, eps, freepath::Geometry::disc};
        disc.validate();
        if (engine == "disc") {
            j.update(sample_json(freepath::exit_time_disc(disc, cfg.omega, lambda_max)));
        } else if (engine == "both") {
            // A disc of radius eps is met exactly when the vertical segment of
            // half-length eps / cos(omega) is, so both models share the hit point.
            if (!(cfg.omega >= 0.0 && cfg.omega < std::numbers::pi / 4.0)) {
                throw UsageError("--engine both with --omega needs omega in [0, pi/4)");
            }
            const auto a = freepath::exit_time_disc(disc, cfg.omega, lambda_max);
            const freepath::LatticeConfig seg{cfg.ell, eps / std::cos(cfg.omega), freepath::Geometry::segment};
            const auto b = freepath::horizontal_free_path_brute(
                seg, std::tan(cfg.omega), static_cast<std::int64_t>(std::ceil(lambda_max / eps)));
            const bool match = a.hit == b.hit;
            j["disc"] = sample_json(a);
            j["brute"] = sample_json(b);
            j["match"] = match;
            code = match ? exit_ok : exit_mismatch;
        } else {
            throw UsageError("--omega works with engines disc, both");
        }
    }
    std::cout << j.dump() << "\n";
    return code;
}

int cmd_sweep(const RunConfig& cfg)
{
    const LambdaGrid grid = LambdaGrid::parse(cfg.grid);
    const sampling::SweepSpec spec = sweep_spec(cfg, grid);
    if (cfg.out.empty() && cfg.eps.size() > 1) {
        throw UsageError("--out is required when sweeping several --eps values");
    }
    json summary;
    summary["ell"] = cfg.ell;
    summary["n_samples"] = cfg.samples;
    summary["seed"] = cfg.seed;
    summary["grid"] = cfg.grid;
    summary["runs"] = json::array();
    for (double eps : cfg.eps) {
        const freepath::LatticeConfig lc{cfg.ell, eps, freepath::Geometry::disc};
        lc.validate();
        const auto t0 = std::chrono::steady_clock::now();
        const DistributionTable t = freepath::empirical_P(lc, grid, spec);
        const double runtime = seconds_since(t0);
        SidecarInfo info{cfg.ell, eps, runtime, cfg.workers, cfg.grid, std::nullopt, std::nullopt};
        json run{{"epsilon", eps}, {"sup_error", t.sup_error()}, {"runtime_seconds", runtime}};
        if (cfg.out.empty()) {
            std::cout << t.to_csv();
        } else {
            char tag[64];
            std::snprintf(tag, sizeof tag, "_eps%g", eps);
            const std::string path = cfg.eps.size() == 1 ? cfg.out : tagged(cfg.out, tag);
            write_file(path, t.to_csv());
            write_file(with_extension(path, ".json"), sidecar_json(t, info));
            run["csv"] = path;
        }
        std::fprintf(stderr, "eps=%g sup_error=%.6f runtime=%.1fs\n", eps, t.sup_error(), runtime);
        summary["runs"].push_back(run);
    }
    if (!cfg.json_path.empty()) {
        write_file(cfg.json_path, summary.dump(2) + "\n");
    }
    return exit_ok;
}

int cmd_billiard(const RunConfig& cfg)
{
    const billiards::BilliardTable table{billiards::parse_shape(cfg.table), single_eps(cfg)};
    table.validate();
    const LambdaGrid grid = LambdaGrid::parse(cfg.grid);
    const sampling::SweepSpec spec = sweep_spec(cfg, grid);
    const auto t0 = std::chrono::steady_clock::now();
    const billiards::BilliardRun run = billiards::empirical_P_billiard(table, grid, spec, {}, cfg.cross_check);
    const double runtime = seconds_since(t0);
    SidecarInfo info{table.shape == billiards::Shape::hexagon ? 3 : 2,
                     table.eps,
                     runtime,
                     cfg.workers,
                     cfg.grid,
                     billiards::shape_name(table.shape),
                     run.max_engine_gap};
    const std::string csv = run.table.to_csv();
    if (cfg.out.empty()) {
        std::cout << csv;
    } else {
        write_file(cfg.out, csv);
    }
    const std::string sidecar = cfg.json_path.empty() && !cfg.out.empty() ? with_extension(cfg.out, ".json")
                                                                          : cfg.json_path;
    if (!sidecar.empty()) {
        write_file(sidecar, sidecar_json(run.table, info));
    }
    if (!cfg.svg.empty()) {
        std::ofstream os(cfg.svg);
        write_svg(os, run.table, billiards::shape_name(table.shape) + " billiard, eps = " + std::to_string(table.eps));
    }
    std::fprintf(stderr, "table=%s eps=%g sup_error=%.6f engine_gap=%.3g runtime=%.1fs\n",
                 billiards::shape_name(table.shape).c_str(), table.eps, run.table.sup_error(),
                 run.max_engine_gap, runtime);
    return run.max_engine_gap <= 1e-9 ? exit_ok : exit_mismatch;
}

int cmd_verify(const RunConfig& cfg)
{
    verify::Options opts;
    opts.order = cfg.order;
    const verify::Report report = verify::run_suite(cfg.suite, opts);
    report.print(std::cout);
    return report.passed() ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Free path statistics in congruence-constrained lattices and pocketed billiards"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto ell = [&](CLI::App* sub) {
        sub->add_option("--ell", cfg.ell, "congruence modulus")->envname("LORENTZ_ELL")->check(CLI::Range(2, 1 << 30));
    };
    auto grid = [&](CLI::App* sub) {
        sub->add_option("--grid", cfg.grid, "lambda grid min:max:count[:log]")->envname("LORENTZ_GRID");
    };
    auto eps = [&](CLI::App* sub) {
        sub->add_option("--eps", cfg.eps, "scatterer radius (comma-separated for sweep)")
            ->delimiter(',')
            ->envname("LORENTZ_EPS");
    };
    auto sampling_opts = [&](CLI::App* sub) {
        sub->add_option("--samples", cfg.samples, "number of directions")->envname("LORENTZ_SAMPLES");
        sub->add_option("--seed", cfg.seed, "sampler seed")->envname("LORENTZ_SEED");
        sub->add_option("--workers", cfg.workers, "worker threads")->envname("LORENTZ_WORKERS");
        sub->add_option("--out", cfg.out, "CSV output path")->envname("LORENTZ_OUT");
        sub->add_option("--json", cfg.json_path, "JSON output path")->envname("LORENTZ_JSON");
    };

    auto* dist = app.add_subcommand("dist", "tabulate the limiting distribution G and its density g");
    ell(dist);
    grid(dist);
    dist->add_option("--out", cfg.out, "CSV output path");

    auto* fp = app.add_subcommand("freepath", "free path for a single direction");
    ell(fp);
    eps(fp);
    auto* omega_opt = fp->add_option("--omega", cfg.omega, "direction angle in radians");
    auto* slope_opt = fp->add_option("--slope", cfg.slope, "slope in [0, 1] for the horizontal model");
    fp->add_option("--engine", cfg.engine, "farey, brute, disc or both")
        ->check(CLI::IsMember({"farey", "brute", "disc", "both"}));

    auto* sweep = app.add_subcommand("sweep", "empirical distribution of eps * tau over all directions");
    ell(sweep);
    eps(sweep);
    grid(sweep);
    sampling_opts(sweep);

    auto* bil = app.add_subcommand("billiard", "pocketed hexagon or square billiard from the centre");
    eps(bil);
    grid(bil);
    sampling_opts(bil);
    bil->add_option("--table", cfg.table, "hex or square")->check(CLI::IsMember({"hex", "square"}));
    bil->add_option("--svg", cfg.svg, "SVG plot path");
    bil->add_option("--cross-check", cfg.cross_check, "directions replayed on the reflective engine");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", cfg.suite, "identities, farey, sums, billiards or all")->required();
    ver->add_option("--Q", cfg.order, "Farey order for the sum comparisons")->check(CLI::Range(2, 10000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*dist) {
            return cmd_dist(cfg);
        }
        if (*fp) {
            return cmd_freepath(cfg, omega_opt->count() > 0, slope_opt->count() > 0);
        }
        if (*sweep) {
            return cmd_sweep(cfg);
        }
        if (*bil) {
            return cmd_billiard(cfg);
        }
        if (*ver) {
            return cmd_verify(cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_mismatch;
    }
    return exit_usage;
}
