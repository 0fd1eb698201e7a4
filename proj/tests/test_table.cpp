#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lorentz/freepath.hpp"
#include "lorentz/sampling.hpp"
#include "lorentz/table.hpp"

namespace sm = lorentz::sampling;
using lorentz::DistributionTable;

TEST_CASE("uniform stream is a pure function of seed and index")
{
    CHECK(sm::uniform(1, 5) == sm::uniform(1, 5));
    CHECK(sm::uniform(1, 5) != sm::uniform(2, 5));
    CHECK(sm::uniform(1, 5) != sm::uniform(1, 6));
    double sum = 0.0;
    std::set<double> seen;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = sm::uniform(7, i);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        seen.insert(u);
    }
    CHECK(std::abs(sum / 100000.0 - 0.5) <= 0.005);
    CHECK(seen.size() == 100000);
}

TEST_CASE("stratified angles")
{
    const sm::StratifiedAngles s{0.0, 2.0 * std::numbers::pi, 1000, 3};
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double w = s(i);
        const double cell = s.width() / 1000.0;
        CHECK(w >= i * cell - 1e-12);
        CHECK(w < (i + 1) * cell + 1e-12);
    }
    CHECK(s(17) == sm::StratifiedAngles{0.0, 2.0 * std::numbers::pi, 1000, 3}(17));
}

TEST_CASE("parallel_map does not depend on the worker count")
{
    auto fn = [](std::uint64_t i) { return std::sin(static_cast<double>(i)) + sm::uniform(9, i); };
    const auto one = sm::parallel_map(10007, 1, fn);
    for (unsigned w : {2u, 3u, 8u, 64u}) {
        CHECK(sm::parallel_map(10007, w, fn) == one);
    }
    CHECK(sm::parallel_map(0, 4, fn).empty());
    CHECK(sm::parallel_map(3, 16, fn).size() == 3);
    CHECK_THROWS_AS(sm::parallel_map(10, 0, fn), std::invalid_argument);
    CHECK_THROWS_AS(sm::parallel_map(100, 4,
                                     [](std::uint64_t i) -> double {
                                         if (i == 77) {
                                             throw std::runtime_error("boom");
                                         }
                                         return 0.0;
                                     }),
                    std::runtime_error);
}

TEST_CASE("survival table counts strict exceedances")
{
    std::vector<double> v{0.5, 0.1, std::numeric_limits<double>::infinity(), 0.3, 0.3};
    const auto t = lorentz::survival_table(v, {0.0, 0.3, 0.4, 10.0}, 1.0, [](double) { return 0.5; });
    REQUIRE(t.size() == 4);
    CHECK(t.empirical[0] == 1.0);
    CHECK(t.empirical[1] == doctest::Approx(0.4));
    CHECK(t.empirical[2] == doctest::Approx(0.4));
    CHECK(t.empirical[3] == doctest::Approx(0.2));
    CHECK(t.abs_err[0] == doctest::Approx(0.5));
    CHECK(t.sup_error() == doctest::Approx(0.5));
    CHECK(t.n_samples == 5);

    std::vector<double> w{1.0, 2.0};
    const auto s = lorentz::survival_table(w, {1.5}, 0.25, [](double) { return 0.0; });
    CHECK(s.empirical[0] == doctest::Approx(0.125));
}

TEST_CASE("CSV round trip is exact")
{
    lorentz::sampling::SweepSpec spec;
    spec.n_samples = 3000;
    spec.lambda_max = 6.0;
    const lorentz::freepath::LatticeConfig cfg{2, 1e-2, lorentz::freepath::Geometry::disc};
    const auto t = lorentz::freepath::empirical_P(cfg, lorentz::LambdaGrid::parse("0.01:3:37"), spec);
    const std::string csv = t.to_csv();
    CHECK(csv.rfind("lambda,empirical,theory,abs_err\n", 0) == 0);
    std::istringstream is(csv);
    const auto back = DistributionTable::read_csv(is);
    CHECK(back.lambda == t.lambda);
    CHECK(back.empirical == t.empirical);
    CHECK(back.theory == t.theory);
    CHECK(back.abs_err == t.abs_err);
    CHECK(back.to_csv() == csv);

    std::istringstream bad("lambda,empirical,theory,abs_err\n1,2,x,4\n");
    CHECK_THROWS(DistributionTable::read_csv(bad));
    std::istringstream wrong_header("a,b\n");
    CHECK_THROWS(DistributionTable::read_csv(wrong_header));
}

TEST_CASE("sidecar JSON")
{
    DistributionTable t;
    t.lambda = {0.5, 1.0};
    t.empirical = {0.7, 0.2};
    t.theory = {0.69, 0.25};
    t.abs_err = {0.01, 0.05};
    t.n_samples = 1000;
    t.seed = 42;
    lorentz::SidecarInfo info;
    info.ell = 3;
    info.epsilon = 1e-3;
    info.workers = 2;
    info.grid = "0.5:1:2";
    const auto j = nlohmann::json::parse(lorentz::sidecar_json(t, info));
    CHECK(j["ell"] == 3);
    CHECK(j["epsilon"].get<double>() == 1e-3);
    CHECK(j["n_samples"] == 1000);
    CHECK(j["seed"] == 42);
    CHECK(j["sup_error"].get<double>() == doctest::Approx(0.05));
    CHECK(j["grid"] == "0.5:1:2");
    CHECK_FALSE(j.contains("table"));

    info.table = "hex";
    info.max_engine_gap = 1e-12;
    const auto k = nlohmann::json::parse(lorentz::sidecar_json(t, info));
    CHECK(k["table"] == "hex");
    CHECK(k["max_engine_gap"].get<double>() == 1e-12);
}

TEST_CASE("SVG plot")
{
    DistributionTable t;
    t.lambda = {0.1, 0.5, 1.0, 2.0};
    t.empirical = {0.9, 0.6, 0.2, 0.05};
    t.theory = {0.92, 0.58, 0.21, 0.04};
    t.abs_err = {0.02, 0.02, 0.01, 0.01};
    std::ostringstream os;
    lorentz::write_svg(os, t, "hex <eps> & friends");
    const std::string svg = os.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("width=\"800\"") != std::string::npos);
    CHECK(svg.find("height=\"500\"") != std::string::npos);
    CHECK(svg.find("hex &lt;eps&gt; &amp; friends") != std::string::npos);
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) {
        ++lines;
    }
    CHECK(lines == 2);
    CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));
}
