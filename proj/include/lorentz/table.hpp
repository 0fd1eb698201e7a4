#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lorentz {

/// Empirical survival function against a theory curve on a lambda grid.
struct DistributionTable {
    std::vector<double> lambda;
    std::vector<double> empirical;
    std::vector<double> theory;
    std::vector<double> abs_err;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return lambda.size(); }
    double sup_error() const;

    /// Header `lambda,empirical,theory,abs_err`; every value with 17 significant
    /// digits so that read_csv reproduces the table exactly.
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
    /// Rows only; n_samples and seed live in the sidecar.
    static DistributionTable read_csv(std::istream& is);
};

/// empirical(lambda) = scale * #{v > lambda} / values.size(); infinite values
/// exceed every lambda. `values` is sorted in place.
DistributionTable survival_table(std::vector<double>& values, const std::vector<double>& grid,
                                 double scale, const std::function<double(double)>& theory);

struct SidecarInfo {
    std::int64_t ell = 0;
    double epsilon = 0.0;
    double runtime_seconds = 0.0;
    unsigned workers = 1;
    std::string grid;
    std::optional<std::string> table;
    std::optional<double> max_engine_gap;
};

/// JSON object {ell, epsilon, n_samples, seed, sup_error, runtime_seconds, ...}.
std::string sidecar_json(const DistributionTable& t, const SidecarInfo& info);

/// Self-contained 800x500 SVG: empirical step curve over the theory curve.
void write_svg(std::ostream& os, const DistributionTable& t, const std::string& title);

}  // namespace lorentz
