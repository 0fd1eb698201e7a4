#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace lorentz::sampling {

inline constexpr std::uint64_t default_seed = 20240917;

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Uniform double in [0, 1) determined only by (seed, index).
double uniform(std::uint64_t seed, std::uint64_t index);

/// n equal strata of [lo, hi) with one jittered point each.
struct StratifiedAngles {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t n = 1;
    std::uint64_t seed = default_seed;

    double operator()(std::uint64_t i) const;
    double width() const { return hi - lo; }
};

struct SweepSpec {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = default_seed;
    unsigned workers = 1;
    /// Paths longer than lambda_max / eps are reported as escaped.
    double lambda_max = 20.0;
};

/// out[i] = fn(i) for i < n, split into contiguous blocks across workers.
/// The result does not depend on the worker count.
std::vector<double> parallel_map(std::uint64_t n, unsigned workers,
                                 const std::function<double(std::uint64_t)>& fn);

}  // namespace lorentz::sampling
