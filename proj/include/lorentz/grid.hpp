#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lorentz {

/// Evaluation grid for lambda, written as `min:max:count[:log]`.
struct LambdaGrid {
    double min = 0.01;
    double max = 5.0;
    int count = 200;
    bool log_spaced = false;

    /// Throws std::invalid_argument on a malformed or degenerate spec.
    static LambdaGrid parse(std::string_view spec);

    void validate() const;
    std::vector<double> values() const;
    std::string to_string() const;
};

}  // namespace lorentz
