#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lorentz::verify {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured deviation
    double tolerance = 0.0;
};

struct SumRow {
    std::string sum;
    std::int64_t order = 0;
    double lambda = 0.0;
    std::int64_t ell = 0;
    double enumerated = 0.0;
    double predicted = 0.0;
    double rel_err = 0.0;
};

struct Report {
    std::vector<Check> checks;
    std::vector<SumRow> sums;

    bool passed() const;
    /// One `PASS|FAIL  name  value (tol)` line per check, then the sum table
    /// `sum,Q,lambda,ell,enumerated,predicted,rel_err` when present.
    void print(std::ostream& os) const;
};

struct Options {
    std::int64_t order = 2000;  // Farey order for the sum comparisons
};

/// identities, farey, sums, billiards, all. Throws std::invalid_argument on an
/// unknown suite name.
Report run_suite(const std::string& name, const Options& opts = {});

std::vector<std::string> suite_names();

}  // namespace lorentz::verify
