#include "lorentz/grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lorentz {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view s)
{
    // std::from_chars for double is unavailable on older libstdc++.
    std::string tmp(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tmp, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid: bad number '" + tmp + "'");
    }
    if (used != tmp.size()) {
        throw std::invalid_argument("grid: bad number '" + tmp + "'");
    }
    return v;
}

}  // namespace

LambdaGrid LambdaGrid::parse(std::string_view spec)
{
    const auto parts = split(spec, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw std::invalid_argument("grid: expected min:max:count[:log]");
    }
    LambdaGrid g;
    g.min = parse_double(parts[0]);
    g.max = parse_double(parts[1]);
    int count = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size()) {
        throw std::invalid_argument("grid: bad count");
    }
    g.count = count;
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            g.log_spaced = true;
        } else if (parts[3] != "lin" && parts[3] != "linear") {
            throw std::invalid_argument("grid: spacing must be 'log' or 'lin'");
        }
    }
    g.validate();
    return g;
}

void LambdaGrid::validate() const
{
    if (count < 2) {
        throw std::invalid_argument("grid: count must be >= 2");
    }
    if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) {
        throw std::invalid_argument("grid: need 0 < min < max");
    }
}

std::vector<double> LambdaGrid::values() const
{
    validate();
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out[i] = log_spaced ? min * std::pow(max / min, t) : min + t * (max - min);
    }
    out.back() = max;
    return out;
}

std::string LambdaGrid::to_string() const
{
    std::string s = std::to_string(min) + ":" + std::to_string(max) + ":" + std::to_string(count);
    if (log_spaced) {
        s += ":log";
    }
    return s;
}

}  // namespace lorentz
