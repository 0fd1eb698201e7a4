#include "lorentz/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lorentz {

namespace {

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

double DistributionTable::sup_error() const
{
    double worst = 0.0;
    for (double e : abs_err) {
        worst = std::max(worst, e);
    }
    return worst;
}

void DistributionTable::write_csv(std::ostream& os) const
{
    os << "lambda,empirical,theory,abs_err\n";
    char buf[160];
    for (std::size_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", lambda[i], empirical[i],
                      theory[i], abs_err[i]);
        os << buf;
    }
}

std::string DistributionTable::to_csv() const
{
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

DistributionTable DistributionTable::read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "lambda,empirical,theory,abs_err") {
        throw std::runtime_error("distribution CSV: unexpected header");
    }
    DistributionTable t;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        double v[4];
        const char* p = line.c_str();
        for (int k = 0; k < 4; ++k) {
            char* end = nullptr;
            v[k] = std::strtod(p, &end);
            if (end == p || (k < 3 && *end != ',') || (k == 3 && *end != '\0')) {
                throw std::runtime_error("distribution CSV: malformed row '" + line + "'");
            }
            p = end + 1;
        }
        t.lambda.push_back(v[0]);
        t.empirical.push_back(v[1]);
        t.theory.push_back(v[2]);
        t.abs_err.push_back(v[3]);
    }
    return t;
}

DistributionTable survival_table(std::vector<double>& values, const std::vector<double>& grid,
                                 double scale, const std::function<double(double)>& theory)
{
    if (values.empty()) {
        throw std::invalid_argument("survival_table: no samples");
    }
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    DistributionTable t;
    t.n_samples = values.size();
    for (double lambda : grid) {
        const auto above = values.end() - std::upper_bound(values.begin(), values.end(), lambda);
        const double emp = scale * static_cast<double>(above) / n;
        const double th = theory(lambda);
        t.lambda.push_back(lambda);
        t.empirical.push_back(emp);
        t.theory.push_back(th);
        t.abs_err.push_back(std::abs(emp - th));
    }
    return t;
}

std::string sidecar_json(const DistributionTable& t, const SidecarInfo& info)
{
    nlohmann::ordered_json j;
    j["ell"] = info.ell;
    j["epsilon"] = info.epsilon;
    j["n_samples"] = t.n_samples;
    j["seed"] = t.seed;
    j["sup_error"] = t.sup_error();
    j["runtime_seconds"] = info.runtime_seconds;
    j["workers"] = info.workers;
    j["grid"] = info.grid;
    if (info.table) {
        j["table"] = *info.table;
    }
    if (info.max_engine_gap) {
        j["max_engine_gap"] = *info.max_engine_gap;
    }
    return j.dump(2) + "\n";
}

void write_svg(std::ostream& os, const DistributionTable& t, const std::string& title)
{
    constexpr double width = 800, height = 500;
    constexpr double left = 60, right = 20, top = 40, bottom = 50;
    if (t.size() < 2) {
        throw std::invalid_argument("write_svg: need at least two rows");
    }
    const double x0 = t.lambda.front(), x1 = t.lambda.back();
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
    auto py = [&](double y) { return top + (1.0 - y) * (height - top - bottom); };

    char buf[128];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
          "viewBox=\"0 0 800 500\">\n";
    os << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << xml_escape(title) << "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  left, top, width - left - right, height - top - bottom);
    os << buf;
    for (int k = 0; k <= 4; ++k) {
        const double y = k / 4.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                      "font-size=\"12\">%.2f</text>\n",
                      left - 6, py(y) + 4, y);
        os << buf;
        const double x = x0 + k / 4.0 * (x1 - x0);
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\" font-size=\"12\">%.3g</text>\n",
                      px(x), height - bottom + 18, x);
        os << buf;
    }
    os << "<text x=\"400\" y=\"492\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\">lambda</text>\n";

    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t.lambda[i]), py(t.theory[i]));
        os << buf;
    }
    os << "\"/>\n";

    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t.lambda[i]), py(t.empirical[i]));
        os << buf;
        if (i + 1 < t.size()) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t.lambda[i + 1]), py(t.empirical[i]));
            os << buf;
        }
    }
    os << "\"/>\n";

    os << "<text x=\"600\" y=\"70\" font-family=\"sans-serif\" font-size=\"13\" "
          "fill=\"#1f77b4\">theory</text>\n";
    os << "<text x=\"600\" y=\"88\" font-family=\"sans-serif\" font-size=\"13\" "
          "fill=\"#d62728\">empirical</text>\n";
    os << "</svg>\n";
}

}  // namespace lorentz
