#include "lorentz/sampling.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

namespace lorentz::sampling {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t bits = mix64(mix64(seed) ^ index);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double StratifiedAngles::operator()(std::uint64_t i) const
{
    const double u = uniform(seed, i);
    return lo + (static_cast<double>(i) + u) * (hi - lo) / static_cast<double>(n);
}

std::vector<double> parallel_map(std::uint64_t n, unsigned workers,
                                 const std::function<double(std::uint64_t)>& fn)
{
    if (workers == 0) {
        throw std::invalid_argument("workers must be >= 1");
    }
    std::vector<double> out(n);
    const std::uint64_t w = std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1));
    if (w <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::vector<std::exception_ptr> errors(w);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::uint64_t k = 0; k < w; ++k) {
        const std::uint64_t begin = n * k / w;
        const std::uint64_t end = n * (k + 1) / w;
        pool.emplace_back([&, k, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i) {
                    out[i] = fn(i);
                }
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace lorentz::sampling
