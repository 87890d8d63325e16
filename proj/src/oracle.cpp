#include "oracle.hpp"

#include <cmath>
#include <string>

namespace rangewalk::oracle {

double RangeHistogram::probability(long long x, long long y) const {
    if (x < 0 || y < 0 || x > n || y > n) return 0.0;
    return static_cast<double>(count[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) *
           std::ldexp(1.0, -static_cast<int>(n));
}

RangeHistogram enumerate_range_histogram(long long n) {
    if (n < 0 || n > 24)
        throw resource_error("enumerate_range_histogram: need 0 <= n <= 24, got " +
                                 std::to_string(n),
                             n);
    RangeHistogram hist;
    hist.n = n;
    hist.count.assign(static_cast<std::size_t>(n + 1),
                      std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        long long s = 0, lo = 0, hi = 0;
        for (long long i = 0; i < n; ++i) {
            s += ((bits >> i) & 1u) ? 1 : -1;
            if (s < lo) lo = s;
            if (s > hi) hi = s;
        }
        ++hist.count[static_cast<std::size_t>(-lo)][static_cast<std::size_t>(hi)];
    }
    return hist;
}

double partition_weighted_sum(const RangeHistogram& hist, double h) {
    double z = 0.0;
    for (long long x = 0; x <= hist.n; ++x)
        for (long long y = 0; y <= hist.n; ++y) {
            std::uint64_t c = hist.count[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (c == 0) continue;
            z += static_cast<double>(c) * std::exp(-h * static_cast<double>(x + y + 1));
        }
    return z * std::ldexp(1.0, -static_cast<int>(hist.n));
}

double cell_weighted_sum(const RangeHistogram& hist, double h, long long t, long long two_w) {
    // T = x + y, 2w = y - x  =>  x = (t - 2w)/2
    if ((t - two_w) % 2 != 0) return 0.0;
    long long x = (t - two_w) / 2;
    long long y = t - x;
    if (x < 0 || y < 0 || x > hist.n || y > hist.n) return 0.0;
    std::uint64_t c = hist.count[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    return static_cast<double>(c) * std::exp(-h * static_cast<double>(t + 1)) *
           std::ldexp(1.0, -static_cast<int>(hist.n));
}

std::vector<std::vector<std::int8_t>> admissible_paths(long long x, long long y, long long n) {
    if (n < 0 || n > 20)
        throw resource_error("admissible_paths: need 0 <= n <= 20, got " + std::to_string(n), n);
    std::vector<std::vector<std::int8_t>> out;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        long long s = 0, lo = 0, hi = 0;
        std::vector<std::int8_t> steps(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            std::int8_t d = ((bits >> i) & 1u) ? 1 : -1;
            steps[static_cast<std::size_t>(i)] = d;
            s += d;
            if (s < lo) lo = s;
            if (s > hi) hi = s;
        }
        if (-lo == x && hi == y) out.push_back(std::move(steps));
    }
    return out;
}

} // namespace rangewalk::oracle
