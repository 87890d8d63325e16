#pragma once

#include <cstdint>
#include <vector>

#include "logreal.hpp"

namespace rangewalk::oracle {

// Exhaustive statistics of all 2^n sign sequences of the walk from 0.
// count[x][y] = number of paths with min = -x and max = y; probabilities are
// dyadic and exact in double for n <= 24.
struct RangeHistogram {
    long long n = 0;
    std::vector<std::vector<std::uint64_t>> count;  // (n+1) x (n+1)

    double probability(long long x, long long y) const;
};

RangeHistogram enumerate_range_histogram(long long n);

// sum over paths of 2^-n e^{-h(T+1)}: the partition function priced straight
// off the histogram.
double partition_weighted_sum(const RangeHistogram& hist, double h);
// same restricted to one amplitude cell (T = x + y, 2w = y - x)
double cell_weighted_sum(const RangeHistogram& hist, double h, long long t, long long two_w);

// All paths realizing range exactly [-x, y] in n steps, as =/-1 step vectors
// (n <= 20: the result set is what is enumerated, so keep n small).
std::vector<std::vector<std::int8_t>> admissible_paths(long long x, long long y, long long n);

} // namespace rangewalk::oracle
