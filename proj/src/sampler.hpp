#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gof.hpp"
#include "partition.hpp"
#include "range_law.hpp"
#include "rng.hpp"

namespace rangewalk {

// Draws from a joint (t, 2w) table. Identical (seed, count, law) reproduce
// the batch bit-for-bit on any worker count.
struct SampleBatch {
    std::uint64_t seed = 0;
    std::vector<std::pair<long long, long long>> draws;  // (t, two_w)
};

SampleBatch sample_range(const JointLaw& law, std::uint64_t seed, long long count);

struct ConditionedPath {
    std::vector<std::int8_t> steps;  // +1 / -1
    long long x = 0;                 // realized depth below 0
    long long y = 0;                 // realized height above 0
};

// Exact sampler of walks conditioned on range = [-x, y]: backward DP over
// (time, position, visited-endpoint flags), forward draws proportional to the
// remaining completion probability. No rejection, so tiny-probability events
// cost the same as likely ones.
class ConditionedPathSampler {
public:
    explicit ConditionedPathSampler(const RangeEvent& e, long long max_bytes = 1ll << 30);

    ConditionedPath sample(std::uint64_t seed, std::uint64_t draw_index = 0) const;

    // log of the conditional probability of a full +/-1 path; -inf when the
    // path does not realize the event.
    double path_log_probability(const std::vector<std::int8_t>& steps) const;

    // log P(E_x^y(n)) as priced by the DP (an independent route to the
    // range-law value).
    double log_event_probability() const;

    long long n() const { return n_; }

private:
    double cell(long long m, int f, long long p) const {
        return table_[(static_cast<std::size_t>(m) * 4 + static_cast<std::size_t>(f)) *
                          static_cast<std::size_t>(T_ + 1) +
                      static_cast<std::size_t>(p)];
    }
    double& cell(long long m, int f, long long p) {
        return table_[(static_cast<std::size_t>(m) * 4 + static_cast<std::size_t>(f)) *
                          static_cast<std::size_t>(T_ + 1) +
                      static_cast<std::size_t>(p)];
    }

    long long x_ = 0, y_ = 0, n_ = 0, T_ = 0;
    int start_flags_ = 0;
    std::vector<double> table_;       // (n+1) x 4 x (T+1), slice-rescaled
    std::vector<long long> boosts_;   // per-slice count of 2^512 rescales
};

enum class GofReference { Gaussian, CosineCenter, Table };

struct GofReport {
    double ks = 0.0;
    double tv = 0.0;
    long long size = 0;  // number of lattice cells compared
};

// Distances of a lattice law (points ascending, masses pmf) against the named
// reference; Table compares against table_ref on the same support.
GofReport gof_stats(const std::vector<double>& points, const std::vector<double>& pmf,
                    GofReference ref, const std::vector<double>& table_ref = {});

// Chi-square of a sampled batch against the very table it was drawn from.
gof::ChiSquare sample_range_chi_square(const JointLaw& law, std::uint64_t seed,
                                       long long count);

} // namespace rangewalk
