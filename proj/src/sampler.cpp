#include "sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rangewalk {

SampleBatch sample_range(const JointLaw& law, std::uint64_t seed, long long count) {
    if (count < 1) throw invalid_argument("sample_range: need count >= 1");
    const auto& cells = law.cells();
    if (cells.empty()) throw domain_error("sample_range: empty law");

    std::vector<double> cum(cells.size());
    double total = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        total += std::exp(cells[i].log_mass - law.log_z());
        cum[i] = total;
    }
    if (!(total > 0.0)) throw domain_error("sample_range: law has no mass");

    SampleBatch batch;
    batch.seed = seed;
    batch.draws.resize(static_cast<std::size_t>(count));
    CounterRng rng(seed);
    for (long long i = 0; i < count; ++i) {
        double u = rng.uniform01(static_cast<std::uint64_t>(i)) * total;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        std::size_t idx = std::min(static_cast<std::size_t>(it - cum.begin()),
                                   cells.size() - 1);
        batch.draws[static_cast<std::size_t>(i)] = {cells[idx].t, cells[idx].two_w};
    }
    return batch;
}

ConditionedPathSampler::ConditionedPathSampler(const RangeEvent& e, long long max_bytes) {
    if (e.x < 0 || e.y < 0) throw invalid_argument("ConditionedPathSampler: need x, y >= 0");
    if (e.n < 1) throw invalid_argument("ConditionedPathSampler: need n >= 1");
    x_ = e.x;
    y_ = e.y;
    n_ = e.n;
    T_ = e.x + e.y;
    if (T_ < 1 || T_ > n_)
        throw domain_error("ConditionedPathSampler: P(E_x^y(n)) = 0 (need 1 <= x+y <= n)");

    const long long bytes = (n_ + 1) * 4 * (T_ + 1) * static_cast<long long>(sizeof(double));
    if (bytes > max_bytes)
        throw resource_error("ConditionedPathSampler: DP table needs " + std::to_string(bytes) +
                                 " bytes, budget " + std::to_string(max_bytes),
                             bytes);

    // positions shifted by +x: site s corresponds to p = s + x in [0, T]
    start_flags_ = (x_ == 0 ? 1 : 0) | (y_ == 0 ? 2 : 0);
    table_.assign(static_cast<std::size_t>((n_ + 1) * 4 * (T_ + 1)), 0.0);
    boosts_.assign(static_cast<std::size_t>(n_ + 1), 0);

    for (long long p = 0; p <= T_; ++p) cell(n_, 3, p) = 1.0;

    constexpr double kTiny = 0x1.0p-512;
    constexpr double kBoost = 0x1.0p+512;
    for (long long m = n_ - 1; m >= 0; --m) {
        double slice_max = 0.0;
        for (int f = 0; f < 4; ++f) {
            for (long long p = 0; p <= T_; ++p) {
                double v = 0.0;
                if (p - 1 >= 0) {
                    int fd = f | (p - 1 == 0 ? 1 : 0);
                    v += cell(m + 1, fd, p - 1);
                }
                if (p + 1 <= T_) {
                    int fu = f | (p + 1 == T_ ? 2 : 0);
                    v += cell(m + 1, fu, p + 1);
                }
                v *= 0.5;
                cell(m, f, p) = v;
                slice_max = std::max(slice_max, v);
            }
        }
        boosts_[static_cast<std::size_t>(m)] = boosts_[static_cast<std::size_t>(m + 1)];
        if (slice_max > 0.0 && slice_max < kTiny) {
            for (int f = 0; f < 4; ++f)
                for (long long p = 0; p <= T_; ++p) cell(m, f, p) *= kBoost;
            ++boosts_[static_cast<std::size_t>(m)];
        }
    }
    if (!(cell(0, start_flags_, x_) > 0.0))
        throw domain_error("ConditionedPathSampler: event has zero probability");
}

double ConditionedPathSampler::log_event_probability() const {
    return std::log(cell(0, start_flags_, x_)) -
           static_cast<double>(boosts_[0]) * 512.0 * std::numbers::ln2;
}

ConditionedPath ConditionedPathSampler::sample(std::uint64_t seed,
                                               std::uint64_t draw_index) const {
    CounterRng rng(seed);
    ConditionedPath out;
    out.steps.resize(static_cast<std::size_t>(n_));
    long long p = x_;
    int f = start_flags_;
    long long lo = 0, hi = 0;  // realized extremes in walk coordinates
    for (long long m = 0; m < n_; ++m) {
        double nd = 0.0, nu = 0.0;
        int fd = f, fu = f;
        if (p - 1 >= 0) {
            fd = f | (p - 1 == 0 ? 1 : 0);
            nd = cell(m + 1, fd, p - 1);
        }
        if (p + 1 <= T_) {
            fu = f | (p + 1 == T_ ? 2 : 0);
            nu = cell(m + 1, fu, p + 1);
        }
        const double tot = nd + nu;
        const double u = rng.uniform01(draw_index * static_cast<std::uint64_t>(n_) +
                                       static_cast<std::uint64_t>(m));
        if (u * tot < nd) {
            out.steps[static_cast<std::size_t>(m)] = -1;
            p -= 1;
            f = fd;
        } else {
            out.steps[static_cast<std::size_t>(m)] = 1;
            p += 1;
            f = fu;
        }
        lo = std::min(lo, p - x_);
        hi = std::max(hi, p - x_);
    }
    out.x = -lo;
    out.y = hi;
    if (out.x != x_ || out.y != y_)
        throw domain_error("ConditionedPathSampler: sampled path missed the event");
    return out;
}

double ConditionedPathSampler::path_log_probability(
    const std::vector<std::int8_t>& steps) const {
    if (static_cast<long long>(steps.size()) != n_)
        throw invalid_argument("path_log_probability: path length must be n");
    double lg = 0.0;
    long long p = x_;
    int f = start_flags_;
    for (long long m = 0; m < n_; ++m) {
        double nd = 0.0, nu = 0.0;
        int fd = f, fu = f;
        if (p - 1 >= 0) {
            fd = f | (p - 1 == 0 ? 1 : 0);
            nd = cell(m + 1, fd, p - 1);
        }
        if (p + 1 <= T_) {
            fu = f | (p + 1 == T_ ? 2 : 0);
            nu = cell(m + 1, fu, p + 1);
        }
        const double tot = nd + nu;
        const std::int8_t step = steps[static_cast<std::size_t>(m)];
        double chosen = step < 0 ? nd : nu;
        if (!(chosen > 0.0)) return -std::numeric_limits<double>::infinity();
        lg += std::log(chosen / tot);
        if (step < 0) {
            p -= 1;
            f = fd;
        } else {
            p += 1;
            f = fu;
        }
    }
    return lg;
}

GofReport gof_stats(const std::vector<double>& points, const std::vector<double>& pmf,
                    GofReference ref, const std::vector<double>& table_ref) {
    if (points.empty() || points.size() != pmf.size())
        throw invalid_argument("gof_stats: points and pmf must be nonempty and match");
    gof::Distances d;
    switch (ref) {
        case GofReference::Gaussian: d = gof::vs_gaussian(points, pmf); break;
        case GofReference::CosineCenter: d = gof::vs_cosine_center(points, pmf); break;
        case GofReference::Table: d = gof::vs_table(pmf, table_ref); break;
    }
    return {d.ks, d.tv, static_cast<long long>(points.size())};
}

gof::ChiSquare sample_range_chi_square(const JointLaw& law, std::uint64_t seed,
                                       long long count) {
    SampleBatch batch = sample_range(law, seed, count);
    const auto& cells = law.cells();
    std::vector<long long> observed(cells.size(), 0);
    std::vector<double> expected(cells.size(), 0.0);
    // cells are sorted; count draws by binary search
    for (const auto& [t, tw] : batch.draws) {
        JointCell key{t, tw, 0.0};
        auto it = std::lower_bound(cells.begin(), cells.end(), key,
                                   [](const JointCell& a, const JointCell& b) {
                                       return a.t != b.t ? a.t < b.t : a.two_w < b.two_w;
                                   });
        observed[static_cast<std::size_t>(it - cells.begin())] += 1;
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        expected[i] = std::exp(cells[i].log_mass - law.log_z()) * static_cast<double>(count);
    return gof::chi_square_gof(observed, expected);
}

} // namespace rangewalk
