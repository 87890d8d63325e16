#include "ruin.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace rangewalk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_strip(const StripQuery& q) {
    if (q.T < 2) throw invalid_argument("StripQuery: T must be >= 2");
    if (q.z < 0 || q.z > q.T) throw invalid_argument("StripQuery: need 0 <= z <= T");
    if (q.n < 0) throw invalid_argument("StripQuery: need n >= 0");
}

// Neumaier-compensated accumulator: spectral terms alternate in magnitude
// decay, not sign, after the parity regrouping, so plain summation leaks ulps.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

// sin(pi m / W) for m in [0, 2W), from the reduced quadrant so that
// sin(pi k z / W) = tab[(k z) mod 2W] stays accurate for large arguments.
std::vector<double> sine_table(long long W) {
    std::vector<double> tab(static_cast<std::size_t>(2 * W), 0.0);
    for (long long m = 0; m <= W / 2; ++m) {
        double s = std::sin(kPi * static_cast<double>(m) / static_cast<double>(W));
        tab[static_cast<std::size_t>(m)] = s;
        tab[static_cast<std::size_t>(W - m)] = s;
    }
    for (long long m = 1; m < W; ++m)
        tab[static_cast<std::size_t>(W + m)] = -tab[static_cast<std::size_t>(m)];
    return tab;
}

// Scaled spectral coefficients of the geometric exit-series tails:
//   P_z(tau > n) = e^{log_scale} * sum_k coeff[z mod 2][k-1] * sin(pi k z / W).
// Exit times beyond n keep only the parity class of each side, so two
// coefficient vectors cover every interior z.
struct TailCoeffs {
    double log_scale = 0.0;
    std::array<std::vector<double>, 2> coeff;
};

TailCoeffs tail_coeffs(long long W, long long n) {
    TailCoeffs out;
    const long long kcap = (W - 1) / 2;  // 1 <= k < W/2
    if (kcap < 1) return out;

    const double L1 = std::log(std::cos(kPi / static_cast<double>(W)));
    const double off = static_cast<double>(n) * L1;
    out.log_scale = off;

    // next exit times > n per parity class: nb for tau_0 (m <-> z), nt for
    // tau_T (m <-> T - z)
    std::array<long long, 2> nb{}, nt{};
    for (int p = 0; p < 2; ++p) {
        long long m = n + 1;
        if ((m - p) % 2 != 0) ++m;
        nb[p] = m;
        int pt = static_cast<int>((W + p) % 2);
        m = n + 1;
        if ((m - pt) % 2 != 0) ++m;
        nt[p] = m;
    }

    const double w1 = (2.0 / static_cast<double>(W)) / std::sin(kPi / static_cast<double>(W));
    double ref = 0.0;
    for (long long k = 1; k <= kcap; ++k) {
        const double ck = std::cos(kPi * static_cast<double>(k) / static_cast<double>(W));
        const double Lk = std::log(ck);
        const double wk = (2.0 / static_cast<double>(W)) /
                          std::sin(kPi * static_cast<double>(k) / static_cast<double>(W));
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        for (int p = 0; p < 2; ++p) {
            double eb = std::exp(static_cast<double>(nb[p] - 1) * Lk - off);
            double et = std::exp(static_cast<double>(nt[p] - 1) * Lk - off);
            double c = wk * (eb + sgn * et);
            out.coeff[p].push_back(c);
            ref = std::max(ref, std::fabs(c));
        }
        if (k < kcap) {
            // certified cutoff: every remaining term, for any z, is below
            // 2 w1 (c_{k+1}/c_1)^n
            double next = 2.0 * w1 *
                          std::exp(static_cast<double>(n) *
                                   (std::log(std::cos(kPi * static_cast<double>(k + 1) /
                                                      static_cast<double>(W))) -
                                    L1));
            if (static_cast<double>(kcap - k) * next <= 1e-18 * ref) break;
        }
    }
    return out;
}

} // namespace

double decay_rate_real(double T) {
    if (!(T > 2.0))
        throw domain_error("decay_rate: g(T) requires T > 2 (cosine nonpositive otherwise)");
    return -std::log(std::cos(kPi / T));
}

double decay_rate(long long T) {
    if (T <= 2)
        throw domain_error("decay_rate: g(T) requires T >= 3 (cosine nonpositive at T <= 2)");
    return decay_rate_real(static_cast<double>(T));
}

LogReal feller_exit_pmf(const StripQuery& q, ExitSide side) {
    check_strip(q);
    if (side == ExitSide::Either)
        throw invalid_argument("feller_exit_pmf: side must be Bottom or Top");
    if (q.z == 0 || q.z == q.T)
        throw domain_error("feller_exit_pmf: start already absorbed (z in {0, T})");
    if (q.n < 1) throw invalid_argument("feller_exit_pmf: need n >= 1");
    if (side == ExitSide::Top)
        return feller_exit_pmf(StripQuery{q.T - q.z, q.T, q.n}, ExitSide::Bottom);

    if ((q.n - q.z) % 2 != 0) return LogReal::zero();
    const long long W = q.T, kcap = (W - 1) / 2;
    if (kcap < 1) return LogReal::zero();

    const double L1 = std::log(std::cos(kPi / static_cast<double>(W)));
    const double off = static_cast<double>(q.n - 1) * L1;
    auto tab = sine_table(W);
    const double w1 = tab[1];
    Compensated acc;
    double ref = 0.0;
    for (long long k = 1; k <= kcap; ++k) {
        const double Lk = std::log(std::cos(kPi * static_cast<double>(k) / static_cast<double>(W)));
        const double decay = std::exp(static_cast<double>(q.n - 1) * Lk - off);
        const double term = decay * tab[static_cast<std::size_t>((k * q.z) % (2 * W))] *
                            tab[static_cast<std::size_t>(k)];
        acc.add(term);
        ref = std::max(ref, std::fabs(term));
        if (k < kcap) {
            double next = w1 * std::exp(static_cast<double>(q.n - 1) *
                                        (std::log(std::cos(kPi * static_cast<double>(k + 1) /
                                                           static_cast<double>(W))) -
                                         L1));
            if (static_cast<double>(kcap - k) * next <= 1e-18 * std::max(ref, 1e-300)) break;
        }
    }
    double s = acc.value() * (2.0 / static_cast<double>(W));
    // The printed sum can round below zero exactly where the true pmf
    // vanishes (and at the adjudicated n = 1 even-width edge).
    if (s <= 0.0) return LogReal::zero();
    return LogReal::from_log(std::log(s) + off);
}

LogReal confinement_exact(const StripQuery& q) {
    check_strip(q);
    if (q.z == 0 || q.z == q.T) return LogReal::zero();
    if (q.n == 0) return LogReal::one();
    if (q.T == 2) return LogReal::zero();

    const long long z = std::min(q.z, q.T - q.z);  // mirror symmetry, bit-exact
    TailCoeffs tc = tail_coeffs(q.T, q.n);
    auto tab = sine_table(q.T);
    const auto& cf = tc.coeff[static_cast<std::size_t>(z % 2)];
    Compensated acc;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        long long k = static_cast<long long>(i) + 1;
        acc.add(cf[i] * tab[static_cast<std::size_t>((k * z) % (2 * q.T))]);
    }
    double s = acc.value();
    if (s <= 0.0) return LogReal::zero();
    return LogReal::from_log(std::log(s) + tc.log_scale);
}

LogReal ConfinementProfile::at(long long z) const {
    if (z < 0 || z > width) throw invalid_argument("ConfinementProfile::at: z out of range");
    double s = scaled[static_cast<std::size_t>(z)];
    if (s <= 0.0) return LogReal::zero();
    return LogReal::from_log(std::log(s) + log_scale);
}

ConfinementProfile confinement_profile(long long width, long long n) {
    if (width < 0 || n < 0) throw invalid_argument("confinement_profile: need width, n >= 0");
    ConfinementProfile pr;
    pr.width = width;
    pr.n = n;
    pr.scaled.assign(static_cast<std::size_t>(width + 1), 0.0);
    if (width < 2) return pr;
    if (n == 0) {
        for (long long z = 1; z < width; ++z) pr.scaled[static_cast<std::size_t>(z)] = 1.0;
        return pr;
    }
    if (width == 2) return pr;

    TailCoeffs tc = tail_coeffs(width, n);
    auto tab = sine_table(width);
    pr.log_scale = tc.log_scale;
    for (long long z = 1; z <= width / 2; ++z) {
        const auto& cf = tc.coeff[static_cast<std::size_t>(z % 2)];
        Compensated acc;
        for (std::size_t i = 0; i < cf.size(); ++i) {
            long long k = static_cast<long long>(i) + 1;
            acc.add(cf[i] * tab[static_cast<std::size_t>((k * z) % (2 * width))]);
        }
        double s = acc.value();
        if (s < 0.0) s = 0.0;
        pr.scaled[static_cast<std::size_t>(z)] = s;
        pr.scaled[static_cast<std::size_t>(width - z)] = s;
    }
    return pr;
}

LogReal confinement_dp(const StripQuery& q, const DpBudget& budget) {
    check_strip(q);
    if (q.z == 0 || q.z == q.T) return LogReal::zero();
    const long long cells = (q.T - 1) * q.n;
    if (cells > budget.max_cell_ops)
        throw resource_error("confinement_dp: (T-1)*n = " + std::to_string(cells) +
                                 " cell updates exceed budget " +
                                 std::to_string(budget.max_cell_ops),
                             cells);

    std::vector<double> cur(static_cast<std::size_t>(q.T + 1), 0.0);
    std::vector<double> nxt(static_cast<std::size_t>(q.T + 1), 0.0);
    cur[static_cast<std::size_t>(q.z)] = 1.0;
    long long rescales = 0;  // powers of 2^512 taken out, keeps dyadics exact
    constexpr double kTiny = 0x1.0p-512;
    constexpr double kBoost = 0x1.0p+512;

    for (long long step = 0; step < q.n; ++step) {
        double rowmax = 0.0;
        for (long long s = 1; s < q.T; ++s) {
            double v = 0.5 * (cur[static_cast<std::size_t>(s - 1)] +
                              cur[static_cast<std::size_t>(s + 1)]);
            nxt[static_cast<std::size_t>(s)] = v;
            rowmax = std::max(rowmax, v);
        }
        if (rowmax == 0.0) return LogReal::zero();
        if (rowmax < kTiny) {
            for (long long s = 1; s < q.T; ++s) nxt[static_cast<std::size_t>(s)] *= kBoost;
            ++rescales;
        }
        std::swap(cur, nxt);
    }
    double mass = 0.0;
    for (long long s = 1; s < q.T; ++s) mass += cur[static_cast<std::size_t>(s)];
    if (mass <= 0.0) return LogReal::zero();
    return LogReal::from_log(std::log(mass) -
                             static_cast<double>(rescales) * 512.0 * std::numbers::ln2);
}

LogReal bruteforce_enumerate(const StripQuery& q, StripEvent event) {
    check_strip(q);
    if (q.n > 24)
        throw resource_error("bruteforce_enumerate: 2^n paths need n <= 24, got n = " +
                                 std::to_string(q.n),
                             q.n);
    const std::uint64_t total = 1ull << q.n;
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        long long s = q.z;
        long long thit = -1;
        int side = -1;
        if (q.z == 0) {
            thit = 0;
            side = 0;
        } else if (q.z == q.T) {
            thit = 0;
            side = 1;
        } else {
            for (long long i = 0; i < q.n; ++i) {
                s += ((bits >> i) & 1u) ? 1 : -1;
                if (s == 0) {
                    thit = i + 1;
                    side = 0;
                    break;
                }
                if (s == q.T) {
                    thit = i + 1;
                    side = 1;
                    break;
                }
            }
        }
        bool match = false;
        switch (event) {
            case StripEvent::ExitBottomAtN: match = (thit == q.n && side == 0); break;
            case StripEvent::ExitTopAtN: match = (thit == q.n && side == 1); break;
            case StripEvent::ExitAtN: match = (thit == q.n); break;
            case StripEvent::SurviveBeyondN: match = (thit < 0); break;
        }
        if (match) ++count;
    }
    if (count == 0) return LogReal::zero();
    return LogReal::from_linear(static_cast<double>(count) /
                                static_cast<double>(total));
}

AsymptoticValue ruin_asymptotic(const StripQuery& q, ExitSide side) {
    check_strip(q);
    if (side == ExitSide::Either)
        throw invalid_argument("ruin_asymptotic: side must be Bottom or Top");
    const double T = static_cast<double>(q.T);
    RegimeReport rr{static_cast<double>(q.n) / (T * T), static_cast<double>(q.n) / (T * T * T),
                    static_cast<double>(q.n) >= T * T};
    if (q.T < 3) throw domain_error("ruin_asymptotic: requires T >= 3");
    const long long zi = (side == ExitSide::Top) ? q.T - q.z : q.z;  // parity carrier
    if ((q.n - zi) % 2 != 0) return {LogReal::zero(), rr};
    if (q.z == 0 || q.z == q.T) return {LogReal::zero(), rr};
    const long long zs = std::min(q.z, q.T - q.z);
    double lg = std::log(2.0 / T) + std::log(std::sin(kPi * static_cast<double>(zs) / T)) +
                std::log(std::tan(kPi / T)) - decay_rate(q.T) * static_cast<double>(q.n);
    return {LogReal::from_log(lg), rr};
}

AsymptoticValue confinement_asymptotic(const StripQuery& q) {
    check_strip(q);
    const double T = static_cast<double>(q.T);
    RegimeReport rr{static_cast<double>(q.n) / (T * T), static_cast<double>(q.n) / (T * T * T),
                    static_cast<double>(q.n) >= T * T};
    if (q.T < 3) throw domain_error("confinement_asymptotic: requires T >= 3");
    if (q.z == 0 || q.z == q.T) return {LogReal::zero(), rr};
    const long long zs = std::min(q.z, q.T - q.z);
    const double lsin = std::log(std::sin(kPi * static_cast<double>(zs) / T));
    const double gn = decay_rate(q.T) * static_cast<double>(q.n);
    double lg;
    if (q.T % 2 == 1) {
        lg = std::log(2.0 / T) + lsin - std::log(std::tan(kPi / (2.0 * T))) - gn;
    } else {
        const double a = ((q.n - q.z) % 2 == 0) ? 1.0 : 0.0;
        lg = std::log(4.0 / T) + lsin + a * std::log(std::cos(kPi / T)) -
             std::log(std::sin(kPi / T)) - gn;
    }
    return {LogReal::from_log(lg), rr};
}

AsymptoticValue confinement_asymptotic_simplified(const StripQuery& q) {
    check_strip(q);
    const double T = static_cast<double>(q.T);
    RegimeReport rr{static_cast<double>(q.n) / (T * T), static_cast<double>(q.n) / (T * T * T),
                    static_cast<double>(q.n) >= T * T};
    if (q.T < 3) throw domain_error("confinement_asymptotic_simplified: requires T >= 3");
    if (q.z == 0 || q.z == q.T) return {LogReal::zero(), rr};
    const long long zs = std::min(q.z, q.T - q.z);
    double lg = std::log(4.0 / kPi) + std::log(std::sin(kPi * static_cast<double>(zs) / T)) -
                decay_rate(q.T) * static_cast<double>(q.n);
    return {LogReal::from_log(lg), rr};
}

} // namespace rangewalk
