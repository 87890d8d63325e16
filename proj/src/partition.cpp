#include "partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "gof.hpp"
#include "parallel.hpp"

namespace rangewalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp_pair(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// log(cosh h - 1), stable for small h
double log_cosh_minus_one(double h) {
    double s = std::sinh(h / 2.0);
    return std::numbers::ln2 + 2.0 * std::log(s);
}

void check_nh(long long n, double h) {
    if (n < 1) throw invalid_argument("partition: need n >= 1");
    if (!(h > 0.0)) throw invalid_argument("partition: need h > 0");
}

// Envelope on one shell: e^{-h(T+1)} sum_x P(E_x^y(n)) <= (2/pi) e^h u^2 e^{-phi(u)}
// at u = T + 2, using P(E) <= f_n(x+1, T+2) <= (2(T+2)/pi) e^{-g(T+2) n} and
// g(u) >= pi^2 / (2 u^2).
//
// Certified bound on the shells above T_from (log scale); +inf when the
// linear minorant of phi is not yet decreasing there.
double log_tail_above(long long t_from, long long n, double h) {
    if (t_from > n) return kNegInf;
    const double u0 = static_cast<double>(t_from) + 2.0;
    const double rate = h - static_cast<double>(n) * kPi * kPi / (u0 * u0 * u0);
    if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
    const double x = std::exp(-rate);
    const double om = -std::expm1(-rate);  // 1 - x
    const double series =
        u0 * u0 / om + 2.0 * u0 * x / (om * om) + x * (1.0 + x) / (om * om * om);
    return h + std::log(2.0 / kPi) + std::log(series) - phi(u0, n, h);
}

// Certified bound on the shells below T_from.
double log_tail_below(long long t_from, long long n, double h) {
    if (t_from < 1) return kNegInf;
    const double u0 = static_cast<double>(t_from) + 2.0;
    const double rate = static_cast<double>(n) * kPi * kPi / (u0 * u0 * u0) - h;
    if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
    const double om = -std::expm1(-rate);
    const double series = u0 * u0 / om;
    return h + std::log(2.0 / kPi) + std::log(series) - phi(u0, n, h);
}

} // namespace

PenaltyScheme PenaltyScheme::explicit_h(double h) {
    if (!(h > 0.0)) throw invalid_argument("PenaltyScheme: need h > 0");
    PenaltyScheme s;
    s.power = false;
    s.h = h;
    return s;
}

PenaltyScheme PenaltyScheme::power_law(double hhat, double gamma) {
    if (!(hhat > 0.0)) throw invalid_argument("PenaltyScheme: need hhat > 0");
    PenaltyScheme s;
    s.power = true;
    s.hhat = hhat;
    s.gamma = gamma;
    return s;
}

double PenaltyScheme::h_at(long long n) const {
    if (n < 1) throw invalid_argument("PenaltyScheme::h_at: need n >= 1");
    if (!power) return h;
    return hhat * std::pow(static_cast<double>(n), gamma);
}

PenaltyRegime PenaltyScheme::classify() const {
    if (!power)
        throw invalid_argument(
            "PenaltyScheme::classify: explicit-h schemes have no limit regime; name it");
    if (gamma <= -0.5 || gamma >= 1.0) return PenaltyRegime::Degenerate;
    if (gamma == 0.25) return PenaltyRegime::Critical;
    return gamma < 0.25 ? PenaltyRegime::Weak : PenaltyRegime::Strong;
}

bool weak_log_floor_ok(long long n, double h) {
    if (n < 2) return false;
    double ln = std::log(static_cast<double>(n));
    return h >= std::pow(ln, 1.5) / std::sqrt(static_cast<double>(n));
}

CriticalQuantities scales(long long n, double h) {
    check_nh(n, h);
    CriticalQuantities s;
    const double nd = static_cast<double>(n);
    s.t_star = std::cbrt(nd * kPi * kPi / h);
    s.a_n = std::pow(nd * kPi * kPi / (h * h * h * h), 1.0 / 6.0) / std::sqrt(3.0);
    s.t_o = s.t_star - 2.0;
    s.t_o_frac = s.t_o - std::floor(s.t_o);
    s.delta_n = (s.t_o_frac >= 0.5 ? 1.0 : 0.0) - s.t_o_frac;
    return s;
}

double phi(double T, long long n, double h) {
    if (!(T > 0.0)) throw invalid_argument("phi: need T > 0");
    return h * T + static_cast<double>(n) * kPi * kPi / (2.0 * T * T);
}

double bar_phi(double T, long long n, double h) {
    if (!(T > 0.0)) throw invalid_argument("bar_phi: need T > 0");
    return h * (T + 1.0) +
           static_cast<double>(n) * kPi * kPi / (2.0 * (T + 2.0) * (T + 2.0));
}

double varsigma(long long t, const CriticalQuantities& s) {
    const double d = static_cast<double>(t) - s.t_o_frac;
    double v = d * d;
    if (t == 0 || t == 1) v += std::fabs(d) / s.t_o;
    return v;
}

double JointLaw::log_mass(long long t, long long two_w) const {
    JointCell key{t, two_w, 0.0};
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key,
                               [](const JointCell& a, const JointCell& b) {
                                   return a.t != b.t ? a.t < b.t : a.two_w < b.two_w;
                               });
    if (it == cells_.end() || it->t != t || it->two_w != two_w) return kNegInf;
    return it->log_mass;
}

double JointLaw::prob(long long t, long long two_w) const {
    double lm = log_mass(t, two_w);
    return std::isinf(lm) ? 0.0 : std::exp(lm - log_z_);
}

double JointLaw::marginal_t_prob(long long t) const {
    for (const auto& [tt, lg] : shell_log_)
        if (tt == t) return std::exp(lg - log_z_);
    return 0.0;
}

std::vector<std::pair<long long, double>> JointLaw::marginal_t() const {
    std::vector<std::pair<long long, double>> out;
    out.reserve(shell_log_.size());
    for (const auto& [t, lg] : shell_log_) out.emplace_back(t, std::exp(lg - log_z_));
    return out;
}

std::vector<std::pair<long long, double>> JointLaw::marginal_two_w() const {
    std::map<long long, double> acc;
    for (const auto& c : cells_) acc[c.two_w] += std::exp(c.log_mass - log_z_);
    return {acc.begin(), acc.end()};
}

JointLaw partition_exact(long long n, double h, double rel_tol, int workers) {
    check_nh(n, h);
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw invalid_argument("partition_exact: need 0 < rel_tol < 1");

    JointLaw law;
    law.n_ = n;
    law.h_ = h;
    law.scale_ = scales(n, h);

    const long long t0 =
        std::clamp(static_cast<long long>(std::llround(law.scale_.t_star)), 1ll, n);

    std::map<long long, ConfinementProfile> profiles;  // by width
    std::map<long long, RangeShell> shells;            // by amplitude

    auto compute_block = [&](long long first, long long last) {
        // widths first..last+2, then shells first..last; both data-parallel
        std::vector<long long> missing;
        for (long long w = first; w <= last + 2; ++w)
            if (!profiles.count(w)) missing.push_back(w);
        std::vector<ConfinementProfile> prof_out(missing.size());
        parallel_for(missing.size(), workers,
                     [&](std::size_t i) { prof_out[i] = confinement_profile(missing[i], n); });
        for (std::size_t i = 0; i < missing.size(); ++i)
            profiles.emplace(missing[i], std::move(prof_out[i]));

        std::vector<RangeShell> shell_out(static_cast<std::size_t>(last - first + 1));
        parallel_for(shell_out.size(), workers, [&](std::size_t i) {
            long long t = first + static_cast<long long>(i);
            shell_out[i] = range_shell(t, n, profiles.at(t), profiles.at(t + 1),
                                       profiles.at(t + 2));
        });
        for (std::size_t i = 0; i < shell_out.size(); ++i)
            shells.emplace(first + static_cast<long long>(i), std::move(shell_out[i]));
    };

    auto shell_log_mass = [&](const RangeShell& sh) {
        double m = kNegInf;
        for (double l : sh.log_prob) m = std::max(m, l);
        if (std::isinf(m)) return kNegInf;
        double s = 0.0;
        for (double l : sh.log_prob)
            if (!std::isinf(l)) s += std::exp(l - m);
        return m + std::log(s) - h * static_cast<double>(sh.T + 1);
    };

    long long lo = t0, hi = t0;
    const long long block = std::max<long long>(16, 4ll * std::max(workers, 1));
    compute_block(t0, t0);

    auto total_log_z = [&]() {
        double m = kNegInf;
        std::vector<double> logs;
        logs.reserve(shells.size());
        for (auto& [t, sh] : shells) {
            logs.push_back(shell_log_mass(sh));
            m = std::max(m, logs.back());
        }
        if (std::isinf(m)) return kNegInf;
        double s = 0.0;
        for (double l : logs)
            if (!std::isinf(l)) s += std::exp(l - m);
        return m + std::log(s);
    };

    double log_z = total_log_z();
    const double log_half_tol = std::log(rel_tol / 2.0);
    while (true) {
        double r_up = log_tail_above(hi + 1, n, h);
        double r_dn = log_tail_below(lo - 1, n, h);
        bool need_up = hi < n && r_up > log_half_tol + log_z;
        bool need_dn = lo > 1 && r_dn > log_half_tol + log_z;
        if (!need_up && !need_dn) break;
        if (need_dn) {
            long long first = std::max(1ll, lo - block);
            compute_block(first, lo - 1);
            lo = first;
        }
        if (need_up) {
            long long last = std::min(n, hi + block);
            compute_block(hi + 1, last);
            hi = last;
        }
        log_z = total_log_z();
    }

    law.t_min_ = lo;
    law.t_max_ = hi;
    law.log_z_ = log_z;
    law.log_trunc_ = log_sum_exp_pair(log_tail_above(hi + 1, n, h), log_tail_below(lo - 1, n, h));

    for (auto& [t, sh] : shells) {
        double lg = shell_log_mass(sh);
        law.shell_offset_.push_back(law.cells_.size());
        law.shell_log_.emplace_back(t, lg);
        const double hterm = -h * static_cast<double>(t + 1);
        for (long long x = t; x >= 0; --x) {  // ascending 2w = t - 2x
            double lp = sh.log_prob[static_cast<std::size_t>(x)];
            if (std::isinf(lp)) continue;
            law.cells_.push_back(JointCell{t, t - 2 * x, lp + hterm});
        }
    }
    return law;
}

LogReal partition_restricted(const JointLaw& law,
                             const std::function<bool(long long, long long)>& pred) {
    double m = kNegInf;
    for (const auto& c : law.cells())
        if (pred(c.t, c.two_w)) m = std::max(m, c.log_mass);
    if (std::isinf(m)) return LogReal::zero();
    double s = 0.0;
    for (const auto& c : law.cells())
        if (pred(c.t, c.two_w)) s += std::exp(c.log_mass - m);
    return LogReal::from_log(m + std::log(s));
}

LogReal psi_weak(long long n, double h) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    double lg = std::log(4.0 / kPi) + 2.0 * std::log(-std::expm1(-h)) -
                h * (s.t_star + 1.0) -
                decay_rate_real(s.t_star + 2.0) * static_cast<double>(n);
    return LogReal::from_log(lg);
}

LogReal psi_strong(long long n, double h) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    double lg = std::log(4.0 / kPi) + 2.0 * std::log(-std::expm1(-h)) -
                h * (s.t_star - 1.0) - decay_rate_real(s.t_star) * static_cast<double>(n);
    return LogReal::from_log(lg);
}

LogReal local_partition_weak(long long t, long long two_w, long long n, double h) {
    const CriticalQuantities s = scales(n, h);
    const double w = static_cast<double>(two_w) / 2.0;
    const double c = std::cos(kPi * w / s.t_star);
    if (c <= 0.0) return LogReal::zero();
    double lg = psi_weak(n, h).log() + std::log(c) -
                static_cast<double>(t) * static_cast<double>(t) / (2.0 * s.a_n * s.a_n);
    return LogReal::from_log(lg);
}

LogReal local_partition_strong(long long t, long long two_w, long long n, double h) {
    const CriticalQuantities s = scales(n, h);
    const double w = static_cast<double>(two_w) / 2.0;
    const double c = std::cos(kPi * w / s.t_star);
    if (c <= 0.0) return LogReal::zero();
    double lg = psi_strong(n, h).log() + std::log(c) - varsigma(t, s) / (2.0 * s.a_n * s.a_n);
    return LogReal::from_log(lg);
}

LogReal z_asymptotic_weak(long long n, double h) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    double lg = std::log(16.0 * std::numbers::sqrt2 / std::sqrt(3.0 * kPi)) +
                log_cosh_minus_one(h) - std::log(h) +
                0.5 * std::log(static_cast<double>(n)) - 1.5 * h * s.t_star;
    return LogReal::from_log(lg);
}

LogReal z_asymptotic_strong(long long n, double h) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    const int t_sel = (s.t_o_frac >= 0.5 + 1.0 / s.t_o) ? 1 : 0;
    const double d = static_cast<double>(t_sel) - s.t_o_frac;
    const double phi_n = 6.0 + kPi * kPi / 12.0 + 1.5 * (std::fabs(d) / s.t_o + d * d);
    const double t4 = s.t_star * s.t_star * s.t_star * s.t_star;
    double lg = std::log(16.0 / std::pow(kPi, 4.0 / 3.0)) +
                (s.t_o_frac == 0.5 ? std::numbers::ln2 : 0.0) + log_cosh_minus_one(h) -
                std::log(h) / 3.0 + std::log(static_cast<double>(n)) / 3.0 -
                1.5 * h * s.t_star - phi_n * kPi * static_cast<double>(n) / t4;
    return LogReal::from_log(lg);
}

LogReal z_asymptotic_strong_sharp(long long n, double h) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    const double delta_sq = std::min(varsigma(0, s), varsigma(1, s));
    double lg = std::log(16.0 / (kPi * kPi)) +
                (s.t_o_frac == 0.5 ? std::numbers::ln2 : 0.0) + log_cosh_minus_one(h) +
                std::log(s.t_star) - h * s.t_star -
                decay_rate_real(s.t_star) * static_cast<double>(n) -
                delta_sq / (2.0 * s.a_n * s.a_n);
    return LogReal::from_log(lg);
}

double theta_sum(long long n, double h, double a) {
    check_nh(n, h);
    if (!(a > 0.0)) throw invalid_argument("theta_sum: need a > 0");
    const CriticalQuantities s = scales(n, h);
    const double inv = 1.0 / (2.0 * a * a);
    double sum = std::exp(-varsigma(0, s) * inv) + std::exp(-varsigma(1, s) * inv);
    // expand outward; quadratic growth of varsigma certifies the tails
    for (int dir = 0; dir < 2; ++dir) {
        long long t = dir == 0 ? 2 : -1;
        const long long step = dir == 0 ? 1 : -1;
        while (true) {
            double term = std::exp(-varsigma(t, s) * inv);
            sum += term;
            double gap = std::fabs(static_cast<double>(t) - s.t_o_frac);
            double ratio = std::exp(-(2.0 * gap + 1.0) * inv);
            if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= 1e-16 * sum) break;
            t += step;
        }
    }
    return sum;
}

LogReal z_asymptotic_critical(long long n, double h, double a) {
    check_nh(n, h);
    const CriticalQuantities s = scales(n, h);
    double lg = std::log(16.0 / std::pow(kPi, 4.0 / 3.0)) + log_cosh_minus_one(h) -
                std::log(h) / 3.0 + std::log(static_cast<double>(n)) / 3.0 -
                1.5 * h * s.t_star + std::log(theta_sum(n, h, a));
    return LogReal::from_log(lg);
}

double critical_fluct_pmf(long long n, double h, long long r, long long s_hi) {
    if (r > s_hi) throw invalid_argument("critical_fluct_pmf: need r <= s");
    const CriticalQuantities s = scales(n, h);
    const double a = s.a_n;
    const double inv = 1.0 / (2.0 * a * a);
    const long long reach = static_cast<long long>(std::ceil(12.0 * a + 2.0));
    const long long lo = std::max(r, std::min<long long>(0, static_cast<long long>(
                                                                std::floor(s.t_o_frac)) -
                                                                reach));
    const long long hi = std::min(s_hi, std::max<long long>(1, static_cast<long long>(
                                                                   std::ceil(s.t_o_frac)) +
                                                                   reach));
    double part = 0.0;
    for (long long t = lo; t <= hi; ++t) part += std::exp(-varsigma(t, s) * inv);
    return part / theta_sum(n, h, a);
}

std::vector<int> strong_support_set(long long n, double h) {
    const CriticalQuantities s = scales(n, h);
    if (s.t_o_frac < 0.5) return {0};
    if (s.t_o_frac > 0.5) return {1};
    return {0, 1};
}

FluctReport fluctuation_law(const JointLaw& law) {
    FluctReport rep;
    const CriticalQuantities& s = law.scale();

    auto mt = law.marginal_t();
    if (mt.empty()) throw invalid_argument("fluctuation_law: empty law");
    std::vector<double> ut, pt;
    ut.reserve(mt.size());
    pt.reserve(mt.size());
    for (auto& [t, p] : mt) {
        ut.push_back((static_cast<double>(t) - s.t_star) / s.a_n);
        pt.push_back(p);
    }
    auto dt = gof::vs_gaussian(ut, pt);
    rep.ks_t_gauss = dt.ks;
    rep.tv_t_gauss = dt.tv;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < ut.size(); ++i) mean += ut[i] * pt[i];
    for (std::size_t i = 0; i < ut.size(); ++i)
        m2 += (ut[i] - mean) * (ut[i] - mean) * pt[i];
    rep.t_mean = mean;
    rep.t_sd = std::sqrt(m2);

    auto mw = law.marginal_two_w();
    std::vector<double> uw, pw;
    uw.reserve(mw.size());
    pw.reserve(mw.size());
    for (auto& [tw, p] : mw) {
        uw.push_back(static_cast<double>(tw) / (2.0 * s.t_star));
        pw.push_back(p);
    }
    auto dw = gof::vs_cosine_center(uw, pw);
    rep.ks_w_cos = dw.ks;
    rep.tv_w_cos = dw.tv;

    // dependence gap over the full product of supports
    std::map<long long, double> pw_map;
    for (std::size_t i = 0; i < mw.size(); ++i) pw_map[mw[i].first] = pw[i];
    std::map<long long, double> pt_map;
    for (auto& [t, p] : mt) pt_map[t] = p;
    std::map<std::pair<long long, long long>, double> joint;
    for (const auto& c : law.cells()) joint[{c.t, c.two_w}] = law.prob(c.t, c.two_w);
    double dev = 0.0;
    for (auto& [t, p1] : pt_map)
        for (auto& [tw, p2] : pw_map) {
            auto it = joint.find({t, tw});
            double j = it == joint.end() ? 0.0 : it->second;
            dev = std::max(dev, std::fabs(j - p1 * p2));
        }
    rep.indep_max_dev = dev;
    return rep;
}

} // namespace rangewalk
