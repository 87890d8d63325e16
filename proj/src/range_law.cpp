#include "range_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rangewalk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_event(const RangeEvent& e) {
    if (e.x < 0 || e.y < 0) throw invalid_argument("RangeEvent: need x, y >= 0");
    if (e.n < 1) throw invalid_argument("RangeEvent: need n >= 1");
}

RegimeReport report_for(long long n, long long T) {
    const double t = static_cast<double>(T);
    return {static_cast<double>(n) / (t * t), static_cast<double>(n) / (t * t * t),
            static_cast<double>(n) >= t * t};
}

// 4-term inclusion-exclusion at a common log offset; terms arrive as
// (log value, sign), with the two negative terms grouped so the evaluation
// order is invariant under x <-> y.
LogReal signed_sum(double l1, double l2, double l3, double l4) {
    double m = std::max(std::max(l1, l2), std::max(l3, l4));
    if (std::isinf(m) && m < 0.0) return LogReal::zero();
    auto lift = [m](double l) { return std::isinf(l) && l < 0.0 ? 0.0 : std::exp(l - m); };
    double pos = lift(l1) + lift(l4);
    double neg = lift(l2) + lift(l3);
    double s = pos - neg;
    if (s <= 0.0) return LogReal::zero();
    return LogReal::from_log(std::log(s) + m);
}

} // namespace

Regime classify_range_regime(long long n, long long T) {
    if (T < 1 || n < 1) throw invalid_argument("classify_range_regime: need T, n >= 1");
    const double r = static_cast<double>(n) /
                     (static_cast<double>(T) * static_cast<double>(T) * static_cast<double>(T));
    if (r >= 10.0) return {FluctRegime::SuperCritical, r};
    if (r <= 0.1) return {FluctRegime::SubCritical, r};
    return {FluctRegime::Critical, r};
}

LogReal range_event_exact(const RangeEvent& e) {
    check_event(e);
    const long long T = e.x + e.y;
    if (T == 0 || T > e.n) return LogReal::zero();
    const double l1 = confinement_exact({e.x + 1, T + 2, e.n}).log();
    const double l2 = confinement_exact({e.x, T + 1, e.n}).log();
    const double l3 = confinement_exact({e.x + 1, T + 1, e.n}).log();
    const double l4 = confinement_exact({e.x, T, e.n}).log();
    return signed_sum(l1, l2, l3, l4);
}

RangeShell range_shell(long long T, long long n, const ConfinementProfile& pT,
                       const ConfinementProfile& pT1, const ConfinementProfile& pT2) {
    if (pT.width != T || pT1.width != T + 1 || pT2.width != T + 2)
        throw invalid_argument("range_shell: profile widths must be T, T+1, T+2");
    if (pT.n != n || pT1.n != n || pT2.n != n)
        throw invalid_argument("range_shell: profile horizons must equal n");
    RangeShell sh;
    sh.T = T;
    sh.n = n;
    sh.log_prob.assign(static_cast<std::size_t>(T + 1),
                       -std::numeric_limits<double>::infinity());
    if (T == 0 || T > n) return sh;
    for (long long x = 0; x <= T / 2; ++x) {
        const double l1 = pT2.at(x + 1).log();
        const double l2 = pT1.at(x).log();
        const double l3 = pT1.at(x + 1).log();
        const double l4 = pT.at(x).log();
        double lg = signed_sum(l1, l2, l3, l4).log();
        sh.log_prob[static_cast<std::size_t>(x)] = lg;
        sh.log_prob[static_cast<std::size_t>(T - x)] = lg;
    }
    return sh;
}

RangeShell range_shell(long long T, long long n) {
    if (T < 0 || n < 1) throw invalid_argument("range_shell: need T >= 0, n >= 1");
    auto pT = confinement_profile(T, n);
    auto pT1 = confinement_profile(T + 1, n);
    auto pT2 = confinement_profile(T + 2, n);
    return range_shell(T, n, pT, pT1, pT2);
}

AsymptoticValue theta_asymptotic(const RangeEvent& e, const Regime& r,
                                 SubcriticalVariant variant) {
    check_event(e);
    const long long T = e.x + e.y;
    if (T < 3) throw domain_error("theta_asymptotic: requires T = x + y >= 3");
    const long long x = std::min(e.x, e.y);  // the walk's reflection symmetry
    const double Td = static_cast<double>(T);
    RegimeReport rr = report_for(e.n, T);
    const double nd = static_cast<double>(e.n);

    switch (r.kind) {
        case FluctRegime::SuperCritical: {
            double lg = std::log(4.0 / kPi) +
                        std::log(std::sin(kPi * static_cast<double>(x + 1) / Td)) -
                        decay_rate(T + 2) * nd;
            return {LogReal::from_log(lg), rr};
        }
        case FluctRegime::Critical: {
            if (!(r.alpha > 0.0))
                throw invalid_argument("theta_asymptotic: critical branch needs alpha > 0");
            const double ea = std::exp(r.alpha * kPi * kPi);
            const double bracket = ea * std::sin(kPi * static_cast<double>(x + 1) / Td) -
                                   std::sin(kPi * static_cast<double>(x) / Td);
            if (bracket <= 0.0) return {LogReal::zero(), rr};
            double lg = std::log(4.0 / kPi) + std::log(ea - 1.0) + std::log(bracket) -
                        decay_rate(T) * nd;
            return {LogReal::from_log(lg), rr};
        }
        case FluctRegime::SubCritical: {
            const double bracket =
                std::sin(kPi * static_cast<double>(x) / Td) + Td * Td / (kPi * nd);
            const double g = (variant == SubcriticalVariant::AsPrinted) ? decay_rate(T)
                                                                        : decay_rate(T + 1);
            double lg = std::log(4.0 * kPi * kPi * kPi) + 2.0 * std::log(nd) -
                        6.0 * std::log(Td) + std::log(bracket) - g * nd;
            return {LogReal::from_log(lg), rr};
        }
    }
    throw invalid_argument("theta_asymptotic: unknown regime");
}

AsymptoticValue range_event_simplified(const RangeEvent& e) {
    check_event(e);
    const long long T = e.x + e.y;
    if (T < 3) throw domain_error("range_event_simplified: requires T = x + y >= 3");
    const long long x = std::min(e.x, e.y);
    const double Td = static_cast<double>(T);
    RegimeReport rr = report_for(e.n, T);
    if (x == 0) return {LogReal::zero(), rr};  // the documented blind spot
    const double alpha = static_cast<double>(e.n) * kPi * kPi / (Td * Td * Td);
    const double one_minus = -std::expm1(-alpha);
    double lg = std::log(4.0 / kPi) + 2.0 * std::log(one_minus) +
                std::log(std::sin(kPi * static_cast<double>(x) / Td)) -
                decay_rate(T + 2) * static_cast<double>(e.n);
    return {LogReal::from_log(lg), rr};
}

AsymptoticValue range_event_boundary(long long y, long long n, const Regime& r) {
    if (y < 3) throw domain_error("range_event_boundary: requires T = y >= 3");
    if (n < 1) throw invalid_argument("range_event_boundary: need n >= 1");
    if (r.kind != FluctRegime::SubCritical)
        return theta_asymptotic({0, y, n}, r);  // same branch at x = 0
    const double Td = static_cast<double>(y);
    RegimeReport rr = report_for(n, y);
    double lg = std::log(4.0 * static_cast<double>(n) * kPi) - 3.0 * std::log(Td) +
                std::log(std::sin(kPi / (Td + 2.0))) -
                decay_rate(y + 1) * static_cast<double>(n);
    return {LogReal::from_log(lg), rr};
}

CenterLaw center_conditional_pmf(long long t, long long n) {
    if (t < 1 || n < 1) throw invalid_argument("center_conditional_pmf: need t, n >= 1");
    if (t > n)
        throw domain_error("center_conditional_pmf: P(T_n = t) = 0 for t > n");
    RangeShell sh = range_shell(t, n);
    double m = -std::numeric_limits<double>::infinity();
    for (double l : sh.log_prob) m = std::max(m, l);
    if (std::isinf(m))
        throw domain_error("center_conditional_pmf: amplitude has zero probability");
    std::vector<double> lin(sh.log_prob.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < sh.log_prob.size(); ++i) {
        lin[i] = std::isinf(sh.log_prob[i]) ? 0.0 : std::exp(sh.log_prob[i] - m);
        total += lin[i];
    }
    CenterLaw law;
    law.t = t;
    law.n = n;
    law.cells.reserve(lin.size());
    // emit in ascending 2w = t - 2x, i.e. x descending
    for (long long x = t; x >= 0; --x) {
        CenterCell c;
        c.two_w = t - 2 * x;
        c.pmf = lin[static_cast<std::size_t>(x)] / total;
        const double w = static_cast<double>(c.two_w) / 2.0;
        c.limit_density = (kPi / 2.0) * std::cos(kPi * w / static_cast<double>(t));
        law.cells.push_back(c);
    }
    return law;
}

} // namespace rangewalk
