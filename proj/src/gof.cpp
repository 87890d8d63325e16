#include "gof.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rangewalk::gof {

namespace {

constexpr double kPi = std::numbers::pi;

// CDF of (pi/2) cos(pi u) 1[-1/2, 1/2]
double cosine_cdf(double u) {
    if (u <= -0.5) return 0.0;
    if (u >= 0.5) return 1.0;
    return 0.5 * (1.0 + std::sin(kPi * u));
}

template <class Cdf>
Distances vs_binned(const std::vector<double>& points, const std::vector<double>& pmf,
                    Cdf&& cdf) {
    if (points.size() != pmf.size() || points.empty())
        throw std::invalid_argument("gof: points and pmf must be nonempty and match");
    const std::size_t m = points.size();
    Distances d;
    double cum_p = 0.0, cum_q = 0.0, prev_edge_cdf = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double right_cdf =
            (i + 1 < m) ? cdf(0.5 * (points[i] + points[i + 1])) : 1.0;
        double q = right_cdf - prev_edge_cdf;
        prev_edge_cdf = right_cdf;
        cum_p += pmf[i];
        cum_q += q;
        d.tv += std::fabs(pmf[i] - q);
        if (i + 1 < m) d.ks = std::max(d.ks, std::fabs(cum_p - cum_q));
    }
    d.tv *= 0.5;
    return d;
}

} // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Distances vs_gaussian(const std::vector<double>& points, const std::vector<double>& pmf) {
    return vs_binned(points, pmf, [](double u) { return normal_cdf(u); });
}

Distances vs_cosine_center(const std::vector<double>& points, const std::vector<double>& pmf) {
    return vs_binned(points, pmf, [](double u) { return cosine_cdf(u); });
}

Distances vs_table(const std::vector<double>& pmf, const std::vector<double>& ref) {
    if (pmf.size() != ref.size() || pmf.empty())
        throw std::invalid_argument("gof: tables must be nonempty and match");
    Distances d;
    double cp = 0.0, cq = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        cp += pmf[i];
        cq += ref[i];
        d.tv += std::fabs(pmf[i] - ref[i]);
        if (i + 1 < pmf.size()) d.ks = std::max(d.ks, std::fabs(cp - cq));
    }
    d.tv *= 0.5;
    return d;
}

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series
        double sum = 1.0 / a, del = sum, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction for Q, modified Lentz
    const double fpmin = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

ChiSquare chi_square_gof(const std::vector<long long>& observed,
                         const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: inputs must be nonempty and match");
    // merge adjacent cells until each carries enough expectation
    std::vector<double> exp_m;
    std::vector<long long> obs_m;
    double ecur = 0.0;
    long long ocur = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ecur += expected[i];
        ocur += observed[i];
        if (ecur >= min_expected) {
            exp_m.push_back(ecur);
            obs_m.push_back(ocur);
            ecur = 0.0;
            ocur = 0;
        }
    }
    if (ecur > 0.0 || ocur > 0) {
        if (exp_m.empty()) {
            exp_m.push_back(ecur);
            obs_m.push_back(ocur);
        } else {
            exp_m.back() += ecur;
            obs_m.back() += ocur;
        }
    }
    ChiSquare out;
    out.dof = static_cast<long long>(exp_m.size()) - 1;
    for (std::size_t i = 0; i < exp_m.size(); ++i) {
        double diff = static_cast<double>(obs_m[i]) - exp_m[i];
        out.statistic += diff * diff / exp_m[i];
    }
    out.p_value = out.dof >= 1
                      ? gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0)
                      : 1.0;
    return out;
}

} // namespace rangewalk::gof
