#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "logreal.hpp"
#include "range_law.hpp"

namespace rangewalk {

enum class PenaltyRegime { Weak, Critical, Strong, Degenerate };

// Either an explicit h > 0 for a fixed n, or a power law h_n = hhat * n^gamma.
// Regimes are asymptotic statements: power-law schemes classify by gamma
// alone; explicit-h users must name the regime themselves.
struct PenaltyScheme {
    bool power = false;
    double h = 0.0;     // explicit mode
    double hhat = 0.0;  // power-law mode
    double gamma = 0.0;

    static PenaltyScheme explicit_h(double h);
    static PenaltyScheme power_law(double hhat, double gamma);
    double h_at(long long n) const;
    PenaltyRegime classify() const;  // Degenerate outside gamma in (-1/2, 1)
};

// h >= n^{-1/2} (log n)^{3/2}: the floor under which the weak-regime
// statements are not claimed.
bool weak_log_floor_ok(long long n, double h);

struct CriticalQuantities {
    double t_star = 0.0;    // (n pi^2 / h)^{1/3}
    double a_n = 0.0;       // (1/sqrt 3) (n pi^2 / h^4)^{1/6} = t_star^2 / sqrt(3 n pi^2)
    double t_o = 0.0;       // T_n^o = t_star - 2
    double t_o_frac = 0.0;  // fractional part of t_star - 2
    double delta_n = 0.0;   // 1{t_o_frac >= 1/2} - t_o_frac
};
CriticalQuantities scales(long long n, double h);

double phi(double T, long long n, double h);      // h T + n pi^2 / (2 T^2)
double bar_phi(double T, long long n, double h);  // h (T+1) + n pi^2 / (2 (T+2)^2)

// varsigma_n(t) = |t - t_o_frac| / T_n^o * 1{t in {0,1}} + (t - t_o_frac)^2,
// as printed before the critical proposition.
double varsigma(long long t, const CriticalQuantities& s);

struct JointCell {
    long long t = 0;
    long long two_w = 0;
    double log_mass = 0.0;
};

// Sparse joint table of (T_n, 2 W_n) under the polymer measure, over a
// T-window with a certified bound on the omitted mass.
class JointLaw {
public:
    long long n() const { return n_; }
    double h() const { return h_; }
    double log_z() const { return log_z_; }
    double log_truncation_bound() const { return log_trunc_; }
    long long t_min() const { return t_min_; }
    long long t_max() const { return t_max_; }
    const CriticalQuantities& scale() const { return scale_; }
    const std::vector<JointCell>& cells() const { return cells_; }

    double log_mass(long long t, long long two_w) const;  // -inf outside table
    double prob(long long t, long long two_w) const;
    double marginal_t_prob(long long t) const;
    std::vector<std::pair<long long, double>> marginal_t() const;
    std::vector<std::pair<long long, double>> marginal_two_w() const;

private:
    friend JointLaw partition_exact(long long, double, double, int);
    long long n_ = 0;
    double h_ = 0.0;
    double log_z_ = 0.0;
    double log_trunc_ = 0.0;
    long long t_min_ = 0, t_max_ = 0;
    CriticalQuantities scale_{};
    std::vector<JointCell> cells_;                   // sorted by (t, two_w)
    std::vector<std::pair<long long, double>> shell_log_;  // (t, log shell mass)
    std::vector<std::size_t> shell_offset_;          // cell index of each shell
};

// log Z_{n,h} and the joint table. The T-sum runs outward from round(T_n^*)
// and stops once a certified envelope bounds the omitted mass below
// rel_tol * (computed sum). Shells are data-parallel; the reduction order is
// fixed, so results do not depend on the worker count.
JointLaw partition_exact(long long n, double h, double rel_tol = 1e-10, int workers = 1);

// log Z_{n,h}(A) for A given as a predicate over (t, 2w).
LogReal partition_restricted(const JointLaw& law,
                             const std::function<bool(long long, long long)>& pred);

// Local models for single cells of the table.
LogReal local_partition_weak(long long t, long long two_w, long long n, double h);
LogReal local_partition_strong(long long t, long long two_w, long long n, double h);
LogReal psi_weak(long long n, double h);    // psi_n
LogReal psi_strong(long long n, double h);  // psi-bar_n

// Partition asymptotics.
LogReal z_asymptotic_weak(long long n, double h);
// Strong regime, exactly as printed: Phi_n(1{t_o >= 1/2 + 1/T_o}) * pi n / T*^4
// in the exponent.
LogReal z_asymptotic_strong(long long n, double h);
// Strong regime via the psi-bar normalization with g(T*) kept exact:
// (16/pi^2)(1 + 1{t_o = 1/2})(cosh h - 1) T* e^{-h T* - g(T*) n - delta^2/(2 a^2)}.
// The printed exponent does not reproduce this; the harness reports both.
LogReal z_asymptotic_strong_sharp(long long n, double h);
LogReal z_asymptotic_critical(long long n, double h, double a);
double theta_sum(long long n, double h, double a);  // theta_n(a), certified tail
double critical_fluct_pmf(long long n, double h, long long r, long long s);

// A_n: the one- or two-point support of T_n - floor(T* - 2) in the strong
// regime.
std::vector<int> strong_support_set(long long n, double h);

// Distances of the exact fluctuation laws to their limits, plus the
// product-form dependence gap.
struct FluctReport {
    double ks_t_gauss = 0.0;
    double tv_t_gauss = 0.0;
    double ks_w_cos = 0.0;
    double tv_w_cos = 0.0;
    double indep_max_dev = 0.0;
    double t_mean = 0.0;  // of (T_n - T*)/a_n under the law
    double t_sd = 0.0;
};
FluctReport fluctuation_law(const JointLaw& law);

} // namespace rangewalk
