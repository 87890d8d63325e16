#pragma once

#include <vector>

#include "logreal.hpp"

namespace rangewalk {

// Strip [0, T] with absorbing endpoints; walk starts at z, horizon n steps.
// tau_0 / tau_T are the endpoint hitting times, tau their minimum. Parity of
// the exit time is derived from (z, T, n), never stored.
struct StripQuery {
    long long z = 0;
    long long T = 2;
    long long n = 0;
};

enum class ExitSide { Bottom, Top, Either };

// Events the brute-force oracle can price.
enum class StripEvent {
    ExitBottomAtN,   // tau = tau_0 = n
    ExitTopAtN,      // tau = tau_T = n
    ExitAtN,         // tau = n (either side)
    SurviveBeyondN,  // tau > n
};

// Validity report attached to asymptotic values: the asymptotics hold as
// n / T^2 -> infinity, so callers probing regime boundaries get the computed
// ratios instead of a refusal.
struct RegimeReport {
    double n_over_t2 = 0.0;
    double n_over_t3 = 0.0;
    bool deep_time = false;  // n >= T^2, advisory only
};

struct AsymptoticValue {
    LogReal value;
    RegimeReport regime;
};

// g(T) = -log cos(pi/T): per-step exponential cost of strip confinement.
// T >= 3 (the cosine is nonpositive at T = 2).
double decay_rate(long long T);
double decay_rate_real(double T);  // same map on real widths > 2

// P_z(tau = tau_side = n), exact, via the finite trigonometric sum over
// 1 <= k < T/2 with the parity indicator. Exact zero on parity mismatch.
// Requires 1 <= z <= T-1 and n >= 1. The sum is evaluated as printed; the
// k = T/2 term it omits matters only for even T at n = 1 (the oracle suite
// reports that discrepancy).
LogReal feller_exit_pmf(const StripQuery& q, ExitSide side);

// P_z(tau > n), exact, by summing per spectral index the closed-form
// geometric tail of the exit-time series with the correct parity grouping.
// Boundary z gives 0; interior z at n = 0 gives 1.
LogReal confinement_exact(const StripQuery& q);

// Independent engine: absorbing-boundary dynamic programming over states
// 1..T-1, renormalized when the row mass underflows toward 2^-512.
struct DpBudget {
    long long max_cell_ops = 1ll << 33;  // (T-1) * n table updates
};
LogReal confinement_dp(const StripQuery& q, const DpBudget& budget = {});

// Ground truth by walking all 2^n sign sequences; dyadic, exact. n <= 24.
LogReal bruteforce_enumerate(const StripQuery& q, StripEvent event);

// Sharp ruin asymptotics: (2/T) sin(z pi/T) tan(pi/T) e^{-g(T) n} with the
// side's parity indicator; relative error O(e^{-pi^2 n / T^2}) uniformly in z.
AsymptoticValue ruin_asymptotic(const StripQuery& q, ExitSide side);

// Sharp confinement asymptotics, both parity branches (T odd / T even with
// a = 1{n <-> z}).
AsymptoticValue confinement_asymptotic(const StripQuery& q);

// Simplified form f_n(z,T) = (4/pi) sin(z pi/T) e^{-n g(T)}, accurate to
// 1 + O(T^-2) + O(e^{-pi^2 n/T^2}).
AsymptoticValue confinement_asymptotic_simplified(const StripQuery& q);

// Survival probabilities for every start point of one strip at once:
// value(z) = exp(log_scale) * scaled[z]. Shared by the range-law and
// partition sweeps, where consecutive widths are scanned; scaled[z] is
// mirror-symmetric (bit-for-bit) in z <-> width - z.
struct ConfinementProfile {
    long long width = 0;
    long long n = 0;
    double log_scale = 0.0;
    std::vector<double> scaled;  // size width + 1, scaled[0] = scaled[width] = 0

    LogReal at(long long z) const;
};
ConfinementProfile confinement_profile(long long width, long long n);

} // namespace rangewalk
