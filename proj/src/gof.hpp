#pragma once

#include <vector>

namespace rangewalk::gof {

double normal_cdf(double x);

// Lattice law (points ascending, cell masses p) against a reference density
// binned on the same lattice: cell i spans the midpoints to its neighbors,
// outermost cells absorb the tails. The density is binned, never the law
// smoothed.
struct Distances {
    double ks = 0.0;
    double tv = 0.0;
};
Distances vs_gaussian(const std::vector<double>& points, const std::vector<double>& pmf);
// (pi/2) cos(pi u) on [-1/2, 1/2]
Distances vs_cosine_center(const std::vector<double>& points, const std::vector<double>& pmf);
Distances vs_table(const std::vector<double>& pmf, const std::vector<double>& ref);

// Regularized incomplete gamma P(a, x) and its complement.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Pearson chi-square with adjacent-cell merging until every expected count
// reaches min_expected; dof = merged cells - 1.
struct ChiSquare {
    double statistic = 0.0;
    long long dof = 0;
    double p_value = 1.0;
};
ChiSquare chi_square_gof(const std::vector<long long>& observed,
                         const std::vector<double>& expected, double min_expected = 5.0);

} // namespace rangewalk::gof
