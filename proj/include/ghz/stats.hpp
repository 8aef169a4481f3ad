#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ghz::stats {

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;

    bool passes(double alpha) const { return p_value >= alpha; }
};

/// Upper tail P(X >= x) of a chi-square distribution with `dof` degrees.
double chi_square_sf(double x, int dof);

/// Goodness of fit of observed counts to cell probabilities. Cells with zero
/// expected probability are dropped; an observation in such a cell makes the
/// statistic infinite.
ChiSquare chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities);

/// Homogeneity test of two count vectors over the same cells.
ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Kolmogorov-Smirnov distance of a sample from Uniform(lo, hi).
double ks_uniform_statistic(std::vector<double> sample, double lo, double hi);

/// Asymptotic one-sample KS critical value for sample size n at level 1%.
double ks_critical_1pct(std::size_t n);

}  // namespace ghz::stats
