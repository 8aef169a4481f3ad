#pragma once

// Quantum reference values, correlator estimation from outcome histograms,
// no-signaling checks and the tripartite Svetlichny expression.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ghz/core.hpp"
#include "ghz/kernels.hpp"
#include "ghz/stats.hpp"

namespace ghz {

/// <product of all outcomes> for equatorial measurements on GHZ_n:
/// cos(sum of phases).
double ghz_correlator(std::span<const PhaseAngle> phis);

/// P(outcomes) = 2^-n (1 + prod(outcomes) cos(sum phis)); outcomes are +/-1.
double ghz_joint(std::span<const PhaseAngle> phis, std::span<const int> outcomes);

/// The whole 2^n outcome distribution indexed by outcome mask (bit i set
/// means party i got -1), for a given full correlator.
std::vector<double> ghz_distribution(int parties, double full_correlator);

struct CorrelatorEstimate {
    std::vector<int> subset;
    std::uint64_t mask = 0;
    double value = 0.0;
    std::uint64_t trials = 0;
    /// sqrt((1 - value^2) / trials)
    double std_error = 0.0;
};

/// Estimates for every non-empty subset, ordered by subset mask. Uses a
/// Walsh-Hadamard transform of the counts.
std::vector<CorrelatorEstimate> correlators_from_histogram(const OutcomeHistogram& h);

std::vector<CorrelatorEstimate> estimate_correlators(const Model& model, std::span<const PhaseAngle> angles,
                                                     std::uint64_t trials, std::uint64_t seed);

/// Exact correlator of `subset_mask` over a weighted outcome distribution.
double subset_correlator(std::span<const double> distribution, std::uint64_t subset_mask);

/// Total-variation distance between the outcome distributions of all
/// parties except `excluded`.
double marginal_tv_distance(const OutcomeHistogram& a, const OutcomeHistogram& b, int excluded);

/// Runs `model` twice, with party `party`'s angle set to `first` and then
/// `second` (other angles as given), and returns the TV distance between
/// the two complement marginals. The runs use seeds `seed` and `seed + 1`.
double no_signaling_check(const Model& model, int party, PhaseAngle first, PhaseAngle second,
                          std::span<const PhaseAngle> angles, std::uint64_t trials, std::uint64_t seed);

/// Chi-square of an outcome histogram against ghz_distribution.
stats::ChiSquare oracle_chi_square(const OutcomeHistogram& h, double full_correlator);

// Tripartite Svetlichny expression
//
//   S = sum_{x,y,z in {0,1}} s(x,y,z) E(A_x B_y C_z),
//   s = +1 if x + y + z <= 1, -1 otherwise.
//
// Any model in which two of the three parties may pool their inputs, with
// the third separate, satisfies |S| <= 4 (svetlichny_bipartite_bound
// re-derives this by enumeration). GHZ with equatorial settings reaches
// 4 sqrt(2).

using SvetlichnySettings = std::array<std::array<PhaseAngle, 2>, 3>;
using CorrelatorFn = std::function<double(std::span<const PhaseAngle>)>;

int svetlichny_sign(int x, int y, int z);
double svetlichny_value(const CorrelatorFn& correlator, const SvetlichnySettings& settings);

/// Max |S| over deterministic strategies where one pair acts jointly,
/// over all three pairings.
int svetlichny_bipartite_bound();

struct SvetlichnyOptimum {
    SvetlichnySettings settings{};
    double value = 0.0;
};

/// Grid search (`grid` points per angle) followed by coordinate descent
/// until the step drops below `tolerance`.
SvetlichnyOptimum maximize_svetlichny(const CorrelatorFn& correlator, int grid = 16, double tolerance = 1e-3);

}  // namespace ghz

namespace ghz {

/// Exact outcome distribution of a run over all 2^random_bits settings of
/// its box-internal randomness (everything else held fixed). `run` must draw
/// exactly `random_bits` bits from the source it is handed.
std::vector<double> enumerate_outcomes(int parties, int random_bits,
                                       const std::function<OutcomeMask(BitSource&)>& run);

}  // namespace ghz
