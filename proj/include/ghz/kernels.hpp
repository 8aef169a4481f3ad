#pragma once

// Monte Carlo trial kernels.
//
// Trial i of a batch draws everything (hidden variables, local randomness,
// box randomness) from RandomStream(seed, i), so a histogram depends only
// on (model, angles, trials, seed) and never on how trials are scheduled.
// simulate_serial is the reference; simulate_parallel splits the trial range
// over OpenMP threads and sums per-thread counts, and must agree with it bit
// for bit.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghz/core.hpp"
#include "ghz/protocols.hpp"
#include "ghz/rng.hpp"

namespace ghz {

enum class ModelId { svetlichny, tri, tri_bloch, quad, general, single_cbox, tri_comm };

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view name);
std::vector<std::string_view> model_names();

struct Model {
    ModelId id = ModelId::tri;
    /// Party count; fixed to 3/4 for the tripartite and quad models.
    int n = 3;
    /// First-group size for ModelId::general.
    int k = 1;
    /// Charlie's direction for ModelId::tri_bloch.
    UnitVector3 bloch;

    static Model tri() { return {ModelId::tri, 3, 1, {}}; }
    static Model svetlichny() { return {ModelId::svetlichny, 3, 1, {}}; }
    static Model quad() { return {ModelId::quad, 4, 1, {}}; }
    static Model tri_comm() { return {ModelId::tri_comm, 3, 1, {}}; }
    static Model tri_bloch(UnitVector3 c) { return {ModelId::tri_bloch, 3, 1, c}; }
    static Model general(int n, int k) { return {ModelId::general, n, k, {}}; }
    static Model single_cbox(int n) { return {ModelId::single_cbox, n, 1, {}}; }

    int parties() const { return n; }
    /// Number of equatorial angles the model takes (tri_bloch: 2).
    std::size_t angle_count() const;
    /// Throws InvalidInput if the model parameters or angle count are invalid.
    void validate(std::span<const PhaseAngle> angles) const;
    /// Closed-form full correlator the model must reproduce.
    double target_correlator(std::span<const PhaseAngle> angles) const;
};

struct TrialStats {
    int shared_vectors = 0;
    std::uint64_t comm_bits = 0;
};

/// One run of `model` with all randomness from `rng`; `scratch` is cleared
/// and receives the run's transcript.
OutcomeMask run_trial(const Model& model, std::span<const PhaseAngle> angles, RandomStream& rng,
                      Transcript& scratch, TrialStats* stats = nullptr);

struct OutcomeHistogram {
    int parties = 0;
    std::uint64_t trials = 0;
    /// counts[mask] for all 2^parties outcome masks.
    std::vector<std::uint64_t> counts;

    explicit OutcomeHistogram(int n = 0);
    void merge(const OutcomeHistogram& other);
    friend bool operator==(const OutcomeHistogram&, const OutcomeHistogram&) = default;
};

struct SimulationTally {
    OutcomeHistogram histogram;
    std::uint64_t shared_vectors = 0;
    std::uint64_t comm_bits = 0;

    void merge(const SimulationTally& other);
    friend bool operator==(const SimulationTally&, const SimulationTally&) = default;
};

/// Largest party count the histogram kernels accept.
inline constexpr int kMaxHistogramParties = 20;

SimulationTally simulate_serial(const Model& model, std::span<const PhaseAngle> angles, std::uint64_t trials,
                                std::uint64_t seed);
SimulationTally simulate_parallel(const Model& model, std::span<const PhaseAngle> angles, std::uint64_t trials,
                                  std::uint64_t seed);

struct CostHistogram {
    /// counts[b] = runs that exchanged b bits.
    std::vector<std::uint64_t> counts;
    std::uint64_t trials = 0;

    double mean() const;
    double std_error() const;
    void merge(const CostHistogram& other);
    friend bool operator==(const CostHistogram&, const CostHistogram&) = default;
};

enum class CostModel { m_box, tri_comm };

std::string_view to_string(CostModel m);
std::optional<CostModel> parse_cost_model(std::string_view name);

/// Bits exchanged per run under uniform random inputs: for m_box two
/// uniform reals, for tri_comm three uniform angles and fresh hidden
/// variables.
CostHistogram comm_cost_serial(CostModel model, std::uint64_t trials, std::uint64_t seed);
CostHistogram comm_cost_parallel(CostModel model, std::uint64_t trials, std::uint64_t seed);

}  // namespace ghz
