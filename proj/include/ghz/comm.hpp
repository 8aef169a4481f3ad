#pragma once

// Simulating a Millionaire box with two-way classical communication.
//
// Protocol, starting at round n = 1: Alice sends her n-th binary digit, Bob
// answers 0 if it equals his own n-th digit and 1 otherwise. On a 1 both
// know whose input is larger; Alice outputs a pre-agreed random bit and Bob
// the bit that completes sg(x - y). Each round costs one bit each way. For
// independent uniform inputs the protocol stops at round n with probability
// 2^-n, so it uses 2 rounds (4 bits) on average.
//
// Worst-case cost is unbounded: by a crossing-sequence argument, inputs with
// k binary digits force at least k exchanged bits. Expansions here are cut
// at kMaxDigits; identical expansions end the run at the cap and count as
// x <= y.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghz/boxes.hpp"
#include "ghz/core.hpp"
#include "ghz/protocols.hpp"
#include "ghz/rng.hpp"

namespace ghz {

class BinaryExpansion {
public:
    static constexpr std::size_t kMaxDigits = 53;

    BinaryExpansion() = default;
    explicit BinaryExpansion(std::vector<Bit> digits);

    /// First `length` digits of x in [0,1). Exact for doubles when length is
    /// 53 or more bits past the leading exponent.
    static BinaryExpansion from_real(double x, std::size_t length = kMaxDigits);

    std::size_t size() const { return digits_.size(); }
    /// Digit i (0-based, weight 2^-(i+1)); digits past the end are 0.
    Bit digit(std::size_t i) const { return i < digits_.size() ? digits_[i] : kZero; }
    double value() const;

private:
    std::vector<Bit> digits_;
};

enum class CommDecision { alice_larger, bob_larger_or_equal };

struct CommTrace {
    int rounds = 0;
    int bits_alice = 0;
    int bits_bob = 0;
    CommDecision decided = CommDecision::bob_larger_or_equal;
    Bit a;
    Bit b;

    int total_bits() const { return bits_alice + bits_bob; }
    Bit relation() const { return a ^ b; }
};

/// Runs the digit-exchange protocol; Alice's output bit is drawn from `rng`.
CommTrace simulate_m_comm(const BinaryExpansion& x, const BinaryExpansion& y, BitSource& rng,
                          std::size_t max_rounds = BinaryExpansion::kMaxDigits);

struct RoundHistogram {
    /// counts[r] = number of runs that stopped after r rounds.
    std::vector<std::uint64_t> counts;
    std::uint64_t trials = 0;

    double probability(std::size_t rounds) const;
    double mean_rounds() const;
    double mean_bits() const { return 2.0 * mean_rounds(); }
    void merge(const RoundHistogram& other);
};

/// Round counts of simulate_m_comm under independent uniform inputs.
RoundHistogram comm_cost_distribution(std::uint64_t trials, RandomStream& rng);

/// Backend that realizes each bipartite cosine box as c2_from_m over the
/// digit-exchange protocol and charges each PR box one bit (the known
/// one-bit replacement, used as accounting only; the PR box itself is
/// evaluated natively).
class CommBackend final : public BoxBackend {
public:
    PairOutcome pr(Bit x, Bit y, BitSource& rng) override;
    PairOutcome c2(PhaseAngle a, PhaseAngle b, BitSource& rng) override;

    std::uint64_t bits() const { return bits_; }
    std::uint64_t m_rounds() const { return m_rounds_; }
    void reset() { bits_ = 0; m_rounds_ = 0; }

private:
    std::uint64_t bits_ = 0;
    std::uint64_t m_rounds_ = 0;
};

struct TriCommResult {
    RunResult run;
    std::uint64_t total_bits = 0;
};

/// The tripartite model with communication-backed cosine boxes.
TriCommResult run_tri_comm(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                           BitSource& rng);

}  // namespace ghz
