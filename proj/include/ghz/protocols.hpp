#pragma once

// Simulation models for equatorial measurements on GHZ states.
//
// Each model comes in two forms. The harness form writes every box
// evaluation into the harness transcript and returns the parties' outcome
// bits packed into a mask (bit i = party i, outcome (-1)^bit); the trial
// kernels use it with a reused transcript. The RunResult form is a
// convenience wrapper that owns its transcript.
//
// Party numbering: Alice = 0, Bob = 1, Charlie = 2, Dave = 3, ...

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ghz/boxes.hpp"
#include "ghz/core.hpp"
#include "ghz/rng.hpp"
#include "ghz/transcript.hpp"

namespace ghz {

using OutcomeMask = std::uint64_t;

/// Equatorial phase, or an arbitrary Bloch direction (last party only).
class PartySetting {
public:
    PartySetting(PhaseAngle phase) : value_(phase) {}
    PartySetting(UnitVector3 bloch) : value_(bloch) {}

    bool is_equatorial() const { return std::holds_alternative<PhaseAngle>(value_); }
    PhaseAngle phase() const { return std::get<PhaseAngle>(value_); }
    /// Bloch direction; equatorial settings map to (cos phi, sin phi, 0).
    UnitVector3 direction() const;

private:
    std::variant<PhaseAngle, UnitVector3> value_;
};

struct RunResult {
    std::vector<Bit> bits;
    Transcript transcript;
    /// Sphere points taken from shared randomness (2 for the two-group
    /// models, 0 for the single cosine box).
    int shared_vectors = 0;

    int outcome(std::size_t party) const { return bits.at(party).sign(); }
    int product() const;
};

std::vector<Bit> unpack(OutcomeMask mask, std::size_t parties);

/// Alice and Bob as one group sharing a PR box with Charlie, followed by the
/// random sign split of the group's outcome between Alice and Bob.
OutcomeMask run_svetlichny_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c,
                               const HiddenVariables& hidden, BoxHarness& boxes);

/// Two bipartite cosine boxes (Alice-Bob) and two PR boxes (Alice-Charlie,
/// Bob-Charlie). Box order: C(phi_a, phi_b + phi1), C(phi_a, phi_b + phi2),
/// PR(A,C), PR(B,C).
OutcomeMask run_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                    BoxHarness& boxes);

/// run_tri with Charlie measuring along an arbitrary Bloch direction c:
/// his two local bits are sg(c . lambda+) and sg(c . lambda-).
OutcomeMask run_tri_bloch(PhaseAngle phi_a, PhaseAngle phi_b, const UnitVector3& c,
                          const HiddenVariables& hidden, BoxHarness& boxes);

/// Four cosine boxes (two Alice-Bob, two Charlie-Dave) and four PR boxes
/// between {A,B} and {C,D}, in the order AC, AD, BC, BD.
OutcomeMask run_quad(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, PhaseAngle phi_d,
                     const HiddenVariables& hidden, BoxHarness& boxes);

/// n parties split into the first k and the remaining n-k. Each group
/// evaluates two cosine boxes of its own size; the lowest-indexed member adds
/// +phi1 / +phi2 (first group) or -phi+ / -phi- (second group) to its input.
/// A group of one evaluates its "box" locally. Every cross pair shares a PR
/// box fed with the xor of both members' cosine outputs. A party outputs its
/// first cosine output xor all its PR outputs. Requires n >= 2, 1 <= k < n,
/// n <= 64.
OutcomeMask run_general(std::span<const PhaseAngle> phis, int k, const HiddenVariables& hidden,
                        BoxHarness& boxes);

/// One n-partite cosine box; party 0 adds phi_lambda (drawn locally from the
/// density cos/2) to its angle. No shared randomness.
OutcomeMask run_single_cbox(std::span<const PhaseAngle> phis, PhaseAngle phi_lambda, BoxHarness& boxes);

RunResult run_svetlichny_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c,
                             const HiddenVariables& hidden, BitSource& rng);
RunResult run_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                  BitSource& rng);
RunResult run_tri_bloch(PhaseAngle phi_a, PhaseAngle phi_b, const UnitVector3& c,
                        const HiddenVariables& hidden, BitSource& rng);
RunResult run_quad(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, PhaseAngle phi_d,
                   const HiddenVariables& hidden, BitSource& rng);
RunResult run_general(std::span<const PhaseAngle> phis, int k, const HiddenVariables& hidden, BitSource& rng);
/// Draws phi_lambda from `rng`, then the box randomness from the same stream.
RunResult run_single_cbox(std::span<const PhaseAngle> phis, RandomStream& rng);

}  // namespace ghz
