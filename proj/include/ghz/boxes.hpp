#pragma once

// No-signaling nonlocal boxes.
//
// Every box is realized the same way: the first k-1 outputs are fresh
// uniform bits from the caller's BitSource, the last output completes the
// parity the box enforces. The relation therefore holds exactly on every
// call and every strict subset of outputs is uniform whatever the inputs.
//
// Protocols never touch box outputs directly; they go through BoxHarness,
// which records each evaluation in a Transcript and lets a party read only
// the outputs of boxes it is attached to.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ghz/core.hpp"
#include "ghz/rng.hpp"
#include "ghz/transcript.hpp"

namespace ghz {

struct PairOutcome {
    Bit a;
    Bit b;
    Bit relation() const { return a ^ b; }
};

struct BoxOutcome {
    std::vector<Bit> outputs;
    Bit relation;
};

/// Finite-domain binary function, the input of a function box.
class FunctionTable {
public:
    FunctionTable() = default;
    explicit FunctionTable(std::vector<Bit> values);

    std::size_t domain_size() const { return values_.size(); }
    Bit at(std::size_t x) const;
    std::span<const Bit> values() const { return values_; }

private:
    std::vector<Bit> values_;
};

/// PR box: a uniform, b = a ^ (x & y).
PairOutcome eval_pr(Bit x, Bit y, BitSource& rng);

/// Millionaire box on [0,1) x [0,1): a ^ b = sg(x - y).
PairOutcome eval_m(double x, double y, BitSource& rng);

/// Bipartite cosine box: a ^ b = sg(cos(phi_a + phi_b)).
PairOutcome eval_c2(PhaseAngle phi_a, PhaseAngle phi_b, BitSource& rng);

/// n-partite cosine box: xor of all outputs = sg(cos(sum of inputs)).
/// n = 1 is local evaluation and draws no random bits.
BoxOutcome eval_cn(std::span<const PhaseAngle> phis, BitSource& rng);
/// Allocation-free form; writes phis.size() outputs into `out`.
Bit eval_cn(std::span<const PhaseAngle> phis, BitSource& rng, std::span<Bit> out);

/// Function box: one side supplies a table f, the other an index x;
/// a ^ b = f(x).
PairOutcome eval_fbox(const FunctionTable& f, std::size_t x, BitSource& rng);

/// Pluggable implementation of the bipartite boxes, so a protocol can be
/// re-run with, e.g., cosine boxes built from a communication protocol.
class BoxBackend {
public:
    virtual ~BoxBackend() = default;
    virtual PairOutcome pr(Bit x, Bit y, BitSource& rng) { return eval_pr(x, y, rng); }
    virtual PairOutcome c2(PhaseAngle a, PhaseAngle b, BitSource& rng) { return eval_c2(a, b, rng); }
};

BoxBackend& native_boxes();

class BoxHarness {
public:
    static constexpr std::size_t kMaxArity = 64;

    BoxHarness(Transcript& transcript, BitSource& rng, BoxBackend& backend = native_boxes())
        : transcript_(transcript), rng_(rng), backend_(backend) {}

    BoxId pr(int party_a, int party_b, Bit x, Bit y);
    BoxId m(int party_a, int party_b, double x, double y);
    BoxId c2(int party_a, int party_b, PhaseAngle phi_a, PhaseAngle phi_b);
    BoxId cn(std::span<const int> parties, std::span<const PhaseAngle> phis);
    BoxId fbox(int table_party, int index_party, const FunctionTable& f, std::size_t x);

    /// A party's port on a box. Throws PortViolation if it is not attached.
    Bit output(BoxId id, int party) const { return transcript_.output(id, party); }

    BitSource& randomness() { return rng_; }
    Transcript& transcript() { return transcript_; }

private:
    Transcript& transcript_;
    BitSource& rng_;
    BoxBackend& backend_;
};

}  // namespace ghz
