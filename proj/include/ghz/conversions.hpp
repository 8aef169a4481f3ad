#pragma once

// Bipartite cosine box <-> Millionaire box, by local pre- and
// post-processing only.
//
// C from M: Alice feeds x = (phi_a mod pi)/pi, Bob feeds
// y = (-(phi_b + pi/2) mod pi)/pi, and each flips its M-box output by the
// parity of the integer part that was discarded. Then
// a ^ b = sg(cos(phi_a + phi_b)).
//
// M from C: Alice feeds phi_a = x, Bob phi_b = -y - pi/2, since
// cos(x - y - pi/2) = sin(x - y) has the sign of x - y on [0,1).

#include <concepts>
#include <utility>

#include "ghz/boxes.hpp"
#include "ghz/core.hpp"
#include "ghz/rng.hpp"

namespace ghz {

/// A party's M-box input in [0,1) and the output flip it must apply.
struct FoldedInput {
    double value;
    Bit flip;
};

/// (phi mod pi)/pi with mathematical modulus, plus floor(phi/pi) mod 2.
FoldedInput fold_alice(PhaseAngle phi_a);
/// (-(phi + pi/2) mod pi)/pi, plus floor(-(phi + pi/2)/pi) mod 2.
FoldedInput fold_bob(PhaseAngle phi_b);

/// `mbox` is any callable (double x, double y) -> PairOutcome with the
/// Millionaire relation.
template <class MBox>
    requires std::invocable<MBox, double, double>
PairOutcome c2_from_m(PhaseAngle phi_a, PhaseAngle phi_b, MBox&& mbox) {
    const FoldedInput fa = fold_alice(phi_a);
    const FoldedInput fb = fold_bob(phi_b);
    const PairOutcome m = std::forward<MBox>(mbox)(fa.value, fb.value);
    return {m.a ^ fa.flip, m.b ^ fb.flip};
}

/// `cbox` is any callable (PhaseAngle, PhaseAngle) -> PairOutcome with the
/// bipartite cosine relation.
template <class CBox>
    requires std::invocable<CBox, PhaseAngle, PhaseAngle>
PairOutcome m_from_c2(double x, double y, CBox&& cbox) {
    if (!(x >= 0.0 && x < 1.0) || !(y >= 0.0 && y < 1.0))
        throw InvalidInput("m_from_c2: inputs must lie in [0,1)");
    return std::forward<CBox>(cbox)(PhaseAngle(x), PhaseAngle(-y - kHalfPi));
}

/// Against native boxes drawing from `rng`.
PairOutcome c2_from_m(PhaseAngle phi_a, PhaseAngle phi_b, BitSource& rng);
PairOutcome m_from_c2(double x, double y, BitSource& rng);

}  // namespace ghz
