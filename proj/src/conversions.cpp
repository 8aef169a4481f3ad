#include "ghz/conversions.hpp"

#include <cmath>
#include <cstdint>

namespace ghz {

namespace {

// t = q + r with integer q and r in [0,1); returns r and q mod 2.
FoldedInput fold_unit(double t) {
    if (!std::isfinite(t)) throw InvalidInput("conversion: non-finite angle");
    double q = std::floor(t);
    double r = t - q;
    if (r >= 1.0) {  // t a hair below an integer
        r = 0.0;
        q += 1.0;
    }
    const auto parity = static_cast<std::int64_t>(std::fmod(q, 2.0));
    return {r + 0.0, Bit(parity != 0)};
}

}  // namespace

FoldedInput fold_alice(PhaseAngle phi_a) { return fold_unit(phi_a.value / kPi); }

FoldedInput fold_bob(PhaseAngle phi_b) { return fold_unit(-(phi_b.value + kHalfPi) / kPi); }

PairOutcome c2_from_m(PhaseAngle phi_a, PhaseAngle phi_b, BitSource& rng) {
    return c2_from_m(phi_a, phi_b, [&](double x, double y) { return eval_m(x, y, rng); });
}

PairOutcome m_from_c2(double x, double y, BitSource& rng) {
    return m_from_c2(x, y, [&](PhaseAngle a, PhaseAngle b) { return eval_c2(a, b, rng); });
}

}  // namespace ghz
