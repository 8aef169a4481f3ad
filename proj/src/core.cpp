#include "ghz/core.hpp"

#include <algorithm>
#include <cmath>

#include "ghz/rng.hpp"

namespace ghz {

double PhaseAngle::normalized() const {
    double r = std::fmod(value, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // r + 2pi can round up to exactly 2pi for tiny negative inputs
    if (r >= kTwoPi) r = 0.0;
    return r + 0.0;
}

UnitVector3::UnitVector3(Vec3 v) : v_(v) {
    if (!(std::abs(v.norm() - 1.0) <= kNormTolerance))
        throw InvalidInput("UnitVector3: norm differs from 1 by more than 1e-12");
}

UnitVector3 UnitVector3::normalize(Vec3 v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("UnitVector3::normalize: zero or non-finite vector");
    return UnitVector3(Vec3{v.x / n, v.y / n, v.z / n});
}

UnitVector3 UnitVector3::equatorial(PhaseAngle phi) {
    return UnitVector3(Vec3{std::cos(phi.value), std::sin(phi.value), 0.0});
}

Bit sg(double x) {
    if (!std::isfinite(x)) throw InvalidInput("sg: non-finite argument");
    return Bit(!(x > 0.0));
}

Bit sg_cos(PhaseAngle theta) {
    if (!std::isfinite(theta.value)) throw InvalidInput("sg_cos: non-finite angle");
    const double t = theta.normalized();
    return Bit(!(t < kHalfPi || t > kThreeHalfPi));
}

PhaseAngle azimuth(Vec3 v) {
    if (v.x == 0.0 && v.y == 0.0) throw DegenerateProjection();
    return PhaseAngle(std::atan2(v.y, v.x));
}

HiddenVariables HiddenVariables::from_vectors(UnitVector3 l1, UnitVector3 l2) {
    HiddenVariables h;
    h.lambda1 = l1;
    h.lambda2 = l2;
    h.lambda_plus = l1.vec() + l2.vec();
    h.lambda_minus = l1.vec() - l2.vec();
    h.phi1 = azimuth(l1.vec());
    h.phi2 = azimuth(l2.vec());
    h.phi_plus = azimuth(h.lambda_plus);
    h.phi_minus = azimuth(h.lambda_minus);
    return h;
}

UnitVector3 sample_sphere(RandomStream& rng) {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = kTwoPi * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    // renormalize so the 1e-12 invariant holds regardless of rounding in sqrt/sincos
    return UnitVector3::normalize(Vec3{r * std::cos(phi), r * std::sin(phi), z});
}

HiddenVariables make_hidden(RandomStream& rng) {
    for (;;) {
        const UnitVector3 l1 = sample_sphere(rng);
        const UnitVector3 l2 = sample_sphere(rng);
        try {
            return HiddenVariables::from_vectors(l1, l2);
        } catch (const DegenerateProjection&) {
            // measure zero; draw again
        }
    }
}

PhaseAngle cos_density_quantile(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw InvalidInput("cos_density_quantile: u outside [0,1]");
    return PhaseAngle(std::asin(2.0 * u - 1.0));
}

PhaseAngle sample_cos_density(RandomStream& rng) { return cos_density_quantile(rng.uniform()); }

std::string to_string(Bit b) { return b.is_set() ? "1" : "0"; }

}  // namespace ghz
