#pragma once

// Basic value types shared by every part of the simulator: bits, phase
// angles, 3-vectors, the sign convention and hidden-variable sampling.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghz {

class RandomStream;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
// 1.5 * pi is exactly representable from the double pi.
inline constexpr double kThreeHalfPi = 1.5 * std::numbers::pi;

/// Raised for inputs a box or operation cannot accept (out-of-range reals,
/// bad indices, malformed configurations).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Azimuth of a vector whose x-y projection vanishes.
class DegenerateProjection : public std::domain_error {
public:
    DegenerateProjection() : std::domain_error("azimuth undefined: vector has zero x-y projection") {}
};

/// A single classical bit. Parity is xor; the +/-1 outcome is (-1)^bit.
struct Bit {
    std::uint8_t value = 0;

    constexpr Bit() = default;
    constexpr explicit Bit(bool b) : value(b ? 1 : 0) {}

    constexpr bool is_set() const { return value != 0; }
    constexpr int sign() const { return value ? -1 : 1; }

    friend constexpr Bit operator^(Bit a, Bit b) { return Bit((a.value ^ b.value) != 0); }
    friend constexpr Bit operator&(Bit a, Bit b) { return Bit((a.value & b.value) != 0); }
    constexpr Bit& operator^=(Bit o) { value ^= o.value; return *this; }
    friend constexpr bool operator==(Bit, Bit) = default;
};

inline constexpr Bit kZero{false};
inline constexpr Bit kOne{true};

/// Measurement or hidden phase in radians. The raw value is kept as given so
/// that sums such as phi_a + phi_b + phi_1 do not pick up reduction error;
/// reduce with normalized() when a canonical representative is needed.
struct PhaseAngle {
    double value = 0.0;

    constexpr PhaseAngle() = default;
    constexpr explicit PhaseAngle(double radians) : value(radians) {}

    /// Representative in [0, 2pi).
    double normalized() const;

    friend constexpr PhaseAngle operator+(PhaseAngle a, PhaseAngle b) { return PhaseAngle(a.value + b.value); }
    friend constexpr PhaseAngle operator-(PhaseAngle a, PhaseAngle b) { return PhaseAngle(a.value - b.value); }
    constexpr PhaseAngle operator-() const { return PhaseAngle(-value); }
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// A point of the unit sphere. Construction checks |v| = 1 to 1e-12.
class UnitVector3 {
public:
    static constexpr double kNormTolerance = 1e-12;

    UnitVector3() : v_{0.0, 0.0, 1.0} {}
    explicit UnitVector3(Vec3 v);

    /// Rescales a nonzero vector onto the sphere.
    static UnitVector3 normalize(Vec3 v);
    /// The equatorial direction (cos phi, sin phi, 0).
    static UnitVector3 equatorial(PhaseAngle phi);

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3& vec() const { return v_; }
    double dot(Vec3 o) const { return v_.dot(o); }

private:
    Vec3 v_;
};

/// sg(x) = 0 if x > 0, 1 if x <= 0. Ties at zero give 1; every module relies
/// on this convention.
Bit sg(double x);

/// sg(cos(theta)), decided on theta reduced to [0, 2pi) against the double
/// constants pi/2 and 3pi/2, so that sums landing exactly on those values
/// (e.g. pi/4 + pi/4) resolve with the tie rule instead of the rounding of
/// std::cos.
Bit sg_cos(PhaseAngle theta);

/// atan2-style phase of the x-y projection. Throws DegenerateProjection when
/// v.x == v.y == 0.
PhaseAngle azimuth(Vec3 v);

/// Shared hidden variables of the two-group models: two independent uniform
/// sphere points, their sum and difference, and the four azimuths.
struct HiddenVariables {
    UnitVector3 lambda1;
    UnitVector3 lambda2;
    Vec3 lambda_plus;
    Vec3 lambda_minus;
    PhaseAngle phi1;
    PhaseAngle phi2;
    PhaseAngle phi_plus;
    PhaseAngle phi_minus;

    /// Derives the dependent fields from two given sphere points. Throws
    /// DegenerateProjection if any of the four azimuths is undefined.
    static HiddenVariables from_vectors(UnitVector3 l1, UnitVector3 l2);
};

/// Uniform point on S^2 (uniform z in [-1,1], uniform azimuth).
UnitVector3 sample_sphere(RandomStream& rng);

/// Draws (lambda1, lambda2) and resamples on the measure-zero event of a
/// degenerate azimuth.
HiddenVariables make_hidden(RandomStream& rng);

/// Inverse CDF of the density cos(t)/2 on [-pi/2, pi/2]: arcsin(2u - 1).
PhaseAngle cos_density_quantile(double u);

PhaseAngle sample_cos_density(RandomStream& rng);

std::string to_string(Bit b);

}  // namespace ghz
