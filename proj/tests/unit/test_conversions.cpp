#include <doctest.h>

#include <cmath>

#include "ghz/conversions.hpp"
#include "test_util.hpp"

using namespace ghz;

namespace {

// Records the M-box inputs it was handed; a = 0, b = relation.
struct RecordingM {
    double* x;
    double* y;
    PairOutcome operator()(double xx, double yy) const {
        *x = xx;
        *y = yy;
        return {kZero, sg(xx - yy)};
    }
};

// The intermediate of the intuition: a ^ b = sg(sin(phi_a - phi_b)).
PairOutcome sine_box(double phi_a, double phi_b, BitSource& rng) {
    const Bit a = rng.bit();
    return {a, a ^ sg(std::sin(phi_a - phi_b))};
}

}  // namespace

TEST_CASE("cosine from millionaire: hand traces") {
    double x = -1, y = -1;
    const auto o1 = c2_from_m(PhaseAngle(0), PhaseAngle(0), RecordingM{&x, &y});
    CHECK(x == 0.0);
    CHECK(y == 0.5);
    CHECK(o1.relation() == kZero);

    const auto o2 = c2_from_m(PhaseAngle(kHalfPi), PhaseAngle(kHalfPi), RecordingM{&x, &y});
    CHECK(x == 0.5);
    CHECK(y == 0.0);
    CHECK(o2.relation() == kOne);
}

TEST_CASE("folding lands in [0,1) for any angle, negatives included") {
    RandomStream rng(71, 0);
    for (int i = 0; i < 100000; ++i) {
        const double phi = (rng.uniform() - 0.5) * 40.0;
        const auto fa = fold_alice(PhaseAngle(phi));
        const auto fb = fold_bob(PhaseAngle(phi));
        REQUIRE(fa.value >= 0.0);
        REQUIRE(fa.value < 1.0);
        REQUIRE(fb.value >= 0.0);
        REQUIRE(fb.value < 1.0);
        CHECK(fa.flip == Bit(static_cast<long long>(std::floor(phi / kPi)) % 2 != 0));
    }
    CHECK(fold_alice(PhaseAngle(-0.5 * kPi)).value == doctest::Approx(0.5));
    CHECK(fold_alice(PhaseAngle(-0.5 * kPi)).flip == kOne);
    CHECK(fold_alice(PhaseAngle(kPi)).value == 0.0);
    CHECK(fold_alice(PhaseAngle(kPi)).flip == kOne);
}

TEST_CASE("cosine from millionaire is exact on every call") {
    RandomStream rng(72, 0);
    for (int i = 0; i < 100000; ++i) {
        const PhaseAngle a(kTwoPi * rng.uniform()), b(kTwoPi * rng.uniform());
        REQUIRE(c2_from_m(a, b, rng).relation() == eval_c2(a, b, rng).relation());
    }
    // wider range, negatives included
    for (int i = 0; i < 100000; ++i) {
        const PhaseAngle a((rng.uniform() - 0.5) * 30), b((rng.uniform() - 0.5) * 30);
        REQUIRE(c2_from_m(a, b, rng).relation() == sg(std::cos(a.value + b.value)));
    }
}

TEST_CASE("millionaire from cosine") {
    RandomStream rng(73, 0);
    CHECK(m_from_c2(0.3, 0.7, rng).relation() == kOne);
    CHECK(m_from_c2(0.7, 0.3, rng).relation() == kZero);
    for (double x : {0.0, 0.25, 0.5, 0.75}) CHECK(m_from_c2(x, x, rng).relation() == kOne);
    CHECK_THROWS_AS(m_from_c2(1.0, 0.2, rng), InvalidInput);
    CHECK_THROWS_AS(m_from_c2(0.2, -0.01, rng), InvalidInput);

    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        REQUIRE(m_from_c2(x, y, rng).relation() == sg(x - y));
    }
}

TEST_CASE("round trip: millionaire over cosine over millionaire") {
    RandomStream rng(74, 0);
    auto native_m = [&](double x, double y) { return eval_m(x, y, rng); };
    auto c_over_m = [&](PhaseAngle a, PhaseAngle b) { return c2_from_m(a, b, native_m); };
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        REQUIRE(m_from_c2(x, y, c_over_m).relation() == eval_m(x, y, rng).relation());
    }
}

TEST_CASE("the sine box is the millionaire box on [0,1)") {
    RandomStream rng(75, 0);
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform(), y = rng.uniform();
        REQUIRE(sine_box(x, y, rng).relation() == sg(x - y));
        // sin(a - b) = cos(a - b - pi/2)
        REQUIRE(sine_box(x, y, rng).relation() == eval_c2(PhaseAngle(x), PhaseAngle(-y - kHalfPi), rng).relation());
    }
}
