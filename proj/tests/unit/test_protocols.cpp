#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "ghz/analysis.hpp"
#include "ghz/kernels.hpp"
#include "ghz/protocols.hpp"
#include "test_util.hpp"

using namespace ghz;
using testing::full_correlator;
using testing::parity;

namespace {

constexpr std::uint64_t kMillion = 1'000'000;

PhaseAngle pa(double v) { return PhaseAngle(v); }

// Every strict-subset correlator of an exact distribution.
void check_strict_subsets_vanish(const std::vector<double>& dist, int n) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t sub = 1; sub < full; ++sub) CHECK(subset_correlator(dist, sub) == 0.0);
}

// Two C boxes on one pair (x, y) and a PR box from each of x and y to a
// third party: the tripartite topology.
bool is_tripartite_topology(const Transcript& t, const std::set<int>& removed) {
    std::map<std::pair<int, int>, int> cboxes, prs;
    for (BoxId i = 0; i < t.size(); ++i) {
        const auto r = t.box(i);
        if (std::any_of(r.parties.begin(), r.parties.end(), [&](int p) { return removed.count(p) > 0; }))
            continue;
        if (r.arity() != 2) return false;
        const auto key = std::minmax(r.parties[0], r.parties[1]);
        if (r.kind == BoxKind::cosine) ++cboxes[key];
        else if (r.kind == BoxKind::pr) ++prs[key];
        else return false;
    }
    if (cboxes.size() != 1 || cboxes.begin()->second != 2 || prs.size() != 2) return false;
    const auto [x, y] = cboxes.begin()->first;
    std::set<int> third;
    for (const auto& [pair, count] : prs) {
        if (count != 1) return false;
        const auto [p, q] = pair;
        const bool px = p == x || p == y, qx = q == x || q == y;
        if (px == qx) return false;
        third.insert(px ? q : p);
        if (px) third.insert(1000 + p);
        else third.insert(1000 + q);
    }
    // one common outside party, linked once to x and once to y
    return third.size() == 3 && third.count(1000 + x) && third.count(1000 + y);
}

}  // namespace

TEST_CASE("svetlichny warm-up: product is +1 on every run at zero angles") {
    RandomStream rng(11, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto h = make_hidden(rng);
        REQUIRE(run_svetlichny_tri(pa(0), pa(0), pa(0), h, rng).product() == 1);
    }
}

TEST_CASE("svetlichny warm-up: correlations") {
    const std::array<PhaseAngle, 3> sum_pi{pa(1.0), pa(0.5), pa(kPi - 1.5)};
    CHECK(std::abs(full_correlator(Model::svetlichny(), sum_pi, kMillion, 12) + 1.0) <= 0.004);

    const std::array<PhaseAngle, 3> angles{pa(0.3), pa(1.9), pa(4.4)};
    const auto est = estimate_correlators(Model::svetlichny(), angles, 100000, 13);
    for (const auto& e : est)
        if (e.subset.size() == 1) CHECK(std::abs(e.value) <= 0.01);
}

TEST_CASE("tripartite model: box inputs and outputs follow the wiring") {
    RandomStream rng(21, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto h = make_hidden(rng);
        const auto phi = testing::random_angles(rng, 3);
        const auto r = run_tri(phi[0], phi[1], phi[2], h, rng);
        const auto& t = r.transcript;
        REQUIRE(t.size() == 4);
        CHECK(t.count(BoxKind::cosine, 2) == 2);
        CHECK(t.count(BoxKind::pr, 2) == 2);

        const auto c1 = t.box(0), c2 = t.box(1), p1 = t.box(2), p2 = t.box(3);
        CHECK(c1.parties[0] == 0);
        CHECK(c1.parties[1] == 1);
        CHECK(c1.inputs[0] == phi[0].value);
        CHECK(c1.inputs[1] == (phi[1] + h.phi1).value);
        CHECK(c2.inputs[1] == (phi[1] + h.phi2).value);
        CHECK(p1.parties[0] == 0);
        CHECK(p1.parties[1] == 2);
        CHECK(p2.parties[0] == 1);
        CHECK(p2.parties[1] == 2);

        const Bit a1 = c1.outputs[0], a2 = c2.outputs[0], b1 = c1.outputs[1], b2 = c2.outputs[1];
        const Bit tp = sg_cos(phi[2] - h.phi_plus), tm = sg_cos(phi[2] - h.phi_minus);
        CHECK(Bit(p1.inputs[0] != 0) == (a1 ^ a2));
        CHECK(Bit(p2.inputs[0] != 0) == (b1 ^ b2));
        CHECK(Bit(p1.inputs[1] != 0) == (tp ^ tm));
        CHECK(Bit(p2.inputs[1] != 0) == (tp ^ tm));

        CHECK(r.bits[0] == (a1 ^ p1.outputs[0]));
        CHECK(r.bits[1] == (b1 ^ p2.outputs[0]));
        CHECK(r.bits[2] == (p1.outputs[1] ^ p2.outputs[1] ^ tp));

        // per-run parity identity
        const Bit s1 = sg_cos(phi[0] + phi[1] + h.phi1), s2 = sg_cos(phi[0] + phi[1] + h.phi2);
        CHECK((r.bits[0] ^ r.bits[1] ^ r.bits[2]) == (s1 ^ tp ^ ((s1 ^ s2) & (tp ^ tm))));
        CHECK(r.shared_vectors == 2);
    }
}

TEST_CASE("tripartite model: full correlator") {
    const std::array<PhaseAngle, 3> zeros{};
    CHECK(std::abs(full_correlator(Model::tri(), zeros, kMillion, 22) - 1.0) <= 0.004);
    const std::array<PhaseAngle, 3> sixth{pa(kPi / 6), pa(kPi / 6), pa(kPi / 6)};
    CHECK(std::abs(full_correlator(Model::tri(), sixth, kMillion, 23)) <= 0.004);
}

TEST_CASE("tripartite model: strict-subset correlators vanish exactly at fixed hidden variables") {
    RandomStream rng(24, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = make_hidden(rng);
        const auto phi = testing::random_angles(rng, 3);
        const auto dist = enumerate_outcomes(3, 4, [&](BitSource& s) {
            Transcript t;
            BoxHarness boxes(t, s);
            return run_tri(phi[0], phi[1], phi[2], h, boxes);
        });
        check_strict_subsets_vanish(dist, 3);
    }
}

TEST_CASE("tripartite model: hidden-variable average of the output parity") {
    RandomStream rng(25, 0);
    constexpr int kN = 200000;
    for (const double total : {0.0, 1.0, kPi / 2, 2.5, kPi}) {
        const auto phi = testing::angles_with_sum(rng, 3, total);
        double ones = 0;
        for (int i = 0; i < kN; ++i) {
            const auto h = make_hidden(rng);
            const auto r = run_tri(phi[0], phi[1], phi[2], h, rng);
            ones += (r.bits[0] ^ r.bits[1] ^ r.bits[2]).value;
        }
        const double p = (1 - std::cos(total)) / 2;
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / kN);
        CHECK(std::abs(ones / kN - p) <= 4 * sigma + 1e-12);
    }
}

TEST_CASE("out-of-plane Charlie") {
    SUBCASE("in-plane direction reproduces the equatorial run bit for bit") {
        RandomStream setup(31, 0);
        for (int trial = 0; trial < 500; ++trial) {
            const auto phi = testing::random_angles(setup, 3);
            RandomStream r1(31, trial + 1), r2(31, trial + 1);
            const auto h1 = make_hidden(r1), h2 = make_hidden(r2);
            const auto a = run_tri(phi[0], phi[1], phi[2], h1, r1);
            const auto b = run_tri_bloch(phi[0], phi[1], UnitVector3::equatorial(phi[2]), h2, r2);
            REQUIRE(a.bits == b.bits);
            REQUIRE(a.transcript.size() == b.transcript.size());
            for (BoxId i = 0; i < a.transcript.size(); ++i) {
                const auto x = a.transcript.box(i), y = b.transcript.box(i);
                CHECK(std::equal(x.inputs.begin(), x.inputs.end(), y.inputs.begin()));
                CHECK(std::equal(x.outputs.begin(), x.outputs.end(), y.outputs.begin()));
            }
        }
    }
    SUBCASE("z-axis Charlie gives a vanishing triple correlator") {
        const std::array<PhaseAngle, 2> ab{pa(0.4), pa(1.3)};
        const Model m = Model::tri_bloch(UnitVector3({0, 0, 1}));
        const double v = full_correlator(m, ab, kMillion, 32);
        CHECK(std::abs(v) <= 0.004);
        CHECK(m.target_correlator(ab) == doctest::Approx(0.0));
    }
    SUBCASE("tilted Charlie matches the quantum value") {
        const std::array<PhaseAngle, 2> ab{pa(0.2), pa(0.5)};
        const auto c = UnitVector3::normalize({0.6, -0.3, 0.5});
        const Model m = Model::tri_bloch(c);
        const double target = c.x() * std::cos(0.7) - c.y() * std::sin(0.7);
        CHECK(m.target_correlator(ab) == doctest::Approx(target));
        CHECK(std::abs(full_correlator(m, ab, kMillion, 33) - target) <= 0.004);
    }
    SUBCASE("in-plane marginals vanish") {
        const std::array<PhaseAngle, 2> ab{pa(2.1), pa(0.9)};
        const auto est = estimate_correlators(Model::tri_bloch(UnitVector3::equatorial(pa(4.0))), ab, 100000, 34);
        for (const auto& e : est)
            if (e.subset.size() == 1) CHECK(std::abs(e.value) <= 0.01);
    }
}

TEST_CASE("four-partite model") {
    const std::array<PhaseAngle, 4> zeros{};
    CHECK(std::abs(full_correlator(Model::quad(), zeros, kMillion, 41) - 1.0) <= 0.004);
    const std::array<PhaseAngle, 4> quarter{pa(kPi / 4), pa(kPi / 4), pa(kPi / 4), pa(kPi / 4)};
    CHECK(std::abs(full_correlator(Model::quad(), quarter, kMillion, 42) + 1.0) <= 0.004);

    RandomStream rng(43, 0);
    const auto h = make_hidden(rng);
    const auto r = run_quad(pa(0.1), pa(0.2), pa(0.3), pa(0.4), h, rng);
    CHECK(r.transcript.count(BoxKind::cosine, 2) == 4);
    CHECK(r.transcript.count(BoxKind::pr, 2) == 4);

    SUBCASE("removing any one party leaves the tripartite topology") {
        for (int p = 0; p < 4; ++p) CHECK(is_tripartite_topology(r.transcript, {p}));
        // sanity: the full diagram, or removing two parties, does not
        CHECK_FALSE(is_tripartite_topology(r.transcript, {}));
        CHECK_FALSE(is_tripartite_topology(r.transcript, {0, 1}));
    }
    SUBCASE("tripartite run itself has the topology") {
        const auto t = run_tri(pa(1), pa(2), pa(3), h, rng);
        CHECK(is_tripartite_topology(t.transcript, {}));
    }
    SUBCASE("strict subsets vanish exactly") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto hh = make_hidden(rng);
            const auto phi = testing::random_angles(rng, 4);
            const auto dist = enumerate_outcomes(4, 8, [&](BitSource& s) {
                Transcript t;
                BoxHarness boxes(t, s);
                return run_quad(phi[0], phi[1], phi[2], phi[3], hh, boxes);
            });
            check_strict_subsets_vanish(dist, 4);
        }
    }
}

TEST_CASE("general two-group model reduces to the tripartite and four-partite models") {
    RandomStream setup(51, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto phi3 = testing::random_angles(setup, 3);
        RandomStream r1(51, trial + 1), r2(51, trial + 1);
        const auto h1 = make_hidden(r1), h2 = make_hidden(r2);
        CHECK(run_general(phi3, 2, h1, r1).bits == run_tri(phi3[0], phi3[1], phi3[2], h2, r2).bits);

        const auto phi4 = testing::random_angles(setup, 4);
        RandomStream q1(52, trial), q2(52, trial);
        const auto g1 = make_hidden(q1), g2 = make_hidden(q2);
        CHECK(run_general(phi4, 2, g1, q1).bits == run_quad(phi4[0], phi4[1], phi4[2], phi4[3], g2, q2).bits);
    }
}

TEST_CASE("general two-group model: correlations and resources") {
    RandomStream rng(53, 0);
    const auto five = testing::angles_with_sum(rng, 5, kPi / 3);
    CHECK(std::abs(full_correlator(Model::general(5, 2), five, kMillion, 54) - 0.5) <= 0.004);

    const auto six = testing::random_angles(rng, 6);
    for (const auto& e : estimate_correlators(Model::general(6, 3), six, 200000, 55))
        if (e.subset.size() < 6) CHECK(std::abs(e.value) <= 0.01);

    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; k < n; ++k) {
            const auto phi = testing::random_angles(rng, n);
            const auto h = make_hidden(rng);
            const auto r = run_general(phi, k, h, rng);
            const auto& t = r.transcript;
            CHECK(t.count(BoxKind::pr) == std::size_t(k * (n - k)));
            CHECK(t.count(BoxKind::cosine) == 4);
            if (k == n - k) CHECK(t.count(BoxKind::cosine, k) == 4);
            else {
                CHECK(t.count(BoxKind::cosine, k) == 2);
                CHECK(t.count(BoxKind::cosine, n - k) == 2);
            }
            CHECK(r.shared_vectors == 2);

            // exact subset vanishing while the enumeration stays small
            const int bits = 2 * (k - 1) + 2 * (n - k - 1) + k * (n - k);
            if (bits <= 14) {
                const auto dist = enumerate_outcomes(n, bits, [&](BitSource& s) {
                    Transcript tt;
                    BoxHarness boxes(tt, s);
                    return run_general(phi, k, h, boxes);
                });
                check_strict_subsets_vanish(dist, n);
            }
        }
    }
}

TEST_CASE("general two-group model rejects bad group sizes") {
    RandomStream rng(56, 0);
    const auto h = make_hidden(rng);
    const auto phi = testing::random_angles(rng, 4);
    CHECK_THROWS_AS(run_general(phi, 0, h, rng), InvalidInput);
    CHECK_THROWS_AS(run_general(phi, 4, h, rng), InvalidInput);
    CHECK_THROWS_AS(run_general(std::span(phi).first(1), 1, h, rng), InvalidInput);
}

TEST_CASE("single cosine box model") {
    RandomStream rng(61, 0);
    const auto two = testing::angles_with_sum(rng, 2, kPi / 3);
    CHECK(std::abs(full_correlator(Model::single_cbox(2), two, kMillion, 62) - 0.5) <= 0.004);
    const auto three = testing::angles_with_sum(rng, 3, 0.0);
    CHECK(std::abs(full_correlator(Model::single_cbox(3), three, kMillion, 63) - 1.0) <= 0.004);
    const auto five = testing::angles_with_sum(rng, 5, 2 * kPi / 3);
    CHECK(std::abs(full_correlator(Model::single_cbox(5), five, kMillion, 64) + 0.5) <= 0.004);

    const auto r = run_single_cbox(five, rng);
    CHECK(r.shared_vectors == 0);
    CHECK(r.transcript.size() == 1);
    CHECK(r.transcript.count(BoxKind::cosine, 5) == 1);
    // only party 0's input is shifted
    const auto box = r.transcript.box(0);
    for (int i = 1; i < 5; ++i) CHECK(box.inputs[i] == five[i].value);
    CHECK(std::abs(box.inputs[0] - five[0].value) <= kHalfPi);

    const auto tally = simulate_serial(Model::single_cbox(3), three, 1000, 65);
    CHECK(tally.shared_vectors == 0);
    const auto tri = simulate_serial(Model::tri(), three, 1000, 65);
    CHECK(tri.shared_vectors == 2000);
}
