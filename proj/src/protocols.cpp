#include "ghz/protocols.hpp"

#include <array>
#include <string>

namespace ghz {

namespace {

constexpr OutcomeMask pack(Bit b, int party) { return OutcomeMask(b.value) << party; }

// Shared wiring of the tripartite model once Charlie's two local bits are
// known. t_plus enters his output directly; t_plus ^ t_minus feeds both PR
// boxes.
OutcomeMask tri_wiring(PhaseAngle phi_a, PhaseAngle phi_b, Bit t_plus, Bit t_minus, const HiddenVariables& h,
                       BoxHarness& boxes) {
    constexpr int alice = 0, bob = 1, charlie = 2;
    const BoxId c1 = boxes.c2(alice, bob, phi_a, phi_b + h.phi1);
    const BoxId c2 = boxes.c2(alice, bob, phi_a, phi_b + h.phi2);

    const Bit a1 = boxes.output(c1, alice), a2 = boxes.output(c2, alice);
    const Bit b1 = boxes.output(c1, bob), b2 = boxes.output(c2, bob);
    const Bit z = t_plus ^ t_minus;

    const BoxId p_ac = boxes.pr(alice, charlie, a1 ^ a2, z);
    const BoxId p_bc = boxes.pr(bob, charlie, b1 ^ b2, z);

    const Bit A = a1 ^ boxes.output(p_ac, alice);
    const Bit B = b1 ^ boxes.output(p_bc, bob);
    const Bit C = boxes.output(p_ac, charlie) ^ boxes.output(p_bc, charlie) ^ t_plus;
    return pack(A, alice) | pack(B, bob) | pack(C, charlie);
}

template <class Fn>
RunResult collect(std::size_t parties, int shared_vectors, BitSource& rng, Fn&& fn) {
    RunResult r;
    BoxHarness boxes(r.transcript, rng);
    r.bits = unpack(fn(boxes), parties);
    r.shared_vectors = shared_vectors;
    return r;
}

}  // namespace

UnitVector3 PartySetting::direction() const {
    if (is_equatorial()) return UnitVector3::equatorial(phase());
    return std::get<UnitVector3>(value_);
}

int RunResult::product() const {
    Bit parity;
    for (Bit b : bits) parity ^= b;
    return parity.sign();
}

std::vector<Bit> unpack(OutcomeMask mask, std::size_t parties) {
    std::vector<Bit> bits(parties);
    for (std::size_t i = 0; i < parties; ++i) bits[i] = Bit(((mask >> i) & 1U) != 0);
    return bits;
}

OutcomeMask run_svetlichny_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c,
                               const HiddenVariables& h, BoxHarness& boxes) {
    constexpr int alice = 0, bob = 1, charlie = 2;
    // Alice and Bob pool their angles into phi_ab.
    const PhaseAngle phi_ab = phi_a + phi_b;
    const Bit s1 = sg_cos(phi_ab + h.phi1);
    const Bit s2 = sg_cos(phi_ab + h.phi2);
    const Bit t_plus = sg_cos(phi_c - h.phi_plus);
    const Bit t_minus = sg_cos(phi_c - h.phi_minus);

    // the group's PR port is held by Alice
    const BoxId p = boxes.pr(alice, charlie, s1 ^ s2, t_plus ^ t_minus);
    const Bit alpha_tilde = s1 ^ boxes.output(p, alice);
    const Bit gamma = t_plus ^ boxes.output(p, charlie);

    // (alpha, beta) = (alpha~, +1) or (-alpha~, -1), each with probability 1/2
    const Bit split = boxes.randomness().bit();
    return pack(alpha_tilde ^ split, alice) | pack(split, bob) | pack(gamma, charlie);
}

OutcomeMask run_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& h,
                    BoxHarness& boxes) {
    return tri_wiring(phi_a, phi_b, sg_cos(phi_c - h.phi_plus), sg_cos(phi_c - h.phi_minus), h, boxes);
}

OutcomeMask run_tri_bloch(PhaseAngle phi_a, PhaseAngle phi_b, const UnitVector3& c, const HiddenVariables& h,
                          BoxHarness& boxes) {
    return tri_wiring(phi_a, phi_b, sg(c.dot(h.lambda_plus)), sg(c.dot(h.lambda_minus)), h, boxes);
}

OutcomeMask run_quad(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, PhaseAngle phi_d,
                     const HiddenVariables& h, BoxHarness& boxes) {
    constexpr int alice = 0, bob = 1, charlie = 2, dave = 3;
    const BoxId ab1 = boxes.c2(alice, bob, phi_a, phi_b + h.phi1);
    const BoxId ab2 = boxes.c2(alice, bob, phi_a, phi_b + h.phi2);
    const BoxId cd1 = boxes.c2(charlie, dave, phi_c - h.phi_plus, phi_d);
    const BoxId cd2 = boxes.c2(charlie, dave, phi_c - h.phi_minus, phi_d);

    const Bit a1 = boxes.output(ab1, alice), b1 = boxes.output(ab1, bob);
    const Bit c1 = boxes.output(cd1, charlie), d1 = boxes.output(cd1, dave);
    const Bit x = a1 ^ boxes.output(ab2, alice);
    const Bit y = b1 ^ boxes.output(ab2, bob);
    const Bit z = c1 ^ boxes.output(cd2, charlie);
    const Bit w = d1 ^ boxes.output(cd2, dave);

    const BoxId ac = boxes.pr(alice, charlie, x, z);
    const BoxId ad = boxes.pr(alice, dave, x, w);
    const BoxId bc = boxes.pr(bob, charlie, y, z);
    const BoxId bd = boxes.pr(bob, dave, y, w);

    const Bit A = a1 ^ boxes.output(ac, alice) ^ boxes.output(ad, alice);
    const Bit B = b1 ^ boxes.output(bc, bob) ^ boxes.output(bd, bob);
    const Bit C = c1 ^ boxes.output(ac, charlie) ^ boxes.output(bc, charlie);
    const Bit D = d1 ^ boxes.output(ad, dave) ^ boxes.output(bd, dave);
    return pack(A, alice) | pack(B, bob) | pack(C, charlie) | pack(D, dave);
}

OutcomeMask run_general(std::span<const PhaseAngle> phis, int k, const HiddenVariables& h, BoxHarness& boxes) {
    const int n = static_cast<int>(phis.size());
    if (n < 2 || n > 64) throw InvalidInput("run_general: need 2 <= n <= 64 parties, got " + std::to_string(n));
    if (k < 1 || k >= n)
        throw InvalidInput("run_general: group size k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                           ", n=" + std::to_string(n) + ")");

    std::array<int, 64> ids{};
    std::array<PhaseAngle, 64> inputs{};
    for (int i = 0; i < n; ++i) ids[i] = i;

    // Two cosine boxes for the group [first, first + size); the group's first
    // member adds the offset.
    auto group_boxes = [&](int first, int size, PhaseAngle off1, PhaseAngle off2) {
        std::array<BoxId, 2> out{};
        const PhaseAngle offsets[] = {off1, off2};
        for (int j = 0; j < 2; ++j) {
            for (int i = 0; i < size; ++i) inputs[i] = phis[first + i];
            inputs[0] = inputs[0] + offsets[j];
            out[j] = boxes.cn(std::span(ids).subspan(first, size), std::span(inputs).first(size));
        }
        return out;
    };
    const auto g1 = group_boxes(0, k, h.phi1, h.phi2);
    const auto g2 = group_boxes(k, n - k, -h.phi_plus, -h.phi_minus);

    std::array<Bit, 64> out{};
    std::array<Bit, 64> pr_input{};
    for (int i = 0; i < n; ++i) {
        const auto& g = i < k ? g1 : g2;
        out[i] = boxes.output(g[0], i);
        pr_input[i] = out[i] ^ boxes.output(g[1], i);
    }
    for (int i = 0; i < k; ++i) {
        for (int j = k; j < n; ++j) {
            const BoxId p = boxes.pr(i, j, pr_input[i], pr_input[j]);
            out[i] ^= boxes.output(p, i);
            out[j] ^= boxes.output(p, j);
        }
    }
    OutcomeMask mask = 0;
    for (int i = 0; i < n; ++i) mask |= pack(out[i], i);
    return mask;
}

OutcomeMask run_single_cbox(std::span<const PhaseAngle> phis, PhaseAngle phi_lambda, BoxHarness& boxes) {
    const int n = static_cast<int>(phis.size());
    if (n < 2 || n > 64) throw InvalidInput("run_single_cbox: need 2 <= n <= 64 parties");
    std::array<int, 64> ids{};
    std::array<PhaseAngle, 64> inputs{};
    for (int i = 0; i < n; ++i) {
        ids[i] = i;
        inputs[i] = phis[i];
    }
    inputs[0] = inputs[0] + phi_lambda;
    const BoxId box = boxes.cn(std::span(ids).first(n), std::span(inputs).first(n));
    OutcomeMask mask = 0;
    for (int i = 0; i < n; ++i) mask |= pack(boxes.output(box, i), i);
    return mask;
}

RunResult run_svetlichny_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                             BitSource& rng) {
    return collect(3, 2, rng, [&](BoxHarness& b) { return run_svetlichny_tri(phi_a, phi_b, phi_c, hidden, b); });
}

RunResult run_tri(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                  BitSource& rng) {
    return collect(3, 2, rng, [&](BoxHarness& b) { return run_tri(phi_a, phi_b, phi_c, hidden, b); });
}

RunResult run_tri_bloch(PhaseAngle phi_a, PhaseAngle phi_b, const UnitVector3& c, const HiddenVariables& hidden,
                        BitSource& rng) {
    return collect(3, 2, rng, [&](BoxHarness& b) { return run_tri_bloch(phi_a, phi_b, c, hidden, b); });
}

RunResult run_quad(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, PhaseAngle phi_d,
                   const HiddenVariables& hidden, BitSource& rng) {
    return collect(4, 2, rng, [&](BoxHarness& b) { return run_quad(phi_a, phi_b, phi_c, phi_d, hidden, b); });
}

RunResult run_general(std::span<const PhaseAngle> phis, int k, const HiddenVariables& hidden, BitSource& rng) {
    return collect(phis.size(), 2, rng, [&](BoxHarness& b) { return run_general(phis, k, hidden, b); });
}

RunResult run_single_cbox(std::span<const PhaseAngle> phis, RandomStream& rng) {
    const PhaseAngle phi_lambda = sample_cos_density(rng);
    return collect(phis.size(), 0, rng, [&](BoxHarness& b) { return run_single_cbox(phis, phi_lambda, b); });
}

}  // namespace ghz
