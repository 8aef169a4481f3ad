#include "ghz/comm.hpp"

#include <algorithm>
#include <cmath>

#include "ghz/conversions.hpp"

namespace ghz {

BinaryExpansion::BinaryExpansion(std::vector<Bit> digits) : digits_(std::move(digits)) {}

BinaryExpansion BinaryExpansion::from_real(double x, std::size_t length) {
    if (!(x >= 0.0 && x < 1.0)) throw InvalidInput("BinaryExpansion: value outside [0,1)");
    std::vector<Bit> digits(length);
    for (std::size_t i = 0; i < length; ++i) {
        x *= 2.0;  // exact
        const bool one = x >= 1.0;
        digits[i] = Bit(one);
        if (one) x -= 1.0;
    }
    return BinaryExpansion(std::move(digits));
}

double BinaryExpansion::value() const {
    double v = 0.0;
    for (std::size_t i = digits_.size(); i-- > 0;) v = (v + digits_[i].value) * 0.5;
    return v;
}

CommTrace simulate_m_comm(const BinaryExpansion& x, const BinaryExpansion& y, BitSource& rng,
                          std::size_t max_rounds) {
    CommTrace t;
    const std::size_t limit = std::max<std::size_t>(1, max_rounds);
    Bit differ;
    std::size_t n = 0;
    while (n < limit) {
        const Bit sent = x.digit(n);  // Alice -> Bob
        ++t.bits_alice;
        differ = sent ^ y.digit(n);  // Bob -> Alice
        ++t.bits_bob;
        ++n;
        if (differ.is_set()) break;
    }
    t.rounds = static_cast<int>(n);
    // At the first differing digit, Alice's digit is 1 exactly when x > y.
    const bool alice_larger = differ.is_set() && x.digit(n - 1).is_set();
    t.decided = alice_larger ? CommDecision::alice_larger : CommDecision::bob_larger_or_equal;
    t.a = rng.bit();
    t.b = t.a ^ Bit(!alice_larger);  // sg(x - y)
    return t;
}

double RoundHistogram::probability(std::size_t rounds) const {
    if (trials == 0 || rounds >= counts.size()) return 0.0;
    return double(counts[rounds]) / double(trials);
}

double RoundHistogram::mean_rounds() const {
    if (trials == 0) return 0.0;
    long double s = 0;
    for (std::size_t r = 0; r < counts.size(); ++r) s += static_cast<long double>(r) * counts[r];
    return static_cast<double>(s / trials);
}

void RoundHistogram::merge(const RoundHistogram& other) {
    if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t r = 0; r < other.counts.size(); ++r) counts[r] += other.counts[r];
    trials += other.trials;
}

RoundHistogram comm_cost_distribution(std::uint64_t trials, RandomStream& rng) {
    RoundHistogram h;
    h.counts.assign(BinaryExpansion::kMaxDigits + 1, 0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto x = BinaryExpansion::from_real(rng.uniform());
        const auto y = BinaryExpansion::from_real(rng.uniform());
        ++h.counts[simulate_m_comm(x, y, rng).rounds];
    }
    h.trials = trials;
    return h;
}

PairOutcome CommBackend::pr(Bit x, Bit y, BitSource& rng) {
    bits_ += 1;
    return eval_pr(x, y, rng);
}

PairOutcome CommBackend::c2(PhaseAngle a, PhaseAngle b, BitSource& rng) {
    return c2_from_m(a, b, [&](double x, double y) {
        const CommTrace t =
            simulate_m_comm(BinaryExpansion::from_real(x), BinaryExpansion::from_real(y), rng);
        bits_ += static_cast<std::uint64_t>(t.total_bits());
        m_rounds_ += static_cast<std::uint64_t>(t.rounds);
        return PairOutcome{t.a, t.b};
    });
}

TriCommResult run_tri_comm(PhaseAngle phi_a, PhaseAngle phi_b, PhaseAngle phi_c, const HiddenVariables& hidden,
                           BitSource& rng) {
    TriCommResult r;
    CommBackend backend;
    BoxHarness boxes(r.run.transcript, rng, backend);
    r.run.bits = unpack(run_tri(phi_a, phi_b, phi_c, hidden, boxes), 3);
    r.run.shared_vectors = 2;
    r.total_bits = backend.bits();
    return r;
}

}  // namespace ghz
