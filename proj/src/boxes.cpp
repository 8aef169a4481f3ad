#include "ghz/boxes.hpp"

#include <string>

namespace ghz {

FunctionTable::FunctionTable(std::vector<Bit> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidInput("FunctionTable: empty domain");
}

Bit FunctionTable::at(std::size_t x) const {
    if (x >= values_.size())
        throw InvalidInput("FunctionTable: index " + std::to_string(x) + " outside domain of size " +
                           std::to_string(values_.size()));
    return values_[x];
}

PairOutcome eval_pr(Bit x, Bit y, BitSource& rng) {
    const Bit a = rng.bit();
    return {a, a ^ (x & y)};
}

PairOutcome eval_m(double x, double y, BitSource& rng) {
    if (!(x >= 0.0 && x < 1.0) || !(y >= 0.0 && y < 1.0))
        throw InvalidInput("M box inputs must lie in [0,1)");
    const Bit a = rng.bit();
    return {a, a ^ sg(x - y)};
}

PairOutcome eval_c2(PhaseAngle phi_a, PhaseAngle phi_b, BitSource& rng) {
    const Bit a = rng.bit();
    return {a, a ^ sg_cos(phi_a + phi_b)};
}

Bit eval_cn(std::span<const PhaseAngle> phis, BitSource& rng, std::span<Bit> out) {
    if (phis.empty()) throw InvalidInput("cosine box needs at least one input");
    if (out.size() < phis.size()) throw InvalidInput("cosine box output buffer too small");
    PhaseAngle total;
    for (PhaseAngle p : phis) total = total + p;
    const Bit relation = sg_cos(total);
    Bit acc;
    const std::size_t last = phis.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
        out[i] = rng.bit();
        acc ^= out[i];
    }
    out[last] = acc ^ relation;
    return relation;
}

BoxOutcome eval_cn(std::span<const PhaseAngle> phis, BitSource& rng) {
    BoxOutcome r;
    r.outputs.resize(phis.size());
    r.relation = eval_cn(phis, rng, r.outputs);
    return r;
}

PairOutcome eval_fbox(const FunctionTable& f, std::size_t x, BitSource& rng) {
    const Bit value = f.at(x);
    const Bit a = rng.bit();
    return {a, a ^ value};
}

BoxBackend& native_boxes() {
    static BoxBackend backend;
    return backend;
}

BoxId BoxHarness::pr(int party_a, int party_b, Bit x, Bit y) {
    const PairOutcome o = backend_.pr(x, y, rng_);
    const int parties[] = {party_a, party_b};
    const double inputs[] = {double(x.value), double(y.value)};
    const Bit outs[] = {o.a, o.b};
    return transcript_.record(BoxKind::pr, parties, inputs, outs, x & y);
}

BoxId BoxHarness::m(int party_a, int party_b, double x, double y) {
    const PairOutcome o = eval_m(x, y, rng_);
    const int parties[] = {party_a, party_b};
    const double inputs[] = {x, y};
    const Bit outs[] = {o.a, o.b};
    return transcript_.record(BoxKind::millionaire, parties, inputs, outs, o.relation());
}

BoxId BoxHarness::c2(int party_a, int party_b, PhaseAngle phi_a, PhaseAngle phi_b) {
    const PairOutcome o = backend_.c2(phi_a, phi_b, rng_);
    const int parties[] = {party_a, party_b};
    const double inputs[] = {phi_a.value, phi_b.value};
    const Bit outs[] = {o.a, o.b};
    return transcript_.record(BoxKind::cosine, parties, inputs, outs, o.relation());
}

BoxId BoxHarness::cn(std::span<const int> parties, std::span<const PhaseAngle> phis) {
    if (parties.size() != phis.size()) throw InvalidInput("cosine box: one input per party required");
    if (phis.size() > kMaxArity) throw InvalidInput("cosine box arity exceeds harness limit");
    std::array<Bit, kMaxArity> outs{};
    std::array<double, kMaxArity> inputs{};
    const Bit relation = eval_cn(phis, rng_, outs);
    for (std::size_t i = 0; i < phis.size(); ++i) inputs[i] = phis[i].value;
    return transcript_.record(BoxKind::cosine, parties, std::span(inputs).first(phis.size()),
                              std::span(outs).first(phis.size()), relation);
}

BoxId BoxHarness::fbox(int table_party, int index_party, const FunctionTable& f, std::size_t x) {
    const PairOutcome o = eval_fbox(f, x, rng_);
    const int parties[] = {table_party, index_party};
    const double inputs[] = {-double(f.domain_size()), double(x)};
    const Bit outs[] = {o.a, o.b};
    return transcript_.record(BoxKind::function, parties, inputs, outs, o.relation());
}

}  // namespace ghz
