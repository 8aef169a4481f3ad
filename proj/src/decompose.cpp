#include "ghz/decompose.hpp"

#include <json.hpp>

#include "ghz/boxes.hpp"

namespace ghz {

namespace {

std::size_t product(std::span<const std::size_t> grids) {
    std::size_t p = 1;
    for (std::size_t m : grids) p *= m;
    return p;
}

// Outputs of parties 0..k-1 for the full-correlation table `f` over their
// first k grids.
std::vector<Bit> run_prefix(std::span<const std::size_t> grids, const std::vector<Bit>& f,
                            std::span<const std::size_t> inputs, BoxHarness& boxes) {
    const std::size_t k = grids.size();
    if (k == 2) {
        // Party 0 knows x0 and so the whole row f(x0, .).
        const std::size_t m1 = grids[1];
        const auto row = f.begin() + static_cast<std::ptrdiff_t>(inputs[0] * m1);
        const FunctionTable table(std::vector<Bit>(row, row + static_cast<std::ptrdiff_t>(m1)));
        const BoxId box = boxes.fbox(0, 1, table, inputs[1]);
        return {boxes.output(box, 0), boxes.output(box, 1)};
    }

    const std::size_t last = k - 1;
    const std::size_t m = grids[last];
    const auto sub_grids = grids.first(last);
    const auto sub_inputs = inputs.first(last);
    const std::size_t sub_size = f.size() / m;

    // alpha[i][z]: party i's output in branch z
    std::vector<std::vector<Bit>> alpha(last, std::vector<Bit>(m));
    std::vector<Bit> slice(sub_size);
    for (std::size_t z = 0; z < m; ++z) {
        for (std::size_t j = 0; j < sub_size; ++j) slice[j] = f[j * m + z];
        const std::vector<Bit> out = run_prefix(sub_grids, slice, sub_inputs, boxes);
        for (std::size_t i = 0; i < last; ++i) alpha[i][z] = out[i];
    }

    std::vector<Bit> outputs(k);
    for (std::size_t i = 0; i < last; ++i) {
        const BoxId box =
            boxes.fbox(static_cast<int>(i), static_cast<int>(last), FunctionTable(alpha[i]), inputs[last]);
        outputs[i] = boxes.output(box, static_cast<int>(i));
        outputs[last] ^= boxes.output(box, static_cast<int>(last));
    }
    return outputs;
}

}  // namespace

std::size_t CorrelationSpec::index(std::span<const std::size_t> inputs) const {
    if (inputs.size() != grids.size()) throw InvalidInput("CorrelationSpec: input tuple has wrong length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (inputs[i] >= grids[i]) throw InvalidInput("CorrelationSpec: input outside grid");
        idx = idx * grids[i] + inputs[i];
    }
    return idx;
}

void CorrelationSpec::validate() const {
    if (grids.size() < 2) throw InvalidInput("CorrelationSpec: need at least 2 parties");
    for (std::size_t m : grids)
        if (m == 0) throw InvalidInput("CorrelationSpec: empty grid");
    if (f.size() != product(grids)) throw InvalidInput("CorrelationSpec: table size does not match grids");
}

CorrelationSpec CorrelationSpec::random(std::vector<std::size_t> grids, RandomStream& rng) {
    CorrelationSpec s;
    s.grids = std::move(grids);
    s.f.resize(product(s.grids));
    for (Bit& b : s.f) b = rng.bit();
    s.validate();
    return s;
}

std::string CorrelationSpec::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = grids.size();
    j["grids"] = grids;
    auto& table = j["f"] = nlohmann::json::array();
    for (Bit b : f) table.push_back(int(b.value));
    return j.dump();
}

CorrelationSpec CorrelationSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("CorrelationSpec: ") + e.what());
    }
    CorrelationSpec s;
    try {
        if (j.value("schema", 1) != 1) throw InvalidInput("CorrelationSpec: unsupported schema version");
        s.grids = j.at("grids").get<std::vector<std::size_t>>();
        for (int v : j.at("f").get<std::vector<int>>()) {
            if (v != 0 && v != 1) throw InvalidInput("CorrelationSpec: table entries must be 0 or 1");
            s.f.push_back(Bit(v == 1));
        }
        if (j.contains("n") && j.at("n").get<std::size_t>() != s.grids.size())
            throw InvalidInput("CorrelationSpec: n does not match grids");
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("CorrelationSpec: ") + e.what());
    }
    s.validate();
    return s;
}

std::vector<Bit> decompose_run(const CorrelationSpec& spec, std::span<const std::size_t> inputs, BitSource& rng,
                               Transcript& transcript) {
    spec.validate();
    (void)spec.index(inputs);  // range check
    BoxHarness boxes(transcript, rng);
    return run_prefix(spec.grids, spec.f, inputs, boxes);
}

std::uint64_t decompose_box_count(std::span<const std::size_t> grids) {
    if (grids.size() < 2) throw InvalidInput("decompose_box_count: need at least 2 parties");
    std::uint64_t t = 1;
    for (std::size_t k = 3; k <= grids.size(); ++k) t = grids[k - 1] * t + (k - 1);
    return t;
}

std::vector<Bit> randomize_subcorrelations(std::span<const Bit> outputs, std::span<const Bit> pair_bits) {
    const std::size_t n = outputs.size();
    if (pair_bits.size() != n * (n - 1) / 2)
        throw InvalidInput("randomize_subcorrelations: need one shared bit per pair of parties");
    std::vector<Bit> out(outputs.begin(), outputs.end());
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            out[i] ^= pair_bits[p];
            out[j] ^= pair_bits[p];
        }
    return out;
}

}  // namespace ghz
