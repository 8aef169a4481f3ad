#include "ghz/transcript.hpp"

#include <algorithm>
#include <string>

namespace ghz {

std::string_view to_string(BoxKind kind) {
    switch (kind) {
        case BoxKind::pr: return "pr";
        case BoxKind::millionaire: return "millionaire";
        case BoxKind::cosine: return "cosine";
        case BoxKind::function: return "function";
    }
    return "unknown";
}

void Transcript::clear() {
    entries_.clear();
    parties_.clear();
    inputs_.clear();
    outputs_.clear();
}

BoxId Transcript::record(BoxKind kind, std::span<const int> parties, std::span<const double> inputs,
                         std::span<const Bit> outputs, Bit relation) {
    if (inputs.size() != parties.size() || outputs.size() != parties.size())
        throw InvalidInput("Transcript::record: parties, inputs and outputs differ in length");
    const auto offset = static_cast<std::uint32_t>(parties_.size());
    parties_.insert(parties_.end(), parties.begin(), parties.end());
    inputs_.insert(inputs_.end(), inputs.begin(), inputs.end());
    outputs_.insert(outputs_.end(), outputs.begin(), outputs.end());
    entries_.push_back({kind, offset, static_cast<std::uint32_t>(parties.size()), relation});
    return entries_.size() - 1;
}

Bit Transcript::output(BoxId id, int party) const {
    if (id >= entries_.size()) throw PortViolation("no such box");
    const Entry& e = entries_[id];
    for (std::uint32_t i = 0; i < e.arity; ++i)
        if (parties_[e.offset + i] == party) return outputs_[e.offset + i];
    throw PortViolation("party " + std::to_string(party) + " has no port on box " + std::to_string(id));
}

BoxRecord Transcript::box(BoxId id) const {
    const Entry& e = entries_.at(id);
    return {e.kind, std::span<const int>(parties_).subspan(e.offset, e.arity),
            std::span<const double>(inputs_).subspan(e.offset, e.arity),
            std::span<const Bit>(outputs_).subspan(e.offset, e.arity), e.relation};
}

std::size_t Transcript::count(BoxKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.kind == kind; }));
}

std::size_t Transcript::count(BoxKind kind, std::size_t arity) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [&](const Entry& e) {
        return e.kind == kind && e.arity == arity;
    }));
}

std::size_t Transcript::max_arity() const {
    std::size_t m = 0;
    for (const Entry& e : entries_) m = std::max<std::size_t>(m, e.arity);
    return m;
}

}  // namespace ghz
