#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ghz/core.hpp"

namespace ghz {

enum class BoxKind : std::uint8_t { pr, millionaire, cosine, function };

std::string_view to_string(BoxKind kind);

/// A party tried to read a box it does not hold a port on.
class PortViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using BoxId = std::size_t;

struct BoxRecord {
    BoxKind kind;
    std::span<const int> parties;
    /// Per-party input as a real. Bits are 0/1, angles are radians, a
    /// function-valued input is recorded as its domain size negated.
    std::span<const double> inputs;
    std::span<const Bit> outputs;
    Bit relation;

    std::size_t arity() const { return parties.size(); }
};

/// Flat log of box evaluations in one protocol run. clear() keeps capacity so
/// a transcript can be reused across trials without reallocating.
class Transcript {
public:
    void clear();

    BoxId record(BoxKind kind, std::span<const int> parties, std::span<const double> inputs,
                 std::span<const Bit> outputs, Bit relation);

    Bit output(BoxId id, int party) const;

    std::size_t size() const { return entries_.size(); }
    BoxRecord box(BoxId id) const;

    std::size_t count(BoxKind kind) const;
    std::size_t count(BoxKind kind, std::size_t arity) const;
    std::size_t max_arity() const;

private:
    struct Entry {
        BoxKind kind;
        std::uint32_t offset;
        std::uint32_t arity;
        Bit relation;
    };
    std::vector<Entry> entries_;
    std::vector<int> parties_;
    std::vector<double> inputs_;
    std::vector<Bit> outputs_;
};

}  // namespace ghz
