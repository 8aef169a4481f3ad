#pragma once

// Seeded random streams.
//
// Generator: xoshiro256** (Blackman & Vigna). The 256-bit state for a
// (seed, stream id) pair is filled by four successive SplitMix64 outputs
// whose starting value is mix64(seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15).
// Doubles are (next() >> 11) * 2^-53, single bits are taken LSB-first from a
// cached 64-bit word. Only integer arithmetic is involved, so a given
// (seed, stream id) yields the same sequence on every platform.

#include <cstdint>
#include <span>
#include <vector>

#include "ghz/core.hpp"

namespace ghz {

/// Source of the internal random bits of nonlocal boxes. Abstract so that
/// tests can replay every configuration of box randomness.
class BitSource {
public:
    virtual ~BitSource() = default;
    virtual Bit bit() = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RandomStream final : public BitSource {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    Bit bit() override;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t s_[4];
    std::uint64_t bit_cache_ = 0;
    int bits_left_ = 0;
};

/// Replays a fixed bit pattern: bit i of `pattern` is the i-th draw. Used to
/// enumerate every internal-randomness configuration of a protocol run.
class ScriptedBits final : public BitSource {
public:
    explicit ScriptedBits(std::uint64_t pattern) : pattern_(pattern) {}
    Bit bit() override;
    int draws() const { return pos_; }

private:
    std::uint64_t pattern_;
    int pos_ = 0;
};

/// Counts draws while forwarding to another source.
class CountingBits final : public BitSource {
public:
    explicit CountingBits(BitSource& inner) : inner_(inner) {}
    Bit bit() override { ++count_; return inner_.bit(); }
    int draws() const { return count_; }

private:
    BitSource& inner_;
    int count_ = 0;
};

}  // namespace ghz
