#include "ghz/rng.hpp"

#include <stdexcept>

namespace ghz {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t sm = mix64(seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15ULL);
    for (auto& word : s_) {
        sm += 0x9E3779B97F4A7C15ULL;
        word = mix64(sm);
    }
    // all-zero state is a fixed point of xoshiro
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RandomStream::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Bit RandomStream::bit() {
    if (bits_left_ == 0) {
        bit_cache_ = next();
        bits_left_ = 64;
    }
    const Bit b((bit_cache_ & 1U) != 0);
    bit_cache_ >>= 1;
    --bits_left_;
    return b;
}

Bit ScriptedBits::bit() {
    if (pos_ >= 64) throw std::out_of_range("ScriptedBits: pattern exhausted after 64 draws");
    return Bit(((pattern_ >> pos_++) & 1U) != 0);
}

}  // namespace ghz
