#pragma once

// Full-correlation n-party boxes from bipartite boxes only.
//
// A CorrelationSpec fixes, on a finite input grid, the parity the n outputs
// must satisfy: xor_i a_i = f(x_1, ..., x_n). Two parties share one box with
// a_1 ^ a_2 = f(x_1, x_2). For n parties, the first n-1 run the (n-1)-party
// scheme once for every value z of the last party's input, on the slice
// f_z = f(., ..., ., z), and collect their outputs alpha_i(z). Each of them
// then shares a function box with party n: it inputs the table
// z -> alpha_i(z), party n inputs x_n, and party n outputs the xor of its
// sides of these boxes. Every z branch is evaluated before the function-box
// stage; evaluating only the realized branch would need x_n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghz/core.hpp"
#include "ghz/rng.hpp"
#include "ghz/transcript.hpp"

namespace ghz {

struct CorrelationSpec {
    /// Grid size per party; n = grids.size().
    std::vector<std::size_t> grids;
    /// f over the product grid, row-major in party order (last party
    /// fastest).
    std::vector<Bit> f;

    std::size_t parties() const { return grids.size(); }
    std::size_t index(std::span<const std::size_t> inputs) const;
    Bit value(std::span<const std::size_t> inputs) const { return f[index(inputs)]; }
    /// Throws InvalidInput on n < 2, empty grids or a table of the wrong size.
    void validate() const;

    static CorrelationSpec random(std::vector<std::size_t> grids, RandomStream& rng);

    /// {"schema": 1, "n": .., "grids": [..], "f": [0/1, ..]}
    std::string to_json() const;
    static CorrelationSpec from_json(const std::string& text);
};

/// Runs the recursive scheme for one input tuple, logging every box to
/// `transcript`. Returns one output bit per party.
std::vector<Bit> decompose_run(const CorrelationSpec& spec, std::span<const std::size_t> inputs, BitSource& rng,
                               Transcript& transcript);

/// Boxes used by one run: T(2) = 1, T(k) = m_k T(k-1) + (k-1).
std::uint64_t decompose_box_count(std::span<const std::size_t> grids);

/// Party i's output xor the shared bits of every pair containing i. Pair
/// bits are ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::vector<Bit> randomize_subcorrelations(std::span<const Bit> outputs, std::span<const Bit> pair_bits);

}  // namespace ghz
