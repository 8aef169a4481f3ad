#include "ghz/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace ghz {

double ghz_correlator(std::span<const PhaseAngle> phis) {
    if (phis.size() < 2) throw InvalidInput("ghz_correlator: need at least 2 parties");
    PhaseAngle s;
    for (PhaseAngle p : phis) s = s + p;
    return std::cos(s.value);
}

double ghz_joint(std::span<const PhaseAngle> phis, std::span<const int> outcomes) {
    if (outcomes.size() != phis.size()) throw InvalidInput("ghz_joint: one outcome per party required");
    int product = 1;
    for (int o : outcomes) {
        if (o != 1 && o != -1) throw InvalidInput("ghz_joint: outcomes must be +1 or -1");
        product *= o;
    }
    return std::ldexp(1.0 + product * ghz_correlator(phis), -static_cast<int>(phis.size()));
}

std::vector<double> ghz_distribution(int parties, double full_correlator) {
    std::vector<double> p(std::size_t{1} << parties);
    for (std::size_t m = 0; m < p.size(); ++m) {
        const int product = (std::popcount(m) & 1) ? -1 : 1;
        p[m] = std::ldexp(1.0 + product * full_correlator, -parties);
    }
    return p;
}

std::vector<CorrelatorEstimate> correlators_from_histogram(const OutcomeHistogram& h) {
    // w[S] = sum_m counts[m] (-1)^{|m & S|}
    std::vector<long double> w(h.counts.begin(), h.counts.end());
    for (std::size_t len = 1; len < w.size(); len <<= 1)
        for (std::size_t i = 0; i < w.size(); i += 2 * len)
            for (std::size_t j = i; j < i + len; ++j) {
                const long double u = w[j], v = w[j + len];
                w[j] = u + v;
                w[j + len] = u - v;
            }
    std::vector<CorrelatorEstimate> out;
    out.reserve(w.size() - 1);
    for (std::size_t s = 1; s < w.size(); ++s) {
        CorrelatorEstimate e;
        e.mask = s;
        for (int i = 0; i < h.parties; ++i)
            if ((s >> i) & 1U) e.subset.push_back(i);
        e.trials = h.trials;
        e.value = h.trials ? static_cast<double>(w[s] / static_cast<long double>(h.trials)) : 0.0;
        e.std_error = h.trials ? std::sqrt(std::max(0.0, 1.0 - e.value * e.value) / double(h.trials)) : 0.0;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorrelatorEstimate> estimate_correlators(const Model& model, std::span<const PhaseAngle> angles,
                                                     std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInput("estimate_correlators: trials must be >= 1");
    return correlators_from_histogram(simulate_parallel(model, angles, trials, seed).histogram);
}

double subset_correlator(std::span<const double> distribution, std::uint64_t subset_mask) {
    double c = 0.0;
    for (std::size_t m = 0; m < distribution.size(); ++m)
        c += ((std::popcount(m & subset_mask) & 1) ? -1.0 : 1.0) * distribution[m];
    return c;
}

double marginal_tv_distance(const OutcomeHistogram& a, const OutcomeHistogram& b, int excluded) {
    if (a.parties != b.parties || excluded < 0 || excluded >= a.parties)
        throw InvalidInput("marginal_tv_distance: incompatible histograms or party");
    const std::size_t cells = std::size_t{1} << (a.parties - 1);
    std::vector<double> pa(cells, 0.0), pb(cells, 0.0);
    const std::uint64_t low = (std::uint64_t{1} << excluded) - 1;
    for (std::size_t m = 0; m < a.counts.size(); ++m) {
        const std::size_t reduced = (m & low) | ((m >> 1) & ~low);
        pa[reduced] += double(a.counts[m]) / double(a.trials);
        pb[reduced] += double(b.counts[m]) / double(b.trials);
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < cells; ++i) tv += std::abs(pa[i] - pb[i]);
    return 0.5 * tv;
}

double no_signaling_check(const Model& model, int party, PhaseAngle first, PhaseAngle second,
                          std::span<const PhaseAngle> angles, std::uint64_t trials, std::uint64_t seed) {
    if (party < 0 || static_cast<std::size_t>(party) >= angles.size())
        throw InvalidInput("no_signaling_check: party has no angle input");
    std::vector<PhaseAngle> a(angles.begin(), angles.end());
    a[party] = first;
    const auto h1 = simulate_parallel(model, a, trials, seed).histogram;
    a[party] = second;
    const auto h2 = simulate_parallel(model, a, trials, seed + 1).histogram;
    return marginal_tv_distance(h1, h2, party);
}

stats::ChiSquare oracle_chi_square(const OutcomeHistogram& h, double full_correlator) {
    const auto p = ghz_distribution(h.parties, full_correlator);
    return stats::chi_square_gof(h.counts, p);
}

int svetlichny_sign(int x, int y, int z) { return x + y + z <= 1 ? 1 : -1; }

double svetlichny_value(const CorrelatorFn& correlator, const SvetlichnySettings& s) {
    double total = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const std::array<PhaseAngle, 3> phis{s[0][x], s[1][y], s[2][z]};
                total += svetlichny_sign(x, y, z) * correlator(phis);
            }
    return total;
}

int svetlichny_bipartite_bound() {
    int best = 0;
    // the pair (i, j) acts jointly, party `lone` alone
    for (int lone = 0; lone < 3; ++lone) {
        // joint parity of the pair: 4 entries indexed by its two inputs;
        // lone party's bit: 2 entries
        for (int pair_fn = 0; pair_fn < 16; ++pair_fn)
            for (int lone_fn = 0; lone_fn < 4; ++lone_fn) {
                int s = 0;
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int z = 0; z < 2; ++z) {
                            const int in[3] = {x, y, z};
                            int pair_in[2], k = 0;
                            for (int p = 0; p < 3; ++p)
                                if (p != lone) pair_in[k++] = in[p];
                            const int parity = ((pair_fn >> (2 * pair_in[0] + pair_in[1])) & 1) ^
                                               ((lone_fn >> in[lone]) & 1);
                            s += svetlichny_sign(x, y, z) * (parity ? -1 : 1);
                        }
                best = std::max(best, std::abs(s));
            }
    }
    return best;
}

SvetlichnyOptimum maximize_svetlichny(const CorrelatorFn& correlator, int grid, double tolerance) {
    if (grid < 1) throw InvalidInput("maximize_svetlichny: grid must be positive");
    SvetlichnyOptimum best;
    best.value = -std::numeric_limits<double>::infinity();
    const double step = kTwoPi / grid;

    std::array<int, 6> idx{};
    SvetlichnySettings s{};
    for (;;) {
        for (int i = 0; i < 6; ++i) s[i / 2][i % 2] = PhaseAngle(step * idx[i]);
        const double v = svetlichny_value(correlator, s);
        if (v > best.value) best = {s, v};
        int i = 0;
        while (i < 6 && ++idx[i] == grid) idx[i++] = 0;
        if (i == 6) break;
    }

    // coordinate descent with a shrinking step
    double h = step / 2;
    while (h >= tolerance * 1e-3) {
        bool improved = false;
        for (int i = 0; i < 6; ++i) {
            for (double dir : {1.0, -1.0}) {
                SvetlichnySettings trial = best.settings;
                trial[i / 2][i % 2] = trial[i / 2][i % 2] + PhaseAngle(dir * h);
                const double v = svetlichny_value(correlator, trial);
                if (v > best.value) {
                    best = {trial, v};
                    improved = true;
                }
            }
        }
        if (!improved) h /= 2;
    }
    return best;
}

}  // namespace ghz

namespace ghz {

std::vector<double> enumerate_outcomes(int parties, int random_bits,
                                       const std::function<OutcomeMask(BitSource&)>& run) {
    if (random_bits < 0 || random_bits > 24) throw InvalidInput("enumerate_outcomes: 0..24 random bits supported");
    std::vector<double> dist(std::size_t{1} << parties, 0.0);
    const double w = std::ldexp(1.0, -random_bits);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << random_bits); ++pattern) {
        ScriptedBits bits(pattern);
        const OutcomeMask m = run(bits);
        if (bits.draws() != random_bits)
            throw InvalidInput("enumerate_outcomes: run drew " + std::to_string(bits.draws()) + " bits, expected " +
                               std::to_string(random_bits));
        dist.at(m) += w;
    }
    return dist;
}

}  // namespace ghz
