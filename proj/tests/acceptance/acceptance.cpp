// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. All seeds are fixed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ghz/analysis.hpp"
#include "ghz/comm.hpp"
#include "ghz/conversions.hpp"
#include "ghz/decompose.hpp"
#include "ghz/kernels.hpp"
#include "ghz/protocols.hpp"
#include "ghz/stats.hpp"

using namespace ghz;

namespace {

constexpr std::uint64_t kMillion = 1'000'000;
constexpr double kTol = 0.004;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<PhaseAngle> random_angles(RandomStream& rng, std::size_t n) {
    std::vector<PhaseAngle> a(n);
    for (auto& p : a) p = PhaseAngle(kTwoPi * rng.uniform());
    return a;
}

double full_correlator(const OutcomeHistogram& h) {
    double s = 0;
    for (std::uint64_t m = 0; m < h.counts.size(); ++m)
        s += double(h.counts[m]) * ((__builtin_popcountll(m) & 1) ? -1.0 : 1.0);
    return s / double(h.trials);
}

// Worst deviation of the simulated full correlator from cos(sum) over
// `tuples` random angle tuples.
double worst_full_deviation(const Model& m, int tuples, std::uint64_t seed, std::uint64_t trials) {
    RandomStream rng(seed, 0);
    double worst = 0;
    for (int t = 0; t < tuples; ++t) {
        const auto angles = random_angles(rng, m.angle_count());
        const auto tally = simulate_parallel(m, angles, trials, seed + 1 + t);
        worst = std::max(worst, std::abs(full_correlator(tally.histogram) - m.target_correlator(angles)));
    }
    return worst;
}

bool strict_subsets_zero(const std::vector<double>& dist, int n) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t sub = 1; sub < full; ++sub)
        if (subset_correlator(dist, sub) != 0.0) return false;
    return true;
}

Outcome tripartite_correlators() {
    const auto t0 = Clock::now();
    const double worst = worst_full_deviation(Model::tri(), 20, 1001, kMillion);
    const double secs = seconds_since(t0);
    return {worst <= kTol && secs < 60.0,
            fmt("20 triples x 1e6 trials, max |E - cos| = %.5f (tol %.3f), %.1f s (target < 60 s)", worst, kTol,
                secs)};
}

Outcome exact_subset_vanishing() {
    RandomStream rng(2001, 0);
    int failures = 0, runs = 0;
    for (int tuple = 0; tuple < 5; ++tuple) {
        const auto t3 = random_angles(rng, 3);
        const auto t4 = random_angles(rng, 4);
        for (int s = 0; s < 100; ++s) {
            const auto h = make_hidden(rng);
            const auto tri = enumerate_outcomes(3, 4, [&](BitSource& src) {
                Transcript t;
                BoxHarness boxes(t, src);
                return run_tri(t3[0], t3[1], t3[2], h, boxes);
            });
            const auto quad = enumerate_outcomes(4, 8, [&](BitSource& src) {
                Transcript t;
                BoxHarness boxes(t, src);
                return run_quad(t4[0], t4[1], t4[2], t4[3], h, boxes);
            });
            failures += !strict_subsets_zero(tri, 3);
            failures += !strict_subsets_zero(quad, 4);
            runs += 2;
        }
    }
    return {failures == 0, fmt("%d enumerations (tri 2^4, quad 2^8 box bits), %d with a nonzero strict-subset "
                               "correlator", runs, failures)};
}

Outcome quad_correlators() {
    const double worst = worst_full_deviation(Model::quad(), 20, 3001, kMillion);
    return {worst <= kTol, fmt("20 quadruples x 1e6 trials, max |E - cos| = %.5f (tol %.3f)", worst, kTol)};
}

Outcome general_model() {
    struct Case {
        int n, k;
    };
    Outcome out;
    for (auto [n, k] : {Case{5, 1}, Case{5, 2}, Case{6, 3}}) {
        const Model m = Model::general(n, k);
        const double worst = worst_full_deviation(m, 10, 4000 + 10 * n + k, kMillion);

        RandomStream rng(4100 + n + k, 0);
        bool counts_ok = true;
        for (int t = 0; t < 10; ++t) {
            const auto angles = random_angles(rng, n);
            const auto r = run_general(angles, k, make_hidden(rng), rng);
            const auto& tr = r.transcript;
            const bool arities = k == n - k ? tr.count(BoxKind::cosine, k) == 4
                                            : tr.count(BoxKind::cosine, k) == 2 && tr.count(BoxKind::cosine, n - k) == 2;
            counts_ok = counts_ok && arities && tr.count(BoxKind::cosine) == 4 &&
                        tr.count(BoxKind::pr) == std::size_t(k * (n - k)) && tr.size() == std::size_t(4 + k * (n - k));
        }
        out.pass = out.pass && worst <= kTol && counts_ok;
        out.detail += fmt("n=%d k=%d: max dev %.5f, boxes %s; ", n, k, worst, counts_ok ? "ok" : "WRONG");
    }
    out.detail += fmt("tol %.3f, 10 tuples x 1e6 trials each", kTol);
    return out;
}

Outcome single_cbox_model() {
    Outcome out;
    for (int n : {2, 3, 5}) {
        const Model m = Model::single_cbox(n);
        RandomStream rng(5000 + n, 0);
        double worst = 0;
        std::uint64_t shared = 0;
        for (int t = 0; t < 10; ++t) {
            const auto angles = random_angles(rng, n);
            const auto tally = simulate_parallel(m, angles, kMillion, 5100 + 10 * n + t);
            worst = std::max(worst, std::abs(full_correlator(tally.histogram) - m.target_correlator(angles)));
            shared += tally.shared_vectors;
        }
        out.pass = out.pass && worst <= kTol && shared == 0;
        out.detail += fmt("n=%d: max dev %.5f, shared draws %llu; ", n, worst, (unsigned long long)shared);
    }
    out.detail += fmt("tol %.3f", kTol);
    return out;
}

Outcome conversions() {
    RandomStream rng(6001, 0);
    int c_fail = 0, m_fail = 0;
    constexpr int kN = 100000;
    for (int i = 0; i < kN; ++i) {
        const PhaseAngle a(kTwoPi * rng.uniform()), b(kTwoPi * rng.uniform());
        c_fail += c2_from_m(a, b, rng).relation() != sg_cos(a + b);
        const double x = rng.uniform(), y = rng.uniform();
        m_fail += m_from_c2(x, y, rng).relation() != sg(x - y);
    }
    return {c_fail == 0 && m_fail == 0,
            fmt("1e5 samples each: c2_from_m failures %d, m_from_c2 failures %d", c_fail, m_fail)};
}

Outcome communication_costs() {
    const auto m = comm_cost_parallel(CostModel::m_box, 100000, 7001);
    RandomStream rng(7002, 0);
    const auto rounds = comm_cost_distribution(100000, rng);
    std::vector<std::uint64_t> observed(10, 0);
    std::vector<double> expected(10, 0.0);
    for (std::size_t r = 1; r < rounds.counts.size(); ++r)
        observed[std::min<std::size_t>(r, 10) - 1] += rounds.counts[r];
    for (int r = 1; r <= 9; ++r) expected[r - 1] = std::ldexp(1.0, -r);
    expected[9] = std::ldexp(1.0, -9);
    const auto chi = stats::chi_square_gof(observed, expected);
    const auto tri = comm_cost_parallel(CostModel::tri_comm, 100000, 7003);

    const bool ok = std::abs(m.mean() - 4.0) <= 0.05 && chi.passes(0.01) && std::abs(tri.mean() - 10.0) <= 0.1;
    return {ok, fmt("M-box mean bits %.4f (4 +- 0.05); rounds chi2 = %.2f, dof %d, p = %.3f (>= 0.01); "
                    "tri-comm mean bits %.4f (10 +- 0.1)",
                    m.mean(), chi.statistic, chi.dof, chi.p_value, tri.mean())};
}

Outcome decomposition() {
    RandomStream rng(8001, 0);
    const std::vector<std::size_t> grids{8, 8, 8};
    const auto spec = CorrelationSpec::random(grids, rng);
    Transcript t;
    int parity_fail = 0, non_bipartite = 0, subset_fail = 0, tuples = 0;
    std::array<std::size_t, 3> x{};
    for (x[0] = 0; x[0] < 8; ++x[0])
        for (x[1] = 0; x[1] < 8; ++x[1])
            for (x[2] = 0; x[2] < 8; ++x[2]) {
                t.clear();
                const auto out = decompose_run(spec, x, rng, t);
                ++tuples;
                parity_fail += (out[0] ^ out[1] ^ out[2]) != spec.value(x);
                non_bipartite += t.max_arity() != 2;

                std::vector<double> dist(8, 0.0);
                for (int s = 0; s < 8; ++s) {
                    const std::array<Bit, 3> pairs{Bit(s & 1), Bit(s & 2), Bit(s & 4)};
                    const auto f = randomize_subcorrelations(out, pairs);
                    dist[f[0].value | f[1].value << 1 | f[2].value << 2] += 0.125;
                }
                subset_fail += !strict_subsets_zero(dist, 3);
            }
    return {parity_fail == 0 && non_bipartite == 0 && subset_fail == 0 && tuples == 512,
            fmt("%d tuples: parity mismatches %d, runs with a non-bipartite box %d, nonzero strict-subset "
                "correlators after pair flips %d",
                tuples, parity_fail, non_bipartite, subset_fail)};
}

Outcome oracle_agreement() {
    struct Panel {
        const char* name;
        Model model;
    };
    const std::vector<Panel> panels{
        {"svetlichny", Model::svetlichny()},
        {"tri", Model::tri()},
        {"tri-bloch", Model::tri_bloch(UnitVector3::normalize({0.3, -0.5, 0.8}))},
        {"quad", Model::quad()},
        {"general(5,2)", Model::general(5, 2)},
        {"general(6,3)", Model::general(6, 3)},
        {"single-cbox(3)", Model::single_cbox(3)},
        {"single-cbox(5)", Model::single_cbox(5)},
        {"tri-comm", Model::tri_comm()},
    };
    Outcome out;
    int tests = 0, failed = 0;
    double min_p = 1.0;
    std::uint64_t seed = 9001;
    for (const auto& p : panels) {
        RandomStream rng(seed++, 0);
        for (int t = 0; t < 10; ++t) {
            const auto angles = random_angles(rng, p.model.angle_count());
            const auto h = simulate_parallel(p.model, angles, 100000, seed++).histogram;
            const auto chi = oracle_chi_square(h, p.model.target_correlator(angles));
            ++tests;
            min_p = std::min(min_p, chi.p_value);
            if (!chi.passes(0.01)) {
                ++failed;
                out.detail += fmt("%s tuple %d p = %.4f; ", p.name, t, chi.p_value);
            }
        }
    }
    out.pass = failed == 0;
    out.detail += fmt("%d chi-square tests (9 protocols x 10 tuples, 1e5 trials), %d below p = 0.01, min p = %.4f",
                      tests, failed, min_p);
    return out;
}

Outcome svetlichny() {
    const CorrelatorFn oracle = [](std::span<const PhaseAngle> p) { return ghz_correlator(p); };
    const auto best = maximize_svetlichny(oracle);
    std::uint64_t seed = 10001;
    const CorrelatorFn simulated = [&](std::span<const PhaseAngle> p) {
        return full_correlator(simulate_parallel(Model::tri(), p, kMillion, seed++).histogram);
    };
    const double s = svetlichny_value(simulated, best.settings);
    const double target = 4 * std::sqrt(2.0);
    return {std::abs(best.value - target) <= 1e-3 && s >= 5.5 && svetlichny_bipartite_bound() == 4,
            fmt("oracle max %.6f (4 sqrt 2 = %.6f, tol 1e-3); simulated S = %.4f (>= 5.5, pooled-pair bound %d)",
                best.value, target, s, svetlichny_bipartite_bound())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"tripartite model correlators", tripartite_correlators},
        {"exact strict-subset vanishing (tri, quad)", exact_subset_vanishing},
        {"four-partite model correlators", quad_correlators},
        {"general two-group model", general_model},
        {"single cosine box model", single_cbox_model},
        {"cosine/millionaire box equivalence", conversions},
        {"communication costs", communication_costs},
        {"bipartite decomposition", decomposition},
        {"agreement with the quantum distribution", oracle_agreement},
        {"Svetlichny value", svetlichny},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        const Outcome o = criteria[i].second();
        failures += !o.pass;
        std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
