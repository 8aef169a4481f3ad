#include "ghz/verify.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <sstream>

#include "ghz/analysis.hpp"
#include "ghz/boxes.hpp"
#include "ghz/comm.hpp"
#include "ghz/conversions.hpp"
#include "ghz/decompose.hpp"
#include "ghz/kernels.hpp"
#include "ghz/protocols.hpp"
#include "ghz/records.hpp"

namespace ghz {

namespace {

constexpr std::uint64_t kTrials = 1'000'000;
const double kCorrTol = 4.0 / std::sqrt(double(kTrials));

class Suite {
public:
    explicit Suite(std::string name) { report_.suite = std::move(name); }

    void within(std::string name, double measured, double expected, double tol) {
        report_.checks.push_back({std::move(name), measured, expected, tol, std::abs(measured - expected) <= tol});
    }
    void at_least(std::string name, double measured, double bound) {
        report_.checks.push_back({std::move(name), measured, bound, 0.0, measured >= bound});
    }
    void at_most(std::string name, double measured, double bound) {
        report_.checks.push_back({std::move(name), measured, bound, 0.0, measured <= bound});
    }
    /// `failures` must be exactly zero.
    void exact(std::string name, double failures) { within(std::move(name), failures, 0.0, 0.0); }

    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

std::vector<PhaseAngle> random_angles(RandomStream& rng, std::size_t n) {
    std::vector<PhaseAngle> a(n);
    for (auto& p : a) p = PhaseAngle(kTwoPi * rng.uniform());
    return a;
}

std::string angles_label(std::span<const PhaseAngle> a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + format_double(std::round(a[i].value * 1e4) / 1e4);
    return s + ")";
}

void correlator_checks(Suite& s, const Model& model, std::uint64_t seed, int tuples) {
    RandomStream rng(seed, 0xA11CE);
    for (int t = 0; t < tuples; ++t) {
        const auto angles = random_angles(rng, model.angle_count());
        const auto tally = simulate_parallel(model, angles, kTrials, seed + t);
        const auto est = correlators_from_histogram(tally.histogram);
        s.within(std::string(to_string(model.id)) + " full correlator " + angles_label(angles), est.back().value,
                 model.target_correlator(angles), kCorrTol);
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < est.size(); ++i) worst = std::max(worst, std::abs(est[i].value));
        s.at_most(std::string(to_string(model.id)) + " max |strict-subset correlator|", worst, kCorrTol);
    }
}

// Largest |strict-subset correlator| under exact enumeration of box bits.
double enumerated_subset_max(int parties, int bits, const std::function<OutcomeMask(BitSource&)>& run) {
    const auto dist = enumerate_outcomes(parties, bits, run);
    double worst = 0.0;
    const std::uint64_t full = (std::uint64_t{1} << parties) - 1;
    for (std::uint64_t s = 1; s < full; ++s) worst = std::max(worst, std::abs(subset_correlator(dist, s)));
    return worst;
}

SuiteReport suite_boxes(std::uint64_t seed) {
    Suite s("boxes");
    RandomStream rng(seed, 1);
    double failures = 0;
    double ones = 0;
    constexpr int kCalls = 100'000;
    for (int i = 0; i < kCalls; ++i) {
        const Bit x = rng.bit(), y = rng.bit();
        const auto pr = eval_pr(x, y, rng);
        failures += pr.relation() != (x & y);
        ones += pr.a.value;
        const double u = rng.uniform(), v = rng.uniform();
        failures += eval_m(u, v, rng).relation() != sg(u - v);
        const PhaseAngle pa(kTwoPi * rng.uniform()), pb(kTwoPi * rng.uniform());
        failures += eval_c2(pa, pb, rng).relation() != sg_cos(pa + pb);
        const auto phis = random_angles(rng, 5);
        const auto cn = eval_cn(phis, rng);
        Bit parity;
        for (Bit b : cn.outputs) parity ^= b;
        failures += parity != sg_cos(phis[0] + phis[1] + phis[2] + phis[3] + phis[4]);
    }
    s.exact("relation failures over 4x1e5 box calls", failures);
    s.within("PR output mean", ones / kCalls, 0.5, 4 * 0.5 / std::sqrt(double(kCalls)));

    // every pair of outputs of a 3-party cosine box is uniform
    const std::array<PhaseAngle, 3> phis{PhaseAngle(0.3), PhaseAngle(1.1), PhaseAngle(4.0)};
    const std::array<int, 3> ids{0, 1, 2};
    const auto dist = enumerate_outcomes(3, 2, [&](BitSource& src) {
        Transcript t;
        BoxHarness h(t, src);
        const BoxId b = h.cn(ids, phis);
        return OutcomeMask(h.output(b, 0).value) | OutcomeMask(h.output(b, 1).value) << 1 |
               OutcomeMask(h.output(b, 2).value) << 2;
    });
    double worst = 0.0;
    for (std::uint64_t sub = 1; sub < 7; ++sub) worst = std::max(worst, std::abs(subset_correlator(dist, sub)));
    s.exact("3-party cosine box strict-subset correlators (enumerated)", worst);
    return s.take();
}

SuiteReport suite_tri(std::uint64_t seed) {
    Suite s("tri");
    correlator_checks(s, Model::tri(), seed, 3);
    RandomStream rng(seed, 2);
    double worst = 0.0, parity_failures = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto a = random_angles(rng, 3);
        const auto h = make_hidden(rng);
        worst = std::max(worst, enumerated_subset_max(3, 4, [&](BitSource& src) {
            Transcript tr;
            BoxHarness boxes(tr, src);
            const OutcomeMask m = run_tri(a[0], a[1], a[2], h, boxes);
            const Bit s1 = sg_cos(a[0] + a[1] + h.phi1), s2 = sg_cos(a[0] + a[1] + h.phi2);
            const Bit tp = sg_cos(a[2] - h.phi_plus), tm = sg_cos(a[2] - h.phi_minus);
            parity_failures += Bit(std::popcount(m) & 1) != (s1 ^ tp ^ ((s1 ^ s2) & (tp ^ tm)));
            return m;
        }));
    }
    s.exact("strict-subset correlators, enumerated box bits (50 hidden samples)", worst);
    s.exact("per-run parity identity failures", parity_failures);
    return s.take();
}

SuiteReport suite_quad(std::uint64_t seed) {
    Suite s("quad");
    correlator_checks(s, Model::quad(), seed, 3);
    RandomStream rng(seed, 3);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto a = random_angles(rng, 4);
        const auto h = make_hidden(rng);
        worst = std::max(worst, enumerated_subset_max(4, 8, [&](BitSource& src) {
            Transcript tr;
            BoxHarness boxes(tr, src);
            return run_quad(a[0], a[1], a[2], a[3], h, boxes);
        }));
    }
    s.exact("strict-subset correlators, enumerated box bits (20 hidden samples)", worst);
    return s.take();
}

SuiteReport suite_general(std::uint64_t seed) {
    Suite s("general");
    for (auto [n, k] : {std::pair{5, 1}, std::pair{5, 2}, std::pair{6, 3}}) {
        correlator_checks(s, Model::general(n, k), seed + 100 * n + k, 1);
        RandomStream rng(seed, 4);
        const auto a = random_angles(rng, n);
        Transcript tr;
        (void)run_trial(Model::general(n, k), a, rng, tr);
        const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        const double expected_c =
            k == n - k ? 4.0 : 2.0;  // both groups' boxes share an arity when k = n - k
        s.within(tag + " cosine boxes of arity k", double(tr.count(BoxKind::cosine, k)), expected_c, 0.0);
        s.within(tag + " cosine boxes of arity n-k", double(tr.count(BoxKind::cosine, n - k)), expected_c, 0.0);
        s.within(tag + " PR boxes", double(tr.count(BoxKind::pr)), double(k * (n - k)), 0.0);
    }
    return s.take();
}

SuiteReport suite_single(std::uint64_t seed) {
    Suite s("single");
    for (int n : {2, 3, 5}) {
        correlator_checks(s, Model::single_cbox(n), seed + n, 1);
        const auto angles = std::vector<PhaseAngle>(n, PhaseAngle(0.2));
        const auto tally = simulate_serial(Model::single_cbox(n), angles, 1000, seed);
        s.exact("n=" + std::to_string(n) + " shared-randomness draws", double(tally.shared_vectors));
    }
    return s.take();
}

SuiteReport suite_conversions(std::uint64_t seed) {
    Suite s("conversions");
    RandomStream rng(seed, 5);
    double c_fail = 0, m_fail = 0, round_trip_fail = 0;
    for (int i = 0; i < 100'000; ++i) {
        const PhaseAngle a(kTwoPi * rng.uniform()), b(kTwoPi * rng.uniform());
        c_fail += c2_from_m(a, b, rng).relation() != sg_cos(a + b);
        const double x = rng.uniform(), y = rng.uniform();
        m_fail += m_from_c2(x, y, rng).relation() != sg(x - y);
        const auto nested = m_from_c2(x, y, [&](PhaseAngle p, PhaseAngle q) { return c2_from_m(p, q, rng); });
        round_trip_fail += nested.relation() != eval_m(x, y, rng).relation();
    }
    s.exact("C from M relation failures (1e5 pairs)", c_fail);
    s.exact("M from C relation failures (1e5 pairs)", m_fail);
    s.exact("M from (C from M) vs native M failures", round_trip_fail);
    return s.take();
}

SuiteReport suite_comm(std::uint64_t seed) {
    Suite s("comm");
    const auto m = comm_cost_parallel(CostModel::m_box, 100'000, seed);
    s.within("M-box mean total bits", m.mean(), 4.0, 0.05);
    s.within("P(2 bits) = P(1 round)", double(m.counts.at(2)) / double(m.trials), 0.5, 0.005);
    // rounds 1..9 and a >= 10 tail against geometric(1/2)
    std::vector<std::uint64_t> obs(10, 0);
    std::vector<double> p(10);
    for (std::size_t b = 2; b < m.counts.size(); b += 2) obs[std::min<std::size_t>(b / 2, 10) - 1] += m.counts[b];
    for (int r = 1; r <= 9; ++r) p[r - 1] = std::ldexp(1.0, -r);
    p[9] = std::ldexp(1.0, -9);
    const auto chi = stats::chi_square_gof(obs, p);
    s.at_least("round distribution chi-square p-value vs geometric(1/2)", chi.p_value, 0.01);
    const auto tri = comm_cost_parallel(CostModel::tri_comm, 100'000, seed + 1);
    s.within("tri-comm mean total bits", tri.mean(), 10.0, 0.1);
    s.within("tri-comm minimum bits per run", double(tri.counts.size() > 6 && tri.counts[6] ? 6 : -1), 6.0, 0.0);
    return s.take();
}

SuiteReport suite_decompose(std::uint64_t seed) {
    Suite s("decompose");
    RandomStream rng(seed, 6);
    for (auto [n, m] : {std::pair{3, 8}, std::pair{4, 4}}) {
        const auto spec = CorrelationSpec::random(std::vector<std::size_t>(n, m), rng);
        double failures = 0, non_bipartite = 0, count_mismatch = 0;
        std::vector<std::size_t> in(n, 0);
        Transcript tr;
        for (std::size_t idx = 0; idx < spec.f.size(); ++idx) {
            std::size_t rem = idx;
            for (int i = n - 1; i >= 0; --i) {
                in[i] = rem % m;
                rem /= m;
            }
            tr.clear();
            const auto out = decompose_run(spec, in, rng, tr);
            Bit parity;
            for (Bit b : out) parity ^= b;
            failures += parity != spec.value(in);
            non_bipartite += tr.max_arity() != 2;
            count_mismatch += tr.size() != decompose_box_count(spec.grids);
        }
        const std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(m);
        s.exact(tag + " parity != f (exhaustive)", failures);
        s.exact(tag + " non-bipartite boxes", non_bipartite);
        s.exact(tag + " box count != m T(n-1) + n-1", count_mismatch);
    }
    return s.take();
}

SuiteReport suite_oracle(std::uint64_t seed) {
    Suite s("oracle");
    RandomStream rng(seed, 7);
    for (int n = 2; n <= 5; ++n) {
        const auto a = random_angles(rng, n);
        const double c = ghz_correlator(a);
        const auto dist = ghz_distribution(n, c);
        double total = 0;
        for (double p : dist) total += p;
        s.within("n=" + std::to_string(n) + " normalization", total, 1.0, 1e-12);
        double worst = 0;
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t sub = 1; sub < full; ++sub) worst = std::max(worst, std::abs(subset_correlator(dist, sub)));
        s.within("n=" + std::to_string(n) + " strict-subset correlators", worst, 0.0, 1e-12);
        s.within("n=" + std::to_string(n) + " full correlator", subset_correlator(dist, full), c, 1e-12);
    }
    s.within("Svetlichny bound for one pooled pair", svetlichny_bipartite_bound(), 4.0, 0.0);
    const auto opt = maximize_svetlichny([](std::span<const PhaseAngle> p) { return ghz_correlator(p); });
    s.within("maximized oracle Svetlichny value", opt.value, 4.0 * std::sqrt(2.0), 1e-3);
    return s.take();
}

using SuiteFn = SuiteReport (*)(std::uint64_t);
constexpr std::array<std::pair<std::string_view, SuiteFn>, 9> kSuites{{
    {"boxes", suite_boxes},
    {"tri", suite_tri},
    {"quad", suite_quad},
    {"general", suite_general},
    {"single", suite_single},
    {"conversions", suite_conversions},
    {"comm", suite_comm},
    {"decompose", suite_decompose},
    {"oracle", suite_oracle},
}};

}  // namespace

bool SuiteReport::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

std::vector<std::string_view> suite_names() {
    std::vector<std::string_view> names;
    for (const auto& e : kSuites) names.push_back(e.first);
    return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
    for (const auto& [n, fn] : kSuites)
        if (n == name) return fn(seed);
    throw InvalidInput("unknown suite '" + std::string(name) + "'");
}

std::string format_report(const SuiteReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  [" << report.suite << "] " << c.name
            << "  measured=" << format_double(c.measured) << " expected=" << format_double(c.expected);
        if (c.tolerance > 0) out << " tol=" << format_double(c.tolerance);
        out << '\n';
    }
    out << (report.passed() ? "suite " + report.suite + ": PASS" : "suite " + report.suite + ": FAIL") << '\n';
    return out.str();
}

}  // namespace ghz
