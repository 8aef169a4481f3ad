#include "ghz/kernels.hpp"

#include <omp.h>

#include <array>
#include <cmath>
#include <string>

#include "ghz/comm.hpp"

namespace ghz {

namespace {

constexpr std::array<std::pair<std::string_view, ModelId>, 7> kModelNames{{
    {"svetlichny", ModelId::svetlichny},
    {"tri", ModelId::tri},
    {"tri-bloch", ModelId::tri_bloch},
    {"quad", ModelId::quad},
    {"general", ModelId::general},
    {"single-cbox", ModelId::single_cbox},
    {"tri-comm", ModelId::tri_comm},
}};

PhaseAngle sum(std::span<const PhaseAngle> angles) {
    PhaseAngle s;
    for (PhaseAngle a : angles) s = s + a;
    return s;
}

// Runs [first, last) of the trial range into `tally`.
void simulate_range(const Model& model, std::span<const PhaseAngle> angles, std::uint64_t seed,
                    std::uint64_t first, std::uint64_t last, SimulationTally& tally) {
    Transcript scratch;
    for (std::uint64_t i = first; i < last; ++i) {
        RandomStream rng(seed, i);
        TrialStats stats;
        const OutcomeMask mask = run_trial(model, angles, rng, scratch, &stats);
        ++tally.histogram.counts[mask];
        tally.shared_vectors += static_cast<std::uint64_t>(stats.shared_vectors);
        tally.comm_bits += stats.comm_bits;
    }
    tally.histogram.trials += last - first;
}

std::uint64_t cost_trial(CostModel model, std::uint64_t seed, std::uint64_t i, Transcript& scratch) {
    RandomStream rng(seed, i);
    if (model == CostModel::m_box) {
        const auto x = BinaryExpansion::from_real(rng.uniform());
        const auto y = BinaryExpansion::from_real(rng.uniform());
        return static_cast<std::uint64_t>(simulate_m_comm(x, y, rng).total_bits());
    }
    const std::array<PhaseAngle, 3> angles{PhaseAngle(kTwoPi * rng.uniform()), PhaseAngle(kTwoPi * rng.uniform()),
                                           PhaseAngle(kTwoPi * rng.uniform())};
    TrialStats stats;
    (void)run_trial(Model::tri_comm(), angles, rng, scratch, &stats);
    return stats.comm_bits;
}

void cost_range(CostModel model, std::uint64_t seed, std::uint64_t first, std::uint64_t last, CostHistogram& h) {
    Transcript scratch;
    for (std::uint64_t i = first; i < last; ++i) {
        const std::uint64_t bits = cost_trial(model, seed, i, scratch);
        if (bits >= h.counts.size()) h.counts.resize(bits + 1, 0);
        ++h.counts[bits];
    }
    h.trials += last - first;
}

}  // namespace

std::string_view to_string(ModelId id) {
    for (const auto& [name, v] : kModelNames)
        if (v == id) return name;
    return "unknown";
}

std::optional<ModelId> parse_model_id(std::string_view name) {
    for (const auto& [n, v] : kModelNames)
        if (n == name) return v;
    return std::nullopt;
}

std::vector<std::string_view> model_names() {
    std::vector<std::string_view> names;
    for (const auto& entry : kModelNames) names.push_back(entry.first);
    return names;
}

std::size_t Model::angle_count() const {
    return id == ModelId::tri_bloch ? 2 : static_cast<std::size_t>(n);
}

void Model::validate(std::span<const PhaseAngle> angles) const {
    switch (id) {
        case ModelId::svetlichny:
        case ModelId::tri:
        case ModelId::tri_bloch:
        case ModelId::tri_comm:
            if (n != 3) throw InvalidInput(std::string(to_string(id)) + " is a 3-party model");
            break;
        case ModelId::quad:
            if (n != 4) throw InvalidInput("quad is a 4-party model");
            break;
        case ModelId::general:
            if (n < 2 || n > kMaxHistogramParties) throw InvalidInput("general: n must be in [2, 20]");
            if (k < 1 || k >= n) throw InvalidInput("general: k must satisfy 1 <= k < n");
            break;
        case ModelId::single_cbox:
            if (n < 2 || n > kMaxHistogramParties) throw InvalidInput("single-cbox: n must be in [2, 20]");
            break;
    }
    if (angles.size() != angle_count())
        throw InvalidInput(std::string(to_string(id)) + " expects " + std::to_string(angle_count()) +
                           " angles, got " + std::to_string(angles.size()));
    for (PhaseAngle a : angles)
        if (!std::isfinite(a.value)) throw InvalidInput("angles must be finite");
}

double Model::target_correlator(std::span<const PhaseAngle> angles) const {
    if (id == ModelId::tri_bloch) {
        // v_ab . c with v_ab = (cos(phi_a + phi_b), -sin(phi_a + phi_b), 0)
        const double ab = angles[0].value + angles[1].value;
        return bloch.x() * std::cos(ab) - bloch.y() * std::sin(ab);
    }
    return std::cos(sum(angles).value);
}

OutcomeMask run_trial(const Model& model, std::span<const PhaseAngle> angles, RandomStream& rng,
                      Transcript& scratch, TrialStats* stats) {
    scratch.clear();
    TrialStats local;
    OutcomeMask mask = 0;
    if (model.id == ModelId::single_cbox) {
        const PhaseAngle phi_lambda = sample_cos_density(rng);
        BoxHarness boxes(scratch, rng);
        mask = run_single_cbox(angles, phi_lambda, boxes);
    } else {
        const HiddenVariables hidden = make_hidden(rng);
        local.shared_vectors = 2;
        if (model.id == ModelId::tri_comm) {
            CommBackend backend;
            BoxHarness boxes(scratch, rng, backend);
            mask = run_tri(angles[0], angles[1], angles[2], hidden, boxes);
            local.comm_bits = backend.bits();
        } else {
            BoxHarness boxes(scratch, rng);
            switch (model.id) {
                case ModelId::svetlichny:
                    mask = run_svetlichny_tri(angles[0], angles[1], angles[2], hidden, boxes);
                    break;
                case ModelId::tri: mask = run_tri(angles[0], angles[1], angles[2], hidden, boxes); break;
                case ModelId::tri_bloch:
                    mask = run_tri_bloch(angles[0], angles[1], model.bloch, hidden, boxes);
                    break;
                case ModelId::quad:
                    mask = run_quad(angles[0], angles[1], angles[2], angles[3], hidden, boxes);
                    break;
                case ModelId::general: mask = run_general(angles, model.k, hidden, boxes); break;
                default: throw InvalidInput("run_trial: unhandled model");
            }
        }
    }
    if (stats) *stats = local;
    return mask;
}

OutcomeHistogram::OutcomeHistogram(int n) : parties(n), counts(std::size_t{1} << n, 0) {}

void OutcomeHistogram::merge(const OutcomeHistogram& other) {
    if (other.parties != parties) throw InvalidInput("OutcomeHistogram::merge: party counts differ");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    trials += other.trials;
}

void SimulationTally::merge(const SimulationTally& other) {
    histogram.merge(other.histogram);
    shared_vectors += other.shared_vectors;
    comm_bits += other.comm_bits;
}

SimulationTally simulate_serial(const Model& model, std::span<const PhaseAngle> angles, std::uint64_t trials,
                                std::uint64_t seed) {
    model.validate(angles);
    SimulationTally tally{OutcomeHistogram(model.parties())};
    simulate_range(model, angles, seed, 0, trials, tally);
    return tally;
}

SimulationTally simulate_parallel(const Model& model, std::span<const PhaseAngle> angles, std::uint64_t trials,
                                  std::uint64_t seed) {
    model.validate(angles);
    const int threads = omp_get_max_threads();
    std::vector<SimulationTally> partial(static_cast<std::size_t>(threads),
                                         SimulationTally{OutcomeHistogram(model.parties())});
#pragma omp parallel num_threads(threads)
    {
        const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
        const auto nt = static_cast<std::uint64_t>(omp_get_num_threads());
        const std::uint64_t first = trials * t / nt;
        const std::uint64_t last = trials * (t + 1) / nt;
        simulate_range(model, angles, seed, first, last, partial[t]);
    }
    SimulationTally total{OutcomeHistogram(model.parties())};
    for (const auto& p : partial) total.merge(p);
    return total;
}

double CostHistogram::mean() const {
    if (trials == 0) return 0.0;
    long double s = 0;
    for (std::size_t b = 0; b < counts.size(); ++b) s += static_cast<long double>(b) * counts[b];
    return static_cast<double>(s / trials);
}

double CostHistogram::std_error() const {
    if (trials < 2) return 0.0;
    const double m = mean();
    long double ss = 0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double d = double(b) - m;
        ss += static_cast<long double>(d * d) * counts[b];
    }
    return std::sqrt(static_cast<double>(ss / (trials - 1)) / double(trials));
}

void CostHistogram::merge(const CostHistogram& other) {
    if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t b = 0; b < other.counts.size(); ++b) counts[b] += other.counts[b];
    trials += other.trials;
}

std::string_view to_string(CostModel m) { return m == CostModel::m_box ? "m-box" : "tri-comm"; }

std::optional<CostModel> parse_cost_model(std::string_view name) {
    if (name == "m-box") return CostModel::m_box;
    if (name == "tri-comm") return CostModel::tri_comm;
    return std::nullopt;
}

CostHistogram comm_cost_serial(CostModel model, std::uint64_t trials, std::uint64_t seed) {
    CostHistogram h;
    cost_range(model, seed, 0, trials, h);
    return h;
}

CostHistogram comm_cost_parallel(CostModel model, std::uint64_t trials, std::uint64_t seed) {
    const int threads = omp_get_max_threads();
    std::vector<CostHistogram> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
        const auto nt = static_cast<std::uint64_t>(omp_get_num_threads());
        cost_range(model, seed, trials * t / nt, trials * (t + 1) / nt, partial[t]);
    }
    CostHistogram total;
    for (const auto& p : partial) total.merge(p);
    // trailing zero bins depend on how trials were split
    while (!total.counts.empty() && total.counts.back() == 0) total.counts.pop_back();
    return total;
}

}  // namespace ghz
