// ghzsim: command-line front end.
//
//   ghzsim simulate --model tri --angles 0,0,0 --trials 1000000 --seed 7
//   ghzsim commcost --model m-box --trials 100000
//   ghzsim verify comm
//   ghzsim decompose --spec f.json --exhaustive
//
// All randomness flows from --seed (default: $GHZSIM_SEED, else 1).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ghz/analysis.hpp"
#include "ghz/decompose.hpp"
#include "ghz/kernels.hpp"
#include "ghz/records.hpp"
#include "ghz/verify.hpp"

namespace {

using namespace ghz;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GHZSIM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidInput("GHZSIM_SEED is not an unsigned integer");
        }
    }
    return 1;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInput("not a number: '" + item + "'");
        }
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file " + path);
    f << content;
}

struct SimulateOptions {
    std::string model = "tri";
    int n = 0;
    int k = 1;
    std::string angles;
    std::string bloch = "0,0,1";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string output = "-";
    std::string subsets = "all";
    bool degrees = false;
};

Model build_model(const SimulateOptions& o, std::size_t angle_count) {
    const auto id = parse_model_id(o.model);
    if (!id) throw InvalidInput("unknown model '" + o.model + "'");
    switch (*id) {
        case ModelId::general: return Model::general(o.n, o.k);
        case ModelId::single_cbox: return Model::single_cbox(o.n ? o.n : static_cast<int>(angle_count));
        case ModelId::tri_bloch: {
            const auto v = parse_list(o.bloch);
            if (v.size() != 3) throw InvalidInput("--bloch needs three components");
            return Model::tri_bloch(UnitVector3(Vec3{v[0], v[1], v[2]}));
        }
        case ModelId::quad: return Model::quad();
        case ModelId::svetlichny: return Model::svetlichny();
        case ModelId::tri_comm: return Model::tri_comm();
        case ModelId::tri: return Model::tri();
    }
    throw InvalidInput("unknown model");
}

int cmd_simulate(const SimulateOptions& o) {
    const double scale = o.degrees ? kPi / 180.0 : 1.0;
    std::vector<std::vector<PhaseAngle>> tuples;
    Model model;
    if (o.angles.rfind("random:", 0) == 0) {
        const int count = std::stoi(o.angles.substr(7));
        if (count < 1) throw InvalidInput("random:<count> needs count >= 1");
        // angle count comes from the model
        model = build_model(o, static_cast<std::size_t>(o.n ? o.n : 3));
        RandomStream rng(o.seed, 0xA6);
        for (int t = 0; t < count; ++t) {
            std::vector<PhaseAngle> a(model.angle_count());
            for (auto& p : a) p = PhaseAngle(kTwoPi * rng.uniform());
            tuples.push_back(std::move(a));
        }
    } else {
        std::vector<PhaseAngle> a;
        for (double v : parse_list(o.angles)) a.emplace_back(v * scale);
        model = build_model(o, a.size());
        tuples.push_back(std::move(a));
    }
    if (o.subsets != "all" && o.subsets != "full") throw InvalidInput("--subsets must be 'all' or 'full'");
    if (o.trials < 1) throw InvalidInput("--trials must be >= 1");

    std::vector<EstimateRecord> records;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        const auto& a = tuples[t];
        model.validate(a);
        const std::uint64_t seed = o.seed + t;
        std::vector<double> raw;
        for (PhaseAngle p : a) raw.push_back(p.value);
        for (const auto& e : estimate_correlators(model, a, o.trials, seed)) {
            if (o.subsets == "full" && e.subset.size() != static_cast<std::size_t>(model.parties())) continue;
            records.push_back({o.model, raw, e.subset, e.value, e.std_error, e.trials, seed});
        }
    }
    if (o.format == "json")
        write_output(o.output, records_to_json(records));
    else if (o.format == "csv")
        write_output(o.output, records_to_csv(records));
    else
        throw InvalidInput("--format must be json or csv");
    return 0;
}

int cmd_commcost(const std::string& model_name, std::uint64_t trials, std::uint64_t seed, const std::string& format,
                 const std::string& output) {
    const auto model = parse_cost_model(model_name);
    if (!model) throw InvalidInput("commcost model must be m-box or tri-comm");
    const CostReport report{model_name, seed, comm_cost_parallel(*model, trials, seed)};
    if (format == "json")
        write_output(output, cost_to_json(report));
    else if (format == "csv")
        write_output(output, cost_to_csv(report));
    else
        throw InvalidInput("--format must be json or csv");
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<std::string> names;
    if (suite == "all")
        for (auto n : suite_names()) names.emplace_back(n);
    else
        names.push_back(suite);
    bool ok = true;
    for (const auto& n : names) {
        const SuiteReport r = run_suite(n, seed);
        std::cout << format_report(r);
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

int cmd_decompose(const std::string& spec_path, const std::string& random_spec, const std::string& inputs,
                  bool exhaustive, std::uint64_t seed, const std::string& output) {
    RandomStream rng(seed, 0xDC);
    CorrelationSpec spec;
    if (!spec_path.empty()) {
        std::ifstream f(spec_path);
        if (!f) throw InvalidInput("cannot read " + spec_path);
        std::stringstream ss;
        ss << f.rdbuf();
        spec = CorrelationSpec::from_json(ss.str());
    } else if (!random_spec.empty()) {
        const auto v = parse_list(random_spec);
        if (v.size() != 2) throw InvalidInput("--random expects n,m");
        spec = CorrelationSpec::random(std::vector<std::size_t>(std::size_t(v[0]), std::size_t(v[1])), rng);
    } else {
        throw InvalidInput("decompose needs --spec or --random");
    }

    nlohmann::json out;
    out["schema"] = kSchemaVersion;
    out["spec"] = nlohmann::json::parse(spec.to_json());
    out["boxes_per_run"] = decompose_box_count(spec.grids);
    Transcript tr;
    if (exhaustive) {
        std::uint64_t failures = 0, non_bipartite = 0;
        std::vector<std::size_t> in(spec.parties());
        for (std::size_t idx = 0; idx < spec.f.size(); ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = spec.parties(); i-- > 0;) {
                in[i] = rem % spec.grids[i];
                rem /= spec.grids[i];
            }
            tr.clear();
            Bit parity;
            for (Bit b : decompose_run(spec, in, rng, tr)) parity ^= b;
            failures += parity != spec.value(in);
            non_bipartite += tr.max_arity() != 2;
        }
        out["tuples"] = spec.f.size();
        out["parity_failures"] = failures;
        out["non_bipartite_runs"] = non_bipartite;
        write_output(output, out.dump(2) + "\n");
        return failures == 0 && non_bipartite == 0 ? 0 : 1;
    }
    std::vector<std::size_t> in;
    for (double v : parse_list(inputs)) in.push_back(static_cast<std::size_t>(v));
    std::vector<int> bits;
    for (Bit b : decompose_run(spec, in, rng, tr)) bits.push_back(b.value);
    out["inputs"] = in;
    out["outputs"] = bits;
    out["f"] = spec.value(in).value;
    out["boxes"] = tr.size();
    write_output(output, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal-box simulator for equatorial GHZ correlations"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    try {
        seed = default_seed();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    SimulateOptions sim;
    sim.seed = seed;
    auto* simulate = app.add_subcommand("simulate", "estimate correlators of a simulation model");
    simulate->add_option("--model", sim.model, "svetlichny|tri|tri-bloch|quad|general|single-cbox|tri-comm")
        ->required();
    simulate->add_option("--n", sim.n, "party count (general, single-cbox)");
    simulate->add_option("--k", sim.k, "first-group size (general)");
    simulate->add_option("--angles", sim.angles, "comma-separated angles, or random:<count>")->required();
    simulate->add_option("--bloch", sim.bloch, "Charlie's direction x,y,z (tri-bloch)");
    simulate->add_option("--trials", sim.trials, "trials per angle tuple");
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--format", sim.format, "json|csv");
    simulate->add_option("--output", sim.output, "output path, - for stdout");
    simulate->add_option("--subsets", sim.subsets, "all|full");
    simulate->add_flag("--degrees", sim.degrees, "angles are in degrees");

    std::string cost_model;
    std::uint64_t cost_trials = 100000, cost_seed = seed;
    std::string cost_format = "json", cost_output = "-";
    auto* commcost = app.add_subcommand("commcost", "communication cost of the comm-backed protocols");
    commcost->add_option("--model", cost_model, "m-box|tri-comm")->required();
    commcost->add_option("--trials", cost_trials, "runs to sample");
    commcost->add_option("--seed", cost_seed, "random seed");
    commcost->add_option("--format", cost_format, "json|csv");
    commcost->add_option("--output", cost_output, "output path, - for stdout");

    std::string suite;
    std::uint64_t verify_seed = seed;
    auto* verify = app.add_subcommand("verify", "run a self-check suite");
    verify->add_option("suite", suite, "boxes|tri|quad|general|single|conversions|comm|decompose|oracle|all")
        ->required();
    verify->add_option("--seed", verify_seed, "random seed");

    std::string spec_path, random_spec, inputs, dec_output = "-";
    bool exhaustive = false;
    std::uint64_t dec_seed = seed;
    auto* decompose = app.add_subcommand("decompose", "run the bipartite decomposition of a correlation table");
    decompose->add_option("--spec", spec_path, "CorrelationSpec JSON file");
    decompose->add_option("--random", random_spec, "n,m: random table over n parties with grid m");
    decompose->add_option("--inputs", inputs, "comma-separated input indices");
    decompose->add_flag("--exhaustive", exhaustive, "check every input tuple");
    decompose->add_option("--seed", dec_seed, "random seed");
    decompose->add_option("--output", dec_output, "output path, - for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*commcost) return cmd_commcost(cost_model, cost_trials, cost_seed, cost_format, cost_output);
        if (*verify) return cmd_verify(suite, verify_seed);
        if (*decompose) return cmd_decompose(spec_path, random_spec, inputs, exhaustive, dec_seed, dec_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
