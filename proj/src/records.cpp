#include "ghz/records.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

namespace ghz {

namespace {

using nlohmann::json;

template <class T>
std::string join(const std::vector<T>& v, auto&& fmt) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += fmt(v[i]);
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw InvalidInput("bad number in CSV: '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw InvalidInput("bad integer in CSV: '" + s + "'");
    return v;
}

constexpr const char* kCsvHeader = "model,angles,subset,value,std_error,trials,seed";

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string records_to_json(std::span<const EstimateRecord> records) {
    json j;
    j["schema"] = kSchemaVersion;
    json arr = json::array();
    for (const auto& r : records) {
        arr.push_back({{"model", r.model},
                       {"angles", r.angles},
                       {"subset", r.subset},
                       {"value", r.value},
                       {"std_error", r.std_error},
                       {"trials", r.trials},
                       {"seed", r.seed}});
    }
    j["records"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string records_to_csv(std::span<const EstimateRecord> records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.model << ',' << join(r.angles, format_double) << ','
            << join(r.subset, [](int i) { return std::to_string(i); }) << ',' << format_double(r.value) << ','
            << format_double(r.std_error) << ',' << r.trials << ',' << r.seed << '\n';
    }
    return out.str();
}

std::vector<EstimateRecord> records_from_json(const std::string& text) {
    std::vector<EstimateRecord> out;
    try {
        const json j = json::parse(text);
        if (j.at("schema").get<int>() != kSchemaVersion) throw InvalidInput("unsupported schema version");
        for (const auto& e : j.at("records")) {
            EstimateRecord r;
            r.model = e.at("model").get<std::string>();
            r.angles = e.at("angles").get<std::vector<double>>();
            r.subset = e.at("subset").get<std::vector<int>>();
            r.value = e.at("value").get<double>();
            r.std_error = e.at("std_error").get<double>();
            r.trials = e.at("trials").get<std::uint64_t>();
            r.seed = e.at("seed").get<std::uint64_t>();
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("records JSON: ") + e.what());
    }
    return out;
}

std::vector<EstimateRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw InvalidInput("records CSV: missing header row");
    std::vector<EstimateRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) throw InvalidInput("records CSV: expected 7 fields");
        EstimateRecord r;
        r.model = f[0];
        if (!f[1].empty())
            for (const auto& a : split(f[1], ';')) r.angles.push_back(parse_double(a));
        if (!f[2].empty())
            for (const auto& s : split(f[2], ';')) r.subset.push_back(static_cast<int>(parse_u64(s)));
        r.value = parse_double(f[3]);
        r.std_error = parse_double(f[4]);
        r.trials = parse_u64(f[5]);
        r.seed = parse_u64(f[6]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string cost_to_json(const CostReport& report) {
    const auto& h = report.histogram;
    json hist = json::array();
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        if (h.counts[b]) hist.push_back({{"bits", b}, {"count", h.counts[b]}});
    json j{{"schema", kSchemaVersion}, {"model", report.model}, {"trials", h.trials}, {"seed", report.seed},
           {"mean", h.mean()},         {"std_error", h.std_error()}, {"histogram", std::move(hist)}};
    return j.dump(2) + "\n";
}

std::string cost_to_csv(const CostReport& report) {
    const auto& h = report.histogram;
    std::ostringstream out;
    out << "model,trials,seed,mean,std_error,bits,count,probability\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        if (!h.counts[b]) continue;
        out << report.model << ',' << h.trials << ',' << report.seed << ',' << format_double(h.mean()) << ','
            << format_double(h.std_error()) << ',' << b << ',' << h.counts[b] << ','
            << format_double(double(h.counts[b]) / double(h.trials)) << '\n';
    }
    return out.str();
}

}  // namespace ghz
