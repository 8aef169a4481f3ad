#pragma once

// Machine-readable output of the command-line tool. JSON and CSV carry the
// same numbers: both print doubles in shortest round-trip form.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghz/kernels.hpp"

namespace ghz {

inline constexpr int kSchemaVersion = 1;

struct EstimateRecord {
    std::string model;
    std::vector<double> angles;
    std::vector<int> subset;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

/// {"schema": 1, "records": [{model, angles, subset, value, std_error, trials, seed}, ...]}
std::string records_to_json(std::span<const EstimateRecord> records);
/// Header row, then one row per record; angles and subset are ';'-joined.
std::string records_to_csv(std::span<const EstimateRecord> records);

std::vector<EstimateRecord> records_from_json(const std::string& text);
std::vector<EstimateRecord> records_from_csv(const std::string& text);

struct CostReport {
    std::string model;
    std::uint64_t seed = 0;
    CostHistogram histogram;
};

std::string cost_to_json(const CostReport& report);
/// One row per bit count: model,trials,seed,mean,std_error,bits,count,probability
std::string cost_to_csv(const CostReport& report);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace ghz
