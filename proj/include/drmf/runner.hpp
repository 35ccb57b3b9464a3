#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "drmf/modular_action.hpp"

namespace drmf {

using ojson = nlohmann::ordered_json;

class usage_error : public std::runtime_error {
  public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Run-wide configuration. Serializes to JSON with exactly these field names
// and round-trips bit-exactly.
struct RunConfig {
    int q = 3;
    int m = 2;
    int r = 2;
    int precisionDigits = 60;
    long tDegree = 16;
    int latticeDegree = 4;
    int expTerms = 8;
    std::vector<int> sVector = {2, 3, 4};
    std::uint64_t seed = 1;
    std::vector<std::string> suites;  // empty = default set for the config
    std::string outputPath;
    long toleranceExponent = 30;  // lambda-lead threshold T, default P/2
    bool timings = false;         // real wallTimeMs in reports (breaks byte determinism)
};

ojson config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const ojson& j);

// All suite names, in canonical execution order.
const std::vector<std::string>& known_suites();
// The default suite list for a config (point suites valid at any desk config).
std::vector<std::string> default_suites(const RunConfig& cfg);

// Throws usage_error on invalid fields, unknown or inapplicable suites.
void validate_config(const RunConfig& cfg);

struct SuiteRecord {
    std::string suiteName;
    ojson params;
    std::vector<ojson> residualNorms;  // rationals as q-exponents
    std::string verdict;               // pass | fail | indeterminate
    ojson witnesses;
    long wallTimeMs = 0;
};

struct VerificationReport {
    int schemaVersion = 1;
    RunConfig config;
    std::vector<SuiteRecord> suites;
};

SuiteRecord run_suite(const RunConfig& cfg, const std::string& name);
VerificationReport run_all(const RunConfig& cfg);

ojson report_to_json(const VerificationReport& rep);
std::string report_to_csv(const VerificationReport& rep);

// Golden-fixture comparison: lists every residual or verdict drift.
std::vector<std::string> compare_reports(const ojson& got, const ojson& golden);

// 0 all pass, 1 any fail, 3 any indeterminate (precision) without fails.
int exit_code_for(const VerificationReport& rep);

}  // namespace drmf
