#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "datareq/estimator.hpp"
#include "datareq/fit.hpp"
#include "datareq/groundtruth.hpp"
#include "datareq/simulate.hpp"

#include <json.hpp>

namespace datareq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "datareq/1";

// Calibrated correction factors keyed by (family, T), carried between
// data sets in a small JSON profile.
struct TauProfile {
    std::map<std::pair<CurveFamily, int>, double> entries;
    std::string provenance;

    // nullopt when no entry exists for (family, T).
    std::optional<double> lookup(CurveFamily family, int max_rounds) const;
    void set(CurveFamily family, int max_rounds, double tau);
};

// --- CSV ------------------------------------------------------------------
// Format: header line "n,score", then one observation per line, UTF-8, LF.
// Parse errors carry 1-based line numbers.

std::vector<Observation> read_observations_csv(std::istream& in);
std::vector<Observation> read_observations_csv_file(const std::filesystem::path& path);

RegressionSet read_regression_csv_file(const std::filesystem::path& path);
GroundTruthCurve read_curve_csv_file(const std::filesystem::path& path,
                                     CurveMode mode = CurveMode::Monotone);

void write_observations_csv(std::ostream& out,
                            const std::vector<Observation>& points);

// --- JSON -----------------------------------------------------------------
// All documents carry {"version": "datareq/1", "kind": ...} and emit keys
// in a fixed order so repeated runs are byte-identical.

Json models_to_json(const FitAllResult& result);
// Accepts a cmd-fit document; failures are ignored on input.
std::map<CurveFamily, FittedModel> models_from_json(const Json& doc);

Json bundle_to_json(const EstimateBundle& bundle, std::int64_t n0, double target,
                    const std::map<CurveFamily, double>& taus);

Json trace_to_json(const SimulationTrace& trace);

Json tau_profile_to_json(const TauProfile& profile);
TauProfile tau_profile_from_json(const Json& doc);
TauProfile read_tau_profile_file(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a half-written file.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& contents);

FitConfig fit_config_from_json(const Json& doc);
Json fit_config_to_json(const FitConfig& config);

// Parses "lo:hi:k" into k evenly spaced values including both endpoints
// (k = 1 requires lo == hi).
std::vector<double> parse_target_grid(const std::string& spec);

} // namespace datareq
