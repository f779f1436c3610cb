#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lyapsft/config.hpp"
#include "lyapsft/spectra.hpp"
#include "lyapsft/zeros.hpp"

namespace lyapsft {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

const char* tool_version();

/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string config_hash(std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

struct RunMetadata {
    std::string command;
    std::string config_name;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t max_period = 0;
    long long n_steps = 0;
    int n_samples = 0;
    double theta = 0.0;
    double tol_delta = 0.0;
    std::size_t grid_count = 0;
};

RunMetadata make_metadata(const std::string& command, const ExperimentConfig& config);
json metadata_json(const RunMetadata& meta);

inline constexpr std::string_view kScanCsvHeader = "energy,l_hat,std_error,raw_mean,n_steps,n_samples";
inline constexpr std::string_view kBandsCsvHeader = "orbit,period,band_index,lo,hi";

std::string scan_csv(const ScanResult& scan);

struct OrbitBands {
    PeriodicOrbit orbit;
    BandStructure bands;
};

std::string bands_csv(const TransitionSystem& system, const std::vector<OrbitBands>& bands);

json interval_set_json(const IntervalSet& set);
json scan_json(const RunMetadata& meta, const ScanResult& scan);
json spectra_json(const RunMetadata& meta, const TransitionSystem& system, const SUnion& s);
json candidates_json(const TransitionSystem& system, const std::vector<ZeroCandidate>& candidates);
json classify_json(const RunMetadata& meta, const SystemRun& run);
json jreport_json(const JReport& report);
JReport jreport_from_json(const json& j);
json experiment_json(const RunMetadata& meta, const ExperimentReport& report);
json positivity_json(const RunMetadata& meta, const TransitionSystem& system, const PositivityCertificate& cert);

/// Writes `content` to `path`, creating parent directories. Throws IoError naming the path.
void write_text(const std::filesystem::path& path, std::string_view content);

} // namespace lyapsft
