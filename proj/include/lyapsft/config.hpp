#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyapsft/cocycle.hpp"
#include "lyapsft/intervals.hpp"
#include "lyapsft/markov.hpp"
#include "lyapsft/symbolic.hpp"
#include "lyapsft/zeros.hpp"

namespace lyapsft {

/// Direct input for compute-j, bypassing the scan pipeline.
struct ComputeJInput {
    std::vector<double> zeros;
    IntervalSet s_set;
    double sup_norm = 0.0;
};

struct OutputSpec {
    std::string dir = "out";
    bool json = true;
    bool csv = true;
};

/// Fully validated experiment description. Every field has a default; see docs/config.md.
struct ExperimentConfig {
    std::string name = "golden-mean";
    TransitionSystem system = TransitionSystem::golden_mean();
    Potential potential;
    MarkovMeasure measure;
    /// Present when the config has a `subsystem` block.
    std::optional<SubshiftEmbedding> embedding;
    std::optional<MarkovMeasure> sub_measure;
    ExperimentParams params;
    OutputSpec output;
    std::optional<ComputeJInput> compute_j;
    /// Exact text the config was parsed from, for hashing.
    std::string source;
    /// Non-fatal findings such as pruned symbols.
    std::vector<std::string> warnings;
};

/// Parses YAML text. Throws ConfigError naming the key and line on any problem.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// "2/3", "0.25", "1" -> double.
double parse_number(std::string_view text);

} // namespace lyapsft
