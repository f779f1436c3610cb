#include "lyapsft/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "lyapsft/errors.hpp"

namespace lyapsft {

namespace {

std::string line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? " (line " + std::to_string(mark.line + 1) + ")" : "";
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& message) {
    throw ConfigError(key + ": " + message + line_of(node));
}

void require_map(const YAML::Node& node, const std::string& key) {
    if (!node.IsMap()) fail(node, key, "expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& key, std::initializer_list<std::string_view> allowed) {
    require_map(node, key);
    for (const auto& entry : node) {
        const std::string name = entry.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            fail(entry.first, key.empty() ? name : key + "." + name, "unknown key");
    }
}

double number(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) fail(node, key, "expected a number");
    try {
        return parse_number(node.Scalar());
    } catch (const ConfigError& e) {
        fail(node, key, e.what());
    }
}

template <class Int>
Int integer(const YAML::Node& node, const std::string& key, Int min_value) {
    if (!node.IsScalar()) fail(node, key, "expected an integer");
    const std::string& text = node.Scalar();
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) fail(node, key, "expected an integer, got '" + text + "'");
    if (value < min_value) fail(node, key, "must be at least " + std::to_string(min_value));
    return value;
}

std::vector<double> number_list(const YAML::Node& node, const std::string& key) {
    if (!node.IsSequence()) fail(node, key, "expected a list");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

RawSystem parse_system(const YAML::Node& node, const std::string& key) {
    check_keys(node, key, {"alphabet", "matrix"});
    const YAML::Node alphabet = node["alphabet"];
    const YAML::Node matrix = node["matrix"];
    if (!alphabet) fail(node, key, "missing 'alphabet'");
    if (!matrix) fail(node, key, "missing 'matrix'");
    if (!alphabet.IsSequence() || alphabet.size() == 0) fail(alphabet, key + ".alphabet", "expected a nonempty list");
    RawSystem raw;
    for (const auto& label : alphabet) {
        if (!label.IsScalar() || label.Scalar().empty()) fail(label, key + ".alphabet", "labels must be nonempty scalars");
        if (label.Scalar().find(' ') != std::string::npos) fail(label, key + ".alphabet", "labels may not contain spaces");
        raw.labels.push_back(label.Scalar());
    }
    const std::size_t n = raw.labels.size();
    if (!matrix.IsSequence() || matrix.size() != n)
        fail(matrix, key + ".matrix", "expected " + std::to_string(n) + " rows, one per symbol");
    for (std::size_t i = 0; i < n; ++i) {
        const YAML::Node row = matrix[i];
        const std::string row_key = key + ".matrix[" + std::to_string(i) + "]";
        if (!row.IsSequence() || row.size() != n)
            fail(row, row_key, "row " + std::to_string(i) + " has length " + std::to_string(row.IsSequence() ? row.size() : 0) +
                                   ", expected " + std::to_string(n));
        std::vector<bool> bits;
        for (std::size_t j = 0; j < n; ++j) {
            const int v = integer<int>(row[j], row_key, 0);
            if (v > 1) fail(row[j], row_key, "entries must be 0 or 1");
            bits.push_back(v == 1);
        }
        raw.allowed.push_back(std::move(bits));
    }
    return raw;
}

// Whether a window written in config syntax contains `label` as one of its symbols.
bool text_mentions(const std::string& text, const std::string& label, const TransitionSystem& system) {
    const bool compact = label.size() == 1 && std::all_of(system.labels().begin(), system.labels().end(),
                                                          [](const std::string& l) { return l.size() == 1; });
    if (compact && text.find(' ') == std::string::npos) return text.find(label) != std::string::npos;
    std::istringstream in(text);
    std::string token;
    while (in >> token)
        if (token == label) return true;
    return false;
}

TransitionSystem build_system(const RawSystem& raw, const YAML::Node& node, const std::string& key,
                              std::vector<std::string>& warnings, std::vector<std::string>& removed) {
    PruneResult pruned;
    try {
        pruned = TransitionSystem::prune(raw);
    } catch (const Error& e) {
        fail(node, key, e.what());
    }
    if (!pruned.system) fail(node, key, "no bi-infinite admissible sequence exists");
    if (!pruned.removed.empty()) {
        std::string names;
        for (const auto& r : pruned.removed) names += (names.empty() ? "" : ", ") + r;
        removed = pruned.removed;
        warnings.push_back(key + ": pruned symbols that lie on no bi-infinite admissible sequence: " + names +
                           line_of(node));
    }
    return *pruned.system;
}

Potential parse_potential(const YAML::Node& node, const TransitionSystem& system,
                          const std::vector<std::string>& removed) {
    const std::string key = "potential";
    check_keys(node, key, {"radius", "table", "default"});
    const std::size_t radius = node["radius"] ? integer<std::size_t>(node["radius"], key + ".radius", 0) : 0;
    std::optional<double> fallback;
    if (node["default"]) fallback = number(node["default"], key + ".default");
    std::map<Word, double> table;
    if (const YAML::Node t = node["table"]) {
        require_map(t, key + ".table");
        for (const auto& entry : t) {
            const std::string text = entry.first.as<std::string>();
            const std::string entry_key = key + ".table['" + text + "']";
            // Entries on pruned symbols describe no admissible window.
            const bool on_removed = std::any_of(removed.begin(), removed.end(), [&](const std::string& label) {
                return !system.symbol_of(label) && text_mentions(text, label, system);
            });
            if (on_removed) continue;
            Word word;
            try {
                word = system.parse_word(text);
            } catch (const Error& e) {
                fail(entry.first, entry_key, e.what());
            }
            if (word.size() != 2 * radius + 1)
                fail(entry.first, entry_key, "window has length " + std::to_string(word.size()) + ", expected " +
                                                 std::to_string(2 * radius + 1));
            if (!validate_word(system, word)) fail(entry.first, entry_key, "window is not admissible");
            if (!table.emplace(word, number(entry.second, entry_key)).second)
                fail(entry.first, entry_key, "duplicate window");
        }
    }
    if (fallback)
        for (const auto& word : admissible_words(system, 2 * radius + 1)) table.emplace(word, *fallback);
    try {
        return Potential(system, radius, std::move(table));
    } catch (const ResourceError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what() + line_of(node));
    }
}

MarkovMeasure parse_measure(const YAML::Node& node, const std::string& key, const TransitionSystem& system) {
    check_keys(node, key, {"P", "pi"});
    const std::size_t n = system.alphabet_size();
    const YAML::Node p = node["P"];
    if (!p) {
        if (node["pi"]) fail(node, key, "'pi' given without 'P'");
        return MarkovMeasure::uniform(system);
    }
    if (!p.IsSequence() || p.size() != n) fail(p, key + ".P", "expected " + std::to_string(n) + " rows");
    Matrix matrix;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_key = key + ".P[" + std::to_string(i) + "]";
        auto row = number_list(p[i], row_key);
        if (row.size() != n)
            fail(p[i], row_key, "row " + std::to_string(i) + " has length " + std::to_string(row.size()) + ", expected " +
                                    std::to_string(n));
        double sum = 0.0;
        for (double x : row) {
            if (!(x >= 0.0)) fail(p[i], row_key, "entries must be nonnegative");
            sum += x;
        }
        if (std::abs(sum - 1.0) > kStochasticTolerance)
            fail(p[i], row_key, "not stochastic: row sums to " + std::to_string(sum));
        matrix.push_back(std::move(row));
    }
    std::optional<std::vector<double>> pi;
    if (node["pi"]) {
        pi = number_list(node["pi"], key + ".pi");
        if (pi->size() != n) fail(node["pi"], key + ".pi", "expected " + std::to_string(n) + " entries");
    }
    std::optional<MarkovMeasure> measure;
    try {
        measure.emplace(std::move(matrix), std::move(pi));
        validate_measure(*measure, system);
    } catch (const Error& e) {
        throw ConfigError(e.what() + line_of(node));
    }
    if (!measure->ergodic()) fail(node, key, "P has several closed classes; the measure is not ergodic");
    return *measure;
}

void parse_scan(const YAML::Node& node, ExperimentParams& params) {
    const std::string key = "scan";
    check_keys(node, key,
               {"grid", "theta", "n_steps", "n_samples", "seed", "max_period", "tol_delta", "orbit_cap"});
    if (const YAML::Node g = node["grid"]) {
        check_keys(g, key + ".grid", {"lo", "hi", "count"});
        if (g["lo"]) params.grid_lo = number(g["lo"], key + ".grid.lo");
        if (g["hi"]) params.grid_hi = number(g["hi"], key + ".grid.hi");
        if (g["count"]) params.grid_count = integer<std::size_t>(g["count"], key + ".grid.count", 2);
        if (params.grid_lo && params.grid_hi && !(*params.grid_lo < *params.grid_hi))
            fail(g, key + ".grid", "lo must be below hi");
    }
    if (node["theta"]) {
        params.scan.theta = number(node["theta"], key + ".theta");
        if (!(params.scan.theta > 0.0)) fail(node["theta"], key + ".theta", "must be positive");
    }
    if (node["n_steps"]) params.scan.n_steps = integer<long long>(node["n_steps"], key + ".n_steps", 1000);
    if (node["n_samples"]) params.scan.n_samples = integer<int>(node["n_samples"], key + ".n_samples", 2);
    if (node["seed"]) params.scan.seed = integer<std::uint64_t>(node["seed"], key + ".seed", 0);
    if (node["max_period"]) params.max_period = integer<std::size_t>(node["max_period"], key + ".max_period", 1);
    if (node["tol_delta"]) {
        params.tol_delta = number(node["tol_delta"], key + ".tol_delta");
        if (!(params.tol_delta >= 0.0)) fail(node["tol_delta"], key + ".tol_delta", "must be nonnegative");
    }
    if (node["orbit_cap"]) params.orbit_cap = integer<std::size_t>(node["orbit_cap"], key + ".orbit_cap", 1);
}

OutputSpec parse_output(const YAML::Node& node) {
    check_keys(node, "output", {"dir", "formats"});
    OutputSpec out;
    if (node["dir"]) {
        if (!node["dir"].IsScalar()) fail(node["dir"], "output.dir", "expected a path");
        out.dir = node["dir"].Scalar();
    }
    if (const YAML::Node f = node["formats"]) {
        if (!f.IsSequence()) fail(f, "output.formats", "expected a list");
        out.json = out.csv = false;
        for (const auto& item : f) {
            const std::string v = item.as<std::string>();
            if (v == "json") out.json = true;
            else if (v == "csv") out.csv = true;
            else fail(item, "output.formats", "unknown format '" + v + "' (json, csv)");
        }
    }
    return out;
}

ComputeJInput parse_compute_j(const YAML::Node& node, double default_sup) {
    const std::string key = "compute_j";
    check_keys(node, key, {"U", "S", "sup_norm"});
    ComputeJInput in;
    in.sup_norm = node["sup_norm"] ? number(node["sup_norm"], key + ".sup_norm") : default_sup;
    if (node["U"]) in.zeros = number_list(node["U"], key + ".U");
    std::vector<Interval> parts;
    if (const YAML::Node s = node["S"]) {
        if (!s.IsSequence()) fail(s, key + ".S", "expected a list of [lo, hi] pairs");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string item_key = key + ".S[" + std::to_string(i) + "]";
            auto pair = number_list(s[i], item_key);
            if (pair.size() != 2 || !(pair[0] < pair[1])) fail(s[i], item_key, "expected [lo, hi] with lo < hi");
            parts.push_back({pair[0], pair[1]});
        }
    }
    in.s_set = IntervalSet(std::move(parts));
    return in;
}

} // namespace

double parse_number(std::string_view text) {
    auto parse = [&](std::string_view part) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || !std::isfinite(v))
            throw ConfigError("expected a number, got '" + std::string(text) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse(text);
    const double den = parse(text.substr(slash + 1));
    if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return parse(text.substr(0, slash)) / den;
}

ExperimentConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("malformed YAML (line " + std::to_string(e.mark.line + 1) + "): " + e.msg);
    }
    const TransitionSystem golden = TransitionSystem::golden_mean();
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    check_keys(root, "",
               {"name", "system", "subsystem", "potential", "measure", "sub_measure", "scan", "output", "compute_j"});

    ExperimentConfig cfg{
        "golden-mean",
        golden,
        Potential::from_symbol_values(golden, {0.5, 0.0}),
        MarkovMeasure::uniform(golden),
        std::nullopt,
        std::nullopt,
        {},
        {},
        std::nullopt,
        std::string(text),
        {},
    };
    if (root["name"]) cfg.name = root["name"].as<std::string>();
    std::vector<std::string> removed;

    if (const YAML::Node s = root["system"]) {
        cfg.system = build_system(parse_system(s, "system"), s, "system", cfg.warnings, removed);
        std::vector<double> indicator(cfg.system.alphabet_size(), 0.0);
        indicator[0] = 0.5;
        cfg.potential = Potential::from_symbol_values(cfg.system, indicator);
        cfg.measure = MarkovMeasure::uniform(cfg.system);
    }
    if (const YAML::Node p = root["potential"]) cfg.potential = parse_potential(p, cfg.system, removed);
    if (const YAML::Node m = root["measure"]) cfg.measure = parse_measure(m, "measure", cfg.system);

    if (const YAML::Node s = root["subsystem"]) {
        SubshiftEmbedding embedding{parse_system(s, "subsystem"), cfg.system};
        for (const auto& label : embedding.sub.labels)
            if (!cfg.system.symbol_of(label)) fail(s, "subsystem.alphabet", "symbol '" + label + "' is not in system.alphabet");
        if (!is_sub_embedding(embedding))
            fail(s, "subsystem", "transitions must be allowed in the system, and some admissible sequence must survive");
        const TransitionSystem sub = embedded_subsystem(embedding);
        cfg.sub_measure = root["sub_measure"] ? parse_measure(root["sub_measure"], "sub_measure", sub)
                                              : MarkovMeasure::uniform(sub);
        cfg.embedding = std::move(embedding);
    } else if (root["sub_measure"]) {
        fail(root["sub_measure"], "sub_measure", "given without a subsystem block");
    }

    if (const YAML::Node s = root["scan"]) parse_scan(s, cfg.params);
    if (const YAML::Node o = root["output"]) cfg.output = parse_output(o);
    if (const YAML::Node j = root["compute_j"]) cfg.compute_j = parse_compute_j(j, cfg.potential.sup_norm());
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace lyapsft
