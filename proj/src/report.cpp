#include "lyapsft/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "lyapsft/errors.hpp"

#ifndef LYAPSFT_VERSION
#define LYAPSFT_VERSION "unknown"
#endif

namespace lyapsft {

namespace {

std::string schema_id(std::string_view kind) {
    return "lyapsft." + std::string(kind) + ".v" + std::to_string(kSchemaVersion);
}

json run_json(const TransitionSystem& system, const SystemRun& run) {
    json j;
    j["alphabet"] = system.labels();
    j["orbit_count"] = run.orbits.size();
    j["max_period"] = run.s.max_period;
    j["measure_ergodic"] = run.measure_report.ergodic;
    j["measure_full_support"] = run.measure_report.full_support;
    j["s_union"] = interval_set_json(run.s.set);
    j["s_measure"] = run.s.set.measure();
    j["candidates"] = candidates_json(system, run.scan.candidates);
    j["scan_failures"] = json::array();
    for (const auto& f : run.scan.failures) j["scan_failures"].push_back({{"grid_index", f.grid_index}, {"message", f.message}});
    j["zeros"] = run.zeros;
    j["zero_set_finite"] = run.zero_set_finite;
    j["j_report"] = jreport_json(run.j);
    j["cross_check"] = {{"checked", run.cross_check.checked},
                        {"skipped", run.cross_check.skipped},
                        {"failure", run.cross_check_failure ? json(*run.cross_check_failure) : json(nullptr)}};
    return j;
}

} // namespace

const char* tool_version() { return LYAPSFT_VERSION; }

std::string config_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw NumericalError("format_double: conversion failed");
    return std::string(buf, ptr);
}

RunMetadata make_metadata(const std::string& command, const ExperimentConfig& config) {
    RunMetadata m;
    m.command = command;
    m.config_name = config.name;
    m.config_hash = config_hash(config.source);
    m.seed = config.params.scan.seed;
    m.max_period = config.params.max_period;
    m.n_steps = config.params.scan.n_steps;
    m.n_samples = config.params.scan.n_samples;
    m.theta = config.params.scan.theta;
    m.tol_delta = config.params.tol_delta;
    m.grid_count = config.params.grid_count;
    return m;
}

json metadata_json(const RunMetadata& meta) {
    return {{"command", meta.command},
            {"config_name", meta.config_name},
            {"config_hash", meta.config_hash},
            {"seed", meta.seed},
            {"max_period", meta.max_period},
            {"n_steps", meta.n_steps},
            {"n_samples", meta.n_samples},
            {"theta", meta.theta},
            {"tol_delta", meta.tol_delta},
            {"grid_count", meta.grid_count},
            {"tool_version", tool_version()}};
}

std::string scan_csv(const ScanResult& scan) {
    std::string out(kScanCsvHeader);
    out += '\n';
    for (const auto& e : scan.estimates) {
        out += format_double(e.energy) + ',' + format_double(e.value) + ',' + format_double(e.std_error) + ',' +
               format_double(e.raw_mean) + ',' + std::to_string(e.n_steps) + ',' + std::to_string(e.n_samples) + '\n';
    }
    return out;
}

std::string bands_csv(const TransitionSystem& system, const std::vector<OrbitBands>& bands) {
    std::string out(kBandsCsvHeader);
    out += '\n';
    for (const auto& ob : bands) {
        const std::string word = system.format_word(ob.orbit.word());
        for (std::size_t k = 0; k < ob.bands.bands.size(); ++k) {
            out += '"' + word + "\"," + std::to_string(ob.orbit.period()) + ',' + std::to_string(k) + ',' +
                   format_double(ob.bands.bands[k].lo) + ',' + format_double(ob.bands.bands[k].hi) + '\n';
        }
    }
    return out;
}

json interval_set_json(const IntervalSet& set) {
    json arr = json::array();
    for (const auto& i : set.intervals()) arr.push_back({i.lo, i.hi});
    return arr;
}

json scan_json(const RunMetadata& meta, const ScanResult& scan) {
    json j;
    j["schema"] = schema_id("scan");
    j["metadata"] = metadata_json(meta);
    j["grid_size"] = scan.grid_size;
    j["suggests_infinite_zero_set"] = scan.suggests_infinite_zero_set();
    j["candidate_count"] = scan.candidates.size();
    j["failures"] = json::array();
    for (const auto& f : scan.failures) j["failures"].push_back({{"grid_index", f.grid_index}, {"message", f.message}});
    return j;
}

json spectra_json(const RunMetadata& meta, const TransitionSystem& system, const SUnion& s) {
    json j;
    j["schema"] = schema_id("spectra");
    j["metadata"] = metadata_json(meta);
    j["alphabet"] = system.labels();
    j["max_period"] = s.max_period;
    j["s_union"] = interval_set_json(s.set);
    j["s_measure"] = s.set.measure();
    j["orbits"] = json::array();
    for (const auto& p : s.provenance)
        j["orbits"].push_back({{"orbit", system.format_word(p.orbit.word())},
                               {"period", p.orbit.period()},
                               {"s_set", interval_set_json(p.s_set)}});
    return j;
}

json candidates_json(const TransitionSystem& system, const std::vector<ZeroCandidate>& candidates) {
    json arr = json::array();
    for (const auto& c : candidates) {
        json item{{"energy", c.energy},
                  {"l_hat", c.l_hat},
                  {"std_error", c.std_error},
                  {"cluster", {c.cluster_lo, c.cluster_hi}},
                  {"cluster_points", c.cluster_points},
                  {"classified_energy", c.classified_energy},
                  {"refined", c.refined},
                  {"classification", to_string(c.classification)}};
        item["witness"] = c.witness ? json(system.format_word(*c.witness)) : json(nullptr);
        item["witness_delta"] = c.witness_delta ? json(*c.witness_delta) : json(nullptr);
        arr.push_back(std::move(item));
    }
    return arr;
}

json classify_json(const RunMetadata& meta, const SystemRun& run) {
    json j;
    j["schema"] = schema_id("classify");
    j["metadata"] = metadata_json(meta);
    j["run"] = run_json(run.system, run);
    j["note"] = "case-2 (degenerate) classifications hold up to period " + std::to_string(run.s.max_period);
    return j;
}

json jreport_json(const JReport& r) {
    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back({{"lo", p.lo}, {"hi", p.hi}, {"s_measure", p.s_measure}, {"n_j", p.n_j}, {"term", p.term}});
    return {{"e_lo", r.e_lo},          {"e_hi", r.e_hi},   {"lambda", r.lambda},   {"sup_norm", r.sup_norm},
            {"zeros", r.zeros},        {"pieces", pieces}, {"complement", r.complement}, {"n", r.n},
            {"n_floor", r.n_floor},    {"j", r.j},         {"max_period", r.max_period}};
}

JReport jreport_from_json(const json& j) {
    JReport r;
    r.e_lo = j.at("e_lo").get<double>();
    r.e_hi = j.at("e_hi").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.sup_norm = j.at("sup_norm").get<double>();
    r.zeros = j.at("zeros").get<std::vector<double>>();
    for (const auto& p : j.at("pieces"))
        r.pieces.push_back({p.at("lo").get<double>(), p.at("hi").get<double>(), p.at("s_measure").get<double>(),
                            p.at("n_j").get<long long>(), p.at("term").get<double>()});
    r.complement = j.at("complement").get<double>();
    r.n = j.at("n").get<long long>();
    r.n_floor = j.at("n_floor").get<long long>();
    r.j = j.at("j").get<double>();
    r.max_period = j.at("max_period").get<std::size_t>();
    return r;
}

json experiment_json(const RunMetadata& meta, const ExperimentReport& report) {
    json j;
    j["schema"] = schema_id("experiment");
    j["metadata"] = metadata_json(meta);
    j["grid"] = {{"lo", report.grid.front()}, {"hi", report.grid.back()}, {"count", report.grid.size()}};
    j["super"] = run_json(report.super_run.system, report.super_run);
    j["sub"] = run_json(report.sub_run.system, report.sub_run);
    j["j_slack"] = report.j_slack;
    j["assertions"] = json::array();
    for (const auto& a : report.assertions)
        j["assertions"].push_back(
            {{"name", a.name}, {"evaluated", a.evaluated}, {"passed", a.passed}, {"detail", a.detail}});
    j["all_passed"] = report.all_passed();
    return j;
}

json positivity_json(const RunMetadata& meta, const TransitionSystem& system, const PositivityCertificate& cert) {
    json sets = json::array();
    for (const auto& s : cert.d_sets.sets) {
        json labels = json::array();
        for (Symbol x : s) labels.push_back(system.labels()[x]);
        sets.push_back(labels);
    }
    return {{"schema", schema_id("positivity")},
            {"metadata", metadata_json(meta)},
            {"certified", cert.certified},
            {"radius_zero", cert.radius_zero},
            {"two_values", cert.two_values},
            {"connected", cert.connected},
            {"d_sets", sets}};
}

void write_text(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace lyapsft
