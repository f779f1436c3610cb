// Command-line driver. Exit codes: 0 success, 1 assertion failure, 2 configuration error,
// 3 resource cap exceeded, 4 I/O or numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "acceptance/acceptance_suite.hpp"
#include "lyapsft/config.hpp"
#include "lyapsft/errors.hpp"
#include "lyapsft/report.hpp"
#include "lyapsft/spectra.hpp"
#include "lyapsft/zeros.hpp"

namespace fs = std::filesystem;
using namespace lyapsft;

namespace {

enum Exit { kOk = 0, kAssertion = 1, kConfig = 2, kResource = 3, kRuntime = 4 };

const std::vector<std::string> kCommands{"scan-lyapunov",      "periodic-spectra",       "classify-zeros", "compute-j",
                                         "compare-embeddings", "positivity-certificate", "selftest"};

struct Context {
    ExperimentConfig config;
    RunMetadata meta;
    fs::path out;
};

void emit_json(const Context& ctx, const std::string& stem, const json& j) {
    if (!ctx.config.output.json) return;
    const fs::path path = ctx.out / (stem + ".json");
    write_text(path, j.dump(2) + "\n");
    std::cout << "wrote " << path.string() << '\n';
}

void emit_csv(const Context& ctx, const std::string& stem, const std::string& text) {
    if (!ctx.config.output.csv) return;
    const fs::path path = ctx.out / (stem + ".csv");
    write_text(path, text);
    std::cout << "wrote " << path.string() << '\n';
}

std::vector<double> grid_of(const ExperimentConfig& cfg) {
    return experiment_grid(cfg.params, cfg.potential.sup_norm());
}

int scan_lyapunov(const Context& ctx) {
    const auto& cfg = ctx.config;
    const ScanResult scan = scan_zero_candidates(cfg.system, cfg.potential, cfg.measure, grid_of(cfg), cfg.params.scan);
    emit_csv(ctx, "scan", scan_csv(scan));
    json j = scan_json(ctx.meta, scan);
    j["candidates"] = candidates_json(cfg.system, scan.candidates);
    emit_json(ctx, "scan", j);
    std::cout << scan.estimates.size() << " energies, " << scan.candidates.size() << " candidates below theta\n";
    return scan.failures.empty() ? kOk : kRuntime;
}

int periodic_spectra(const Context& ctx) {
    const auto& cfg = ctx.config;
    const auto orbits = enumerate_periodic_orbits(cfg.system, cfg.params.max_period, cfg.params.orbit_cap);
    std::vector<OrbitBands> bands;
    for (const auto& o : orbits) bands.push_back({o, band_and_s_sets(discriminant_poly(o, cfg.potential))});
    const SUnion s = union_S(orbits, cfg.potential, cfg.params.max_period);
    emit_csv(ctx, "spectra", bands_csv(cfg.system, bands));
    emit_json(ctx, "spectra", spectra_json(ctx.meta, cfg.system, s));
    std::cout << orbits.size() << " orbits, |S| = " << format_double(s.set.measure()) << '\n';
    return kOk;
}

int classify_zeros(const Context& ctx) {
    const auto& cfg = ctx.config;
    const SystemRun run = analyze_system(cfg.system, cfg.potential, cfg.measure, grid_of(cfg), cfg.params,
                                         cfg.potential.sup_norm());
    emit_json(ctx, "classify", classify_json(ctx.meta, run));
    for (const auto& c : run.scan.candidates)
        std::cout << "E = " << format_double(c.classified_energy) << "  " << to_string(c.classification) << '\n';
    std::cout << run.scan.candidates.size() << " candidates, " << run.zeros.size() << " unremovable";
    if (!run.zero_set_finite) std::cout << " (cluster wider than 20% of the grid: zero set likely infinite)";
    std::cout << '\n';
    if (run.cross_check_failure) {
        std::cerr << *run.cross_check_failure << '\n';
        return kAssertion;
    }
    return kOk;
}

int compute_j(const Context& ctx) {
    const auto& cfg = ctx.config;
    JReport report;
    if (cfg.compute_j) {
        report = compute_J(cfg.compute_j->zeros, cfg.compute_j->s_set, cfg.compute_j->sup_norm,
                           {0, true, cfg.params.max_period});
    } else {
        const SystemRun run = analyze_system(cfg.system, cfg.potential, cfg.measure, grid_of(cfg), cfg.params,
                                             cfg.potential.sup_norm());
        if (!run.zero_set_finite) {
            std::cerr << "compute-j: a candidate cluster spans more than 20% of the grid; the unremovable zero set "
                         "is not finite and J is undefined\n";
            return kAssertion;
        }
        report = run.j;
    }
    json j{{"schema", "lyapsft.jreport.v" + std::to_string(kSchemaVersion)},
           {"metadata", metadata_json(ctx.meta)},
           {"j_report", jreport_json(report)}};
    emit_json(ctx, "compute-j", j);
    std::cout << "J = " << format_double(report.j) << "  N = " << report.n << '\n';
    return kOk;
}

int compare_embeddings(const Context& ctx) {
    const auto& cfg = ctx.config;
    if (!cfg.embedding) throw ConfigError("compare-embeddings: the config has no subsystem block");
    const ExperimentReport report =
        run_monotonicity_experiment(*cfg.embedding, cfg.potential, cfg.measure, *cfg.sub_measure, cfg.params);
    emit_json(ctx, "compare-embeddings", experiment_json(ctx.meta, report));
    for (const auto& a : report.assertions)
        std::cout << (!a.evaluated ? "SKIP " : a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.detail << '\n';
    return report.all_passed() ? kOk : kAssertion;
}

int positivity(const Context& ctx) {
    const auto& cfg = ctx.config;
    const PositivityCertificate cert = positivity_certificate(cfg.system, cfg.potential);
    emit_json(ctx, "positivity-certificate", positivity_json(ctx.meta, cfg.system, cert));
    std::cout << "certified: " << (cert.certified ? "true" : "false") << '\n';
    return kOk;
}

int selftest() {
    const auto results = acceptance::run_acceptance_suite(std::cout);
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; }) ? kOk : kAssertion;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov exponents and periodic spectra for Schrodinger cocycles over subshifts of finite type"};
    std::string config_path;
    std::string command;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_period;
    std::string out_dir;
    app.add_option("--config", config_path, "YAML experiment config (defaults apply when omitted)");
    app.add_option("--command", command, "scan-lyapunov | periodic-spectra | classify-zeros | compute-j | "
                                         "compare-embeddings | positivity-certificate | selftest")
        ->required();
    app.add_option("--seed", seed, "Base seed; overrides scan.seed");
    app.add_option("--max-period", max_period, "Orbit truncation level; overrides scan.max_period");
    app.add_option("--out", out_dir, "Output directory; overrides output.dir");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
        std::cerr << "unknown command '" << command << "'\n\n" << app.help();
        return kConfig;
    }
    if (command == "selftest") return selftest();

    try {
        Context ctx{config_path.empty() ? parse_config("") : load_config(config_path), {}, {}};
        for (const auto& w : ctx.config.warnings) std::cerr << "warning: " << w << '\n';
        if (seed) ctx.config.params.scan.seed = *seed;
        if (max_period) {
            if (*max_period == 0) throw ConfigError("--max-period must be positive");
            ctx.config.params.max_period = *max_period;
        }
        ctx.meta = make_metadata(command, ctx.config);
        ctx.out = out_dir.empty() ? fs::path(ctx.config.output.dir) : fs::path(out_dir);

        if (command == "scan-lyapunov") return scan_lyapunov(ctx);
        if (command == "periodic-spectra") return periodic_spectra(ctx);
        if (command == "classify-zeros") return classify_zeros(ctx);
        if (command == "compute-j") return compute_j(ctx);
        if (command == "compare-embeddings") return compare_embeddings(ctx);
        return positivity(ctx);
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResource;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kRuntime;
    } catch (const ConsistencyError& e) {
        std::cerr << "assertion failure: " << e.what() << '\n';
        return kAssertion;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
