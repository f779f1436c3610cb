#include "lyapsft/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lyapsft/errors.hpp"
#include "parallel.hpp"

namespace lyapsft {

namespace {

// Endpoint slack when intersecting closed bands of different orbits.
constexpr double kBandSlack = 1e-9;
// Distance kept from the boundary of the common spectrum when snapping a candidate into it.
constexpr double kSnapMargin = 1e-7;

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

std::string format_energy(double e) {
    std::ostringstream os;
    os.precision(17);
    os << e;
    return os.str();
}

// Symbol indices, for messages that have no access to the alphabet labels.
std::string describe_word(const Word& word) {
    std::string out = "[";
    for (std::size_t i = 0; i < word.size(); ++i) out += (i ? " " : "") + std::to_string(word[i]);
    return out + "]";
}

} // namespace

const char* to_string(Classification c) {
    switch (c) {
    case Classification::inconclusive: return "inconclusive";
    case Classification::unremovable_elliptic: return "unremovable-elliptic";
    case Classification::unremovable_degenerate: return "unremovable-degenerate";
    case Classification::removable: return "removable";
    }
    return "inconclusive";
}

bool is_unremovable(Classification c) {
    return c == Classification::unremovable_elliptic || c == Classification::unremovable_degenerate;
}

bool ScanResult::suggests_infinite_zero_set() const {
    for (const auto& c : candidates)
        if (static_cast<double>(c.cluster_points) > kInfiniteClusterFraction * static_cast<double>(grid_size))
            return true;
    return false;
}

std::vector<double> energy_grid(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    if (!(lo < hi)) throw InputError("energy_grid: lower bound must be below upper bound");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    grid.back() = hi;
    return grid;
}

double grid_step(const std::vector<double>& grid) {
    double step = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) step = std::max(step, grid[i] - grid[i - 1]);
    return step;
}

ScanResult scan_zero_candidates(const TransitionSystem& system, const Potential& potential,
                                const MarkovMeasure& measure, const std::vector<double>& grid,
                                const ScanParams& params) {
    if (!(params.theta > 0.0)) throw InputError("scan_zero_candidates: theta must be positive");
    if (potential.alphabet_size() != system.alphabet_size() || measure.size() != system.alphabet_size())
        throw InputError("scan_zero_candidates: potential, measure and system use different alphabets");

    ScanResult out;
    out.grid_size = grid.size();
    out.estimates.resize(grid.size());
    std::vector<std::string> errors(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        try {
            out.estimates[i] = estimate_lyapunov(grid[i], potential, measure, params.n_steps, params.n_samples,
                                                 params.seed, i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
            out.estimates[i].energy = grid[i];
            out.estimates[i].value = std::numeric_limits<double>::quiet_NaN();
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!errors[i].empty()) out.failures.push_back({i, errors[i]});

    std::size_t i = 0;
    while (i < grid.size()) {
        if (!(out.estimates[i].value < params.theta)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::size_t best = i;
        while (j < grid.size() && out.estimates[j].value < params.theta) {
            if (out.estimates[j].value < out.estimates[best].value) best = j;
            ++j;
        }
        ZeroCandidate c;
        c.energy = grid[best];
        c.classified_energy = grid[best];
        c.l_hat = out.estimates[best].value;
        c.std_error = out.estimates[best].std_error;
        c.cluster_lo = grid[i];
        c.cluster_hi = grid[j - 1];
        c.cluster_points = j - i;
        out.candidates.push_back(c);
        i = j;
    }
    return out;
}

ClassificationResult classify_unremovable(double energy, const std::vector<PeriodicOrbit>& orbits,
                                          const Potential& potential, double tol_delta) {
    if (orbits.empty()) throw InputError("classify_unremovable: orbit list is empty");
    std::vector<const PeriodicOrbit*> sorted;
    for (const auto& o : orbits) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const PeriodicOrbit* a, const PeriodicOrbit* b) { return *a < *b; });

    ClassificationResult out;
    bool all_degenerate = true;
    const PeriodicOrbit* hyperbolic = nullptr;
    double hyperbolic_delta = 0.0;
    for (const PeriodicOrbit* o : sorted) {
        out.max_period = std::max(out.max_period, o->period());
        const double delta = discriminant_value(energy, potential, o->word());
        const double a = std::abs(delta);
        if (tol_delta < a && a < 2.0 - tol_delta) {
            if (!out.witness) {
                out.witness = *o;
                out.witness_delta = delta;
            }
            continue;
        }
        if (std::min(a, std::abs(a - 2.0)) > tol_delta) {
            all_degenerate = false;
            if (!hyperbolic) {
                hyperbolic = o;
                hyperbolic_delta = delta;
            }
        }
    }
    if (out.witness) {
        out.classification = Classification::unremovable_elliptic;
    } else if (all_degenerate) {
        out.classification = Classification::unremovable_degenerate;
    } else {
        out.classification = Classification::removable;
        out.witness = *hyperbolic;
        out.witness_delta = hyperbolic_delta;
    }
    return out;
}

std::vector<Interval> common_spectrum(const std::vector<PeriodicOrbit>& orbits, const Potential& potential,
                                      double slack) {
    std::vector<Interval> common{{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}};
    for (const auto& orbit : orbits) {
        const auto bands = band_and_s_sets(discriminant_poly(orbit, potential)).bands;
        std::vector<Interval> next;
        for (const auto& c : common)
            for (const auto& b : bands) {
                const double lo = std::max(c.lo, b.lo - slack);
                const double hi = std::min(c.hi, b.hi + slack);
                if (lo <= hi) next.push_back({lo, hi});
            }
        common = std::move(next);
        if (common.empty()) break;
    }
    return common;
}

void refine_candidates(std::vector<ZeroCandidate>& candidates, const std::vector<Interval>& common, double step) {
    for (auto& c : candidates) {
        const double lo = c.cluster_lo - step;
        const double hi = c.cluster_hi + step;
        double best = std::numeric_limits<double>::quiet_NaN();
        double best_distance = std::numeric_limits<double>::infinity();
        for (const auto& piece : common) {
            const double a = std::max(lo, piece.lo);
            const double b = std::min(hi, piece.hi);
            if (a > b) continue;
            const double margin = std::min(kSnapMargin, 0.5 * (piece.hi - piece.lo));
            const double inner_lo = std::max(a, piece.lo + margin);
            const double inner_hi = std::min(b, piece.hi - margin);
            const double x = inner_lo <= inner_hi ? std::clamp(c.energy, inner_lo, inner_hi) : 0.5 * (a + b);
            if (std::abs(x - c.energy) < best_distance) {
                best_distance = std::abs(x - c.energy);
                best = x;
            }
        }
        if (!std::isnan(best)) {
            c.classified_energy = best;
            c.refined = best != c.energy;
        }
    }
}

void classify_candidates(std::vector<ZeroCandidate>& candidates, const std::vector<PeriodicOrbit>& orbits,
                         const Potential& potential, double tol_delta) {
    for (auto& c : candidates) {
        const auto r = classify_unremovable(c.classified_energy, orbits, potential, tol_delta);
        c.classification = r.classification;
        if (r.witness) c.witness = r.witness->word();
        c.witness_delta = r.witness_delta;
    }
}

CrossCheckReport corollary_cross_check(const std::vector<ZeroCandidate>& candidates,
                                       const std::vector<PeriodicOrbit>& orbits, const Potential& potential,
                                       double tol) {
    CrossCheckReport report;
    for (const auto& c : candidates) {
        if (c.classification == Classification::inconclusive) {
            ++report.skipped;
            continue;
        }
        const double e = c.classified_energy;
        bool has_elliptic = false;
        bool all_degenerate = true;
        const PeriodicOrbit* outside = nullptr;
        for (const auto& o : orbits) {
            const double a = std::abs(discriminant_value(e, potential, o.word()));
            if (a > 2.0 + tol && !outside) outside = &o;
            if (tol < a && a < 2.0 - tol) has_elliptic = true;
            if (std::min(a, std::abs(a - 2.0)) > tol) all_degenerate = false;
        }
        if (is_unremovable(c.classification) && outside) {
            std::ostringstream os;
            os << "corollary_cross_check: energy " << format_energy(e) << " classified " << to_string(c.classification)
               << " lies outside the spectrum of orbit " << describe_word(outside->word());
            throw ConsistencyError(os.str());
        }
        if (c.classification == Classification::removable && !outside && (has_elliptic || all_degenerate)) {
            throw ConsistencyError("corollary_cross_check: energy " + format_energy(e) +
                                   " classified removable lies in every periodic spectrum");
        }
        ++report.checked;
    }
    return report;
}

JReport compute_J(const std::vector<double>& zeros, const IntervalSet& s_set, double sup_norm,
                  const JOptions& options) {
    if (!options.zero_set_finite)
        throw DomainError("compute_J: the unremovable zero set was flagged as infinite; the functional is defined "
                          "only when the set of unremovable zeros is finite");
    if (!(sup_norm >= 0.0)) throw InputError("compute_J: sup_norm must be nonnegative");
    JReport r;
    r.sup_norm = sup_norm;
    r.e_lo = window_lower(sup_norm);
    r.e_hi = 2.5 + sup_norm;
    r.lambda = r.e_hi - r.e_lo;
    r.zeros = zeros;
    r.n_floor = options.n_floor;
    r.max_period = options.max_period;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        if (!(zeros[k] > r.e_lo && zeros[k] < r.e_hi))
            throw InputError("compute_J: zero " + format_energy(zeros[k]) + " outside (E_0, E_{l+1})");
        if (k > 0 && !(zeros[k] > zeros[k - 1])) throw InputError("compute_J: zeros must be strictly increasing");
    }

    std::vector<double> edges{r.e_lo};
    edges.insert(edges.end(), zeros.begin(), zeros.end());
    edges.push_back(r.e_hi);
    long long n = 0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        JPiece piece;
        piece.lo = edges[k];
        piece.hi = edges[k + 1];
        piece.s_measure = s_set.restrict(piece.lo, piece.hi).measure();
        piece.n_j = piece.s_measure > 0.0 ? static_cast<long long>(std::floor(2.0 * r.lambda / piece.s_measure)) : 2;
        n = std::max(n, piece.n_j);
        r.pieces.push_back(piece);
    }
    r.n = std::max(n, options.n_floor);
    r.complement = set_difference(IntervalSet{{r.e_lo, r.e_hi}}, s_set).measure();

    const double count = static_cast<double>(r.pieces.size());
    const double tail = r.complement > 0.0
                            ? r.complement / (r.lambda * count) *
                                  std::log(r.complement / (static_cast<double>(r.n) * r.lambda))
                            : 0.0;
    r.j = 0.0;
    for (auto& piece : r.pieces) {
        piece.term = x_log_x(piece.s_measure / r.lambda) + tail;
        r.j += piece.term;
    }
    return r;
}

PositivityCertificate positivity_certificate(const TransitionSystem& system, const Potential& potential) {
    PositivityCertificate c;
    c.radius_zero = potential.radius() == 0;
    c.two_values = potential.distinct_values() >= 2;
    c.d_sets = d_sets_and_connectivity(system);
    c.connected = c.d_sets.connected;
    c.certified = c.radius_zero && c.two_values && c.connected;
    return c;
}

std::vector<double> experiment_grid(const ExperimentParams& params, double sup_norm) {
    return energy_grid(params.grid_lo.value_or(window_lower(sup_norm)), params.grid_hi.value_or(2.5 + sup_norm),
                       params.grid_count);
}

SystemRun analyze_system(const TransitionSystem& system, const Potential& potential, const MarkovMeasure& measure,
                         const std::vector<double>& grid, const ExperimentParams& params, double sup_norm) {
    const MeasureReport measure_report = validate_measure(measure, system);
    auto orbits = enumerate_periodic_orbits(system, params.max_period, params.orbit_cap);
    SUnion s = union_S(orbits, potential, params.max_period);
    ScanResult scan = scan_zero_candidates(system, potential, measure, grid, params.scan);
    auto common = common_spectrum(orbits, potential, kBandSlack);
    refine_candidates(scan.candidates, common, grid_step(grid));
    classify_candidates(scan.candidates, orbits, potential, params.tol_delta);

    std::optional<std::string> failure;
    CrossCheckReport cross;
    try {
        cross = corollary_cross_check(scan.candidates, orbits, potential, params.tol_delta);
    } catch (const ConsistencyError& e) {
        failure = e.what();
    }

    const double lo = window_lower(sup_norm);
    const double hi = 2.5 + sup_norm;
    std::vector<double> zeros;
    for (const auto& c : scan.candidates)
        if (is_unremovable(c.classification) && c.classified_energy > lo && c.classified_energy < hi)
            zeros.push_back(c.classified_energy);
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());

    const bool finite = !scan.suggests_infinite_zero_set();
    JReport j = compute_J(zeros, s.set, sup_norm, {0, true, params.max_period});
    return SystemRun{system,          potential, measure, measure_report, std::move(orbits), std::move(s),
                     std::move(scan), std::move(common), std::move(zeros), finite, std::move(j), failure, cross};
}

double j_grid_slack(const JReport& report, const IntervalSet& s_set, double step) {
    double slack = 0.0;
    for (std::size_t k = 0; k < report.zeros.size(); ++k) {
        double worst = 0.0;
        for (double delta : {-step, step}) {
            std::vector<double> moved = report.zeros;
            moved[k] += delta;
            const bool ordered = (k == 0 || moved[k] > moved[k - 1]) && (k + 1 == moved.size() || moved[k] < moved[k + 1]);
            if (!ordered || !(moved[k] > report.e_lo && moved[k] < report.e_hi)) continue;
            const JReport shifted = compute_J(moved, s_set, report.sup_norm, {report.n_floor, true, report.max_period});
            worst = std::max(worst, std::abs(shifted.j - report.j));
        }
        slack += worst;
    }
    return slack;
}

bool ExperimentReport::all_passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ExperimentReport run_monotonicity_experiment(const SubshiftEmbedding& embedding, const Potential& potential,
                                             const MarkovMeasure& measure, const MarkovMeasure& sub_measure,
                                             const ExperimentParams& params) {
    const TransitionSystem sub = embedded_subsystem(embedding);
    const auto map = symbol_map(sub, embedding.super);
    const Potential sub_potential = potential.restricted_to(sub, map);
    const double sup_norm = potential.sup_norm();
    const auto grid = experiment_grid(params, sup_norm);
    const double step = grid_step(grid);

    SystemRun super_run = analyze_system(embedding.super, potential, measure, grid, params, sup_norm);
    SystemRun sub_run = analyze_system(sub, sub_potential, sub_measure, grid, params, sup_norm);

    std::vector<Assertion> assertions;
    {
        Assertion a{"s_inclusion", true, sub_run.s.set.is_subset_of(super_run.s.set, kBandSlack), ""};
        a.detail = "measure S(sub) = " + format_energy(sub_run.s.set.measure()) +
                   ", measure S(super) = " + format_energy(super_run.s.set.measure());
        assertions.push_back(a);
    }
    {
        Assertion a{"unremovable_inclusion", true, true, ""};
        std::size_t matched = 0;
        for (const auto& c : super_run.scan.candidates) {
            if (!is_unremovable(c.classification)) continue;
            const bool found = std::any_of(sub_run.scan.candidates.begin(), sub_run.scan.candidates.end(),
                                           [&](const ZeroCandidate& d) {
                                               return is_unremovable(d.classification) &&
                                                      std::abs(d.classified_energy - c.classified_energy) <=
                                                          step * (1.0 + 1e-9);
                                           });
            if (found) {
                ++matched;
            } else {
                a.passed = false;
                a.detail += "unmatched super zero at " + format_energy(c.classified_energy) + "; ";
            }
        }
        a.detail += std::to_string(matched) + " super unremovable candidates matched within one grid step";
        assertions.push_back(a);
    }
    {
        Assertion a{"n_monotone", true, sub_run.j.n >= super_run.j.n, ""};
        a.detail = "N(sub) = " + std::to_string(sub_run.j.n) + ", N(super) = " + std::to_string(super_run.j.n);
        assertions.push_back(a);
    }
    ExperimentReport report{grid, std::move(super_run), std::move(sub_run), {}, 0.0};
    {
        Assertion a{"j_monotone", true, true, ""};
        if (!report.super_run.zero_set_finite || !report.sub_run.zero_set_finite) {
            a.evaluated = false;
            a.detail = "skipped: a candidate cluster spans more than 20% of the grid, so the unremovable zero set "
                       "is not finite and J is undefined";
        } else {
            report.j_slack = 1e-9 + j_grid_slack(report.super_run.j, report.super_run.s.set, step) +
                             j_grid_slack(report.sub_run.j, report.sub_run.s.set, step);
            a.passed = report.super_run.j.j >= report.sub_run.j.j - report.j_slack;
            a.detail = "J(super) = " + format_energy(report.super_run.j.j) +
                       ", J(sub) = " + format_energy(report.sub_run.j.j) + ", slack = " + format_energy(report.j_slack);
        }
        assertions.push_back(a);
    }
    for (const auto* run : {&report.super_run, &report.sub_run}) {
        Assertion a{run == &report.super_run ? "cross_check_super" : "cross_check_sub", true,
                    !run->cross_check_failure.has_value(), ""};
        a.detail = run->cross_check_failure.value_or(std::to_string(run->cross_check.checked) +
                                                     " classified candidates consistent");
        assertions.push_back(a);
    }
    report.assertions = std::move(assertions);
    return report;
}

} // namespace lyapsft
