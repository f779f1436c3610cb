#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lyapsft/cocycle.hpp"
#include "lyapsft/intervals.hpp"
#include "lyapsft/markov.hpp"
#include "lyapsft/spectra.hpp"
#include "lyapsft/symbolic.hpp"

namespace lyapsft {

inline constexpr double kDefaultTheta = 0.01;
inline constexpr std::size_t kDefaultGridCount = 1001;
/// A candidate cluster wider than this fraction of the grid signals an infinite zero set.
inline constexpr double kInfiniteClusterFraction = 0.2;

enum class Classification { inconclusive, unremovable_elliptic, unremovable_degenerate, removable };

const char* to_string(Classification c);
bool is_unremovable(Classification c);

struct ZeroCandidate {
    /// Grid minimizer of the estimate within its cluster.
    double energy = 0.0;
    double l_hat = 0.0;
    double std_error = 0.0;
    /// Grid extent of the cluster of sub-threshold points.
    double cluster_lo = 0.0;
    double cluster_hi = 0.0;
    std::size_t cluster_points = 0;
    /// Energy the classifier ran at (see refine_candidates).
    double classified_energy = 0.0;
    bool refined = false;
    Classification classification = Classification::inconclusive;
    std::optional<Word> witness;
    std::optional<double> witness_delta;
};

struct ScanParams {
    long long n_steps = kDefaultSteps;
    int n_samples = kDefaultSamples;
    std::uint64_t seed = 1;
    double theta = kDefaultTheta;
};

struct ScanFailure {
    std::size_t grid_index = 0;
    std::string message;
};

struct ScanResult {
    std::vector<LyapunovEstimate> estimates;
    std::vector<ZeroCandidate> candidates;
    std::vector<ScanFailure> failures;
    std::size_t grid_size = 0;

    /// Some cluster covers more than kInfiniteClusterFraction of the grid.
    bool suggests_infinite_zero_set() const;
};

std::vector<double> energy_grid(double lo, double hi, std::size_t count);
double grid_step(const std::vector<double>& grid);

/// Lower end -5/2 - |V|_inf of the energy window; the upper end is its negative.
inline double window_lower(double sup_norm) { return -2.5 - sup_norm; }

/// Estimates L at every grid energy (grid index i seeds sample s with derive_seed(seed, i, s)) and
/// reduces runs of consecutive sub-threshold points to their minimizer.
ScanResult scan_zero_candidates(const TransitionSystem& system, const Potential& potential,
                                const MarkovMeasure& measure, const std::vector<double>& grid,
                                const ScanParams& params);

struct ClassificationResult {
    Classification classification = Classification::inconclusive;
    std::optional<PeriodicOrbit> witness;
    std::optional<double> witness_delta;
    /// Orbits of period <= this were examined; case 2 holds only up to this period.
    std::size_t max_period = 0;
};

ClassificationResult classify_unremovable(double energy, const std::vector<PeriodicOrbit>& orbits,
                                          const Potential& potential, double tol_delta = kLevelTolerance);

/// Moves each candidate to the closest energy of its cluster window (widened by one grid step)
/// that lies in `common`, the intersection of every enumerated periodic spectrum.
void refine_candidates(std::vector<ZeroCandidate>& candidates, const std::vector<Interval>& common, double step);

/// Classifies each candidate at its classified_energy.
void classify_candidates(std::vector<ZeroCandidate>& candidates, const std::vector<PeriodicOrbit>& orbits,
                         const Potential& potential, double tol_delta = kLevelTolerance);

struct CrossCheckReport {
    std::size_t checked = 0;
    std::size_t skipped = 0;
};

/// Unremovable candidates must lie in every periodic spectrum, removable ones outside one of them.
/// Throws ConsistencyError naming the energy and orbit on the first mismatch.
CrossCheckReport corollary_cross_check(const std::vector<ZeroCandidate>& candidates,
                                       const std::vector<PeriodicOrbit>& orbits, const Potential& potential,
                                       double tol = kLevelTolerance);

struct JPiece {
    double lo = 0.0;
    double hi = 0.0;
    /// |(lo, hi) n S|
    double s_measure = 0.0;
    long long n_j = 2;
    double term = 0.0;
};

struct JOptions {
    /// Lower bound imposed on N, used for a sub-system compared against its super-system.
    long long n_floor = 0;
    bool zero_set_finite = true;
    std::size_t max_period = 0;
};

struct JReport {
    double e_lo = 0.0;
    double e_hi = 0.0;
    double lambda = 0.0;
    double sup_norm = 0.0;
    std::vector<double> zeros;
    std::vector<JPiece> pieces;
    /// |(E_0, E_{l+1}) \ S|
    double complement = 0.0;
    long long n = 2;
    long long n_floor = 0;
    double j = 0.0;
    std::size_t max_period = 0;
};

JReport compute_J(const std::vector<double>& zeros, const IntervalSet& s_set, double sup_norm,
                  const JOptions& options = {});

struct PositivityCertificate {
    bool certified = false;
    bool radius_zero = false;
    bool two_values = false;
    bool connected = false;
    DSets d_sets;
};

PositivityCertificate positivity_certificate(const TransitionSystem& system, const Potential& potential);

struct ExperimentParams {
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;
    std::size_t grid_count = kDefaultGridCount;
    ScanParams scan;
    std::size_t max_period = kDefaultMaxPeriod;
    double tol_delta = kLevelTolerance;
    std::size_t orbit_cap = kDefaultOrbitCap;
};

struct SystemRun {
    TransitionSystem system;
    Potential potential;
    MarkovMeasure measure;
    MeasureReport measure_report;
    std::vector<PeriodicOrbit> orbits;
    SUnion s;
    ScanResult scan;
    std::vector<Interval> common;
    /// Energies of the unremovable candidates, strictly increasing.
    std::vector<double> zeros;
    bool zero_set_finite = true;
    /// Always computed so that N is available; J itself is meaningful only when zero_set_finite.
    JReport j;
    std::optional<std::string> cross_check_failure;
    CrossCheckReport cross_check;
};

/// Full pipeline on one system: orbits, S, scan, refinement, classification, cross-check and J.
/// `sup_norm` fixes the energy window; pass the super-system's value for a sub-system.
SystemRun analyze_system(const TransitionSystem& system, const Potential& potential, const MarkovMeasure& measure,
                         const std::vector<double>& grid, const ExperimentParams& params, double sup_norm);

/// Grid used by a run: [E_0, E_{l+1}] unless overridden.
std::vector<double> experiment_grid(const ExperimentParams& params, double sup_norm);

/// Sum over zeros of the largest change of J when that zero moves by one grid step.
double j_grid_slack(const JReport& report, const IntervalSet& s_set, double step);

struct Assertion {
    std::string name;
    bool evaluated = true;
    bool passed = true;
    std::string detail;
};

struct ExperimentReport {
    std::vector<double> grid;
    SystemRun super_run;
    SystemRun sub_run;
    std::vector<Assertion> assertions;
    double j_slack = 0.0;

    bool all_passed() const;
};

ExperimentReport run_monotonicity_experiment(const SubshiftEmbedding& embedding, const Potential& potential,
                                             const MarkovMeasure& measure, const MarkovMeasure& sub_measure,
                                             const ExperimentParams& params);

/// Closed intersection of all band lists, each band widened by `slack`.
std::vector<Interval> common_spectrum(const std::vector<PeriodicOrbit>& orbits, const Potential& potential,
                                      double slack);

} // namespace lyapsft
