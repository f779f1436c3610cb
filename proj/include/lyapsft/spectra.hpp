#pragma once

#include <cstddef>
#include <vector>

#include "lyapsft/cocycle.hpp"
#include "lyapsft/intervals.hpp"
#include "lyapsft/polynomial.hpp"
#include "lyapsft/symbolic.hpp"

namespace lyapsft {

inline constexpr double kLevelTolerance = 1e-6;
inline constexpr std::size_t kDefaultMaxPeriod = 10;

/// Trace of the monodromy of a periodic orbit as a monic polynomial in E.
struct DiscriminantPoly {
    Polynomial poly;
    PeriodicOrbit orbit;

    double operator()(double energy) const { return poly(energy); }
};

/// Factors applied in cocycle order A(T^{n-1} p) ... A(p).
DiscriminantPoly discriminant_poly(const PeriodicOrbit& orbit, const Potential& potential);

/// Real solutions of q(E) = c with multiplicities, sorted.
std::vector<Root> solve_level_set(const DiscriminantPoly& q, double level);

struct BandStructure {
    /// Closed bands {|q| <= 2}, touching bands merged; at most deg q of them.
    std::vector<Interval> bands;
    /// {q in (-2,0) u (0,2)} as open intervals.
    IntervalSet s_set;

    IntervalSet band_interiors() const;
    double band_measure() const;
};

BandStructure band_and_s_sets(const DiscriminantPoly& q);

struct OrbitSSet {
    PeriodicOrbit orbit;
    IntervalSet s_set;
};

/// Union over periodic orbits of period <= max_period of the elliptic, non-zero-trace energies.
struct SUnion {
    IntervalSet set;
    std::size_t max_period = 0;
    std::vector<OrbitSSet> provenance;

    /// Orbits whose s-set contains the energy (open membership).
    std::vector<PeriodicOrbit> witnesses(double energy) const;
};

SUnion union_S(const TransitionSystem& system, const Potential& potential, std::size_t max_period,
               std::size_t orbit_cap = kDefaultOrbitCap);
SUnion union_S(const std::vector<PeriodicOrbit>& orbits, const Potential& potential, std::size_t max_period);

} // namespace lyapsft
