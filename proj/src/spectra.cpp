#include "lyapsft/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "lyapsft/errors.hpp"

namespace lyapsft {

DiscriminantPoly discriminant_poly(const PeriodicOrbit& orbit, const Potential& potential) {
    Polynomial a({1.0});
    Polynomial b;
    Polynomial c;
    Polynomial d({1.0});
    const Polynomial energy({0.0, 1.0});
    for (double v : potential.periodic_samples(orbit.word())) {
        const Polynomial x = energy.shifted_constant(-v);
        Polynomial na = x * a - c;
        Polynomial nb = x * b - d;
        c = std::move(a);
        d = std::move(b);
        a = std::move(na);
        b = std::move(nb);
    }
    Polynomial trace = a + d;
    if (trace.degree() != static_cast<int>(orbit.period()) || trace.leading() != 1.0)
        throw NumericalError("discriminant_poly: trace is not monic of degree n_p");
    return {std::move(trace), orbit};
}

std::vector<Root> solve_level_set(const DiscriminantPoly& q, double level) {
    return real_roots(q.poly.shifted_constant(-level));
}

IntervalSet BandStructure::band_interiors() const { return IntervalSet(bands); }

double BandStructure::band_measure() const {
    double m = 0.0;
    for (const auto& b : bands) m += b.length();
    return m;
}

BandStructure band_and_s_sets(const DiscriminantPoly& q) {
    std::vector<double> edges;
    for (double level : {-2.0, 2.0})
        for (const auto& r : solve_level_set(q, level)) edges.push_back(r.value);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<double> zeros;
    for (const auto& r : solve_level_set(q, 0.0)) zeros.push_back(r.value);

    BandStructure out;
    std::vector<Interval> open_pieces;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double lo = edges[k];
        const double hi = edges[k + 1];
        if (std::abs(q(0.5 * (lo + hi))) > 2.0) continue;
        if (!out.bands.empty() && out.bands.back().hi == lo) out.bands.back().hi = hi;
        else out.bands.push_back({lo, hi});
        double cursor = lo;
        for (double z : zeros) {
            if (z <= cursor || z >= hi) continue;
            open_pieces.push_back({cursor, z});
            cursor = z;
        }
        open_pieces.push_back({cursor, hi});
    }
    out.s_set = IntervalSet(std::move(open_pieces));
    if (out.bands.size() > static_cast<std::size_t>(std::max(q.poly.degree(), 0)))
        throw NumericalError("band_and_s_sets: more bands than the discriminant degree");
    return out;
}

std::vector<PeriodicOrbit> SUnion::witnesses(double energy) const {
    std::vector<PeriodicOrbit> out;
    for (const auto& item : provenance)
        if (item.s_set.contains(energy)) out.push_back(item.orbit);
    return out;
}

SUnion union_S(const std::vector<PeriodicOrbit>& orbits, const Potential& potential, std::size_t max_period) {
    SUnion out;
    out.max_period = max_period;
    for (const auto& orbit : orbits) {
        if (orbit.period() > max_period) continue;
        BandStructure bs = band_and_s_sets(discriminant_poly(orbit, potential));
        out.set = set_union(out.set, bs.s_set);
        out.provenance.push_back({orbit, std::move(bs.s_set)});
    }
    return out;
}

SUnion union_S(const TransitionSystem& system, const Potential& potential, std::size_t max_period,
               std::size_t orbit_cap) {
    return union_S(enumerate_periodic_orbits(system, max_period, orbit_cap), potential, max_period);
}

} // namespace lyapsft
