#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "acceptance/oracles.hpp"
#include "lyapsft/errors.hpp"
#include "lyapsft/spectra.hpp"

using namespace lyapsft;

namespace {

std::vector<double> expand(const std::vector<Root>& roots) {
    std::vector<double> out;
    for (const auto& r : roots)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

} // namespace

TEST_CASE("discriminant_poly examples") {
    const auto full = TransitionSystem::full_shift(2);
    const auto v = Potential::from_symbol_values(full, {0.3, -1.2});
    CHECK(discriminant_poly(PeriodicOrbit(Word{0}), v).poly.coefficients() == std::vector<double>{-0.3, 1.0});
    // (E - a)(E - b) - 2
    const auto q2 = discriminant_poly(PeriodicOrbit(Word{0, 1}), v).poly.coefficients();
    REQUIRE(q2.size() == 3);
    CHECK(q2[0] == doctest::Approx(0.3 * -1.2 - 2.0).epsilon(1e-15));
    CHECK(q2[1] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(q2[2] == 1.0);
    const auto zero = Potential::constant(full, 0.0);
    CHECK(discriminant_poly(PeriodicOrbit(Word{0, 0, 1}), zero).poly.coefficients() ==
          std::vector<double>{0.0, -3.0, 0.0, 1.0});
}

TEST_CASE("discriminant agrees with the direct monodromy trace and is rotation invariant") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto full = TransitionSystem::full_shift(3);
    std::vector<double> values(3);
    for (double& x : values) x = u(rng);
    const auto v = Potential::from_symbol_values(full, values);
    for (const auto& orbit : enumerate_periodic_orbits(full, 6)) {
        const auto q = discriminant_poly(orbit, v);
        CHECK(q.poly.degree() == static_cast<int>(orbit.period()));
        CHECK(q.poly.leading() == 1.0);
        std::vector<double> samples;
        for (Symbol s : orbit.word()) samples.push_back(values[s]);
        for (int k = 0; k < 10; ++k) {
            const double e = 3.0 * u(rng);
            CHECK(std::abs(q(e) - oracle::direct_discriminant(e, samples)) <= 1e-8);
        }
        // Rotations of the cycle: identical polynomial.
        for (std::size_t r = 1; r < orbit.period(); ++r) {
            std::vector<double> rotated(samples.begin() + static_cast<long>(r), samples.end());
            rotated.insert(rotated.end(), samples.begin(), samples.begin() + static_cast<long>(r));
            const auto cyc = orbit.rotated(r);
            for (int k = 0; k < 5; ++k) {
                const double e = 3.0 * u(rng);
                CHECK(std::abs(q(e) - oracle::direct_discriminant(e, rotated)) <= 1e-8);
                CHECK(std::abs(q(e) - discriminant_value(e, v, cyc)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("Chebyshev identity for the zero potential") {
    const auto full = TransitionSystem::full_shift(2);
    const auto zero = Potential::constant(full, 0.0);
    for (int n = 1; n <= 8; ++n) {
        Word w(static_cast<std::size_t>(n), 0);
        w.back() = 1;
        const auto q = discriminant_poly(PeriodicOrbit(w), zero);
        for (double e = -3.0; e <= 3.0; e += 0.125) CHECK(std::abs(q(e) - oracle::chebyshev_discriminant(n, e)) <= 1e-9);
    }
}

TEST_CASE("solve_level_set examples") {
    const auto full = TransitionSystem::full_shift(2);
    const auto zero = Potential::constant(full, 0.0);
    const auto fixed = discriminant_poly(PeriodicOrbit(Word{0}), zero);
    const auto r1 = solve_level_set(fixed, 2.0);
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1[0].value - 2.0) <= 1e-12);
    const auto two = discriminant_poly(PeriodicOrbit(Word{0, 1}), zero);  // E^2 - 2
    const auto r2 = solve_level_set(two, -2.0);
    REQUIRE(r2.size() == 1);
    CHECK(std::abs(r2[0].value) <= 1e-12);
    CHECK(r2[0].multiplicity == 2);
    const auto three = discriminant_poly(PeriodicOrbit(Word{0, 0, 1}), zero);  // E^3 - 3E
    const auto r3 = solve_level_set(three, 0.0);
    REQUIRE(r3.size() == 3);
    CHECK(std::abs(r3[0].value + std::sqrt(3.0)) <= 1e-12);
    CHECK(std::abs(r3[1].value) <= 1e-12);
    CHECK(std::abs(r3[2].value - std::sqrt(3.0)) <= 1e-12);
}

TEST_CASE("level sets match Floquet eigenvalues") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto full = TransitionSystem::full_shift(3);
    for (int t = 0; t < 6; ++t) {
        std::vector<double> values(3);
        for (double& x : values) x = u(rng);
        if (t == 0) values = {0.0, 0.0, 0.0};  // closed gaps: every interior band edge is a double root
        const auto v = Potential::from_symbol_values(full, values);
        for (const auto& orbit : enumerate_periodic_orbits(full, 7)) {
            const auto q = discriminant_poly(orbit, v);
            std::vector<double> samples;
            for (Symbol s : orbit.word()) samples.push_back(values[s]);
            const struct {
                double level, theta;
            } cases[] = {{2.0, 0.0}, {-2.0, std::numbers::pi}, {0.0, std::numbers::pi / 2}};
            for (const auto& c : cases) {
                const auto roots = solve_level_set(q, c.level);
                const auto expanded = expand(roots);
                const auto eig = oracle::floquet_energies(samples, c.theta);
                REQUIRE(expanded.size() == eig.size());
                for (std::size_t k = 0; k < eig.size(); ++k) {
                    const bool simple = std::count(expanded.begin(), expanded.end(), expanded[k]) == 1;
                    CHECK(std::abs(expanded[k] - eig[k]) <= (simple ? 1e-9 : 1e-6));
                }
            }
        }
    }
}

TEST_CASE("band_and_s_sets examples") {
    const auto full = TransitionSystem::full_shift(2);
    const auto zero = Potential::constant(full, 0.0);
    const auto fixed = band_and_s_sets(discriminant_poly(PeriodicOrbit(Word{0}), zero));
    REQUIRE(fixed.bands.size() == 1);
    CHECK(std::abs(fixed.bands[0].lo + 2.0) <= 1e-12);
    CHECK(std::abs(fixed.bands[0].hi - 2.0) <= 1e-12);
    REQUIRE(fixed.s_set.size() == 2);
    CHECK(std::abs(fixed.s_set.measure() - 4.0) <= 1e-12);

    const auto two = band_and_s_sets(discriminant_poly(PeriodicOrbit(Word{0, 1}), zero));
    REQUIRE(two.bands.size() == 1);  // closed gap at E = 0: bands [-2,0] and [0,2] merge
    CHECK(std::abs(two.bands[0].lo + 2.0) <= 1e-12);
    CHECK(std::abs(two.bands[0].hi - 2.0) <= 1e-12);
    REQUIRE(two.s_set.size() == 4);
    const double r2 = std::sqrt(2.0);
    const double expected[4][2] = {{-2.0, -r2}, {-r2, 0.0}, {0.0, r2}, {r2, 2.0}};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(two.s_set.intervals()[k].lo - expected[k][0]) <= 1e-9);
        CHECK(std::abs(two.s_set.intervals()[k].hi - expected[k][1]) <= 1e-9);
    }
    CHECK(std::abs(two.s_set.measure() - two.band_measure()) <= 1e-12);
}

TEST_CASE("band counts and measures") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto full = TransitionSystem::full_shift(2);
    for (int t = 0; t < 10; ++t) {
        const auto v = Potential::from_symbol_values(full, {u(rng), u(rng)});
        for (const auto& orbit : enumerate_periodic_orbits(full, 8)) {
            const auto bs = band_and_s_sets(discriminant_poly(orbit, v));
            CHECK(bs.bands.size() <= orbit.period());
            CHECK(bs.band_measure() >= 0.0);
            CHECK(bs.band_measure() <= 4.0 * static_cast<double>(orbit.period()) + 1e-9);
            CHECK(std::abs(bs.s_set.measure() - bs.band_measure()) <= 1e-9);
        }
    }
}

TEST_CASE("union_S examples") {
    const auto full = TransitionSystem::full_shift(2);
    const auto s0 = union_S(full, Potential::constant(full, 0.0), 1);
    REQUIRE(s0.set.size() == 2);
    const double ends[2][2] = {{-2.0, 0.0}, {0.0, 2.0}};
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(s0.set.intervals()[k].lo - ends[k][0]) <= 1e-12);
        CHECK(std::abs(s0.set.intervals()[k].hi - ends[k][1]) <= 1e-12);
    }
    const auto s1 = union_S(full, Potential::from_symbol_values(full, {0.0, 1.0}), 1);
    CHECK(std::abs(s1.set.measure() - 5.0) <= 1e-12);
    CHECK(std::abs(s1.set.intervals().front().lo + 2.0) <= 1e-12);
    CHECK(std::abs(s1.set.intervals().back().hi - 3.0) <= 1e-12);
    CHECK(s1.witnesses(0.5).size() == 2);
    CHECK(s1.witnesses(2.5).size() == 1);
    CHECK(s1.max_period == 1);
}

TEST_CASE("union_S is monotone in the truncation level and under embeddings") {
    const auto full = TransitionSystem::full_shift(2);
    const auto golden = TransitionSystem::golden_mean();
    const auto v = Potential::from_symbol_values(full, {0.0, 0.7});
    IntervalSet previous;
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto s = union_S(full, v, m);
        CHECK(previous.is_subset_of(s.set, 1e-9));
        previous = s.set;
    }
    const auto sub_v = v.restricted_to(golden, symbol_map(golden, full));
    CHECK(union_S(golden, sub_v, 8).set.is_subset_of(union_S(full, v, 8).set, 1e-9));
}
