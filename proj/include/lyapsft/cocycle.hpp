#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lyapsft/markov.hpp"
#include "lyapsft/symbolic.hpp"

namespace lyapsft {

/// Locally constant potential: V(omega) depends on omega_{-r} .. omega_{r}.
class Potential {
public:
    /// `table` must assign a value to every admissible word of length 2r+1 and to nothing else.
    Potential(const TransitionSystem& system, std::size_t radius, std::map<Word, double> table);

    /// Window radius 0: one value per symbol.
    static Potential from_symbol_values(const TransitionSystem& system, const std::vector<double>& values);
    static Potential constant(const TransitionSystem& system, double value);

    std::size_t radius() const { return radius_; }
    std::size_t window_length() const { return 2 * radius_ + 1; }
    double sup_norm() const { return sup_norm_; }
    std::size_t alphabet_size() const { return alphabet_; }
    const std::map<Word, double>& table() const { return table_; }
    /// Number of distinct values taken on admissible windows.
    std::size_t distinct_values() const;

    /// Value on the window omega_{n-r} .. omega_{n+r}; throws DomainError if the window is not admissible.
    double at_window(std::span<const Symbol> window) const;
    double eval(const SymbolicPoint& point, long long n) const;
    /// V(T^k p) for k = 0 .. |cycle|-1 of the periodic point with the given cycle.
    std::vector<double> periodic_samples(std::span<const Symbol> cycle) const;

    /// Same potential on an embedded sub-system (windows re-keyed through `map`).
    Potential restricted_to(const TransitionSystem& sub, std::span<const Symbol> map) const;

    /// Dense lookup used by the estimator: index = sum window[i] * l^(2r-i).
    double at_index(std::size_t index) const { return dense_[index]; }
    std::size_t dense_size() const { return dense_.size(); }

private:
    std::size_t index_of(std::span<const Symbol> window) const;

    std::size_t radius_;
    std::size_t alphabet_;
    std::map<Word, double> table_;
    std::vector<double> dense_;
    double sup_norm_ = 0.0;
};

/// All admissible words of the given length, lexicographic.
std::vector<Word> admissible_words(const TransitionSystem& system, std::size_t length);

struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    /// Adjugate; equals the inverse for determinant-one matrices.
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    double max_abs() const;
    /// Spectral norm.
    double norm() const;
    Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

using CocycleMatrix = Mat2;

/// [[E - v, -1], [1, 0]]
inline Mat2 one_step_matrix(double energy, double value) { return {energy - value, -1.0, 1.0, 0.0}; }

/// A_n(omega) = exp(log_scale) * normalized, with |normalized| in [1/2, 2].
struct CocycleProduct {
    Mat2 normalized;
    long double log_scale = 0.0L;

    /// exp(log_scale) * normalized in double precision; overflows for large log_scale.
    Mat2 reconstruct() const;
    /// log |A_n(omega)|
    double log_norm() const;
};

inline constexpr int kRenormalizationCadence = 16;

CocycleProduct cocycle_product(double energy, const Potential& potential, const SymbolicPoint& point, long long n);

/// Product along a raw potential sequence: A(v[n-1]) ... A(v[0]).
CocycleProduct cocycle_product(double energy, std::span<const double> values);

/// A_{n_p}(p) for the periodic point whose cycle starts at index 0.
Mat2 monodromy(double energy, const Potential& potential, std::span<const Symbol> cycle);
double discriminant_value(double energy, const Potential& potential, std::span<const Symbol> cycle);

struct LyapunovEstimate {
    double energy = 0.0;
    double value = 0.0;
    /// Mean before clamping at zero.
    double raw_mean = 0.0;
    double std_error = 0.0;
    long long n_steps = 0;
    int n_samples = 0;
};

inline constexpr long long kDefaultSteps = 100'000;
inline constexpr int kDefaultSamples = 20;

/// (1/n) log |A_n(omega)| averaged over n_samples Markov-typical points.
/// Sample s uses the seed derive_seed(base_seed, energy_index, s).
LyapunovEstimate estimate_lyapunov(double energy, const Potential& potential, const MarkovMeasure& measure,
                                   long long n_steps, int n_samples, std::uint64_t base_seed,
                                   std::uint64_t energy_index = 0);

/// (1/n_p) log of the spectral radius of the monodromy.
double periodic_lyapunov(double energy, const Potential& potential, const PeriodicOrbit& orbit);

enum class HolonomyKind { stable, unstable };

struct HolonomyMatrix {
    Mat2 matrix;
    HolonomyKind kind = HolonomyKind::stable;
    long long stabilization_index = 0;
};

/// Stabilized [A_n(omega')]^{-1} A_n(omega) at n = r (stable) or n = -r (unstable).
HolonomyMatrix holonomy(double energy, const Potential& potential, const SymbolicPoint& omega,
                        const SymbolicPoint& omega_prime, HolonomyKind kind);

/// Point of the upper half-plane, or the point at infinity.
struct ZPoint {
    std::complex<double> value{0.0, 0.0};
    bool infinite = false;

    static ZPoint at_infinity() { return {{0.0, 0.0}, true}; }
};

/// Upper half-plane fixed point of z -> (az + b)/(cz + d) for |trace| < 2.
ZPoint elliptic_fixed_point(const Mat2& m);
ZPoint z_point(double energy, const Potential& potential, const PeriodicOrbit& orbit);
ZPoint transport_z(const ZPoint& z, const Mat2& q);

} // namespace lyapsft
