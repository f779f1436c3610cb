#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lyapsft/symbolic.hpp"

namespace lyapsft {

using Matrix = std::vector<std::vector<double>>;

inline constexpr double kStochasticTolerance = 1e-12;

/// Stationary Markov measure on a subshift of finite type.
class MarkovMeasure {
public:
    /// Computes the stationary vector when `stationary` is absent.
    /// Throws ValidationError on a non-stochastic P or a supplied vector that is not stationary,
    /// ErgodicityError when P has several closed classes and no vector is supplied.
    explicit MarkovMeasure(Matrix transition, std::optional<std::vector<double>> stationary = std::nullopt);

    /// Every allowed transition from a symbol gets the same probability.
    static MarkovMeasure uniform(const TransitionSystem& system);
    /// Bernoulli (i.i.d.) measure; the system must be the full shift on weights.size() symbols.
    static MarkovMeasure bernoulli(const std::vector<double>& weights);

    const Matrix& transition() const { return p_; }
    const std::vector<double>& stationary() const { return pi_; }
    std::size_t size() const { return pi_.size(); }
    /// P has a single closed class.
    bool ergodic() const { return ergodic_; }

private:
    Matrix p_;
    std::vector<double> pi_;
    bool ergodic_ = true;
};

struct MeasureReport {
    bool ergodic = false;
    bool full_support = false;
};

/// Unique stationary vector of a row-stochastic matrix with a single closed class.
std::vector<double> stationary_distribution(const Matrix& transition);

/// Throws ValidationError if P charges a forbidden transition.
MeasureReport validate_measure(const MarkovMeasure& measure, const TransitionSystem& system);

/// splitmix64 finalizer over a combination of the inputs.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

/// Draws symbols of a Markov chain. Holds private generator state: one sampler per thread.
class OrbitSampler {
public:
    OrbitSampler(const MarkovMeasure& measure, std::uint64_t seed);

    Symbol first();
    Symbol next(Symbol current);
    void fill(Word& out, std::size_t length);

private:
    double uniform();
    Symbol draw(const std::vector<double>& cumulative);

    std::vector<double> initial_;
    std::vector<std::vector<double>> rows_;
    std::mt19937_64 engine_;
};

Word sample_orbit(const MarkovMeasure& measure, long long length, std::uint64_t seed);

} // namespace lyapsft
