#include <doctest.h>

#include <cmath>

#include "lyapsft/errors.hpp"
#include "lyapsft/markov.hpp"

using namespace lyapsft;

TEST_CASE("stationary_distribution") {
    const auto half = stationary_distribution({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-14));
    // pi = pi P with P = [[2/3,1/3],[1,0]]: pi_2 = pi_1/3, pi_1 + pi_2 = 1 gives (3/4, 1/4).
    const auto pi = stationary_distribution({{2.0 / 3.0, 1.0 / 3.0}, {1.0, 0.0}});
    CHECK(std::abs(pi[0] - 0.75) < 1e-12);
    CHECK(std::abs(pi[1] - 0.25) < 1e-12);
    CHECK_THROWS_AS(stationary_distribution({{1.0, 0.0}, {0.0, 1.0}}), ErgodicityError);
}

TEST_CASE("stationary_distribution on a large chain uses the iterative path") {
    const std::size_t n = 80;
    Matrix p(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        p[i][(i + 1) % n] = 0.7;
        p[i][i] = 0.3;
    }
    const auto pi = stationary_distribution(p);
    for (double x : pi) CHECK(std::abs(x - 1.0 / n) < 1e-12);
}

TEST_CASE("MarkovMeasure validation") {
    CHECK_THROWS_AS(MarkovMeasure({{0.5, 0.4}, {1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(MarkovMeasure({{0.0, 0.0}, {1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(MarkovMeasure({{0.5, 0.5}, {1.0, 0.0}}, std::vector<double>{0.5, 0.5}), ValidationError);
    const MarkovMeasure ok({{0.5, 0.5}, {1.0, 0.0}}, std::vector<double>{2.0 / 3.0, 1.0 / 3.0});
    CHECK(ok.stationary()[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("validate_measure") {
    const auto full = TransitionSystem::full_shift(2);
    const auto golden = TransitionSystem::golden_mean();
    const auto b = validate_measure(MarkovMeasure::bernoulli({0.5, 0.5}), full);
    CHECK(b.ergodic);
    CHECK(b.full_support);
    const auto absorbing = validate_measure(MarkovMeasure({{1.0, 0.0}, {1.0, 0.0}}), golden);
    CHECK(absorbing.ergodic);
    CHECK_FALSE(absorbing.full_support);
    CHECK_THROWS_AS(validate_measure(MarkovMeasure::bernoulli({0.5, 0.5}), golden), ValidationError);
    CHECK(validate_measure(MarkovMeasure::uniform(golden), golden).full_support);
}

TEST_CASE("sample_orbit") {
    const auto mu = MarkovMeasure::bernoulli({0.5, 0.5});
    CHECK_THROWS_AS(sample_orbit(mu, 0, 1), InputError);
    CHECK_THROWS_AS(sample_orbit(mu, -3, 1), InputError);
    const auto ones = sample_orbit(MarkovMeasure::bernoulli({1.0, 0.0}), 100, 9);
    for (Symbol s : ones) CHECK(s == 0);
    CHECK(sample_orbit(mu, 1000, 42) == sample_orbit(mu, 1000, 42));
    CHECK(sample_orbit(mu, 1000, 42) != sample_orbit(mu, 1000, 43));
    const auto golden = TransitionSystem::golden_mean();
    CHECK(validate_word(golden, sample_orbit(MarkovMeasure::uniform(golden), 10000, 3)));
}

TEST_CASE("derive_seed separates streams") {
    CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
    CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 0));
    CHECK(derive_seed(7, 3, 4) == derive_seed(7, 3, 4));
}

// Pair frequencies against pi_i P_ij. The standard error comes from batch means, which
// accounts for the serial correlation of the chain.
TEST_CASE("empirical pair frequencies over 10^6 steps") {
    const MarkovMeasure mu({{2.0 / 3.0, 1.0 / 3.0}, {1.0, 0.0}});
    const long long n = 1'000'000;
    const auto w = sample_orbit(mu, n + 1, 2024);
    const int batches = 100;
    const long long per = n / batches;
    for (Symbol i = 0; i < 2; ++i) {
        for (Symbol j = 0; j < 2; ++j) {
            const double expected = mu.stationary()[i] * mu.transition()[i][j];
            double sum = 0.0, sum_sq = 0.0;
            for (int b = 0; b < batches; ++b) {
                long long count = 0;
                for (long long k = b * per; k < (b + 1) * per; ++k)
                    count += (w[static_cast<std::size_t>(k)] == i && w[static_cast<std::size_t>(k + 1)] == j);
                const double f = static_cast<double>(count) / static_cast<double>(per);
                sum += f;
                sum_sq += f * f;
            }
            const double mean = sum / batches;
            const double var = (sum_sq - batches * mean * mean) / (batches - 1);
            const double se = std::sqrt(var / batches);
            INFO("pair " << i << j << " mean " << mean << " expected " << expected << " se " << se);
            if (expected == 0.0) {
                CHECK(mean == 0.0);
            } else {
                CHECK(std::abs(mean - expected) <= 3.0 * se);
            }
        }
    }
}

TEST_CASE("symbol frequencies converge to pi") {
    const MarkovMeasure mu({{0.2, 0.5, 0.3}, {0.6, 0.0, 0.4}, {0.1, 0.1, 0.8}});
    const auto w = sample_orbit(mu, 1'000'000, 77);
    std::vector<double> freq(3, 0.0);
    for (Symbol s : w) freq[s] += 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        freq[i] /= static_cast<double>(w.size());
        // Generous bound: 3 sigma for an i.i.d. sequence inflated tenfold for correlation.
        const double p = mu.stationary()[i];
        CHECK(std::abs(freq[i] - p) <= 30.0 * std::sqrt(p * (1 - p) / static_cast<double>(w.size())));
    }
}
