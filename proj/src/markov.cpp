#include "lyapsft/markov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lyapsft/errors.hpp"

namespace lyapsft {

namespace {

constexpr std::size_t kDirectSolveLimit = 64;

void check_stochastic(const Matrix& p) {
    const std::size_t n = p.size();
    if (n == 0) throw ValidationError("measure: empty transition matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i].size() != n)
            throw ValidationError("measure: row " + std::to_string(i + 1) + " of P has length " +
                                  std::to_string(p[i].size()) + ", expected " + std::to_string(n));
        double sum = 0.0;
        for (double x : p[i]) {
            if (!(x >= 0.0) || !std::isfinite(x))
                throw ValidationError("measure: row " + std::to_string(i + 1) + " of P has a negative or non-finite entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > kStochasticTolerance)
            throw ValidationError("measure: row " + std::to_string(i + 1) + " of P sums to " + std::to_string(sum) +
                                  ", not 1 (stochasticity violated)");
    }
}

// Closed communicating classes of the support graph of P.
std::vector<std::vector<std::size_t>> closed_classes(const Matrix& p) {
    const std::size_t n = p.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (std::size_t j = 0; j < n; ++j)
            if (p[i][j] > 0.0) reach[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;

    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> assigned(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) cls.push_back(j);
        for (std::size_t j : cls) assigned[j] = true;
        bool closed = true;
        for (std::size_t a : cls)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[a][j] && !reach[j][a]) closed = false;
        if (closed) classes.push_back(std::move(cls));
    }
    return classes;
}

double stationarity_residual(const Matrix& p, const std::vector<double>& pi) {
    const std::size_t n = p.size();
    double worst = std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += pi[i] * p[i][j];
        worst = std::max(worst, std::abs(s - pi[j]));
    }
    return worst;
}

std::vector<double> cumulative(const std::vector<double>& weights) {
    std::vector<double> c(weights.size());
    std::partial_sum(weights.begin(), weights.end(), c.begin());
    return c;
}

} // namespace

std::vector<double> stationary_distribution(const Matrix& transition) {
    check_stochastic(transition);
    const auto classes = closed_classes(transition);
    if (classes.size() != 1) {
        std::string names;
        for (const auto& cls : classes) {
            names += " {";
            for (std::size_t k = 0; k < cls.size(); ++k) names += (k ? "," : "") + std::to_string(cls[k] + 1);
            names += "}";
        }
        throw ErgodicityError("stationary_distribution: P is reducible, closed classes:" + names);
    }
    const auto& cls = classes.front();
    const std::size_t m = cls.size();
    std::vector<double> restricted(m);

    if (m <= kDirectSolveLimit) {
        // (P_CC^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
        Eigen::MatrixXd a(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) a(r, c) = transition[cls[c]][cls[r]] - (r == c ? 1.0 : 0.0);
        a.row(m - 1).setOnes();
        Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
        b(m - 1) = 1.0;
        Eigen::VectorXd x = a.fullPivLu().solve(b);
        for (std::size_t k = 0; k < m; ++k) restricted[k] = x(k);
    } else {
        // Lazy chain (P + I)/2 shares pi and is aperiodic.
        std::vector<double> cur(m, 1.0 / static_cast<double>(m));
        std::vector<double> nxt(m);
        for (int iter = 0; iter < 200000; ++iter) {
            std::fill(nxt.begin(), nxt.end(), 0.0);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) nxt[c] += 0.5 * cur[r] * transition[cls[r]][cls[c]];
            double delta = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                nxt[c] += 0.5 * cur[c];
                delta = std::max(delta, std::abs(nxt[c] - cur[c]));
            }
            std::swap(cur, nxt);
            if (delta < 1e-16) break;
        }
        restricted = cur;
    }

    std::vector<double> pi(transition.size(), 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        pi[cls[k]] = std::max(0.0, restricted[k]);
        total += pi[cls[k]];
    }
    for (double& x : pi) x /= total;
    if (stationarity_residual(transition, pi) > kStochasticTolerance)
        throw NumericalError("stationary_distribution: residual above 1e-12");
    return pi;
}

MarkovMeasure::MarkovMeasure(Matrix transition, std::optional<std::vector<double>> stationary)
    : p_(std::move(transition)) {
    check_stochastic(p_);
    if (stationary) {
        if (stationary->size() != p_.size())
            throw ValidationError("measure: stationary vector has length " + std::to_string(stationary->size()) +
                                  ", expected " + std::to_string(p_.size()));
        for (double x : *stationary)
            if (!(x >= 0.0)) throw ValidationError("measure: stationary vector has a negative entry");
        if (stationarity_residual(p_, *stationary) > kStochasticTolerance)
            throw ValidationError("measure: supplied pi is not stationary for P (|pi P - pi| or |sum - 1| above 1e-12)");
        pi_ = std::move(*stationary);
        ergodic_ = closed_classes(p_).size() == 1;
    } else {
        pi_ = stationary_distribution(p_);
        ergodic_ = true;
    }
}

MarkovMeasure MarkovMeasure::uniform(const TransitionSystem& system) {
    const std::size_t n = system.alphabet_size();
    Matrix p(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < n; ++j) out += system.allows(static_cast<Symbol>(i), static_cast<Symbol>(j));
        for (std::size_t j = 0; j < n; ++j)
            if (system.allows(static_cast<Symbol>(i), static_cast<Symbol>(j))) p[i][j] = 1.0 / static_cast<double>(out);
    }
    return MarkovMeasure(std::move(p));
}

MarkovMeasure MarkovMeasure::bernoulli(const std::vector<double>& weights) {
    Matrix p(weights.size(), weights);
    return MarkovMeasure(std::move(p), weights);
}

MeasureReport validate_measure(const MarkovMeasure& measure, const TransitionSystem& system) {
    const Matrix& p = measure.transition();
    const std::size_t n = system.alphabet_size();
    if (p.size() != n)
        throw ValidationError("measure: P is " + std::to_string(p.size()) + "x" + std::to_string(p.size()) +
                              " but the alphabet has " + std::to_string(n) + " symbols");
    MeasureReport report;
    report.full_support = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool allowed = system.allows(static_cast<Symbol>(i), static_cast<Symbol>(j));
            if (p[i][j] > 0.0 && !allowed)
                throw ValidationError("measure: P charges forbidden transition " + system.labels()[i] + "->" +
                                      system.labels()[j]);
            if (allowed && !(p[i][j] > 0.0)) report.full_support = false;
        }
    report.ergodic = measure.ergodic();
    return report;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

OrbitSampler::OrbitSampler(const MarkovMeasure& measure, std::uint64_t seed)
    : initial_(cumulative(measure.stationary())), engine_(seed) {
    for (const auto& row : measure.transition()) rows_.push_back(cumulative(row));
}

double OrbitSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Symbol OrbitSampler::draw(const std::vector<double>& cum) {
    const double u = uniform() * cum.back();
    for (std::size_t k = 0; k + 1 < cum.size(); ++k)
        if (u < cum[k]) return static_cast<Symbol>(k);
    // Trailing zero-probability entries must never be returned.
    std::size_t k = cum.size() - 1;
    while (k > 0 && cum[k] == cum[k - 1]) --k;
    return static_cast<Symbol>(k);
}

Symbol OrbitSampler::first() { return draw(initial_); }

Symbol OrbitSampler::next(Symbol current) { return draw(rows_[current]); }

void OrbitSampler::fill(Word& out, std::size_t length) {
    out.resize(length);
    if (length == 0) return;
    out[0] = first();
    for (std::size_t k = 1; k < length; ++k) out[k] = next(out[k - 1]);
}

Word sample_orbit(const MarkovMeasure& measure, long long length, std::uint64_t seed) {
    if (length <= 0) throw InputError("sample_orbit: length must be positive");
    OrbitSampler sampler(measure, seed);
    Word w;
    sampler.fill(w, static_cast<std::size_t>(length));
    return w;
}

} // namespace lyapsft
