#include "lyapsft/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "lyapsft/errors.hpp"

namespace lyapsft {

namespace {

constexpr std::size_t kDenseTableCap = std::size_t{1} << 24;

void extend_words(const TransitionSystem& system, std::size_t length, Word& prefix, std::vector<Word>& out) {
    if (prefix.size() == length) {
        out.push_back(prefix);
        return;
    }
    for (Symbol s = 0; s < system.alphabet_size(); ++s) {
        if (!prefix.empty() && !system.allows(prefix.back(), s)) continue;
        prefix.push_back(s);
        extend_words(system, length, prefix, out);
        prefix.pop_back();
    }
}

double relative_difference(const Mat2& x, const Mat2& y) {
    const double scale = std::max({1.0, x.max_abs(), y.max_abs()});
    const double diff = std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
    return diff / scale;
}

} // namespace

std::vector<Word> admissible_words(const TransitionSystem& system, std::size_t length) {
    std::vector<Word> out;
    Word prefix;
    if (length == 0) return {Word{}};
    extend_words(system, length, prefix, out);
    return out;
}

Potential::Potential(const TransitionSystem& system, std::size_t radius, std::map<Word, double> table)
    : radius_(radius), alphabet_(system.alphabet_size()), table_(std::move(table)) {
    const std::size_t len = window_length();
    double dense_size = std::pow(static_cast<double>(alphabet_), static_cast<double>(len));
    if (dense_size > static_cast<double>(kDenseTableCap))
        throw ResourceError("potential: alphabet^(2r+1) = " + std::to_string(dense_size) + " exceeds the table cap");
    dense_.assign(static_cast<std::size_t>(dense_size), std::numeric_limits<double>::quiet_NaN());

    for (const auto& [word, value] : table_) {
        if (word.size() != len)
            throw ValidationError("potential: table word '" + system.format_word(word) + "' has length " +
                                  std::to_string(word.size()) + ", expected " + std::to_string(len));
        for (Symbol s : word)
            if (s >= alphabet_) throw ValidationError("potential: table word uses a symbol outside the alphabet");
        if (!validate_word(system, word))
            throw ValidationError("potential: table word '" + system.format_word(word) + "' is not admissible");
        if (!std::isfinite(value))
            throw ValidationError("potential: non-finite value for '" + system.format_word(word) + "'");
        dense_[index_of(word)] = value;
        sup_norm_ = std::max(sup_norm_, std::abs(value));
    }
    for (const auto& word : admissible_words(system, len))
        if (!table_.contains(word))
            throw ValidationError("potential: no value for admissible window '" + system.format_word(word) + "'");
}

Potential Potential::from_symbol_values(const TransitionSystem& system, const std::vector<double>& values) {
    if (values.size() != system.alphabet_size())
        throw ValidationError("potential: expected one value per symbol");
    std::map<Word, double> table;
    for (Symbol s = 0; s < values.size(); ++s) table[{s}] = values[s];
    return Potential(system, 0, std::move(table));
}

Potential Potential::constant(const TransitionSystem& system, double value) {
    return from_symbol_values(system, std::vector<double>(system.alphabet_size(), value));
}

std::size_t Potential::distinct_values() const {
    std::set<double> values;
    for (const auto& [word, value] : table_) values.insert(value);
    return values.size();
}

std::size_t Potential::index_of(std::span<const Symbol> window) const {
    std::size_t idx = 0;
    for (Symbol s : window) idx = idx * alphabet_ + s;
    return idx;
}

double Potential::at_window(std::span<const Symbol> window) const {
    if (window.size() != window_length()) throw InputError("potential: window of wrong length");
    for (Symbol s : window)
        if (s >= alphabet_) throw InputError("potential: window symbol outside the alphabet");
    const double v = dense_[index_of(window)];
    if (std::isnan(v)) throw DomainError("potential: window is not admissible");
    return v;
}

double Potential::eval(const SymbolicPoint& point, long long n) const {
    const auto r = static_cast<long long>(radius_);
    return at_window(point.window(n - r, n + r));
}

std::vector<double> Potential::periodic_samples(std::span<const Symbol> cycle) const {
    const auto len = static_cast<long long>(cycle.size());
    const auto r = static_cast<long long>(radius_);
    std::vector<double> out;
    out.reserve(cycle.size());
    Word window(window_length());
    for (long long k = 0; k < len; ++k) {
        for (long long i = -r; i <= r; ++i) {
            long long pos = (k + i) % len;
            if (pos < 0) pos += len;
            window[static_cast<std::size_t>(i + r)] = cycle[static_cast<std::size_t>(pos)];
        }
        out.push_back(at_window(window));
    }
    return out;
}

Potential Potential::restricted_to(const TransitionSystem& sub, std::span<const Symbol> map) const {
    std::map<Word, double> table;
    for (const auto& word : admissible_words(sub, window_length())) table[word] = at_window(lift_word(word, map));
    return Potential(sub, radius_, std::move(table));
}

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

double Mat2::norm() const {
    return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

Mat2 CocycleProduct::reconstruct() const {
    return normalized.scaled(static_cast<double>(std::exp(log_scale)));
}

double CocycleProduct::log_norm() const {
    return static_cast<double>(log_scale + std::log(static_cast<long double>(normalized.norm())));
}

CocycleProduct cocycle_product(double energy, std::span<const double> values) {
    CocycleProduct out;
    Mat2 m;
    long double scale = 0.0L;
    for (std::size_t k = 0; k < values.size(); ++k) {
        m = one_step_matrix(energy, values[k]) * m;
        if ((k + 1) % kRenormalizationCadence == 0) {
            const double nrm = m.norm();
            m = m.scaled(1.0 / nrm);
            scale += std::log(static_cast<long double>(nrm));
        }
    }
    const double nrm = m.norm();
    m = m.scaled(1.0 / nrm);
    scale += std::log(static_cast<long double>(nrm));
    out.normalized = m;
    out.log_scale = scale;
    // det(e^s B) is only recoverable from B while the smaller singular value is resolved.
    if (scale <= 8.0L) {
        const double det = static_cast<double>(static_cast<long double>(m.det()) * std::exp(2.0L * scale));
        if (std::abs(det - 1.0) > 1e-6)
            throw NumericalError("cocycle_product: determinant drifted to " + std::to_string(det));
    }
    return out;
}

CocycleProduct cocycle_product(double energy, const Potential& potential, const SymbolicPoint& point, long long n) {
    if (n == 0) return {};
    if (n < 0) {
        // A_n(omega) = [A_{-n}(T^n omega)]^{-1}; the inverse of e^s B in SL(2,R) is e^s adj(B).
        CocycleProduct forward = cocycle_product(energy, potential, point.shifted(n), -n);
        forward.normalized = forward.normalized.adjugate();
        return forward;
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = potential.eval(point, k);
    return cocycle_product(energy, values);
}

Mat2 monodromy(double energy, const Potential& potential, std::span<const Symbol> cycle) {
    Mat2 m;
    for (double v : potential.periodic_samples(cycle)) m = one_step_matrix(energy, v) * m;
    return m;
}

double discriminant_value(double energy, const Potential& potential, std::span<const Symbol> cycle) {
    return monodromy(energy, potential, cycle).trace();
}

LyapunovEstimate estimate_lyapunov(double energy, const Potential& potential, const MarkovMeasure& measure,
                                   long long n_steps, int n_samples, std::uint64_t base_seed,
                                   std::uint64_t energy_index) {
    if (n_steps < 1000) throw InputError("estimate_lyapunov: n_steps must be at least 1000");
    if (n_samples < 1) throw InputError("estimate_lyapunov: n_samples must be positive");
    if (measure.size() != potential.alphabet_size())
        throw InputError("estimate_lyapunov: measure and potential live on different alphabets");
    if (!measure.ergodic()) throw ErgodicityError("estimate_lyapunov: measure has several closed classes");

    const std::size_t span = potential.window_length();
    const std::size_t ell = potential.alphabet_size();
    std::size_t high = 1;
    for (std::size_t i = 1; i < span; ++i) high *= ell;

    std::vector<double> per_sample(static_cast<std::size_t>(n_samples));
    Word word;
    for (int s = 0; s < n_samples; ++s) {
        OrbitSampler sampler(measure, derive_seed(base_seed, energy_index, static_cast<std::uint64_t>(s)));
        sampler.fill(word, static_cast<std::size_t>(n_steps) + span - 1);

        std::size_t idx = 0;
        for (std::size_t i = 0; i + 1 < span; ++i) idx = idx * ell + word[i];
        double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
        long double scale = 0.0L;
        for (long long k = 0; k < n_steps; ++k) {
            idx = (idx % high) * ell + word[static_cast<std::size_t>(k) + span - 1];
            const double x = energy - potential.at_index(idx);
            const double na = x * a - c;
            const double nb = x * b - d;
            c = a;
            d = b;
            a = na;
            b = nb;
            if ((k + 1) % kRenormalizationCadence == 0) {
                const double nrm = Mat2{a, b, c, d}.norm();
                a /= nrm;
                b /= nrm;
                c /= nrm;
                d /= nrm;
                scale += std::log(static_cast<long double>(nrm));
            }
        }
        const long double total = scale + std::log(static_cast<long double>(Mat2{a, b, c, d}.norm()));
        per_sample[static_cast<std::size_t>(s)] = static_cast<double>(total / static_cast<long double>(n_steps));
    }

    double mean = 0.0;
    for (double x : per_sample) mean += x;
    mean /= n_samples;
    double var = 0.0;
    for (double x : per_sample) var += (x - mean) * (x - mean);
    const double sd = n_samples > 1 ? std::sqrt(var / (n_samples - 1)) : 0.0;

    LyapunovEstimate est;
    est.energy = energy;
    est.raw_mean = mean;
    est.value = std::max(0.0, mean);
    est.std_error = sd / std::sqrt(static_cast<double>(n_samples));
    est.n_steps = n_steps;
    est.n_samples = n_samples;
    return est;
}

double periodic_lyapunov(double energy, const Potential& potential, const PeriodicOrbit& orbit) {
    const double delta = discriminant_value(energy, potential, orbit.word());
    if (std::abs(delta) <= 2.0) return 0.0;
    const double t = std::abs(delta);
    return std::log((t + std::sqrt(t * t - 4.0)) / 2.0) / static_cast<double>(orbit.period());
}

HolonomyMatrix holonomy(double energy, const Potential& potential, const SymbolicPoint& omega,
                        const SymbolicPoint& omega_prime, HolonomyKind kind) {
    const bool stable = kind == HolonomyKind::stable;
    if (stable ? !agree_from(omega, omega_prime, 0) : !agree_until(omega, omega_prime, 0))
        throw DomainError(stable ? "holonomy: points do not share their future (omega'_n = omega_n for n >= 0)"
                                 : "holonomy: points do not share their past (omega'_n = omega_n for n <= 0)");
    const auto r = static_cast<long long>(potential.radius());
    auto at = [&](long long n) {
        Mat2 a = cocycle_product(energy, potential, omega, n).reconstruct();
        Mat2 b = cocycle_product(energy, potential, omega_prime, n).reconstruct();
        return b.adjugate() * a;
    };
    const long long n0 = stable ? r : -r;
    const long long n1 = stable ? r + 1 : -r - 1;
    HolonomyMatrix h{at(n0), kind, n0};
    const Mat2 again = at(n1);
    if (relative_difference(h.matrix, again) > 1e-12)
        throw ConsistencyError("holonomy: matrix changed between n0 and n0 + 1");
    return h;
}

ZPoint elliptic_fixed_point(const Mat2& m) {
    const double delta = m.trace();
    if (!(std::abs(delta) < 2.0))
        throw DomainError("z_point: monodromy is not elliptic (|trace| = " + std::to_string(std::abs(delta)) + ")");
    // c z^2 + (d - a) z - b = 0 has discriminant delta^2 - 4 < 0, so c != 0.
    const double root = std::sqrt(4.0 - delta * delta);
    const double im = (m.c > 0.0 ? root : -root) / (2.0 * m.c);
    return {{(m.a - m.d) / (2.0 * m.c), im}, false};
}

ZPoint z_point(double energy, const Potential& potential, const PeriodicOrbit& orbit) {
    return elliptic_fixed_point(monodromy(energy, potential, orbit.word()));
}

ZPoint transport_z(const ZPoint& z, const Mat2& q) {
    if (std::abs(q.det() - 1.0) > 1e-6 * std::max(1.0, q.max_abs() * q.max_abs()))
        throw DomainError("transport_z: matrix is not in SL(2,R)");
    if (z.infinite) {
        if (q.c == 0.0) return ZPoint::at_infinity();
        return {{q.a / q.c, 0.0}, false};
    }
    const std::complex<double> den = q.c * z.value + q.d;
    if (den == std::complex<double>(0.0, 0.0)) return ZPoint::at_infinity();
    return {(q.a * z.value + q.b) / den, false};
}

} // namespace lyapsft
