#include "acceptance/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace lyapsft::oracle {

std::vector<Word> brute_force_orbits(const TransitionSystem& system, std::size_t max_period) {
    const std::size_t ell = system.alphabet_size();
    std::vector<Word> out;
    for (std::size_t n = 1; n <= max_period; ++n) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= ell;
        for (std::size_t code = 0; code < total; ++code) {
            Word w(n);
            std::size_t c = code;
            for (std::size_t i = n; i-- > 0;) {
                w[i] = static_cast<Symbol>(c % ell);
                c /= ell;
            }
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = system.allows(w[i], w[(i + 1) % n]);
            // Least among all rotations, and strictly less than every nontrivial rotation (primitive).
            for (std::size_t k = 1; k < n && ok; ++k) {
                Word r(n);
                for (std::size_t i = 0; i < n; ++i) r[i] = w[(i + k) % n];
                ok = w < r;
            }
            if (ok) out.push_back(w);
        }
    }
    return out;
}

long long primitive_necklace_count(long long letters, long long max_length) {
    auto mobius = [](long long d) {
        int mu = 1;
        for (long long p = 2; p * p <= d; ++p) {
            if (d % p) continue;
            d /= p;
            if (d % p == 0) return 0;
            mu = -mu;
        }
        return d > 1 ? -mu : mu;
    };
    long long total = 0;
    for (long long k = 1; k <= max_length; ++k) {
        long long sum = 0;
        for (long long d = 1; d <= k; ++d) {
            if (k % d) continue;
            long long power = 1;
            for (long long i = 0; i < k / d; ++i) power *= letters;
            sum += mobius(d) * power;
        }
        total += sum / k;
    }
    return total;
}

Mat2 direct_product(double energy, const std::vector<double>& values) {
    Mat2 m;
    for (double v : values) {
        const Mat2 step{energy - v, -1.0, 1.0, 0.0};
        m = step * m;
    }
    return m;
}

double chebyshev_discriminant(int n, double energy) {
    if (n == 0) return 2.0;
    double prev = 2.0;
    double cur = energy;
    for (int k = 1; k < n; ++k) {
        const double next = energy * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> floquet_energies(const std::vector<double>& values, double theta) {
    const auto n = static_cast<Eigen::Index>(values.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    const std::complex<double> phase = std::polar(1.0, theta);
    for (Eigen::Index k = 0; k < n; ++k) {
        h(k, k) += values[static_cast<std::size_t>(k)];
        // u(k+1) with wrap-around u(k+n) = e^{i theta} u(k).
        const Eigen::Index next = (k + 1) % n;
        const std::complex<double> w = (k + 1 == n) ? phase : 1.0;
        h(k, next) += w;
        h(next, k) += std::conj(w);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(out.begin(), out.end());
    return out;
}

double direct_discriminant(double energy, const std::vector<double>& values) {
    return direct_product(energy, values).trace();
}

} // namespace lyapsft::oracle
