#pragma once

#include <cstddef>
#include <vector>

namespace lyapsft {

/// Real polynomial, coefficients in ascending powers.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    static Polynomial monomial(std::size_t degree, double coefficient = 1.0);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<double>& coefficients() const { return c_; }
    double leading() const { return c_.empty() ? 0.0 : c_.back(); }
    double max_abs_coefficient() const;

    double operator()(double x) const;
    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    Polynomial operator-() const;
    Polynomial shifted_constant(double delta) const;

    /// Remainder of division by `divisor`; coefficients below `zero_tol` times the
    /// dividend scale are dropped.
    Polynomial remainder(const Polynomial& divisor, double zero_tol = 0.0) const;

private:
    void trim(double tol = 0.0);
    std::vector<double> c_;
};

struct Root {
    double value = 0.0;
    int multiplicity = 1;
};

inline constexpr double kRootTolerance = 1e-12;

/// Sturm sequence p, p', -rem(p, p'), ... terminated at a (numerically) constant
/// or zero remainder. The last element is gcd(p, p') up to scale.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots in (lo, hi].
int sturm_count(const std::vector<Polynomial>& sequence, double lo, double hi);

/// Every distinct real root, isolated by Sturm counting and bisected to `tolerance`.
/// Throws NumericalError when the sign pattern of p contradicts the recovered multiplicities.
std::vector<Root> real_roots(const Polynomial& p, double tolerance = kRootTolerance);

/// Cauchy bound: every root has |x| < bound.
double cauchy_bound(const Polynomial& p);

} // namespace lyapsft
