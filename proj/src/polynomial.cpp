#include "lyapsft/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "lyapsft/errors.hpp"

namespace lyapsft {

namespace {

// Relative size below which a Sturm remainder coefficient is treated as zero.
constexpr double kSturmZeroTolerance = 1e-9;

int sign_changes(const std::vector<Polynomial>& seq, double x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq) {
        const double v = p(x);
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

struct Bracket {
    double lo;
    double hi;
    int count;
};

void isolate(const std::vector<Polynomial>& seq, double lo, double hi, int count, double tol,
             std::vector<Bracket>& out) {
    if (count <= 0) return;
    if (count == 1 || hi - lo <= tol) {
        out.push_back({lo, hi, count});
        return;
    }
    // Sturm counts need endpoints that are not roots; at a multiple root every term vanishes.
    double mid = 0.5 * (lo + hi);
    for (double f = 0.375; seq.front()(mid) == 0.0; f *= 0.5) mid = lo + f * (hi - lo);
    const int left = sign_changes(seq, lo) - sign_changes(seq, mid);
    isolate(seq, lo, mid, left, tol, out);
    isolate(seq, mid, hi, count - left, tol, out);
}

int multiplicity(const std::vector<Polynomial>& seq, double lo, double hi) {
    const Polynomial& g = seq.back();
    if (g.degree() < 1) return 1;
    const auto inner = sturm_sequence(g);
    if (sturm_count(inner, lo, hi) == 0) return 1;
    return 1 + multiplicity(inner, lo, hi);
}

} // namespace

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, double coefficient) {
    std::vector<double> c(degree + 1, 0.0);
    c[degree] = coefficient;
    return Polynomial(std::move(c));
}

void Polynomial::trim(double tol) {
    while (!c_.empty() && std::abs(c_.back()) <= tol) c_.pop_back();
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> c(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> c(p.c_.size() + q.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
        for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (double& x : out.c_) x = -x;
    return out;
}

Polynomial Polynomial::shifted_constant(double delta) const {
    std::vector<double> c = c_;
    if (c.empty()) c.push_back(0.0);
    c[0] += delta;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::remainder(const Polynomial& divisor, double zero_tol) const {
    if (divisor.is_zero()) throw DomainError("polynomial remainder: division by zero polynomial");
    std::vector<double> r = c_;
    const double scale = max_abs_coefficient();
    const std::size_t dn = divisor.c_.size();
    while (r.size() >= dn) {
        const double factor = r.back() / divisor.c_.back();
        const std::size_t shift = r.size() - dn;
        for (std::size_t i = 0; i < dn; ++i) r[shift + i] -= factor * divisor.c_[i];
        r.pop_back();
    }
    Polynomial out(std::move(r));
    out.trim(zero_tol * scale);
    return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    auto normalized = [](Polynomial q) {
        const double m = q.max_abs_coefficient();
        if (m == 0.0) return q;
        std::vector<double> c = q.coefficients();
        for (double& x : c) x /= m;
        return Polynomial(std::move(c));
    };
    std::vector<Polynomial> seq{normalized(p)};
    if (p.degree() < 1) return seq;
    seq.push_back(normalized(p.derivative()));
    while (seq.back().degree() > 0) {
        Polynomial r = -seq[seq.size() - 2].remainder(seq.back(), kSturmZeroTolerance);
        if (r.is_zero()) break;
        seq.push_back(normalized(r));
    }
    return seq;
}

int sturm_count(const std::vector<Polynomial>& sequence, double lo, double hi) {
    return sign_changes(sequence, lo) - sign_changes(sequence, hi);
}

double cauchy_bound(const Polynomial& p) {
    if (p.degree() < 1) return 1.0;
    double m = 0.0;
    const auto& c = p.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
    return 1.0 + m;
}

std::vector<Root> real_roots(const Polynomial& p, double tolerance) {
    if (p.is_zero()) throw DomainError("real_roots: the zero polynomial has every real number as a root");
    if (p.degree() == 0) return {};
    const auto seq = sturm_sequence(p);
    const double bound = cauchy_bound(p);
    std::vector<Bracket> brackets;
    isolate(seq, -bound, bound, sturm_count(seq, -bound, bound), tolerance, brackets);

    std::vector<Root> roots;
    int odd_roots = 0;
    for (const auto& br : brackets) {
        double lo = br.lo;
        double hi = br.hi;
        if (br.count == 1) {
            while (hi - lo > tolerance) {
                const double mid = 0.5 * (lo + hi);
                if (p(mid) == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (sturm_count(seq, lo, mid) == 1) hi = mid;
                else lo = mid;
            }
        }
        Root root{0.5 * (lo + hi), br.count == 1 ? multiplicity(seq, br.lo, br.hi) : br.count};
        // Odd multiplicity must show as a sign change of p across the isolating bracket.
        const double left = p(br.lo);
        const double right = p(br.hi);
        if (left != 0.0 && right != 0.0 && br.count == 1) {
            const bool changes = (left < 0.0) != (right < 0.0);
            if (changes != (root.multiplicity % 2 == 1))
                throw NumericalError("real_roots: multiplicity " + std::to_string(root.multiplicity) + " at " +
                                     std::to_string(root.value) + " contradicts the sign pattern of p");
        }
        odd_roots += root.multiplicity % 2;
        roots.push_back(root);
    }
    // Total multiplicity parity equals the degree parity only when all roots are real; the
    // sign at +-bound fixes the parity of the odd-multiplicity real roots.
    const bool ends_differ = (p(-bound) < 0.0) != (p(bound) < 0.0);
    if (ends_differ != (odd_roots % 2 == 1))
        throw NumericalError("real_roots: root count mismatch between Sturm isolation and sign changes");
    return roots;
}

} // namespace lyapsft
