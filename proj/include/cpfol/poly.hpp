#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cpfol/errors.hpp"

namespace cpfol {

using Cx = std::complex<double>;

// Relative tolerance used for coefficient comparisons (zero tests,
// degree determination, division remainders) unless a caller passes
// its own.
inline constexpr double kCoeffTol = 1e-12;

// Default clustering distance for root multiplicity detection.
inline constexpr double kRootClusterTol = 1e-8;

inline bool finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Boundary check for external data; internal arithmetic is trusted.
Cx require_finite(Cx z, const char* where);

// Univariate polynomial over C, dense coefficients, lowest order first.
// Trailing exact-zero coefficients are trimmed on construction.
class Poly1 {
  public:
    Poly1() = default;
    explicit Poly1(std::vector<Cx> coeffs);
    Poly1(std::initializer_list<Cx> coeffs);

    static Poly1 monomial(int k, Cx c);

    const std::vector<Cx>& coeffs() const { return c_; }
    Cx coeff(int k) const;
    bool is_zero() const { return c_.empty(); }
    // Total degree; nullopt marks the zero polynomial (degree minus
    // infinity), never an in-band integer.
    std::optional<int> degree() const;
    // Degree ignoring leading coefficients below rel_tol * max |coeff|.
    std::optional<int> degree_with_tol(double rel_tol) const;
    double max_abs_coeff() const;

    Cx eval(Cx t) const;
    // sum_k |c_k| r^k: conditioning scale of eval at |t| = r.
    double eval_scale(double r) const;
    Poly1 derivative() const;

    friend Poly1 operator+(const Poly1& a, const Poly1& b);
    friend Poly1 operator-(const Poly1& a, const Poly1& b);
    friend Poly1 operator*(const Poly1& a, const Poly1& b);
    friend Poly1 operator*(Cx s, const Poly1& a);
    Poly1 operator-() const;

  private:
    void trim();
    std::vector<Cx> c_;
};

// Bivariate polynomial over C.  Sparse: map from exponent pair (i, j)
// for x^i y^j to coefficient.  Exact-zero coefficients are never stored;
// an optional prune threshold drops magnitudes at or below it.
class Poly2 {
  public:
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, Cx>;

    Poly2() = default;

    static Poly2 constant(Cx c);
    static Poly2 monomial(int i, int j, Cx c);
    static Poly2 x();
    static Poly2 y();

    // Adds c to the (i, j) coefficient; erases the term if the result
    // is exactly zero.
    void add_term(int i, int j, Cx c);
    Cx coeff(int i, int j) const;
    const TermMap& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    // Total degree; nullopt for the zero polynomial.
    std::optional<int> degree() const;
    std::optional<int> degree_x() const;
    std::optional<int> degree_y() const;
    double max_abs_coeff() const;

    Cx eval(Cx x, Cx y) const;
    // sum |c_ij| rx^i ry^j
    double eval_scale(double rx, double ry) const;
    Poly2 dx() const;
    Poly2 dy() const;
    Poly2 homogeneous_part(int k) const;
    // Copy with |coeff| <= threshold removed.
    Poly2 pruned(double threshold) const;

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(Cx s, const Poly2& a);
    Poly2 operator-() const;

  private:
    TermMap t_;
};

// p(xx*X + xy*Y + xc, yx*X + yy*Y + yc) as a polynomial in (X, Y).
Poly2 compose_affine(const Poly2& p, Cx xx, Cx xy, Cx xc, Cx yx, Cx yy, Cx yc);

// Restriction to a parametrized line: p(x0 + a*T, y0 + b*T).
Poly1 compose_line(const Poly2& p, Cx x0, Cx a, Cx y0, Cx b);

// p with x and y exchanged.
Poly2 swap_vars(const Poly2& p);

// Univariate slices p(x0, .) and p(., y0).
Poly1 slice_y(const Poly2& p, Cx x0);
Poly1 slice_x(const Poly2& p, Cx y0);

// All complex roots with multiplicities; sum of multiplicities equals
// the (tolerance-trimmed) degree.  Backed by companion-matrix
// eigenvalues, one Newton polish per eigenvalue, then clustering at
// cluster_tol.  Throws ZeroPolynomial for the zero polynomial; a
// nonzero constant has no roots.
std::vector<std::pair<Cx, int>> roots(const Poly1& p, double cluster_tol = kRootClusterTol);

// True iff P and Q have no common factor of positive degree.  Tested
// via the resultant with respect to y not vanishing identically, plus
// a pure-x content check (a common factor free of y does not force the
// resultant to vanish, so it needs its own test).  Inputs are
// normalized to unit max coefficient first; "identically zero" means
// every sample determinant below 1e-9 after normalization.
bool gcd_check(const Poly2& P, const Poly2& Q, double tol = kCoeffTol);

// Division num = quotient * den + remainder in graded-lex order.
// Returns {quotient, exact}; exact means the remainder is zero within
// tol relative to the input scale.  poly_divide(0, den) = {0, true}.
// Throws ZeroPolynomial when den is zero.
std::pair<Poly2, bool> poly_divide(const Poly2& num, const Poly2& den, double tol = kCoeffTol);

// Resultant of P and Q with respect to y, a polynomial in x (and the
// mirror image with respect to x).  Computed by sampling x at roots of
// unity, taking numeric Sylvester determinants, and interpolating.
Poly1 resultant_y(const Poly2& P, const Poly2& Q);
Poly1 resultant_x(const Poly2& P, const Poly2& Q);

} // namespace cpfol
