#include "cpfol/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace cpfol {

Cx require_finite(Cx z, const char* where) {
    if (!finite(z)) {
        throw ParseError(std::string("non-finite complex value in ") + where);
    }
    return z;
}

// ---------------------------------------------------------------- Poly1

Poly1::Poly1(std::vector<Cx> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly1::Poly1(std::initializer_list<Cx> coeffs) : c_(coeffs) { trim(); }

Poly1 Poly1::monomial(int k, Cx c) {
    std::vector<Cx> v(static_cast<std::size_t>(k) + 1, Cx(0.0));
    v.back() = c;
    return Poly1(std::move(v));
}

void Poly1::trim() {
    while (!c_.empty() && c_.back() == Cx(0.0)) c_.pop_back();
}

Cx Poly1::coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return Cx(0.0);
    return c_[static_cast<std::size_t>(k)];
}

std::optional<int> Poly1::degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
}

std::optional<int> Poly1::degree_with_tol(double rel_tol) const {
    const double cut = rel_tol * max_abs_coeff();
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
        if (std::abs(c_[static_cast<std::size_t>(k)]) > cut) return k;
    }
    return std::nullopt;
}

double Poly1::max_abs_coeff() const {
    double m = 0.0;
    for (const Cx& c : c_) m = std::max(m, std::abs(c));
    return m;
}

Cx Poly1::eval(Cx t) const {
    Cx acc(0.0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
}

double Poly1::eval_scale(double r) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * r + std::abs(c_[k]);
    return acc;
}

Poly1 Poly1::derivative() const {
    if (c_.size() <= 1) return Poly1();
    std::vector<Cx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly1(std::move(d));
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<Cx> v(std::max(a.c_.size(), b.c_.size()), Cx(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return Poly1(std::move(v));
}

Poly1 operator-(const Poly1& a, const Poly1& b) {
    std::vector<Cx> v(std::max(a.c_.size(), b.c_.size()), Cx(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] -= b.c_[k];
    return Poly1(std::move(v));
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return Poly1();
    std::vector<Cx> v(a.c_.size() + b.c_.size() - 1, Cx(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly1(std::move(v));
}

Poly1 operator*(Cx s, const Poly1& a) {
    std::vector<Cx> v(a.c_);
    for (Cx& c : v) c *= s;
    return Poly1(std::move(v));
}

Poly1 Poly1::operator-() const { return Cx(-1.0) * *this; }

// ---------------------------------------------------------------- Poly2

Poly2 Poly2::constant(Cx c) {
    Poly2 p;
    p.add_term(0, 0, c);
    return p;
}

Poly2 Poly2::monomial(int i, int j, Cx c) {
    Poly2 p;
    p.add_term(i, j, c);
    return p;
}

Poly2 Poly2::x() { return monomial(1, 0, Cx(1.0)); }
Poly2 Poly2::y() { return monomial(0, 1, Cx(1.0)); }

void Poly2::add_term(int i, int j, Cx c) {
    if (i < 0 || j < 0) throw PreconditionError("negative exponent in Poly2 term");
    const Key key{i, j};
    auto it = t_.find(key);
    if (it == t_.end()) {
        if (c != Cx(0.0)) t_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == Cx(0.0)) t_.erase(it);
}

Cx Poly2::coeff(int i, int j) const {
    auto it = t_.find(Key{i, j});
    return it == t_.end() ? Cx(0.0) : it->second;
}

std::optional<int> Poly2::degree() const {
    if (t_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [key, c] : t_) d = std::max(d, key.first + key.second);
    return d;
}

std::optional<int> Poly2::degree_x() const {
    if (t_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [key, c] : t_) d = std::max(d, key.first);
    return d;
}

std::optional<int> Poly2::degree_y() const {
    if (t_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [key, c] : t_) d = std::max(d, key.second);
    return d;
}

double Poly2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : t_) m = std::max(m, std::abs(c));
    return m;
}

Cx Poly2::eval(Cx x, Cx y) const {
    const int dx = degree_x().value_or(0);
    const int dy = degree_y().value_or(0);
    std::vector<Cx> xs(static_cast<std::size_t>(dx) + 1), ys(static_cast<std::size_t>(dy) + 1);
    xs[0] = Cx(1.0);
    for (int i = 1; i <= dx; ++i) xs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i - 1)] * x;
    ys[0] = Cx(1.0);
    for (int j = 1; j <= dy; ++j) ys[static_cast<std::size_t>(j)] = ys[static_cast<std::size_t>(j - 1)] * y;
    Cx acc(0.0);
    for (const auto& [key, c] : t_) {
        acc += c * xs[static_cast<std::size_t>(key.first)] * ys[static_cast<std::size_t>(key.second)];
    }
    return acc;
}

double Poly2::eval_scale(double rx, double ry) const {
    double acc = 0.0;
    for (const auto& [key, c] : t_) {
        acc += std::abs(c) * std::pow(rx, key.first) * std::pow(ry, key.second);
    }
    return acc;
}

Poly2 Poly2::dx() const {
    Poly2 p;
    for (const auto& [key, c] : t_) {
        if (key.first > 0) p.add_term(key.first - 1, key.second, static_cast<double>(key.first) * c);
    }
    return p;
}

Poly2 Poly2::dy() const {
    Poly2 p;
    for (const auto& [key, c] : t_) {
        if (key.second > 0) p.add_term(key.first, key.second - 1, static_cast<double>(key.second) * c);
    }
    return p;
}

Poly2 Poly2::homogeneous_part(int k) const {
    Poly2 p;
    for (const auto& [key, c] : t_) {
        if (key.first + key.second == k) p.add_term(key.first, key.second, c);
    }
    return p;
}

Poly2 Poly2::pruned(double threshold) const {
    Poly2 p;
    for (const auto& [key, c] : t_) {
        if (std::abs(c) > threshold) p.add_term(key.first, key.second, c);
    }
    return p;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 p = a;
    for (const auto& [key, c] : b.t_) p.add_term(key.first, key.second, c);
    return p;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 p = a;
    for (const auto& [key, c] : b.t_) p.add_term(key.first, key.second, -c);
    return p;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (const auto& [ka, ca] : a.t_) {
        for (const auto& [kb, cb] : b.t_) {
            p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        }
    }
    return p;
}

Poly2 operator*(Cx s, const Poly2& a) {
    Poly2 p;
    if (s == Cx(0.0)) return p;
    for (const auto& [key, c] : a.t_) p.add_term(key.first, key.second, s * c);
    return p;
}

Poly2 Poly2::operator-() const { return Cx(-1.0) * *this; }

// ------------------------------------------------------- substitutions

Poly2 compose_affine(const Poly2& p, Cx xx, Cx xy, Cx xc, Cx yx, Cx yy, Cx yc) {
    const int dx = p.degree_x().value_or(0);
    const int dy = p.degree_y().value_or(0);
    Poly2 ax;
    ax.add_term(1, 0, xx);
    ax.add_term(0, 1, xy);
    ax.add_term(0, 0, xc);
    Poly2 ay;
    ay.add_term(1, 0, yx);
    ay.add_term(0, 1, yy);
    ay.add_term(0, 0, yc);

    std::vector<Poly2> px(static_cast<std::size_t>(dx) + 1), py(static_cast<std::size_t>(dy) + 1);
    px[0] = Poly2::constant(Cx(1.0));
    for (int i = 1; i <= dx; ++i) px[static_cast<std::size_t>(i)] = px[static_cast<std::size_t>(i - 1)] * ax;
    py[0] = Poly2::constant(Cx(1.0));
    for (int j = 1; j <= dy; ++j) py[static_cast<std::size_t>(j)] = py[static_cast<std::size_t>(j - 1)] * ay;

    Poly2 out;
    for (const auto& [key, c] : p.terms()) {
        out = out + c * (px[static_cast<std::size_t>(key.first)] * py[static_cast<std::size_t>(key.second)]);
    }
    return out;
}

Poly1 compose_line(const Poly2& p, Cx x0, Cx a, Cx y0, Cx b) {
    const int dx = p.degree_x().value_or(0);
    const int dy = p.degree_y().value_or(0);
    const Poly1 lx{x0, a};
    const Poly1 ly{y0, b};
    std::vector<Poly1> px(static_cast<std::size_t>(dx) + 1), py(static_cast<std::size_t>(dy) + 1);
    px[0] = Poly1{Cx(1.0)};
    for (int i = 1; i <= dx; ++i) px[static_cast<std::size_t>(i)] = px[static_cast<std::size_t>(i - 1)] * lx;
    py[0] = Poly1{Cx(1.0)};
    for (int j = 1; j <= dy; ++j) py[static_cast<std::size_t>(j)] = py[static_cast<std::size_t>(j - 1)] * ly;
    Poly1 out;
    for (const auto& [key, c] : p.terms()) {
        out = out + c * (px[static_cast<std::size_t>(key.first)] * py[static_cast<std::size_t>(key.second)]);
    }
    return out;
}

Poly2 swap_vars(const Poly2& p) {
    Poly2 q;
    for (const auto& [key, c] : p.terms()) q.add_term(key.second, key.first, c);
    return q;
}

Poly1 slice_y(const Poly2& p, Cx x0) {
    const int dx = p.degree_x().value_or(0);
    const int dy = p.degree_y().value_or(0);
    std::vector<Cx> xs(static_cast<std::size_t>(dx) + 1);
    xs[0] = Cx(1.0);
    for (int i = 1; i <= dx; ++i) xs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i - 1)] * x0;
    std::vector<Cx> v(static_cast<std::size_t>(dy) + 1, Cx(0.0));
    for (const auto& [key, c] : p.terms()) v[static_cast<std::size_t>(key.second)] += c * xs[static_cast<std::size_t>(key.first)];
    return Poly1(std::move(v));
}

Poly1 slice_x(const Poly2& p, Cx y0) { return slice_y(swap_vars(p), y0); }

// ----------------------------------------------------------------- roots

std::vector<std::pair<Cx, int>> roots(const Poly1& p, double cluster_tol) {
    if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial are undefined");
    const auto deg_opt = p.degree_with_tol(kCoeffTol);
    if (!deg_opt) throw ZeroPolynomial("roots: polynomial is zero within tolerance");
    const int n = *deg_opt;
    if (n == 0) return {};

    const Cx lead = p.coeff(n);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(i) / lead;
    for (int i = 1; i < n; ++i) comp(i, i - 1) = Cx(1.0);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("roots: eigenvalue iteration failed to converge");
    }

    const Poly1 dp = p.derivative();
    std::vector<Cx> raw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Cx z = solver.eigenvalues()(i);
        // One Newton step; skipped near critical points where it would
        // amplify the error instead of reducing it.
        const Cx d = dp.eval(z);
        if (std::abs(d) > 1e-12 * dp.eval_scale(std::abs(z)) + 1e-300) {
            z -= p.eval(z) / d;
        }
        raw[static_cast<std::size_t>(i)] = z;
    }

    // Deterministic clustering: lexicographic sort, then transitive
    // grouping of everything within cluster_tol of a cluster member.
    std::sort(raw.begin(), raw.end(), [](Cx a, Cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<bool> used(raw.size(), false);
    std::vector<std::pair<Cx, int>> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> members{i};
        used[i] = true;
        for (std::size_t m = 0; m < members.size(); ++m) {
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (!used[j] && std::abs(raw[j] - raw[members[m]]) <= cluster_tol) {
                    used[j] = true;
                    members.push_back(j);
                }
            }
        }
        Cx mean(0.0);
        for (std::size_t m : members) mean += raw[m];
        mean /= static_cast<double>(members.size());
        out.emplace_back(mean, static_cast<int>(members.size()));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return out;
}

// ------------------------------------------------------------- resultant

namespace {

// Sylvester determinant of two univariate polynomials with the given
// formal degrees (coefficient vectors may carry exact zeros up top when
// a leading coefficient vanished at the sample point; the formal degree
// keeps the matrix shape consistent across samples).
Cx sylvester_det(const std::vector<Cx>& a, int m, const std::vector<Cx>& b, int n) {
    const int size = m + n;
    if (size == 0) return Cx(1.0);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) s(r, r + k) = a[static_cast<std::size_t>(m - k)];
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) s(n + r, r + k) = b[static_cast<std::size_t>(n - k)];
    }
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(s).determinant();
}

std::vector<Cx> coeff_column(const Poly2& p, Cx x0, int formal_deg_y) {
    std::vector<Cx> v(static_cast<std::size_t>(formal_deg_y) + 1, Cx(0.0));
    const Poly1 s = slice_y(p, x0);
    for (int k = 0; k <= formal_deg_y; ++k) v[static_cast<std::size_t>(k)] = s.coeff(k);
    return v;
}

} // namespace

Poly1 resultant_y(const Poly2& P, const Poly2& Q) {
    if (P.is_zero() || Q.is_zero()) return Poly1();
    const int m = P.degree_y().value_or(0);
    const int n = Q.degree_y().value_or(0);
    if (m == 0 && n == 0) return Poly1{Cx(1.0)};
    const int dxP = P.degree_x().value_or(0);
    const int dxQ = Q.degree_x().value_or(0);
    // Degree bound for Res_y as a polynomial in x.
    const int bound = n * dxP + m * dxQ;
    const int samples = bound + 1;

    std::vector<Cx> dets(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
        const Cx xk(std::cos(th), std::sin(th));
        dets[static_cast<std::size_t>(k)] =
            sylvester_det(coeff_column(P, xk, m), m, coeff_column(Q, xk, n), n);
    }

    // Inverse discrete Fourier transform on the unit circle samples.
    std::vector<Cx> coeffs(static_cast<std::size_t>(samples), Cx(0.0));
    for (int j = 0; j < samples; ++j) {
        Cx acc(0.0);
        for (int k = 0; k < samples; ++k) {
            const double th = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                              static_cast<double>(samples);
            acc += dets[static_cast<std::size_t>(k)] * Cx(std::cos(th), std::sin(th));
        }
        coeffs[static_cast<std::size_t>(j)] = acc / static_cast<double>(samples);
    }

    // Drop interpolation noise relative to the largest coefficient.
    double m_abs = 0.0;
    for (const Cx& c : coeffs) m_abs = std::max(m_abs, std::abs(c));
    for (Cx& c : coeffs) {
        if (std::abs(c) <= 1e-11 * m_abs) c = Cx(0.0);
    }
    return Poly1(std::move(coeffs));
}

Poly1 resultant_x(const Poly2& P, const Poly2& Q) {
    return resultant_y(swap_vars(P), swap_vars(Q));
}

// ------------------------------------------------------------- gcd check

namespace {

// Roots x0 at which every y-coefficient polynomial of p vanishes, i.e.
// zeros of the pure-x content.  Candidates come from the lowest-degree
// nonzero coefficient polynomial.
std::vector<Cx> content_roots_x(const Poly2& p) {
    const int dy = p.degree_y().value_or(0);
    const int dx = p.degree_x().value_or(0);
    std::vector<Poly1> cols(static_cast<std::size_t>(dy) + 1);
    {
        std::vector<std::vector<Cx>> raw(static_cast<std::size_t>(dy) + 1,
                                         std::vector<Cx>(static_cast<std::size_t>(dx) + 1, Cx(0.0)));
        for (const auto& [key, c] : p.terms()) raw[static_cast<std::size_t>(key.second)][static_cast<std::size_t>(key.first)] = c;
        for (std::size_t j = 0; j < raw.size(); ++j) cols[j] = Poly1(raw[j]);
    }
    const Poly1* pick = nullptr;
    for (const Poly1& c : cols) {
        if (c.is_zero()) continue;
        if (!pick || c.degree_with_tol(kCoeffTol).value_or(0) < pick->degree_with_tol(kCoeffTol).value_or(0)) {
            pick = &c;
        }
    }
    if (!pick || pick->degree_with_tol(kCoeffTol).value_or(0) == 0) return {};
    std::vector<Cx> out;
    for (const auto& [z, mult] : roots(*pick)) {
        bool kills_all = true;
        for (const Poly1& c : cols) {
            if (c.is_zero()) continue;
            if (std::abs(c.eval(z)) > 1e-9 * (c.eval_scale(std::abs(z)) + 1e-30)) {
                kills_all = false;
                break;
            }
        }
        if (kills_all) out.push_back(z);
    }
    return out;
}

bool shares_content_root(const Poly2& P, const Poly2& Q) {
    for (const Cx& z : content_roots_x(P)) {
        bool kills_q = true;
        const int dyq = Q.degree_y().value_or(0);
        for (int j = 0; j <= dyq && kills_q; ++j) {
            Poly1 col;
            {
                std::vector<Cx> raw(static_cast<std::size_t>(Q.degree_x().value_or(0)) + 1, Cx(0.0));
                for (const auto& [key, c] : Q.terms()) {
                    if (key.second == j) raw[static_cast<std::size_t>(key.first)] = c;
                }
                col = Poly1(raw);
            }
            if (col.is_zero()) continue;
            if (std::abs(col.eval(z)) > 1e-9 * (col.eval_scale(std::abs(z)) + 1e-30)) kills_q = false;
        }
        if (kills_q) return true;
    }
    return false;
}

Poly2 unit_normalized(const Poly2& p) {
    const double m = p.max_abs_coeff();
    return m > 0.0 ? Cx(1.0 / m) * p : p;
}

} // namespace

bool gcd_check(const Poly2& P_in, const Poly2& Q_in, double tol) {
    (void)tol;
    const Poly2 P = unit_normalized(P_in);
    const Poly2 Q = unit_normalized(Q_in);
    if (P.is_zero() && Q.is_zero()) return false;
    if (P.is_zero()) return Q.degree().value_or(0) == 0;
    if (Q.is_zero()) return P.degree().value_or(0) == 0;
    if (P.degree() == 0 || Q.degree() == 0) return true;

    const int dyP = P.degree_y().value_or(0);
    const int dyQ = Q.degree_y().value_or(0);

    if (dyP == 0 && dyQ == 0) {
        // Both free of y: common factor iff a shared x-root exists.
        const Poly1 a = slice_x(P, Cx(0.0));
        const Poly1 b = slice_x(Q, Cx(0.0));
        for (const auto& [z, mult] : roots(a)) {
            if (std::abs(b.eval(z)) <= 1e-9 * (b.eval_scale(std::abs(z)) + 1e-30)) return false;
        }
        return true;
    }
    if (dyP == 0 || dyQ == 0) {
        // One factor free of y: any common divisor is free of y too and
        // must divide the other's pure-x content.
        return !shares_content_root(P, Q) && !shares_content_root(Q, P);
    }

    const Poly1 res = resultant_y(P, Q);
    // After unit normalization the sample determinants are O(1) for
    // coprime inputs; identical vanishing signals a common y-dependent
    // factor.
    if (res.max_abs_coeff() <= 1e-9) return false;
    // The resultant does not see a common factor that is free of y.
    if (shares_content_root(P, Q) || shares_content_root(Q, P)) return false;
    return true;
}

// ----------------------------------------------------------- poly_divide

namespace {

// Graded-lex leading term: highest total degree, ties by higher x power.
std::optional<Poly2::Key> leading_key(const Poly2& p) {
    std::optional<Poly2::Key> best;
    for (const auto& [key, c] : p.terms()) {
        if (!best) {
            best = key;
            continue;
        }
        const int da = key.first + key.second;
        const int db = best->first + best->second;
        if (da > db || (da == db && key.first > best->first)) best = key;
    }
    return best;
}

} // namespace

std::pair<Poly2, bool> poly_divide(const Poly2& num, const Poly2& den, double tol) {
    if (den.is_zero()) throw ZeroPolynomial("poly_divide: division by the zero polynomial");
    const double scale = std::max(num.max_abs_coeff(), den.max_abs_coeff());
    const double cut = tol * (scale > 0.0 ? scale : 1.0);

    const auto dlk = leading_key(den);
    const Cx dlc = den.coeff(dlk->first, dlk->second);

    Poly2 rem = num.pruned(cut);
    Poly2 quo;
    Poly2 tail; // accumulated non-divisible leading terms
    while (!rem.is_zero()) {
        const auto rlk = leading_key(rem);
        const Cx rlc = rem.coeff(rlk->first, rlk->second);
        if (rlk->first >= dlk->first && rlk->second >= dlk->second) {
            const int qi = rlk->first - dlk->first;
            const int qj = rlk->second - dlk->second;
            const Cx qc = rlc / dlc;
            quo.add_term(qi, qj, qc);
            rem = rem - Poly2::monomial(qi, qj, qc) * den;
            // The leading term cancels exactly in exact arithmetic; clear
            // the floating-point residue so the reduction always advances.
            rem.add_term(rlk->first, rlk->second, -rem.coeff(rlk->first, rlk->second));
            rem = rem.pruned(cut);
        } else {
            tail.add_term(rlk->first, rlk->second, rlc);
            rem.add_term(rlk->first, rlk->second, -rlc);
        }
    }
    const bool exact = tail.max_abs_coeff() <= cut;
    return {quo, exact};
}

} // namespace cpfol
