#include "cpfol/foliation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace cpfol {

Foliation new_foliation(Poly2 P, Poly2 Q, std::string name) {
    for (const auto& [key, c] : P.terms()) require_finite(c, "foliation component P");
    for (const auto& [key, c] : Q.terms()) require_finite(c, "foliation component Q");
    if (P.is_zero() && Q.is_zero()) {
        throw BothZero("foliation requires P and Q not both zero");
    }
    if (!gcd_check(P, Q)) {
        throw NotRelativelyPrime("P and Q must be relatively prime");
    }
    Foliation f;
    f.affine_degree = std::max(P.degree().value_or(0), Q.degree().value_or(0));
    f.R = Poly2::y() * P - Poly2::x() * Q;
    f.P = std::move(P);
    f.Q = std::move(Q);
    f.name = std::move(name);
    return f;
}

Poly2 u_chart_transform(const Poly2& p, int k) {
    Poly2 q;
    for (const auto& [key, c] : p.terms()) {
        const int e = k - key.first - key.second;
        if (e < 0) throw PreconditionError("u_chart_transform: power below polynomial degree");
        q.add_term(e, key.second, c);
    }
    return q;
}

Poly2 r_chart_transform(const Poly2& p, int k) {
    Poly2 q;
    for (const auto& [key, c] : p.terms()) {
        const int e = k - key.first - key.second;
        if (e < 0) throw PreconditionError("r_chart_transform: power below polynomial degree");
        q.add_term(e, key.first, c);
    }
    return q;
}

namespace {

// Smallest exponent of the first variable present; INT_MAX for zero.
int min_first_exponent(const Poly2& p) {
    int m = INT_MAX;
    for (const auto& [key, c] : p.terms()) m = std::min(m, key.first);
    return m;
}

Poly2 shift_first_exponent(const Poly2& p, int m) {
    Poly2 q;
    for (const auto& [key, c] : p.terms()) q.add_term(key.first - m, key.second, c);
    return q;
}

} // namespace

ChartForm chart_form(const Foliation& f, Chart chart) {
    if (chart == Chart::U0) return {chart, f.P, f.Q, 0};
    const int k = f.affine_degree + 1;
    Poly2 A, B;
    if (chart == Chart::U1) {
        A = u_chart_transform(f.P, k);
        B = u_chart_transform(f.R, k);
    } else {
        A = -r_chart_transform(f.Q, k);
        B = r_chart_transform(f.R, k);
    }
    int m = std::min(min_first_exponent(A), min_first_exponent(B));
    if (m == INT_MAX) m = 0;
    if (m > 0) {
        A = shift_first_exponent(A, m);
        B = shift_first_exponent(B, m);
    }
    return {chart, A, B, m};
}

bool infinity_is_leaf(const Foliation& f, double tol) {
    const Poly2 top = f.R.homogeneous_part(f.affine_degree + 1);
    const double scale = std::max(f.P.max_abs_coeff(), f.Q.max_abs_coeff());
    return top.max_abs_coeff() > tol * scale;
}

int geometric_degree(const Foliation& f, double tol) {
    return infinity_is_leaf(f, tol) ? f.affine_degree : f.affine_degree - 1;
}

bool is_global_vector_field(const Foliation& f) { return geometric_degree(f) <= 1; }

int moduli_dim_infinity_invariant(int n) { return n * n + 3 * n + 1; }
int moduli_dim_general(int n) { return n * n + 4 * n + 2; }

TangencyCount tangency_count(const Foliation& f, Cx x0, Cx y0, Cx a, Cx b,
                             double cluster_tol) {
    if (a == Cx(0.0) && b == Cx(0.0)) {
        throw PreconditionError("tangency_count: line direction must be nonzero");
    }
    const Poly1 gP = compose_line(f.P, x0, a, y0, b);
    const Poly1 gQ = compose_line(f.Q, x0, a, y0, b);
    const Poly1 g = b * gP - a * gQ;
    // The difference can cancel structurally; measure smallness against
    // the scale of what was subtracted, not against g itself.
    const double scale =
        std::abs(b) * gP.max_abs_coeff() + std::abs(a) * gQ.max_abs_coeff() + 1e-300;
    if (g.max_abs_coeff() <= 1e-10 * scale) {
        throw LineIsLeaf("tangency_count: the line is invariant");
    }
    const double cut = 1e-10 * scale;
    int deg = 0;
    for (int k = static_cast<int>(g.coeffs().size()) - 1; k >= 0; --k) {
        if (std::abs(g.coeff(k)) > cut) {
            deg = k;
            break;
        }
    }
    const int n_geo = geometric_degree(f);
    const int at_inf = n_geo - deg;
    if (at_inf < 0) {
        throw NumericError("tangency_count: finite tangency degree exceeds geometric degree");
    }

    TangencyCount out;
    out.total = 0;
    if (deg > 0) {
        std::vector<Cx> trimmed(g.coeffs().begin(), g.coeffs().begin() + deg + 1);
        for (const auto& [t, mult] : roots(Poly1(std::move(trimmed)), cluster_tol)) {
            TangencyPoint p;
            p.at_infinity = false;
            p.t = t;
            p.x = x0 + a * t;
            p.y = y0 + b * t;
            p.order = mult;
            out.points.push_back(p);
            out.total += mult;
        }
    }
    if (at_inf > 0) {
        TangencyPoint p;
        p.at_infinity = true;
        p.t = Cx(0.0);
        p.x = Cx(0.0);
        p.y = Cx(0.0);
        p.order = at_inf;
        out.points.push_back(p);
        out.total += at_inf;
    }
    return out;
}

bool pl_property(const Foliation& f, double tol) {
    if (!infinity_is_leaf(f, tol)) return false;
    const int n1 = f.affine_degree + 1;
    const Poly2 top = f.R.homogeneous_part(n1);
    // B(0, v) in the U1 chart equals the top homogeneous part of R
    // evaluated at (1, v).
    std::vector<Cx> b0(static_cast<std::size_t>(n1) + 1, Cx(0.0));
    for (int j = 0; j <= n1; ++j) b0[static_cast<std::size_t>(j)] = top.coeff(n1 - j, j);
    const Poly1 p(std::move(b0));
    const double scale = std::max(f.P.max_abs_coeff(), f.Q.max_abs_coeff());
    if (std::abs(p.coeff(n1)) <= tol * scale) return false;
    const auto rts = roots(p);
    if (static_cast<int>(rts.size()) != n1) return false;
    for (const auto& [z, mult] : rts) {
        if (mult != 1) return false;
    }
    return true;
}

AlgebraicLeaf is_algebraic_leaf(const Foliation& f, const Poly2& K, double tol) {
    if (K.is_zero() || K.degree().value_or(0) == 0) {
        throw ConstantK("is_algebraic_leaf: K must be nonconstant");
    }
    const Poly2 D = K.dx() * f.P + K.dy() * f.Q;
    if (D.is_zero()) return {true, Poly2()};
    auto [q, exact] = poly_divide(D, K, tol);
    if (!exact) return {false, Poly2()};
    return {true, q};
}

namespace {

// One Newton step per iteration on a univariate polynomial.
Cx newton_polish(const Poly1& p, Cx z, int iters) {
    const Poly1 dp = p.derivative();
    for (int k = 0; k < iters; ++k) {
        const Cx d = dp.eval(z);
        if (std::abs(d) < 1e-30) break;
        z -= p.eval(z) / d;
    }
    return z;
}

Poly2 line_poly(Cx alpha, Cx beta, Cx gamma) {
    Poly2 k;
    k.add_term(1, 0, alpha);
    k.add_term(0, 1, beta);
    k.add_term(0, 0, gamma);
    return k;
}

// Canonical representative: unit direction vector, leading phase fixed.
Poly2 normalize_line(const Poly2& k) {
    const Cx a = k.coeff(1, 0), b = k.coeff(0, 1);
    const Cx big = std::abs(a) >= std::abs(b) ? a : b;
    const Cx s = (big / std::abs(big)) * std::sqrt(std::norm(a) + std::norm(b));
    return Cx(1.0 / s) * k;
}

} // namespace

InvariantLines invariant_lines(const Foliation& f, double tol) {
    const int n = f.affine_degree;
    const Poly2 Pn = f.P.homogeneous_part(n);
    const Poly2 Qn = f.Q.homogeneous_part(n);
    const double scale = std::max(f.P.max_abs_coeff(), f.Q.max_abs_coeff());

    // A line with direction vector (beta, -alpha) can only be invariant
    // if (alpha P_n + beta Q_n)(beta, -alpha) = 0: parametrize
    // (alpha, beta) = (1, t) and add the (0, 1) direction by hand.
    const Poly1 d = slice_x(Pn, Cx(-1.0)) + Poly1{Cx(0.0), Cx(1.0)} * slice_x(Qn, Cx(-1.0));

    InvariantLines out;
    out.pencil = false;

    std::vector<std::pair<Cx, Cx>> dirs;
    if (d.max_abs_coeff() <= 1e-10 * scale) {
        // Constraint vacuous: radial-type pencil.  Sweep a fixed sample
        // of directions so representatives (the axes among them) are
        // still reported.
        out.pencil = true;
        for (const Cx t : {Cx(0.0), Cx(1.0), Cx(-1.0), Cx(2.0), Cx(-2.0)}) dirs.push_back({Cx(1.0), t});
        dirs.push_back({Cx(0.0), Cx(1.0)});
    } else {
        if (d.degree_with_tol(1e-9).value_or(0) > 0) {
            for (const auto& [t, mult] : roots(d)) dirs.push_back({Cx(1.0), t});
        }
        if (std::abs(Qn.coeff(n, 0)) <= 1e-10 * scale) dirs.push_back({Cx(0.0), Cx(1.0)});
    }

    for (auto [alpha, beta] : dirs) {
        const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
        alpha /= nrm;
        beta /= nrm;
        const Poly2 W = alpha * f.P + beta * f.Q;
        if (W.max_abs_coeff() <= 1e-12 * scale) {
            // alpha P + beta Q = 0: every line of this direction is
            // invariant (constant direction fields).
            out.pencil = true;
            for (const Cx g : {Cx(0.0), Cx(1.0), Cx(-1.0)}) {
                out.lines.push_back(normalize_line(line_poly(alpha, beta, g)));
            }
            continue;
        }
        // Restrict W to the line with gamma kept symbolic: S is the line
        // parameter, G stands for gamma.
        Poly2 E;
        if (std::abs(beta) >= std::abs(alpha)) {
            E = compose_affine(W, beta, Cx(0.0), Cx(0.0), -alpha, Cx(-1.0) / beta, Cx(0.0));
        } else {
            E = compose_affine(W, beta, Cx(-1.0) / alpha, Cx(0.0), -alpha, Cx(0.0), Cx(0.0));
        }
        // Coefficient of S^k is a polynomial in G; gamma must kill all
        // of them simultaneously.
        const int degS = E.degree_x().value_or(0);
        const int degG = E.degree_y().value_or(0);
        std::vector<Poly1> cols;
        for (int k = 0; k <= degS; ++k) {
            std::vector<Cx> c(static_cast<std::size_t>(degG) + 1, Cx(0.0));
            for (int j = 0; j <= degG; ++j) c[static_cast<std::size_t>(j)] = E.coeff(k, j);
            cols.emplace_back(std::move(c));
        }
        const Poly1* pick = nullptr;
        for (const Poly1& c : cols) {
            if (c.degree_with_tol(1e-9).value_or(0) == 0) continue;
            if (!pick || *c.degree_with_tol(1e-9) < *pick->degree_with_tol(1e-9)) pick = &c;
        }
        if (!pick) continue;
        for (const auto& [g0, mult] : roots(*pick)) {
            const Cx g = newton_polish(*pick, g0, 3);
            bool kills_all = true;
            for (const Poly1& c : cols) {
                if (std::abs(c.eval(g)) > 1e-8 * (c.eval_scale(std::abs(g)) + 1e-30)) {
                    kills_all = false;
                    break;
                }
            }
            if (!kills_all) continue;
            const Poly2 K = line_poly(alpha, beta, g);
            if (is_algebraic_leaf(f, K, tol).invariant) {
                out.lines.push_back(normalize_line(K));
            }
        }
    }

    // Deduplicate up to the canonical normalization.
    std::vector<Poly2> unique;
    for (const Poly2& k : out.lines) {
        bool seen = false;
        for (const Poly2& u : unique) {
            const Poly2 diff = k - u;
            if (diff.max_abs_coeff() <= 1e-6) seen = true;
        }
        if (!seen) unique.push_back(k);
    }
    out.lines = std::move(unique);
    return out;
}

} // namespace cpfol
