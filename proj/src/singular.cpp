#include "cpfol/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpfol/germ.hpp"

namespace cpfol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

// Coefficients of q(0, v) as a univariate polynomial in v.
Poly1 slice_u0(const Poly2& q) { return slice_y(q, Cx(0.0)); }

} // namespace

std::vector<InfinitySingularity> infinity_singularities(const Foliation& f) {
    if (!infinity_is_leaf(f)) {
        throw InfinityNotLeaf("infinity_singularities: the line at infinity is not a leaf");
    }
    const int k = f.affine_degree + 1;
    const Poly2 A = u_chart_transform(f.P, k); // = u * Ptil
    const Poly2 B = u_chart_transform(f.R, k); // = Rtil
    // Ptil(0, v): the coefficient row of u^1 in A.
    Poly1 ptil0;
    {
        std::vector<Cx> c;
        for (const auto& [key, coef] : A.terms()) {
            if (key.first != 1) continue;
            if (static_cast<int>(c.size()) <= key.second) c.resize(key.second + 1, Cx(0.0));
            c[static_cast<std::size_t>(key.second)] = coef;
        }
        ptil0 = Poly1(std::move(c));
    }
    const Poly1 b0 = slice_u0(B);
    const Poly1 b0v = b0.derivative();

    std::vector<InfinitySingularity> out;
    for (const auto& [a, mult] : roots(b0)) {
        if (mult != 1) {
            throw NonSimpleRoot("infinity_singularities: multiple root of Rtil(0, v)");
        }
        InfinitySingularity s;
        s.a = a;
        s.eigen_top = ptil0.eval(a);
        s.eigen_bottom = b0v.eval(a);
        if (std::abs(s.eigen_bottom) <= 1e-14 * b0v.eval_scale(std::abs(a))) {
            throw NonSimpleRoot("infinity_singularities: Rtil_v vanishes at a root");
        }
        s.lambda = s.eigen_top / s.eigen_bottom;
        s.multiplier = std::exp(Cx(0.0, kTwoPi) * s.lambda);
        s.hyperbolic = std::abs(s.lambda.imag()) > 1e-9 * (1.0 + std::abs(s.lambda));
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const InfinitySingularity& l, const InfinitySingularity& r) {
        if (l.a.real() != r.a.real()) return l.a.real() < r.a.real();
        return l.a.imag() < r.a.imag();
    });
    return out;
}

double residue_identity_defect(const Foliation& f) {
    if (!pl_property(f)) {
        throw PreconditionError("residue_identity_defect: foliation lacks the pl property");
    }
    Cx sum(0.0);
    for (const auto& s : infinity_singularities(f)) sum += s.lambda;
    return std::abs(sum - Cx(1.0));
}

namespace {

struct Eigen2 {
    Cx s1, s2;
};

// Closed-form eigenvalues of a 2x2 complex matrix, deterministically
// ordered: modulus descending, ties by real then imaginary part.
Eigen2 eigen2(const std::array<std::array<Cx, 2>, 2>& m) {
    const Cx tr = m[0][0] + m[1][1];
    const Cx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const Cx disc = std::sqrt(tr * tr - 4.0 * det);
    Cx s1 = 0.5 * (tr + disc);
    Cx s2 = 0.5 * (tr - disc);
    // The subtraction can cancel; recover the smaller root from det.
    if (std::abs(s1) < std::abs(s2)) std::swap(s1, s2);
    if (std::abs(s1) > 0.0) s2 = det / s1;
    auto before = [](Cx a, Cx b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    };
    if (before(s2, s1)) std::swap(s1, s2);
    return {s1, s2};
}

SingClass classify(Cx s1, Cx s2, double jac_norm) {
    const double scale = std::max(jac_norm * jac_norm, 1e-300);
    if (std::abs(s1 * s2) <= 1e-9 * scale) return SingClass::degenerate;
    const Cx ratio = s1 / s2;
    if (std::abs(ratio.imag()) > 1e-9 * std::abs(ratio)) return SingClass::hyperbolic;
    return SingClass::nondegenerate_nonhyperbolic;
}

AffineSingularity make_singularity(const Poly2& Px, const Poly2& Py, const Poly2& Qx,
                                   const Poly2& Qy, Cx x, Cx y) {
    AffineSingularity s;
    s.x = x;
    s.y = y;
    s.jacobian = {{{Px.eval(x, y), Py.eval(x, y)}, {Qx.eval(x, y), Qy.eval(x, y)}}};
    const Eigen2 e = eigen2(s.jacobian);
    s.sigma1 = e.s1;
    s.sigma2 = e.s2;
    double nrm = 0.0;
    for (const auto& row : s.jacobian)
        for (Cx v : row) nrm = std::max(nrm, std::abs(v));
    s.classification = classify(s.sigma1, s.sigma2, nrm);
    return s;
}

} // namespace

AffineSingularityList affine_singularities(const Foliation& f, SearchBox box,
                                           double cluster_tol) {
    AffineSingularityList out;
    out.bezout = f.P.degree().value_or(0) * f.Q.degree().value_or(0);

    const Poly2 Px = f.P.dx(), Py = f.P.dy();
    const Poly2 Qx = f.Q.dx(), Qy = f.Q.dy();

    auto in_box = [&](Cx z) {
        return std::abs(z.real()) <= box.half_width && std::abs(z.imag()) <= box.half_width;
    };

    auto newton2 = [&](Cx& x, Cx& y) {
        for (int it = 0; it < 25; ++it) {
            const Cx p = f.P.eval(x, y), q = f.Q.eval(x, y);
            const Cx a = Px.eval(x, y), b = Py.eval(x, y);
            const Cx c = Qx.eval(x, y), d = Qy.eval(x, y);
            const Cx det = a * d - b * c;
            const double nrm = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
            if (std::abs(det) <= 1e-14 * nrm * nrm) break;
            const Cx dx = (d * p - b * q) / det;
            const Cx dy = (a * q - c * p) / det;
            x -= dx;
            y -= dy;
            if (std::abs(dx) + std::abs(dy) < 1e-15 * (1.0 + std::abs(x) + std::abs(y))) break;
        }
    };

    auto residual_ok = [&](Cx x, Cx y, double rel) {
        const double sp = f.P.eval_scale(std::abs(x), std::abs(y)) + 1.0;
        const double sq = f.Q.eval_scale(std::abs(x), std::abs(y)) + 1.0;
        return std::abs(f.P.eval(x, y)) <= rel * sp && std::abs(f.Q.eval(x, y)) <= rel * sq;
    };

    std::vector<std::pair<Cx, Cx>> found;
    auto push_candidate = [&](Cx x, Cx y) {
        if (!residual_ok(x, y, 1e-5)) return;
        newton2(x, y);
        if (!residual_ok(x, y, 1e-8)) return;
        if (!in_box(x) || !in_box(y)) return;
        for (const auto& [ux, uy] : found) {
            if (std::abs(ux - x) + std::abs(uy - y) <=
                cluster_tol * (1.0 + std::abs(x) + std::abs(y)))
                return;
        }
        found.push_back({x, y});
    };

    const int dyP = f.P.degree_y().value_or(0);
    const int dyQ = f.Q.degree_y().value_or(0);

    auto y_candidates = [&](Cx xstar) {
        std::vector<Cx> ys;
        for (const Poly2* comp : {&f.P, &f.Q}) {
            const Poly1 s = slice_y(*comp, xstar);
            if (s.is_zero() || s.degree_with_tol(1e-11).value_or(0) == 0) continue;
            for (const auto& [y, m] : roots(s, cluster_tol)) ys.push_back(y);
        }
        return ys;
    };

    if (dyP == 0 && dyQ == 0) {
        // Both components pure in x and relatively prime: no common zeros.
        return out;
    }

    bool done = false;
    // Elimination in x first; if it degenerates, swap the variables.
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
        const bool swapped = attempt == 1;
        const Poly2 Pw = swapped ? swap_vars(f.P) : f.P;
        const Poly2 Qw = swapped ? swap_vars(f.Q) : f.Q;
        Poly1 res;
        if (Pw.degree_y().value_or(0) == 0) {
            res = slice_x(Pw, Cx(0.0));
        } else if (Qw.degree_y().value_or(0) == 0) {
            res = slice_x(Qw, Cx(0.0));
        } else {
            res = resultant_y(Pw, Qw);
        }
        const double rscale = Pw.max_abs_coeff() * Qw.max_abs_coeff();
        if (res.is_zero() || res.max_abs_coeff() <= 1e-11 * rscale) {
            if (swapped) throw ResultantDegenerate("affine_singularities: elimination degenerate in both variable orders");
            continue;
        }
        if (res.degree_with_tol(1e-11).value_or(0) == 0) {
            done = true; // nonvanishing constant resultant: no common zeros
            continue;
        }
        for (const auto& [xs, m] : roots(res, cluster_tol)) {
            if (!swapped) {
                for (Cx y : y_candidates(xs)) push_candidate(xs, y);
            } else {
                // Variables were exchanged: xs is a y-value.
                for (const Poly2* comp : {&Pw, &Qw}) {
                    const Poly1 s = slice_y(*comp, xs);
                    if (s.is_zero() || s.degree_with_tol(1e-11).value_or(0) == 0) continue;
                    for (const auto& [x, mm] : roots(s, cluster_tol)) push_candidate(x, xs);
                }
            }
        }
        done = true;
    }

    std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
        if (l.first.real() != r.first.real()) return l.first.real() < r.first.real();
        if (l.first.imag() != r.first.imag()) return l.first.imag() < r.first.imag();
        if (l.second.real() != r.second.real()) return l.second.real() < r.second.real();
        return l.second.imag() < r.second.imag();
    });
    for (const auto& [x, y] : found) {
        out.points.push_back(make_singularity(Px, Py, Qx, Qy, x, y));
    }
    return out;
}

namespace {

// q(X, g(X)) truncated at degree maxdeg, for univariate g.
Poly1 substitute_graph(const Poly2& q, const Poly1& g, int maxdeg) {
    const std::size_t len = static_cast<std::size_t>(maxdeg) + 1;
    std::vector<Cx> acc(len, Cx(0.0));
    // powers of g, truncated
    const int degy = q.degree_y().value_or(0);
    std::vector<std::vector<Cx>> gpow(static_cast<std::size_t>(degy) + 1,
                                      std::vector<Cx>(len, Cx(0.0)));
    gpow[0][0] = Cx(1.0);
    for (int j = 1; j <= degy; ++j) {
        for (std::size_t a = 0; a < len; ++a) {
            if (gpow[j - 1][a] == Cx(0.0)) continue;
            for (int b = 0; b + static_cast<int>(a) <= maxdeg; ++b) {
                const Cx gb = g.coeff(b);
                if (gb == Cx(0.0)) continue;
                gpow[j][a + static_cast<std::size_t>(b)] += gpow[j - 1][a] * gb;
            }
        }
    }
    for (const auto& [key, c] : q.terms()) {
        const int i = key.first, j = key.second;
        if (i > maxdeg) continue;
        for (std::size_t a = 0; a + static_cast<std::size_t>(i) < len; ++a) {
            acc[a + static_cast<std::size_t>(i)] += c * gpow[static_cast<std::size_t>(j)][a];
        }
    }
    return Poly1(std::move(acc));
}

// Eigenvector of m for eigenvalue s, normalized to unit length.
std::pair<Cx, Cx> eigenvector2(const std::array<std::array<Cx, 2>, 2>& m, Cx s) {
    // Rows of m - s I: (a - s, b) and (c, d - s); an eigenvector is
    // orthogonal-in-the-algebraic-sense to the better-scaled row.
    const Cx r1x = m[0][0] - s, r1y = m[0][1];
    const Cx r2x = m[1][0], r2y = m[1][1] - s;
    Cx vx, vy;
    if (std::abs(r1x) + std::abs(r1y) >= std::abs(r2x) + std::abs(r2y)) {
        vx = -r1y;
        vy = r1x;
    } else {
        vx = -r2y;
        vy = r2x;
    }
    const double n = std::sqrt(std::norm(vx) + std::norm(vy));
    if (n == 0.0) return {Cx(1.0), Cx(0.0)}; // m = s I: any direction
    vx /= n;
    vy /= n;
    // Fix the projective phase: largest component real positive.
    const Cx big = std::abs(vx) >= std::abs(vy) ? vx : vy;
    const Cx ph = big / std::abs(big);
    return {vx / ph, vy / ph};
}

SeparatrixJet one_jet(const Foliation& f, const AffineSingularity& s, Cx sig_t, Cx sig_o,
                      std::pair<Cx, Cx> et, std::pair<Cx, Cx> eo, int order) {
    // Adapted coordinates: (x, y) = p + X et + Y eo; the field becomes
    // (Ahat, Bhat) with Ahat = sig_t X + h.o.t., Bhat = sig_o Y + h.o.t.
    const Cx m00 = et.first, m01 = eo.first, m10 = et.second, m11 = eo.second;
    const Cx det = m00 * m11 - m01 * m10;
    if (std::abs(det) < 1e-12) {
        throw NotHyperbolic("separatrix_jet: eigendirections are not independent");
    }
    const Poly2 Pc = compose_affine(f.P, m00, m01, s.x, m10, m11, s.y);
    const Poly2 Qc = compose_affine(f.Q, m00, m01, s.x, m10, m11, s.y);
    const Poly2 Ahat = (m11 / det) * Pc + (-m01 / det) * Qc;
    const Poly2 Bhat = (-m10 / det) * Pc + (m00 / det) * Qc;

    Poly1 jet; // starts as 0
    for (int k = 2; k <= order; ++k) {
        const Poly1 g = substitute_graph(Bhat, jet, k);
        const Poly1 a = substitute_graph(Ahat, jet, k);
        const Poly1 resid = g - jet.derivative() * a;
        const Cx rk = resid.coeff(k);
        const Cx divisor = sig_o - static_cast<double>(k) * sig_t;
        if (std::abs(divisor) <=
            1e-12 * (std::abs(sig_o) + static_cast<double>(k) * std::abs(sig_t))) {
            throw ResonantDivisor("separatrix_jet: eigenvalue resonance at order " +
                                  std::to_string(k));
        }
        if (rk != Cx(0.0)) jet = jet + Poly1::monomial(k, -rk / divisor);
    }

    SeparatrixJet out;
    out.base = s;
    out.dir_x = et.first;
    out.dir_y = et.second;
    out.odir_x = eo.first;
    out.odir_y = eo.second;
    out.jet = jet;
    const Poly1 resid =
        substitute_graph(Bhat, jet, order) - jet.derivative() * substitute_graph(Ahat, jet, order);
    double mx = 0.0;
    for (int k = 0; k <= order; ++k) mx = std::max(mx, std::abs(resid.coeff(k)));
    out.max_residual = mx / (Ahat.max_abs_coeff() + Bhat.max_abs_coeff() + 1e-300);
    return out;
}

} // namespace

std::pair<SeparatrixJet, SeparatrixJet> separatrix_jet(const Foliation& f,
                                                       const AffineSingularity& s,
                                                       int order) {
    if (s.classification != SingClass::hyperbolic) {
        throw NotHyperbolic("separatrix_jet: singularity is not hyperbolic");
    }
    if (order < 2) throw PreconditionError("separatrix_jet: order must be at least 2");
    const auto e1 = eigenvector2(s.jacobian, s.sigma1);
    const auto e2 = eigenvector2(s.jacobian, s.sigma2);
    return {one_jet(f, s, s.sigma1, s.sigma2, e1, e2, order),
            one_jet(f, s, s.sigma2, s.sigma1, e2, e1, order)};
}

HyperbolicityReport hyperbolicity_report(const Foliation& f) {
    HyperbolicityReport out;
    out.pl = pl_property(f);
    out.applicable = out.pl;
    out.multipliers_off_circle = Tri::borderline;
    out.tangent_group_dense = Tri::borderline;
    if (!out.pl) {
        out.density_class = "not applicable";
        return out;
    }
    out.data = infinity_singularities(f);

    // (ii): every multiplier off the unit circle.  Distances below 1e-10
    // count as on the circle, above 1e-8 as off; the band between is
    // inconclusive and poisons the aggregate to borderline.
    Tri off = Tri::yes;
    for (const auto& s : out.data) {
        const double d = std::abs(std::abs(s.multiplier) - 1.0);
        if (d < 1e-10) {
            off = Tri::no;
            break;
        }
        if (d <= 1e-8) off = Tri::borderline;
    }
    out.multipliers_off_circle = off;

    // (iii): density of the additive group spanned by {1, lambda_j}.
    // The n+1-st characteristic number is 1 minus the sum of the others,
    // so the first n generate the same group.
    std::vector<Cx> lambdas;
    for (std::size_t j = 0; j + 1 < out.data.size(); ++j)
        lambdas.push_back(out.data[j].lambda);
    const GroupClosure closure = tangent_group_density(lambdas);
    out.density_class = to_string(closure.classification);
    switch (closure.classification) {
        case GroupClass::dense_in_C:
            out.tangent_group_dense = Tri::yes;
            break;
        case GroupClass::undetermined:
            out.tangent_group_dense = Tri::borderline;
            break;
        default:
            out.tangent_group_dense = Tri::no;
            break;
    }
    return out;
}

} // namespace cpfol
