#include "doctest.h"

#include "cpfol/foliation.hpp"
#include "support.hpp"

#include <cmath>

using namespace cpfol;
using testutil::close;

namespace {

Foliation radial() { return new_foliation(Poly2::x(), Poly2::y(), "radial"); }
Foliation hyperbolic_pair() { return new_foliation(Poly2::y(), Poly2::x(), "hyperbolic"); }

Foliation f_eps(double eps) {
    // P = x^2 + eps x y^2, Q = y^2 + eps y^3: top parts cancel in y P - x Q.
    Poly2 P = Poly2::x() * Poly2::x();
    P.add_term(1, 2, eps);
    Poly2 Q = Poly2::y() * Poly2::y();
    Q.add_term(0, 3, eps);
    return new_foliation(P, Q, "f_eps");
}

Foliation degree_two_squares() {
    return new_foliation(Poly2::x() * Poly2::x(), Poly2::y() * Poly2::y(), "squares");
}

} // namespace

TEST_CASE("foliation construction and degree classification") {
    const Foliation f1 = radial();
    CHECK(f1.affine_degree == 1);
    CHECK(f1.R.is_zero()); // y*x - x*y
    CHECK(!infinity_is_leaf(f1));
    CHECK(geometric_degree(f1) == 0);
    CHECK(is_global_vector_field(f1));

    const Foliation f2 = hyperbolic_pair();
    CHECK(f2.affine_degree == 1);
    CHECK(infinity_is_leaf(f2));
    CHECK(geometric_degree(f2) == 1);
    CHECK(is_global_vector_field(f2));
    // R = y^2 - x^2
    CHECK(close(f2.R.coeff(0, 2), Cx(1.0), 1e-15));
    CHECK(close(f2.R.coeff(2, 0), Cx(-1.0), 1e-15));

    const Foliation fe = f_eps(0.37);
    CHECK(fe.affine_degree == 3);
    CHECK(!infinity_is_leaf(fe));
    CHECK(geometric_degree(fe) == 2);
    CHECK(!is_global_vector_field(fe));

    const Foliation sq = degree_two_squares();
    CHECK(sq.affine_degree == 2);
    CHECK(infinity_is_leaf(sq));
    CHECK(geometric_degree(sq) == 2);
    CHECK(!is_global_vector_field(sq));

    CHECK(moduli_dim_infinity_invariant(1) == 5);
    CHECK(moduli_dim_general(1) == 7);
    CHECK(moduli_dim_infinity_invariant(3) == 19);
    CHECK(moduli_dim_general(3) == 23);

    CHECK_THROWS_AS(new_foliation(Poly2(), Poly2(), ""), BothZero);
    CHECK_THROWS_AS(new_foliation(Poly2::x() * Poly2::y(), Poly2::x(), ""),
                    NotRelativelyPrime);
}

TEST_CASE("chart forms in the three charts") {
    const Foliation f1 = radial();
    const ChartForm c0 = chart_form(f1, Chart::U0);
    CHECK(c0.A.coeff(1, 0) == Cx(1.0));
    CHECK(c0.B.coeff(0, 1) == Cx(1.0));
    CHECK(c0.reduced_power == 0);

    // u^2 x(1/u, v/u) = u, u^2 R = 0; common factor u removed.
    const ChartForm c1 = chart_form(f1, Chart::U1);
    CHECK(c1.reduced_power == 1);
    CHECK(close(c1.A.coeff(0, 0), Cx(1.0), 1e-15));
    CHECK(c1.A.terms().size() == 1);
    CHECK(c1.B.is_zero());

    const Foliation f2 = hyperbolic_pair();
    const ChartForm d1 = chart_form(f2, Chart::U1);
    CHECK(d1.reduced_power == 0);
    // A = u v
    CHECK(close(d1.A.coeff(1, 1), Cx(1.0), 1e-15));
    CHECK(d1.A.terms().size() == 1);
    // B = v^2 - 1
    CHECK(close(d1.B.coeff(0, 2), Cx(1.0), 1e-15));
    CHECK(close(d1.B.coeff(0, 0), Cx(-1.0), 1e-15));
    CHECK(d1.B.terms().size() == 2);

    // U2: A = -r s, B = 1 - s^2.
    const ChartForm d2 = chart_form(f2, Chart::U2);
    CHECK(d2.reduced_power == 0);
    CHECK(close(d2.A.coeff(1, 1), Cx(-1.0), 1e-15));
    CHECK(close(d2.B.coeff(0, 0), Cx(1.0), 1e-15));
    CHECK(close(d2.B.coeff(0, 2), Cx(-1.0), 1e-15));
}

TEST_CASE("chart transition maps preserve the tangent direction") {
    testutil::Rng rng(20240814);
    for (int trial = 0; trial < 8; ++trial) {
        const int deg = 1 + static_cast<int>(rng.below(3));
        Poly2 P = testutil::random_poly2(rng, deg);
        Poly2 Q = testutil::random_poly2(rng, deg);
        if (!gcd_check(P, Q)) continue;
        const Foliation f = new_foliation(std::move(P), std::move(Q), "rand");
        const ChartForm c0 = chart_form(f, Chart::U0);
        const ChartForm c1 = chart_form(f, Chart::U1);
        const ChartForm c2 = chart_form(f, Chart::U2);
        for (int pt = 0; pt < 16; ++pt) {
            // Point in the U0/U1 overlap: x != 0.
            const Cx x = rng.complex_in_box(2.0) + Cx(3.0, 0.0);
            const Cx y = rng.complex_in_box(2.0);
            const Cx tp = c0.A.eval(x, y), tq = c0.B.eval(x, y);
            {
                // phi01(x, y) = (1/x, y/x); d(phi01)(P, Q) =
                // (-P/x^2, (xQ - yP)/x^2).
                const Cx u = 1.0 / x, v = y / x;
                const Cx pu = -tp / (x * x);
                const Cx pv = (x * tq - y * tp) / (x * x);
                const Cx au = c1.A.eval(u, v), bv = c1.B.eval(u, v);
                const Cx cross = pu * bv - pv * au;
                const double sz = std::abs(pu) + std::abs(pv);
                const double sz2 = std::abs(au) + std::abs(bv);
                if (sz > 1e-9 && sz2 > 1e-9) CHECK(std::abs(cross) <= 1e-9 * sz * sz2);
            }
            if (std::abs(y) > 0.5) {
                // phi02(x, y) = (1/y, x/y); tangent (-Q/y^2, (yP - xQ)/y^2).
                const Cx r = 1.0 / y, s = x / y;
                const Cx pr = -tq / (y * y);
                const Cx ps = (y * tp - x * tq) / (y * y);
                const Cx ar = c2.A.eval(r, s), bs = c2.B.eval(r, s);
                const Cx cross = pr * bs - ps * ar;
                const double sz = std::abs(pr) + std::abs(ps);
                const double sz2 = std::abs(ar) + std::abs(bs);
                if (sz > 1e-9 && sz2 > 1e-9) CHECK(std::abs(cross) <= 1e-9 * sz * sz2);
            }
        }
    }
}

TEST_CASE("tangency counts") {
    const Foliation f1 = radial();
    // Generic line missing the origin: no tangencies at all.
    const TangencyCount t1 = tangency_count(f1, Cx(1.0), Cx(2.0), Cx(1.0), Cx(0.5, 0.5));
    CHECK(t1.total == 0);
    CHECK(t1.points.empty());
    // Lines through the origin are leaves.
    CHECK_THROWS_AS(tangency_count(f1, Cx(0.0), Cx(0.0), Cx(1.0), Cx(2.0)), LineIsLeaf);

    const Foliation f2 = hyperbolic_pair();
    // y = 0: tangency polynomial -T, simple zero at the origin.
    const TangencyCount t2 = tangency_count(f2, Cx(0.0), Cx(0.0), Cx(1.0), Cx(0.0));
    CHECK(t2.total == 1);
    REQUIRE(t2.points.size() == 1);
    CHECK(!t2.points[0].at_infinity);
    CHECK(close(t2.points[0].x, Cx(0.0), 1e-12));
    CHECK(close(t2.points[0].y, Cx(0.0), 1e-12));
    CHECK(t2.points[0].order == 1);

    // Invariance: same total for every line, equal to the geometric degree.
    testutil::Rng rng(777);
    int checked = 0;
    while (checked < 20) {
        const int deg = 1 + static_cast<int>(rng.below(4));
        Poly2 P = testutil::random_poly2(rng, deg);
        Poly2 Q = testutil::random_poly2(rng, deg);
        if (!gcd_check(P, Q)) continue;
        const Foliation f = new_foliation(std::move(P), std::move(Q), "rand");
        const int want = geometric_degree(f);
        for (int line = 0; line < 3; ++line) {
            const TangencyCount tc =
                tangency_count(f, rng.complex_in_box(1.0), rng.complex_in_box(1.0),
                               rng.unit_complex(), rng.unit_complex());
            CHECK(tc.total == want);
        }
        ++checked;
    }
}

TEST_CASE("pl property") {
    CHECK(pl_property(hyperbolic_pair()));
    CHECK(!pl_property(radial()));
    CHECK(!pl_property(degree_two_squares()));
    // P = x, Q = 2y: B(0,v) has degree 1 < n+1 = 2.
    const Foliation fs = new_foliation(Poly2::x(), Cx(2.0) * Poly2::y(), "scaled");
    CHECK(infinity_is_leaf(fs));
    CHECK(!pl_property(fs));
}

TEST_CASE("algebraic leaf test with cofactor") {
    const Foliation f2 = hyperbolic_pair();
    Poly2 K = Poly2::y() * Poly2::y() - Poly2::x() * Poly2::x();
    const AlgebraicLeaf a = is_algebraic_leaf(f2, K);
    CHECK(a.invariant);
    CHECK(a.cofactor.is_zero());

    const AlgebraicLeaf ax = is_algebraic_leaf(f2, Poly2::x() + Poly2::y());
    CHECK(ax.invariant);
    CHECK(close(ax.cofactor.coeff(0, 0), Cx(1.0), 1e-12));
    const AlgebraicLeaf ay = is_algebraic_leaf(f2, Poly2::y() - Poly2::x());
    CHECK(ay.invariant);
    CHECK(close(ay.cofactor.coeff(0, 0), Cx(-1.0), 1e-12));

    CHECK(!is_algebraic_leaf(f2, Poly2::x()).invariant);

    const Foliation f1 = radial();
    const AlgebraicLeaf b = is_algebraic_leaf(f1, Poly2::x());
    CHECK(b.invariant);
    CHECK(close(b.cofactor.coeff(0, 0), Cx(1.0), 1e-12));

    CHECK_THROWS_AS(is_algebraic_leaf(f2, Poly2::constant(Cx(3.0))), ConstantK);
    CHECK_THROWS_AS(is_algebraic_leaf(f2, Poly2()), ConstantK);
}

TEST_CASE("invariant line search") {
    // Radial foliation: every line through the origin; reported as a pencil.
    const InvariantLines l1 = invariant_lines(radial());
    CHECK(l1.pencil);
    CHECK(l1.lines.size() >= 4);
    bool has_x = false, has_y = false;
    for (const Poly2& k : l1.lines) {
        CHECK(std::abs(k.coeff(0, 0)) < 1e-8); // all through the origin
        if (std::abs(k.coeff(0, 1)) < 1e-8) has_x = true;
        if (std::abs(k.coeff(1, 0)) < 1e-8) has_y = true;
    }
    CHECK(has_x);
    CHECK(has_y);

    // x' = y, y' = x: exactly the two diagonals.
    const InvariantLines l2 = invariant_lines(hyperbolic_pair());
    CHECK(!l2.pencil);
    REQUIRE(l2.lines.size() == 2);
    bool plus = false, minus = false;
    for (const Poly2& k : l2.lines) {
        CHECK(std::abs(k.coeff(0, 0)) < 1e-8);
        const Cx ratio = k.coeff(0, 1) / k.coeff(1, 0);
        if (close(ratio, Cx(1.0), 1e-8)) plus = true;
        if (close(ratio, Cx(-1.0), 1e-8)) minus = true;
    }
    CHECK(plus);
    CHECK(minus);

    // Generic quadratic foliations carry no invariant line.
    testutil::Rng rng(20260814);
    int built = 0;
    while (built < 5) {
        Poly2 P = testutil::random_poly2(rng, 2);
        Poly2 Q = testutil::random_poly2(rng, 2);
        if (!gcd_check(P, Q)) continue;
        const InvariantLines lg = invariant_lines(new_foliation(std::move(P), std::move(Q), ""));
        CHECK(!lg.pencil);
        CHECK(lg.lines.empty());
        ++built;
    }
}
