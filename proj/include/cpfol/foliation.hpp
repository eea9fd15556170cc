#pragma once

#include <string>
#include <vector>

#include "cpfol/poly.hpp"

namespace cpfol {

// Standard affine charts of the projective plane.  Homogeneous
// [x0 : x1 : x2] has U0 coordinates (x, y) = (x1/x0, x2/x0),
// U1 coordinates (u, v) = (x0/x1, x2/x1) and U2 coordinates
// (r, s) = (x0/x2, x1/x2).  The line at infinity of U0 is {u = 0}
// in U1 and {r = 0} in U2.
enum class Chart { U0, U1, U2 };

// Singular holomorphic foliation given in the affine chart U0 by the
// 1-form P dy - Q dx, equivalently the vector field x' = P, y' = Q,
// with P and Q relatively prime.  R = y P - x Q controls the behavior
// along the line at infinity.
struct Foliation {
    Poly2 P, Q;
    Poly2 R;
    std::string name;
    int affine_degree = 0;
};

// Validates and builds a foliation.  Throws BothZero when P and Q both
// vanish identically and NotRelativelyPrime when they share a factor.
Foliation new_foliation(Poly2 P, Poly2 Q, std::string name = "");

// q(u, v) = u^k p(1/u, v/u); requires k >= deg p so the result is a
// polynomial.
Poly2 u_chart_transform(const Poly2& p, int k);
// q(r, s) = r^k p(s/r, 1/r); result variables are (r, s) in that order.
Poly2 r_chart_transform(const Poly2& p, int k);

// The foliation's 1-form in a chart, written A d(second) - B d(first);
// the tangent direction is (A, B) in that chart's coordinate order.
// Any monomial power of the first coordinate dividing both A and B is
// removed and reported.
struct ChartForm {
    Chart chart;
    Poly2 A, B;
    int reduced_power;
};
ChartForm chart_form(const Foliation& f, Chart chart);

// The line at infinity is a leaf iff y P_n - x Q_n does not vanish
// identically (n = affine degree).
bool infinity_is_leaf(const Foliation& f, double tol = kCoeffTol);

// Affine degree when infinity is a leaf, one less otherwise.
int geometric_degree(const Foliation& f, double tol = kCoeffTol);

// The foliation extends to a global vector field on the projective
// plane iff its geometric degree is at most 1.
bool is_global_vector_field(const Foliation& f);

// Projective dimension of the space of degree-n foliations: with the
// line at infinity invariant, and without that constraint.
int moduli_dim_infinity_invariant(int n); // n^2 + 3n + 1
int moduli_dim_general(int n);            // n^2 + 4n + 2

struct TangencyPoint {
    bool at_infinity;
    Cx t;    // line parameter (finite points only)
    Cx x, y; // affine location (finite points only)
    int order;
};
struct TangencyCount {
    std::vector<TangencyPoint> points;
    int total; // always equals the geometric degree
};

// Tangency points of the line T -> (x0 + a T, y0 + b T) with the
// foliation, with multiplicities; includes the order at the line's
// point at infinity (the deficiency of the finite tangency polynomial's
// degree below the geometric degree).  A point of the line lying in
// sing(F) counts with the multiplicity of the corresponding root.
// Throws LineIsLeaf when the line is invariant.
TangencyCount tangency_count(const Foliation& f, Cx x0, Cx y0, Cx a, Cx b,
                             double cluster_tol = kRootClusterTol);

// Infinity is a leaf and carries exactly n+1 distinct simple
// singularities: B(0, v) has degree exactly n+1 and n+1 distinct roots.
bool pl_property(const Foliation& f, double tol = kCoeffTol);

// Whether the algebraic curve {K = 0} is a union of leaves and singular
// points: K_x P + K_y Q must equal K times a polynomial cofactor.
// Throws ConstantK for constant (or zero) K.
struct AlgebraicLeaf {
    bool invariant;
    Poly2 cofactor;
};
AlgebraicLeaf is_algebraic_leaf(const Foliation& f, const Poly2& K, double tol = 1e-9);

// All invariant affine lines alpha x + beta y + gamma.  Candidate
// directions are the roots of the top-degree divisibility constraint;
// when that constraint vanishes identically the foliation carries a
// pencil (or parallel family) of invariant lines, `pencil` is set, and
// a deterministic sample of the family is returned.
struct InvariantLines {
    std::vector<Poly2> lines;
    bool pencil;
};
InvariantLines invariant_lines(const Foliation& f, double tol = 1e-9);

} // namespace cpfol
