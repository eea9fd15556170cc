#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cpfol/foliation.hpp"

namespace cpfol {

// Singular point on the invariant line at infinity, in U1 coordinates
// (u, v) = (0, a).  With u Ptil(u,v) = u^{n+1} P(1/u, v/u) and
// Rtil(u,v) = u^{n+1} R(1/u, v/u), the point is a root a of Rtil(0, v);
// the linearization there has eigenvalues Ptil(0,a) (transverse to
// infinity) and Rtil_v(0,a) (along infinity), whose ratio lambda is the
// characteristic number and nu = e^{2 pi i lambda} the multiplier of
// the associated monodromy germ.
struct InfinitySingularity {
    Cx a;
    Cx eigen_top;    // Ptil(0, a)
    Cx eigen_bottom; // Rtil_v(0, a)
    Cx lambda;       // eigen_top / eigen_bottom
    Cx multiplier;   // exp(2 pi i lambda)
    bool hyperbolic; // Im(lambda) != 0 within relative 1e-9
};

// All singular points on the line at infinity, sorted by (Re a, Im a).
// Throws InfinityNotLeaf when the line at infinity is not invariant and
// NonSimpleRoot when Rtil(0, v) has a multiple root (the characteristic
// number is undefined there).
std::vector<InfinitySingularity> infinity_singularities(const Foliation& f);

// |sum_j lambda_j - 1|; the sum over all n+1 points is exactly 1 for
// foliations with the pl property.  Throws PreconditionError otherwise.
double residue_identity_defect(const Foliation& f);

enum class SingClass { degenerate, nondegenerate_nonhyperbolic, hyperbolic };

struct AffineSingularity {
    Cx x, y;
    // Jacobian of the vector field (P, Q): rows d(P)/d(x,y), d(Q)/d(x,y).
    std::array<std::array<Cx, 2>, 2> jacobian;
    // Eigenvalues ordered by modulus (descending), ties by real part
    // then imaginary part (descending) for determinism.
    Cx sigma1, sigma2;
    // hyperbolic: sigma1 sigma2 != 0 and sigma1/sigma2 not real;
    // degenerate: sigma1 sigma2 = 0 (within relative tolerance).
    SingClass classification;
};

// Search region for affine singularities: both coordinates restricted
// to |Re|, |Im| <= half_width.
struct SearchBox {
    double half_width = 10.0;
};

struct AffineSingularityList {
    std::vector<AffineSingularity> points;
    // deg P * deg Q: upper bound on the number of isolated common
    // zeros; lets callers notice roots outside the box.
    int bezout;
};

// Common zeros of P and Q inside the box: resultant elimination in x,
// candidate y from univariate slices, joint-residual filter, Newton
// polish.  Throws ResultantDegenerate when elimination degenerates in
// both variable orders.
AffineSingularityList affine_singularities(const Foliation& f, SearchBox box = {},
                                           double cluster_tol = kRootClusterTol);

// Local separatrix through a hyperbolic singularity, tangent to one
// eigendirection, as a graph in eigen-adapted coordinates: the affine
// point is p + X * dir + jet(X) * other_dir with jet = O(X^2).
struct SeparatrixJet {
    AffineSingularity base;
    Cx dir_x, dir_y;   // unit tangent of the separatrix in affine coords
    Cx odir_x, odir_y; // complementary eigendirection (the graph axis)
    Poly1 jet;
    // Largest residual coefficient of the graph equation through the
    // jet order, relative to the local vector field scale.
    double max_residual;
};

// Jets of the two separatrices (first tangent to the sigma1 direction,
// second to sigma2), solved coefficient-by-coefficient to `order`.
// Throws NotHyperbolic unless s.classification == hyperbolic, and
// ResonantDivisor if a divisor sigma_other - k sigma_tangent is too
// close to zero (unreachable for genuinely hyperbolic input).
std::pair<SeparatrixJet, SeparatrixJet> separatrix_jet(const Foliation& f,
                                                       const AffineSingularity& s,
                                                       int order);

// Three-state answer for tolerance-gated spectral conditions.
enum class Tri { yes, no, borderline };

// The three hyperbolicity conditions for the foliation's monodromy
// group at infinity: (i) the pl property; (ii) every infinity
// multiplier off the unit circle (distance-to-circle bands: < 1e-10 on,
// > 1e-8 off, borderline between); (iii) the additive group generated
// by {1, lambda_1, ..., lambda_n} dense in C.  When (i) fails the
// other two are not applicable and `applicable` is false.
struct HyperbolicityReport {
    bool pl;
    bool applicable;
    Tri multipliers_off_circle;
    Tri tangent_group_dense;
    std::string density_class; // classification label from the germ module
    std::vector<InfinitySingularity> data;
};
HyperbolicityReport hyperbolicity_report(const Foliation& f);

} // namespace cpfol
