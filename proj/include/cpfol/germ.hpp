#pragma once
// Germs of biholomorphisms of (C, 0) as truncated power-series jets:
// composition, inversion, Koenigs linearization (coefficient recursion
// and certified iteration), renormalization, pseudo-group orbits over
// conservative certified disks, and density classification of finitely
// generated additive subgroups of C.

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cpfol/errors.hpp"

namespace cpfol {

using Cx = std::complex<double>;

// f(z) = sum_{k=1}^{order} coeff[k] z^k with coeff[0] = 0; coeff[1] != 0
// so that f is a germ of a biholomorphism fixing 0.
struct Jet {
    std::vector<Cx> coeff; // coeff[k] multiplies z^k; coeff[0] == 0

    int order() const { return static_cast<int>(coeff.size()) - 1; }
    Cx nu() const { return coeff[1]; }
};

inline constexpr int kJetOrderDefault = 16;

// Hyperbolicity gate: a germ is treated as hyperbolic only when
// ||c1| - 1| exceeds this; closer to the unit circle the Koenigs
// divisors nu - nu^k degrade and the routines refuse.
inline constexpr double kHyperbolicGate = 1e-9;

// Builds a jet from c1, c2, ... (padded with zeros / truncated to order).
Jet make_jet(const std::vector<Cx>& c1_onward, int order = kJetOrderDefault);
Jet jet_identity(int order = kJetOrderDefault);
Jet jet_linear(Cx nu, int order = kJetOrderDefault);

Cx jet_eval(const Jet& f, Cx z);
Cx jet_derivative_eval(const Jet& f, Cx z);

// f after g: z -> f(g(z)), truncated to min(f.order, g.order).
Jet compose(const Jet& f, const Jet& g);

// Functional inverse: compose(f, invert(f)) = identity through order.
Jet invert(const Jet& f);

bool is_hyperbolic(const Jet& f);

// Linearizing jet: zeta'(0) = 1 and zeta(f(z)) = nu zeta(z) through the
// jet order, so zeta . f . zeta^{-1} = nu z.  Throws NotHyperbolic when
// ||nu| - 1| <= kHyperbolicGate.
Jet koenigs_jet(const Jet& f);

// Analytic germ fixing 0 as a callable with an explicit disk of
// validity; nu is the derivative at 0.
struct GermFun {
    std::function<Cx(Cx)> eval;
    Cx nu;
    double radius;
};

// Wraps a jet (an exact polynomial germ) as a GermFun.
GermFun germ_fun(const Jet& f, double radius);

// Pointwise functional inverse of a jet by Newton iteration; valid on a
// disk where the polynomial is certified univalent (capped by radius).
GermFun germ_fun_inverse(const Jet& f, double radius);

struct KoenigsIterate {
    Cx value;                  // lim f^n(z) / nu^n
    int iterations = 0;
    double contraction_radius; // certified radius with |f(w)| <= c|w|
    double certificate;        // geometric tail bound at the stop index
};

// Koenigs linearization by iteration for a contracting germ
// (0 < |nu| < 1; callers pass the inverse germ when |nu| > 1).  The
// contraction radius r with |f(w)| <= c|w|, c = (|nu| + sqrt(|nu|))/2,
// is certified from a sampled quadratic bound; z must satisfy |z| <= r.
KoenigsIterate koenigs_iterative(const GermFun& f, Cx z, int n_max = 400,
                                 double tol = 1e-13);

// f1^{-n} . f . f1^n by truncated jet composition; f1 must be
// hyperbolic.  n may be negative (roles of f1 and f1^{-1} swap).
Jet renormalize(const Jet& f1, const Jet& f, int n);

// ---------------------------------------------------------------------
// Pseudo-group orbits with conservative certified domains.

// Polynomial germ (as a jet) together with the disk radius on which its
// quadratic bound chain |f(z)| <= |nu||z| + M|z|^2 is used.
struct GermWithRadius {
    Jet jet;
    double radius;
};

// A word in the generators and their inverses, applied left to right:
// letters[0] acts first.  domain_radius is a base-disk radius such that
// every intermediate image along the word is certified to stay inside
// the reference disk.
struct PseudoWord {
    std::vector<std::pair<int, int>> letters; // (generator index, +1/-1)
    Jet value;                                // truncated composite jet
    double domain_radius = 0.0;
};

struct OrbitPoint {
    PseudoWord word;
    Cx point;
};

struct PseudoOrbit {
    std::vector<OrbitPoint> points; // breadth-first, identity word first
    int pruned = 0;                 // extensions rejected by the domain chain
    bool truncated = false;         // stopped early by max_points
};

// Breadth-first orbit of z0 under words of length <= max_word_len.  A
// word is kept only while the scalar bound chain certifies that every
// intermediate image of the base disk of radius domain_radius (found by
// binary search, and required to exceed |z0|) stays inside the
// reference disk.  Points are deduplicated.
PseudoOrbit pseudo_orbit(const std::vector<GermWithRadius>& gens, Cx z0,
                         int max_word_len, double reference_radius,
                         int max_points = 20000);

// ---------------------------------------------------------------------
// Density classification of the additive subgroup generated by a finite
// list of complex numbers.

enum class GroupClass {
    trivial,          // {0}
    discrete_lattice, // Z v or Z v1 + Z v2
    line_discrete,    // R v + Z w: dense in a line family, discrete across
    line_dense,       // dense in a real line R v
    dense_in_C,
    undetermined,
};

std::string to_string(GroupClass c);

struct DensityBudget {
    int coeff_cap = 50;          // |n_i| <= coeff_cap in the BFS witness
    int max_points = 200000;     // BFS state cap
    long long rational_den_cap = 10000; // continued-fraction denominator cap
};

struct GroupClosure {
    GroupClass classification = GroupClass::undetermined;
    int rank_estimate = 0;          // Q-rank of the generators, capped at 3
    std::vector<Cx> lattice_basis;  // for discrete_lattice (1 or 2 vectors)
    Cx line_direction{};            // for line_discrete / line_dense
    double net_coverage = 0.0;      // fraction of eps-cells of the unit
                                    // square hit by the BFS witness
    bool net_certified = false;     // every eps-cell was hit
    int torus_points = 0;           // distinct BFS states visited
    std::string note;               // how the classification was reached
};

// Classifies the closure of sum n_i g_i (n_i integer).  Structural
// detection (real span, continued-fraction rationality, incremental
// lattice reduction with provenance-tracked integer relations, and a
// resonance search for an invariant line) decides the class; a BFS over
// integer combinations reduced modulo a fundamental window provides the
// eps-net witness reported in net_coverage / net_certified.
GroupClosure additive_group_density(const std::vector<Cx>& gens,
                                    double eps = 0.02,
                                    const DensityBudget& budget = {});

// Density of the additive group generated by {1} followed by the given
// characteristic numbers.
GroupClosure tangent_group_density(const std::vector<Cx>& lambdas,
                                   double eps = 0.02,
                                   const DensityBudget& budget = {});

} // namespace cpfol
