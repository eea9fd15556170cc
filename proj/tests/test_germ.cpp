#include <cmath>
#include <complex>
#include <vector>

#include "cpfol/germ.hpp"
#include "cpfol/util.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cpfol;
using testutil::close;
using testutil::close_rel;

namespace {

// Random hyperbolic jet: |nu| drawn from [0.2, 0.8] or [1.25, 5],
// higher coefficients in a box.
Jet random_hyperbolic(Rng& rng, double box = 1.0, int order = kJetOrderDefault) {
    const bool contracting = rng.below(2) == 0;
    const double anu =
        contracting ? rng.uniform(0.2, 0.8) : rng.uniform(1.25, 5.0);
    std::vector<Cx> c;
    c.push_back(std::polar(anu, rng.uniform(0.0, 6.283185307179586)));
    for (int k = 2; k <= order; ++k) c.push_back(rng.complex_in_box(box));
    return make_jet(c, order);
}

double max_nonlinear_coeff(const Jet& f) {
    double m = 0.0;
    for (int k = 2; k <= f.order(); ++k) m = std::max(m, std::abs(f.coeff[k]));
    return m;
}

double max_abs_coeff(const Jet& f) {
    double m = 0.0;
    for (int k = 1; k <= f.order(); ++k) m = std::max(m, std::abs(f.coeff[k]));
    return m;
}

double max_rel_coeff_diff(const Jet& a, const Jet& b) {
    double m = 0.0;
    for (int k = 1; k <= std::min(a.order(), b.order()); ++k) {
        const double s = std::max({1e-30, std::abs(a.coeff[k]), std::abs(b.coeff[k])});
        m = std::max(m, std::abs(a.coeff[k] - b.coeff[k]) / s);
    }
    return m;
}

} // namespace

TEST_CASE("jet composition and inversion") {
    // Linear jets compose multiplicatively.
    const Jet a = jet_linear(Cx(0.5, 0.25));
    const Jet b = jet_linear(Cx(2.0, -1.0));
    const Jet ab = compose(a, b);
    CHECK(close(ab.coeff[1], Cx(0.5, 0.25) * Cx(2.0, -1.0), 1e-15));
    CHECK(max_nonlinear_coeff(ab) == 0.0);

    // Identity is neutral on both sides.
    Rng rng(11);
    const Jet f = random_hyperbolic(rng);
    const Jet id = jet_identity();
    CHECK(max_rel_coeff_diff(compose(f, id), f) == 0.0);
    CHECK(max_rel_coeff_diff(compose(id, f), f) == 0.0);

    // Inverse of z + z^2: signed Catalan numbers.
    const Jet g = make_jet({Cx(1), Cx(1)});
    const Jet ginv = invert(g);
    const double catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796,
                              58786, 208012, 742900, 2674440, 9694845};
    for (int k = 1; k <= 16; ++k) {
        const double expect = (k % 2 == 1 ? 1.0 : -1.0) * catalan[k - 1];
        CHECK(close_rel(ginv.coeff[k], Cx(expect), 1e-12));
    }

    // Two-sided inverse and associativity on random jets.
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Cx> c{std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28))};
        for (int k = 2; k <= kJetOrderDefault; ++k) c.push_back(rng.complex_in_box(0.5));
        const Jet h = make_jet(c);
        const Jet hinv = invert(h);
        // Residual against the identity, scaled by the inverse's
        // coefficient growth (1/c1^k amplifies roundoff when |c1| < 1).
        const double cond = std::max(1.0, max_abs_coeff(h) * max_abs_coeff(hinv));
        for (const Jet& r : {compose(h, hinv), compose(hinv, h)}) {
            CHECK(std::abs(r.coeff[1] - Cx(1)) < 1e-12 * cond);
            CHECK(max_nonlinear_coeff(r) < 1e-11 * cond);
        }

        const Jet p = random_hyperbolic(rng, 0.5);
        const Jet q = random_hyperbolic(rng, 0.5);
        CHECK(max_rel_coeff_diff(compose(p, compose(q, h)),
                                 compose(compose(p, q), h)) < 1e-9);
    }

    // Degenerate inputs refused.
    CHECK_THROWS_AS(make_jet({Cx(0)}), PreconditionError);
    CHECK_THROWS_AS(make_jet({Cx(1)}, 0), PreconditionError);
}

TEST_CASE("koenigs linearization by coefficient recursion") {
    // Moebius germ z/(2-z): c_k = 2^{-k}, zeta = z/(1-z) has all-ones
    // coefficients.
    std::vector<Cx> moebius;
    for (int k = 1; k <= kJetOrderDefault; ++k) moebius.push_back(Cx(std::pow(2.0, -k)));
    const Jet f = make_jet(moebius);
    const Jet zeta = koenigs_jet(f);
    for (int k = 1; k <= zeta.order(); ++k) CHECK(close(zeta.coeff[k], Cx(1), 1e-10));

    // One-step recursion oracle: f = z/2 + z^2 has zeta_2 = 4.
    const Jet g = make_jet({Cx(0.5), Cx(1)});
    const Jet zg = koenigs_jet(g);
    CHECK(close(zg.coeff[2], Cx(4), 1e-13));

    // Linear germs are their own linearization.
    CHECK(max_rel_coeff_diff(koenigs_jet(jet_linear(Cx(0.0, 3.0))), jet_identity()) == 0.0);

    // Conjugacy: zeta . f . zeta^{-1} is linear for random hyperbolic jets.
    // The residual bound scales with the conjugacy's coefficient sizes,
    // which govern the roundoff of the two truncated compositions.
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const Jet h = random_hyperbolic(rng);
        const Jet zh = koenigs_jet(h);
        const Jet zinv = invert(zh);
        const Jet lin = compose(zh, compose(h, zinv));
        CHECK(close(lin.coeff[1], h.coeff[1], 1e-12 * std::abs(h.coeff[1])));
        const double cond =
            std::max(1.0, max_abs_coeff(zh) * max_abs_coeff(zinv) * max_abs_coeff(h));
        CHECK(max_nonlinear_coeff(lin) < 1e-11 * cond);
    }

    // Uniqueness up to scalar: conjugating f by h = mu z turns zeta into
    // mu zeta(z / mu), i.e. coefficients pick up mu^{1-k}.
    for (int trial = 0; trial < 10; ++trial) {
        const Jet h = random_hyperbolic(rng, 0.5);
        const Cx mu = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
        const Jet conj = compose(jet_linear(mu), compose(h, jet_linear(Cx(1) / mu)));
        const Jet z1 = koenigs_jet(h);
        const Jet z2 = koenigs_jet(conj);
        for (int k = 1; k <= z1.order(); ++k) {
            const Cx expect = z1.coeff[k] * std::pow(mu, 1 - k);
            CHECK(close_rel(z2.coeff[k], expect, 1e-9));
        }
    }

    // Unit-circle derivative refused.
    CHECK_THROWS_AS(koenigs_jet(jet_linear(std::polar(1.0, 0.3))), NotHyperbolic);
}

TEST_CASE("koenigs linearization by certified iteration") {
    // Linear germ: every iterate equals z.
    const auto lin = koenigs_iterative(germ_fun(jet_linear(Cx(0.5)), 1.0), Cx(0.1));
    CHECK(close(lin.value, Cx(0.1), 1e-15));
    CHECK(lin.contraction_radius == 1.0);

    // Moebius germ in closed form: koenigs limit is z/(1-z).  The sample
    // sits inside the one-shot certified radius (c - |nu|)/k ~ 0.138; a
    // tight stopping tolerance drives the geometric certificate down.
    const GermFun moebius{[](Cx z) { return z / (Cx(2) - z); }, Cx(0.5), 1.0};
    const auto mk = koenigs_iterative(moebius, Cx(0.12), 400, 1e-15);
    CHECK(close(mk.value, Cx(0.12) / Cx(0.88), 1e-10));
    CHECK(mk.certificate < 1e-10);

    // Agreement with the jet construction on sample points, both for
    // contracting germs and (via the functional inverse, which shares
    // the same normalized koenigs map) for expanding ones.
    Rng rng(37);
    int expanding_checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Jet f = random_hyperbolic(rng, 0.8);
        const Jet zeta = koenigs_jet(f);
        const double anu = std::abs(f.nu());
        const GermFun fun =
            anu < 1.0 ? germ_fun(f, 0.8) : germ_fun_inverse(f, 0.8);
        for (int s = 0; s < 4; ++s) {
            Cx z = rng.complex_in_box(0.02);
            if (std::abs(z) > fun.radius) z *= fun.radius / (2.0 * std::abs(z));
            try {
                const auto it = koenigs_iterative(fun, z, 2000, 1e-14);
                CHECK(close_rel(it.value, jet_eval(zeta, z), 1e-8));
                if (anu > 1.0) ++expanding_checked;
            } catch (const ContractionRadiusNotFound&) {
                // Strong nonlinearity can shrink the certified radius
                // below the sample; skip rather than weaken the check.
            }
        }
    }
    CHECK(expanding_checked > 10);

    // Sample outside the certified contraction radius is refused.
    const Jet steep = make_jet({Cx(0.5), Cx(10.0)});
    CHECK_THROWS_AS(koenigs_iterative(germ_fun(steep, 1.0), Cx(0.5)),
                    ContractionRadiusNotFound);
    // Expanding germs are refused outright (callers pass the inverse).
    CHECK_THROWS_AS(koenigs_iterative(germ_fun(jet_linear(Cx(2.0)), 1.0), Cx(0.1)),
                    ContractionRadiusNotFound);
}

TEST_CASE("renormalization in the koenigs chart") {
    // Direct algebra: f1 = z/2, f = z + z^2, n = 2 gives z + z^2/4.
    const Jet f1 = jet_linear(Cx(0.5));
    const Jet f = make_jet({Cx(1), Cx(1)});
    const Jet f2 = renormalize(f1, f, 2);
    CHECK(close(f2.coeff[1], Cx(1), 1e-14));
    CHECK(close(f2.coeff[2], Cx(0.25), 1e-14));
    for (int k = 3; k <= f2.order(); ++k) CHECK(std::abs(f2.coeff[k]) < 1e-14);

    // n = 0 returns f unchanged.
    CHECK(max_rel_coeff_diff(renormalize(f1, f, 0), f) == 0.0);

    // Coefficient law with a linear f1: the koenigs chart of f1 is the
    // identity, so coeff_j(F_n) = c_j(f) nu1^{n(j-1)} exactly.
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const Cx nu1 = std::polar(rng.uniform(0.3, 0.8), rng.uniform(0.0, 6.28));
        const Jet l1 = jet_linear(nu1);
        const Jet h = random_hyperbolic(rng, 0.7);
        for (int n = 1; n <= 10; n += 3) {
            const Jet fn = renormalize(l1, h, n);
            for (int j = 1; j <= fn.order(); ++j) {
                const Cx expect = h.coeff[j] * std::pow(nu1, double(n) * (j - 1));
                CHECK(close_rel(fn.coeff[j], expect, 1e-12));
            }
        }
    }

    // Nonlinear f1 at moderate depth: compare against the law computed
    // in the koenigs coordinate of f1.  |nu1| stays near 1 so the factor
    // nu1^{n(j-1)} does not sink below the roundoff of the compositions.
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Cx> c{std::polar(rng.uniform(0.8, 0.9), rng.uniform(0.0, 6.28))};
        for (int k = 2; k <= kJetOrderDefault; ++k) c.push_back(rng.complex_in_box(0.15));
        const Jet g1 = make_jet(c);
        const Jet h = random_hyperbolic(rng, 0.5);
        const Jet z1 = koenigs_jet(g1);
        const Jet a = compose(z1, compose(h, invert(z1))); // a_j coefficients
        const Cx nu1 = g1.nu();
        for (int n = 1; n <= 3; ++n) {
            const Jet fn = renormalize(g1, h, n);
            const Jet fn_chart = compose(z1, compose(fn, invert(z1)));
            for (int j = 1; j <= fn_chart.order(); ++j) {
                const Cx expect = a.coeff[j] * std::pow(nu1, double(n) * (j - 1));
                CHECK(close_rel(fn_chart.coeff[j], expect, 1e-9));
            }
        }
    }

    // Coefficient decay bound from the law.
    const Jet decay = renormalize(f1, f, 5);
    for (int j = 2; j <= decay.order(); ++j)
        CHECK(std::abs(decay.coeff[j]) <=
              std::abs(f.coeff[j]) * std::pow(0.5, 5.0 * (j - 1)) * (1.0 + 1e-12) + 1e-300);

    CHECK_THROWS_AS(renormalize(jet_linear(std::polar(1.0, 1.0)), f, 2), NotHyperbolic);
}

TEST_CASE("pseudo-group orbits with certified domains") {
    // Single linear contraction z/2: inverse letters are admissible
    // while the bound chain stays inside the reference disk, so the
    // orbit is 0.4 * 2^k for k = -max_len .. 1.
    const GermWithRadius half{jet_linear(Cx(0.5)), 1.0};
    const PseudoOrbit orb = pseudo_orbit({half}, Cx(0.4), 8, 1.0);
    CHECK(orb.pruned > 0);
    bool saw_08 = false, saw_min = false;
    for (const auto& op : orb.points) {
        CHECK(std::abs(op.point) < 1.0);
        if (close(op.point, Cx(0.8), 1e-12)) saw_08 = true;
        if (close(op.point, Cx(0.4 / 256.0), 1e-12)) saw_min = true;
        CHECK(std::abs(op.point) > 0.4 / 512.0);
        // 1.6 is never certified.
        CHECK(std::abs(op.point) < 1.0 - 1e-9);
    }
    CHECK(saw_08);
    CHECK(saw_min);

    // Every reported point is reproduced by applying its letters left
    // to right.
    for (const auto& op : orb.points) {
        Cx z = Cx(0.4);
        for (const auto& [gi, e] : op.word.letters) {
            CHECK(gi == 0);
            z = e > 0 ? z * 0.5 : z * 2.0;
        }
        CHECK(close(z, op.point, 1e-12));
        CHECK(op.word.domain_radius > std::abs(Cx(0.4)));
        // The word's jet agrees with the point map.
        CHECK(close(jet_eval(op.word.value, Cx(0.4)), op.point, 1e-12));
    }

    // Fixed point at the origin.
    const PseudoOrbit zero = pseudo_orbit({half}, Cx(0.0), 6, 1.0);
    CHECK(zero.points.size() == 1);
    CHECK(zero.points[0].point == Cx(0.0));

    // A nonlinear generator: words still certified, points inside the
    // reference disk, and jets track the pointwise evaluation.
    const GermWithRadius bent{make_jet({Cx(0.6), Cx(0.2, 0.1)}), 0.9};
    const PseudoOrbit orb2 = pseudo_orbit({half, bent}, Cx(0.3, 0.1), 5, 1.0);
    CHECK(orb2.points.size() > 10);
    for (const auto& op : orb2.points) {
        CHECK(std::abs(op.point) < 1.0);
        Cx z = Cx(0.3, 0.1);
        for (const auto& [gi, e] : op.word.letters) {
            const Jet& jet = gi == 0 ? half.jet : bent.jet;
            if (e > 0) {
                z = jet_eval(jet, z);
            } else {
                // Newton inverse of the quadratic at the point.
                Cx x = z / jet.coeff[1];
                for (int it = 0; it < 60; ++it)
                    x -= (jet_eval(jet, x) - z) / jet_derivative_eval(jet, x);
                z = x;
            }
        }
        CHECK(close(z, op.point, 1e-9));
    }
}

TEST_CASE("orbit of a dense multiplicative pair fills a window") {
    // Two linear germs whose multipliers generate a dense subgroup of
    // C*: orbit points 0.35 nu1^a nu2^b sweep modulus and angle.
    const Cx nu1 = std::polar(0.88, 1.0);
    const Cx nu2 = std::polar(0.74, 0.0);
    const std::vector<GermWithRadius> gens = {{jet_linear(nu1), 1.0},
                                              {jet_linear(nu2), 1.0}};
    const PseudoOrbit orb = pseudo_orbit(gens, Cx(0.35), 30, 1.0, 80000);
    std::vector<Cx> pts;
    for (const auto& op : orb.points) pts.push_back(op.point);
    // density_statistic-style coverage proxy: fraction of eps-cells of
    // a disk window containing an orbit point.
    const Cx center(0.25, 0.0);
    const double radius = 0.1;
    const double eps = 0.04;
    int total = 0, covered = 0;
    for (int ix = -3; ix <= 3; ++ix)
        for (int iy = -3; iy <= 3; ++iy) {
            const Cx cell = center + Cx(ix * eps, iy * eps);
            if (std::abs(cell - center) > radius) continue;
            ++total;
            bool hit = false;
            for (Cx p : pts)
                if (std::abs(p - cell) <= eps) {
                    hit = true;
                    break;
                }
            covered += hit ? 1 : 0;
        }
    CHECK(total >= 10);
    CHECK(double(covered) / double(total) > 0.9);
}

TEST_CASE("additive group density classification") {
    // Gaussian integers.
    const GroupClosure gauss = additive_group_density({Cx(1), Cx(0, 1)});
    CHECK(gauss.classification == GroupClass::discrete_lattice);
    CHECK(gauss.rank_estimate == 2);
    REQUIRE(gauss.lattice_basis.size() == 2);
    const double det = std::abs(std::imag(gauss.lattice_basis[0] *
                                          std::conj(gauss.lattice_basis[1])));
    CHECK(close(Cx(det), Cx(1), 1e-9));
    CHECK_FALSE(gauss.net_certified);

    // 1 and sqrt(2): dense in the real line.
    const GroupClosure line = additive_group_density({Cx(1), Cx(std::sqrt(2.0))});
    CHECK(line.classification == GroupClass::line_dense);
    CHECK(std::abs(std::imag(line.line_direction)) < 1e-12);

    // Rational collinear generators: rank-1 lattice with gcd spacing.
    const GroupClosure rats = additive_group_density({Cx(0.5), Cx(1.0 / 3.0)});
    CHECK(rats.classification == GroupClass::discrete_lattice);
    CHECK(rats.rank_estimate == 1);
    REQUIRE(rats.lattice_basis.size() == 1);
    CHECK(close(Cx(std::abs(rats.lattice_basis[0])), Cx(1.0 / 6.0), 1e-12));

    // {1, sqrt 2, i}: dense along the real axis, discrete across.
    const GroupClosure ld =
        additive_group_density({Cx(1), Cx(std::sqrt(2.0)), Cx(0, 1)});
    CHECK(ld.classification == GroupClass::line_discrete);
    CHECK(std::abs(std::imag(ld.line_direction)) < 1e-9);

    // Three-frequency triple: dense in C, concluded structurally at the
    // default budget.
    const std::vector<Cx> triple = {Cx(1), Cx(0, 1),
                                    Cx(std::sqrt(2.0), std::sqrt(3.0))};
    const GroupClosure dense = additive_group_density(triple);
    CHECK(dense.classification == GroupClass::dense_in_C);
    CHECK(dense.rank_estimate == 3);

    // Permutation invariance.
    const GroupClosure perm = additive_group_density(
        {Cx(std::sqrt(2.0), std::sqrt(3.0)), Cx(0, 1), Cx(1)});
    CHECK(perm.classification == dense.classification);
    const GroupClosure perm2 = additive_group_density({Cx(0, 1), Cx(1)});
    CHECK(perm2.classification == GroupClass::discrete_lattice);

    // Scale consistency under complex rescaling.
    const Cx mu(0.7, 0.3);
    std::vector<Cx> scaled;
    for (Cx v : triple) scaled.push_back(mu * v);
    CHECK(additive_group_density(scaled).classification == GroupClass::dense_in_C);
    CHECK(additive_group_density({mu, mu * Cx(0, 1)}).classification ==
          GroupClass::discrete_lattice);

    // Degenerate inputs.
    CHECK(additive_group_density({Cx(0)}).classification == GroupClass::trivial);
    CHECK_THROWS_AS(additive_group_density({}), PreconditionError);

    // With an enlarged budget the BFS witness certifies the eps-net for
    // the dense triple.
    DensityBudget big;
    big.coeff_cap = 40000;
    big.max_points = 150000;
    const GroupClosure certified = additive_group_density(triple, 0.05, big);
    CHECK(certified.classification == GroupClass::dense_in_C);
    CHECK(certified.net_certified);
    CHECK(certified.net_coverage == 1.0);
}

TEST_CASE("tangent group density of characteristic numbers") {
    // Empty list: the group of {1} alone is Z.
    const GroupClosure unit = tangent_group_density({});
    CHECK(unit.classification == GroupClass::discrete_lattice);
    CHECK(unit.rank_estimate == 1);

    // F2-style all-real rational lambdas: never dense in C.
    const GroupClosure f2 = tangent_group_density({Cx(0.5), Cx(0.5)});
    CHECK(f2.classification == GroupClass::discrete_lattice);

    // Independent irrational real/imag parts: dense.
    const GroupClosure dense = tangent_group_density(
        {Cx(std::sqrt(2.0), std::sqrt(3.0)), Cx(0.25, std::sqrt(5.0))});
    CHECK(dense.classification == GroupClass::dense_in_C);
}
