// Acceptance gate: eleven end-to-end checks covering classification,
// tangency invariance, residue identities, the monodromy multiplier
// triangle, Koenigs linearization, the renormalization law, additive
// group density, leaf curvature, the energy-distance bound, leaf
// unboundedness, and transversal hit coverage.  One PASS/FAIL line per
// criterion; the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "cpfol/foliation.hpp"
#include "cpfol/germ.hpp"
#include "cpfol/metric.hpp"
#include "cpfol/singular.hpp"
#include "cpfol/transport.hpp"
#include "cpfol/util.hpp"
#include "support.hpp"

using namespace cpfol;
using testutil::random_poly2;

namespace {

constexpr double kTau = 6.283185307179586476925287;

struct Criterion {
    bool pass = true;
    std::string detail;
};

Foliation random_foliation(Rng& rng, int deg) {
    for (;;) {
        Poly2 P = random_poly2(rng, deg);
        Poly2 Q = random_poly2(rng, deg);
        if (!gcd_check(P, Q)) continue;
        return new_foliation(std::move(P), std::move(Q), "rnd");
    }
}

Foliation random_pl(Rng& rng, int deg) {
    for (;;) {
        Foliation f = random_foliation(rng, deg);
        if (pl_property(f)) return f;
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2g", v);
    return buf;
}

// --- 1: the three reference families classify exactly. -----------------

Criterion criterion1() {
    Criterion c;
    const Foliation f1 = new_foliation(Poly2::x(), Poly2::y(), "radial");
    const Foliation f2 = new_foliation(Poly2::y(), Poly2::x(), "hyperbolic");
    Poly2 P = Poly2::x() * Poly2::x() + Poly2::x() * Poly2::y() * Poly2::y();
    Poly2 Q = Poly2::y() * Poly2::y() + Poly2::y() * Poly2::y() * Poly2::y();
    const Foliation fe = new_foliation(std::move(P), std::move(Q), "perturbed");

    const bool ok1 = f1.affine_degree == 1 && geometric_degree(f1) == 0 && !infinity_is_leaf(f1);
    const bool ok2 = f2.affine_degree == 1 && geometric_degree(f2) == 1 && infinity_is_leaf(f2);
    const bool oke = fe.affine_degree == 3 && geometric_degree(fe) == 2 && !infinity_is_leaf(fe);
    c.pass = ok1 && ok2 && oke;
    c.detail = "affine/geometric/leaf = " + std::to_string(f1.affine_degree) + "/" +
               std::to_string(geometric_degree(f1)) + "/" + std::to_string(infinity_is_leaf(f1)) +
               ", " + std::to_string(f2.affine_degree) + "/" +
               std::to_string(geometric_degree(f2)) + "/" + std::to_string(infinity_is_leaf(f2)) +
               ", " + std::to_string(fe.affine_degree) + "/" +
               std::to_string(geometric_degree(fe)) + "/" + std::to_string(infinity_is_leaf(fe));
    return c;
}

// --- 2: tangency totals are line-independent integers. ------------------

Criterion criterion2() {
    Criterion c;
    Rng rng(902);
    int checked = 0, bad = 0;
    for (int i = 0; i < 200; ++i) {
        const Foliation f = random_foliation(rng, 1 + int(rng.below(4)));
        const int gd = geometric_degree(f);
        for (int l = 0; l < 5; ++l) {
            try {
                const TangencyCount tc =
                    tangency_count(f, rng.complex_in_box(2.0), rng.complex_in_box(2.0),
                                   rng.complex_in_box(2.0), rng.complex_in_box(2.0));
                ++checked;
                if (tc.total != gd) ++bad;
            } catch (const PreconditionError&) {
                --l; // invariant line drawn; redraw
            }
        }
    }
    c.pass = bad == 0 && checked == 1000;
    c.detail = std::to_string(checked) + " lines, " + std::to_string(bad) + " mismatches";
    return c;
}

// --- 3: characteristic numbers sum to 1, multipliers multiply to 1. -----

Criterion criterion3() {
    Criterion c;
    Rng rng(903);
    double worst_sum = 0.0, worst_prod = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Foliation f = random_pl(rng, 1 + int(rng.below(4)));
        Cx sum = 0.0, prod = 1.0;
        for (const InfinitySingularity& s : infinity_singularities(f)) {
            sum += s.lambda;
            prod *= s.multiplier;
        }
        worst_sum = std::max(worst_sum, std::abs(sum - Cx(1)));
        worst_prod = std::max(worst_prod, std::abs(prod - Cx(1)));
    }
    c.pass = worst_sum < 1e-9 && worst_prod < 1e-8;
    c.detail = "worst |sum-1| " + num(worst_sum) + ", worst |prod-1| " + num(worst_prod);
    return c;
}

// --- 4: variational, integral, and eigenvalue-ratio multipliers agree. --

Criterion criterion4() {
    Criterion c;
    Rng rng(904);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const Foliation f = random_pl(rng, 1 + int(rng.below(3)));
        const auto sings = infinity_singularities(f);
        for (size_t j = 0; j < sings.size(); ++j) {
            const Cx analytic = sings[j].multiplier;
            const Cx vari = infinity_monodromy(f, int(j)).multiplier_variational;
            const Cx integ = multiplier_by_integral(f, int(j));
            worst = std::max({worst, std::abs(analytic - vari), std::abs(analytic - integ),
                              std::abs(vari - integ)});
        }
    }
    c.pass = worst < 1e-6;

    // The reference hyperbolic pencil: all three equal -1.
    const Foliation f2 = new_foliation(Poly2::y(), Poly2::x(), "hyperbolic");
    double worst2 = 0.0;
    const auto sings = infinity_singularities(f2);
    for (size_t j = 0; j < sings.size(); ++j) {
        worst2 = std::max({worst2, std::abs(sings[j].multiplier - Cx(-1)),
                           std::abs(infinity_monodromy(f2, int(j)).multiplier_variational - Cx(-1)),
                           std::abs(multiplier_by_integral(f2, int(j)) - Cx(-1))});
    }
    c.pass = c.pass && worst2 < 1e-8;
    c.detail = "worst pairwise " + num(worst) + ", reference worst " + num(worst2);
    return c;
}

// --- 5: Koenigs linearization, three ways. ------------------------------

Criterion criterion5() {
    Criterion c;
    Rng rng(905);
    double worst_conj = 0.0, worst_agree = 0.0;
    int samples = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const double mod = rng.below(2) ? rng.uniform(0.2, 0.8) : rng.uniform(1.25, 5.0);
        const Cx nu = std::polar(mod, rng.uniform(0.0, kTau));
        std::vector<Cx> coeffs = {nu};
        for (int k = 2; k <= 16; ++k) coeffs.push_back(rng.complex_in_box(0.08));
        const Jet f = make_jet(coeffs);
        const Jet zeta = koenigs_jet(f);

        const Jet conj = compose(compose(zeta, f), invert(zeta));
        worst_conj = std::max(worst_conj, std::abs(conj.coeff[1] - nu));
        for (int k = 2; k <= conj.order(); ++k)
            worst_conj = std::max(worst_conj, std::abs(conj.coeff[k]));

        // The iterative limit and the jet evaluation agree at small sample
        // points; the same zeta linearizes f and its inverse.
        const GermFun fun = mod < 1.0 ? germ_fun(f, 1.0) : germ_fun_inverse(f, 1.0);
        for (int s = 0; s < 4; ++s) {
            Cx z = rng.complex_in_box(0.05);
            for (int halve = 0; halve < 40; ++halve) {
                try {
                    const KoenigsIterate it = koenigs_iterative(fun, z, 400, 1e-13);
                    worst_agree = std::max(worst_agree, std::abs(it.value - jet_eval(zeta, z)));
                    ++samples;
                    break;
                } catch (const ContractionRadiusNotFound&) {
                    z *= 0.5;
                }
            }
        }
    }

    // Moebius germ z/(2-z): every linearizer coefficient equals 1.
    std::vector<Cx> mc;
    for (int k = 1; k <= 16; ++k) mc.push_back(Cx(std::pow(0.5, k)));
    const Jet zm = koenigs_jet(make_jet(mc));
    double worst_m = 0.0;
    for (int k = 1; k <= zm.order(); ++k)
        worst_m = std::max(worst_m, std::abs(zm.coeff[k] - Cx(1)));

    c.pass = worst_conj < 1e-10 && worst_agree < 1e-8 && samples == 400 && worst_m < 1e-10;
    c.detail = "worst conj " + num(worst_conj) + ", worst agree " + num(worst_agree) + " (" +
               std::to_string(samples) + " pts), Moebius worst " + num(worst_m);
    return c;
}

// --- 6: renormalization by a linear hyperbolic germ. --------------------

Criterion criterion6() {
    Criterion c;
    Rng rng(906);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const double m1 = rng.below(2) ? rng.uniform(0.25, 0.8) : rng.uniform(1.25, 4.0);
        const Cx nu1 = std::polar(m1, rng.uniform(0.0, kTau));
        const Jet f1 = jet_linear(nu1);
        std::vector<Cx> coeffs = {rng.unit_complex() * rng.uniform(0.3, 3.0)};
        for (int k = 2; k <= 16; ++k) coeffs.push_back(rng.complex_in_box(1.0));
        const Jet f = make_jet(coeffs);
        for (int n = 1; n <= 10; ++n) {
            const Jet g = renormalize(f1, f, n);
            for (int j = 1; j <= g.order(); ++j) {
                const Cx want = coeffs[j - 1] * std::pow(nu1, double(n) * double(j - 1));
                worst = std::max(worst, std::abs(g.coeff[j] - want) / std::abs(want));
            }
        }
    }
    c.pass = worst < 1e-12;
    c.detail = "worst relative " + num(worst);
    return c;
}

// --- 7: additive group density classes. ---------------------------------

Criterion criterion7() {
    Criterion c;
    const double eps = 0.02;
    const GroupClass a = additive_group_density({Cx(1), Cx(0, 1)}, eps).classification;
    const GroupClass b = additive_group_density({Cx(1), Cx(std::sqrt(2.0))}, eps).classification;
    const GroupClass d =
        additive_group_density({Cx(1), Cx(0, 1), Cx(std::sqrt(2.0), std::sqrt(3.0))}, eps)
            .classification;
    c.pass = a == GroupClass::discrete_lattice && b == GroupClass::line_dense &&
             d == GroupClass::dense_in_C;
    c.detail = to_string(a) + " / " + to_string(b) + " / " + to_string(d);
    return c;
}

// --- 8: leaf curvature against the finite-difference oracle. ------------

Criterion criterion8() {
    Criterion c;
    Rng rng(908);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        Foliation f;
        do {
            f = random_foliation(rng, 2);
        } while (geometric_degree(f) != 2);
        for (int s = 0; s < 5; ++s) {
            Cx x, y;
            do {
                x = rng.complex_in_box(0.6);
                y = rng.complex_in_box(0.6);
            } while (std::norm(f.P.eval(x, y)) + std::norm(f.Q.eval(x, y)) +
                         std::norm(f.R.eval(x, y)) <
                     1e-2);
            const double exact = leaf_curvature(f, x, y);
            const double fd = curvature_fd_check(f, x, y, 1e-3);
            worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
        }
    }
    c.pass = worst < 1e-4;

    // Degree-1 foliations are flat; the quadratic example has kappa(0,0) = -2.
    const Foliation lin = new_foliation(Poly2::y(), Poly2::x(), "flat");
    double flat = 0.0;
    for (int s = 0; s < 20; ++s)
        flat = std::max(flat,
                        std::abs(leaf_curvature(lin, rng.complex_in_box(2.0),
                                                rng.complex_in_box(2.0))));
    Poly2 P = Poly2::x() * Poly2::x();
    P.add_term(0, 0, Cx(1));
    const Foliation quad = new_foliation(std::move(P), Poly2::y() * Poly2::y(), "quad");
    const double at0 = leaf_curvature(quad, Cx(0), Cx(0));
    c.pass = c.pass && flat == 0.0 && at0 == -2.0;
    c.detail = "worst FD rel " + num(worst) + ", degree-1 max |kappa| " + num(flat) +
               ", kappa(0,0) = " + num(at0);
    return c;
}

// --- 9: segment energy never exceeds the distance bound. ----------------

Criterion criterion9() {
    Criterion c;
    Rng rng(909);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const double r0 = std::pow(10.0, rng.uniform(-2.0, 3.0));
        const double r1 = std::pow(10.0, rng.uniform(-2.0, 3.0));
        const Cx x0 = rng.unit_complex() * r0, y0 = rng.unit_complex() * r0;
        const Cx x1 = rng.unit_complex() * r1, y1 = rng.unit_complex() * r1;
        if (std::abs(x1 - x0) + std::abs(y1 - y0) < 1e-12) {
            --i;
            continue;
        }
        const double e = segment_energy(x0, y0, x1, y1, 64);
        const double sep = std::norm(x1 - x0) + std::norm(y1 - y0);
        const double delta = segment_origin_distance(x0, y0, x1, y1);
        // 1e-10 relative slack absorbs quadrature roundoff on an exact bound.
        if (e > sep / (1.0 + delta * delta) * (1.0 + 1e-10)) ++violations;
    }
    c.pass = violations == 0;
    c.detail = std::to_string(violations) + " violations in 10000 pairs";
    return c;
}

// --- 10: traces leave every bounded region or log monotone progress. ----

Criterion criterion10() {
    Criterion c;
    Rng rng(910);
    int escaped = 0, budget_stops = 0, bad = 0;
    for (int i = 0; i < 10; ++i) {
        const Foliation f = random_foliation(rng, 1 + int(rng.below(3)));
        for (int s = 0; s < 5; ++s) {
            Cx x0, y0;
            do {
                x0 = rng.complex_in_box(2.0);
                y0 = rng.complex_in_box(2.0);
            } while (std::abs(f.P.eval(x0, y0)) + std::abs(f.Q.eval(x0, y0)) < 1e-6);
            TraceBudget budget; // default exploration budget
            budget.seed = rng.below(1u << 30);
            const TraceResult tr = trace_leaf(f, x0, y0, budget, TransversalSpec{});
            if (tr.stop_reason == "escaped" && tr.escaped_radius >= 100.0) {
                ++escaped;
            } else if (tr.stop_reason == "budget") {
                // Accepted bursts never lose more than 2% radius, so the
                // recorded log must ratchet outward.
                bool monotone = true;
                double prev = -1.0;
                for (const TracePoint& p : tr.points) {
                    double r;
                    if (p.chart == Chart::U0) {
                        r = std::hypot(std::abs(p.a), std::abs(p.b));
                    } else if (p.chart == Chart::U1) {
                        r = std::hypot(1.0, std::abs(p.b)) / std::abs(p.a);
                    } else {
                        r = std::hypot(1.0, std::abs(p.b)) / std::abs(p.a);
                    }
                    if (prev >= 0.0 && r < 0.98 * prev * (1.0 - 1e-12)) monotone = false;
                    prev = r;
                }
                if (monotone && tr.escaped_radius > 0.0) ++budget_stops;
                else ++bad;
            } else {
                ++bad; // a stop that claims neither escape nor budget
            }
        }
    }
    c.pass = bad == 0;
    c.detail = std::to_string(escaped) + " escaped >= 100, " + std::to_string(budget_stops) +
               " budget-limited monotone, " + std::to_string(bad) + " other";
    return c;
}

// --- 11: transversal hits of one leaf cover a disk around the base. -----

Criterion criterion11() {
    Criterion c;
    Rng rng(1101);
    Foliation f;
    for (;;) {
        f = random_pl(rng, 2);
        const HyperbolicityReport rep = hyperbolicity_report(f);
        if (rep.applicable && rep.multipliers_off_circle == Tri::yes &&
            rep.tangent_group_dense == Tri::yes) {
            break;
        }
    }
    const LoopSystem sys = standard_loops(f);
    const Cx u_seed(0.2, 0.0);
    // Documented default budget for the coverage experiment: word depth 4,
    // 3000 points, |u| capped at 0.75.  Coverage is measured with an
    // eps = 0.05 net on the disk of radius 0.25 around the base point
    // (u = 0, where the transversal meets the leaf at infinity).
    std::vector<double> coverage;
    for (int depth = 1; depth <= 4; ++depth) {
        OrbitBudget budget;
        budget.max_depth = depth;
        budget.max_points = 3000;
        const OrbitResult orb = monodromy_orbit(f, sys, u_seed, budget);
        coverage.push_back(density_statistic(orb.points, Cx(0), 0.25, 0.05));
    }
    bool nondecreasing = true;
    for (size_t k = 1; k < coverage.size(); ++k)
        if (coverage[k] < coverage[k - 1]) nondecreasing = false;
    c.pass = nondecreasing && coverage.back() > 0.5;
    c.detail = "coverage by depth";
    for (double v : coverage) c.detail += " " + num(v);
    return c;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        Criterion (*run)();
        double cap_seconds; // 0 = property-based, no cap
    };
    const Entry entries[] = {
        {1, "reference family classification", criterion1, 1.0},
        {2, "tangency count line-independence", criterion2, 30.0},
        {3, "residue identities at infinity", criterion3, 10.0},
        {4, "monodromy multiplier triangle", criterion4, 120.0},
        {5, "Koenigs linearization", criterion5, 10.0},
        {6, "renormalization law", criterion6, 5.0},
        {7, "additive group density classes", criterion7, 30.0},
        {8, "leaf curvature vs finite differences", criterion8, 60.0},
        {9, "energy-distance bound", criterion9, 5.0},
        {10, "leaf unboundedness experiment", criterion10, 0.0},
        {11, "transversal coverage experiment", criterion11, 0.0},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = e.cap_seconds == 0.0 || dt < e.cap_seconds;
        const bool pass = c.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %s  %s (%s)%s [%.1fs]\n", e.id, pass ? "PASS" : "FAIL",
                    e.title, c.detail.c_str(), in_time ? "" : " OVER TIME", dt);
    }
    std::printf("acceptance: %d/11 criteria passed\n", 11 - failures);
    return failures;
}
