#include "cpfol/transport.hpp"
#include "cpfol/singular.hpp"
#include "cpfol/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace cpfol {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

Segment Segment::make_line(Cx a, Cx b) {
    Segment s;
    s.kind = line;
    s.from = a;
    s.to = b;
    return s;
}

Segment Segment::make_arc(Cx center, double radius, double angle0, double angle1) {
    Segment s;
    s.kind = arc;
    s.center = center;
    s.radius = radius;
    s.angle0 = angle0;
    s.angle1 = angle1;
    return s;
}

Cx Segment::start() const { return at(0.0); }
Cx Segment::end() const { return at(1.0); }

Cx Segment::at(double t) const {
    if (kind == line) return from + t * (to - from);
    const double a = angle0 + t * (angle1 - angle0);
    return center + radius * Cx(std::cos(a), std::sin(a));
}

Cx Segment::deriv(double t) const {
    if (kind == line) return to - from;
    const double a = angle0 + t * (angle1 - angle0);
    return radius * (angle1 - angle0) * Cx(-std::sin(a), std::cos(a));
}

double Segment::length() const {
    if (kind == line) return std::abs(to - from);
    return radius * std::abs(angle1 - angle0);
}

void validate_path(const PathSpec& p) {
    if (p.segments.empty()) throw PreconditionError("validate_path: empty path");
    double scale = 1.0;
    for (const Segment& s : p.segments) {
        scale = std::max({scale, std::abs(s.start()), std::abs(s.end())});
    }
    for (std::size_t i = 1; i < p.segments.size(); ++i) {
        if (std::abs(p.segments[i].start() - p.segments[i - 1].end()) > 1e-12 * scale) {
            throw PreconditionError("validate_path: consecutive segments do not meet");
        }
    }
}

PathSpec reverse_path(const PathSpec& p) {
    PathSpec r;
    for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it) {
        Segment s = *it;
        if (s.kind == Segment::line) {
            std::swap(s.from, s.to);
        } else {
            std::swap(s.angle0, s.angle1);
        }
        r.segments.push_back(s);
    }
    return r;
}

PathSpec concat_paths(const PathSpec& a, const PathSpec& b) {
    PathSpec c = a;
    c.segments.insert(c.segments.end(), b.segments.begin(), b.segments.end());
    validate_path(c);
    return c;
}

double path_length(const PathSpec& p) {
    double L = 0.0;
    for (const Segment& s : p.segments) L += s.length();
    return L;
}

namespace {

// Integrates a fiber coordinate w and its variational factor xi over a
// path in the base coordinate z: dw/dz = slope(z, w),
// dxi/dz = slope_w(z, w) xi.
struct FiberOde {
    std::function<Cx(Cx, Cx)> slope;
    std::function<Cx(Cx, Cx)> slope_w;
};

HolonomyResult run_fiber(const FiberOde& sys, const PathSpec& path, Cx w0,
                         const TransportOptions& opt) {
    validate_path(path);
    HolonomyResult out;
    std::vector<Cx> state = {w0, Cx(1.0)};
    for (const Segment& seg : path.segments) {
        OdeStats stats;
        const OdeFun rhs = [&](double t, const std::vector<Cx>& s, std::vector<Cx>& d) {
            const Cx z = seg.at(t);
            const Cx dz = seg.deriv(t);
            d.resize(2);
            d[0] = sys.slope(z, s[0]) * dz;
            d[1] = sys.slope_w(z, s[0]) * s[1] * dz;
        };
        integrate_ode(rhs, state, 0.0, 1.0, opt.ode, &stats);
        out.steps += stats.steps;
        out.max_residual = std::max(out.max_residual, stats.max_err_ratio * opt.ode.rel_tol);
    }
    out.endpoint = state[0];
    out.multiplier_variational = state[1];
    return out;
}

} // namespace

HolonomyResult continue_leaf(const Foliation& f, Cx x0, Cx y0, const PathSpec& path,
                             const TransportOptions& opt) {
    validate_path(path);
    if (std::abs(path.segments.front().start() - x0) >
        1e-12 * (1.0 + std::abs(x0))) {
        throw PreconditionError("continue_leaf: path must start at x0");
    }
    const Poly2 Py = f.P.dy(), Qy = f.Q.dy();
    FiberOde sys;
    sys.slope = [&](Cx x, Cx y) {
        const Cx p = f.P.eval(x, y);
        const double floor = opt.pole_floor * (f.P.eval_scale(std::abs(x), std::abs(y)) + 1.0);
        if (std::abs(p) < floor) {
            throw PoleEncountered("continue_leaf: P vanishes along the path");
        }
        return f.Q.eval(x, y) / p;
    };
    sys.slope_w = [&](Cx x, Cx y) {
        const Cx p = f.P.eval(x, y);
        return (Qy.eval(x, y) * p - Py.eval(x, y) * f.Q.eval(x, y)) / (p * p);
    };
    return run_fiber(sys, path, y0, opt);
}

namespace {

// The U1-chart data for transport at infinity: u Ptil = u^{n+1} P(1/u, v/u),
// Rtil = u^{n+1} R(1/u, v/u).
struct InfinityChart {
    Poly2 ptil, ptil_u, rtil, rtil_u;
    Poly1 ptil0, rtil0, rtil0_v; // restrictions to u = 0
};

InfinityChart infinity_chart(const Foliation& f) {
    InfinityChart c;
    const int k = f.affine_degree + 1;
    const Poly2 A = u_chart_transform(f.P, k);
    Poly2 ptil;
    for (const auto& [key, coef] : A.terms()) ptil.add_term(key.first - 1, key.second, coef);
    c.ptil = std::move(ptil);
    c.rtil = u_chart_transform(f.R, k);
    c.ptil_u = c.ptil.dx();
    c.rtil_u = c.rtil.dx();
    c.ptil0 = slice_y(c.ptil, Cx(0.0)); // careful: vars are (u, v)
    c.rtil0 = slice_y(c.rtil, Cx(0.0));
    c.rtil0_v = c.rtil0.derivative();
    return c;
}

} // namespace

HolonomyResult transversal_holonomy(const Foliation& f, const PathSpec& vpath, Cx u0,
                                    const TransportOptions& opt) {
    const InfinityChart c = infinity_chart(f);
    FiberOde sys;
    sys.slope = [&](Cx v, Cx u) {
        const Cx r = c.rtil.eval(u, v);
        const double floor =
            opt.pole_floor * (c.rtil.eval_scale(std::abs(u), std::abs(v)) + 1.0);
        if (std::abs(r) < floor) {
            throw PoleEncountered("transversal_holonomy: Rtil vanishes along the path");
        }
        return u * c.ptil.eval(u, v) / r;
    };
    sys.slope_w = [&](Cx v, Cx u) {
        const Cx r = c.rtil.eval(u, v);
        const Cx p = c.ptil.eval(u, v);
        return (p + u * c.ptil_u.eval(u, v)) / r -
               u * p * c.rtil_u.eval(u, v) / (r * r);
    };
    return run_fiber(sys, vpath, u0, opt);
}

LoopSystem standard_loops(const Foliation& f, double radius_scale) {
    if (!pl_property(f)) {
        throw PreconditionError("standard_loops: foliation lacks the pl property");
    }
    LoopSystem sys;
    for (const auto& s : infinity_singularities(f)) sys.roots.push_back(s.a);

    double gap = 2.0; // lone-singularity fallback
    if (sys.roots.size() >= 2) {
        gap = 1e300;
        for (std::size_t i = 0; i < sys.roots.size(); ++i) {
            for (std::size_t j = i + 1; j < sys.roots.size(); ++j) {
                gap = std::min(gap, std::abs(sys.roots[i] - sys.roots[j]));
            }
        }
    }
    sys.radius = radius_scale * gap;

    // Base point: coarse max-min-distance search over an inflated
    // bounding box of the roots.
    double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
    for (Cx a : sys.roots) {
        re_lo = std::min(re_lo, a.real());
        re_hi = std::max(re_hi, a.real());
        im_lo = std::min(im_lo, a.imag());
        im_hi = std::max(im_hi, a.imag());
    }
    const double m = std::max(1.0, 2.5 * sys.radius);
    re_lo -= m;
    re_hi += m;
    im_lo -= m;
    im_hi += m;
    const int grid = 33;
    double best = -1.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Cx p(re_lo + (re_hi - re_lo) * i / (grid - 1),
                       im_lo + (im_hi - im_lo) * j / (grid - 1));
            double d = 1e300;
            for (Cx a : sys.roots) d = std::min(d, std::abs(p - a));
            if (d > best) {
                best = d;
                sys.base = p;
            }
        }
    }
    return sys;
}

PathSpec loop_around(const LoopSystem& sys, int j) {
    const int m = static_cast<int>(sys.roots.size());
    if (j < 0 || j >= m) throw PreconditionError("loop_around: index out of range");
    const Cx aj = sys.roots[static_cast<std::size_t>(j)];
    const double r = sys.radius;
    for (int i = 0; i < m; ++i) {
        if (i == j) continue;
        if (std::abs(sys.roots[static_cast<std::size_t>(i)] - aj) <= 2.05 * r) {
            throw RadiusTooLarge("loop_around: circle not isolated from other singular points");
        }
    }
    const double phi = std::arg(sys.base - aj);
    const Cx entry = aj + r * Cx(std::cos(phi), std::sin(phi));

    // Straight approach, bent around the clearance circles of the
    // other roots where it would cut through them.
    PathSpec approach;
    const Cx p = sys.base, q = entry;
    const Cx w = q - p;
    const double wn2 = std::norm(w);
    struct Hit {
        double t;
        Cx root;
    };
    std::vector<Hit> hits;
    const double cprime = 1.05 * r;
    for (int i = 0; i < m; ++i) {
        if (i == j) continue;
        const Cx ai = sys.roots[static_cast<std::size_t>(i)];
        const double tm = (std::conj(w) * (ai - p)).real() / wn2;
        if (tm <= 0.0 || tm >= 1.0) continue;
        const double d = std::abs(p + tm * w - ai);
        if (d < r) hits.push_back({tm, ai});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
    Cx cur = p;
    for (const Hit& h : hits) {
        const double tm = (std::conj(w) * (h.root - p)).real() / wn2;
        const Cx mpt = p + tm * w;
        const double d = std::abs(mpt - h.root);
        const double s = std::sqrt(std::max(cprime * cprime - d * d, 0.0)) / std::abs(w);
        const Cx h1 = p + (tm - s) * w;
        const Cx h2 = p + (tm + s) * w;
        const double a1 = std::arg(h1 - h.root);
        double da = std::remainder(std::arg(h2 - h.root) - a1, kTwoPi);
        if (da == 0.0) da = kPi; // antipodal chord: pick the positive arc
        approach.segments.push_back(Segment::make_line(cur, h1));
        approach.segments.push_back(Segment::make_arc(h.root, cprime, a1, a1 + da));
        cur = h2;
    }
    approach.segments.push_back(Segment::make_line(cur, q));

    PathSpec path = approach;
    path.segments.push_back(Segment::make_arc(aj, r, phi, phi + kTwoPi));
    const PathSpec back = reverse_path(approach);
    path.segments.insert(path.segments.end(), back.segments.begin(), back.segments.end());
    validate_path(path);
    return path;
}

HolonomyResult infinity_monodromy(const Foliation& f, int j, double radius,
                                  const TransportOptions& opt) {
    LoopSystem sys = standard_loops(f);
    if (radius > 0.0) sys.radius = radius;
    return transversal_holonomy(f, loop_around(sys, j), Cx(0.0), opt);
}

Cx multiplier_by_integral(const Foliation& f, int j, double radius) {
    LoopSystem sys = standard_loops(f);
    if (radius > 0.0) sys.radius = radius;
    const int m = static_cast<int>(sys.roots.size());
    if (j < 0 || j >= m) throw PreconditionError("multiplier_by_integral: index out of range");
    const Cx aj = sys.roots[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) {
        if (i != j && std::abs(sys.roots[static_cast<std::size_t>(i)] - aj) <= sys.radius) {
            throw RadiusTooLarge("multiplier_by_integral: circle encloses another root");
        }
    }
    const InfinityChart c = infinity_chart(f);
    const double r = sys.radius;
    const auto integrand = [&](double th) {
        const Cx e(std::cos(th), std::sin(th));
        const Cx v = aj + r * e;
        const Cx dv = Cx(0.0, 1.0) * r * e;
        return (c.ptil0.eval(v) + c.rtil0_v.eval(v)) / c.rtil0.eval(v) * dv;
    };
    const Cx integral = integrate_gk(integrand, 0.0, kTwoPi, 1e-12, 1e-14);
    // The closed integral is 2 pi i (lambda_j + 1); remove the full turn.
    return std::exp(integral - Cx(0.0, kTwoPi));
}

OrbitResult monodromy_orbit(const Foliation& f, const LoopSystem& sys, Cx u_seed,
                            const OrbitBudget& budget, const TransportOptions& opt) {
    OrbitResult out;
    const int m = static_cast<int>(sys.roots.size());
    std::vector<PathSpec> letters;
    for (int j = 0; j < m; ++j) {
        const PathSpec fwd = loop_around(sys, j);
        letters.push_back(fwd);
        letters.push_back(reverse_path(fwd));
    }
    auto seen = [&](Cx u) {
        for (Cx v : out.points) {
            if (std::abs(u - v) <= budget.dedupe_tol * (1.0 + std::abs(v))) return true;
        }
        return false;
    };
    out.points.push_back(u_seed);
    std::vector<Cx> frontier = {u_seed};
    for (int depth = 0; depth < budget.max_depth && !frontier.empty(); ++depth) {
        std::vector<Cx> next;
        for (Cx u : frontier) {
            for (const PathSpec& L : letters) {
                if (static_cast<int>(out.points.size()) >= budget.max_points) {
                    out.truncated = true;
                    return out;
                }
                Cx img;
                try {
                    img = transversal_holonomy(f, L, u, opt).endpoint;
                } catch (const NumericError&) {
                    ++out.pruned;
                    continue;
                }
                if (!finite(img) || std::abs(img) > budget.u_cap) {
                    ++out.pruned;
                    continue;
                }
                if (seen(img)) continue;
                out.points.push_back(img);
                next.push_back(img);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

struct ChartState {
    Chart chart;
    Cx a, b;
};

double u0_radius(const ChartState& s) {
    switch (s.chart) {
        case Chart::U0:
            return std::sqrt(std::norm(s.a) + std::norm(s.b));
        case Chart::U1:
            return std::sqrt(1.0 + std::norm(s.b)) / std::max(std::abs(s.a), 1e-300);
        case Chart::U2:
            return std::sqrt(1.0 + std::norm(s.b)) / std::max(std::abs(s.a), 1e-300);
    }
    return 0.0;
}

// Homogeneous coordinates [x0 : x1 : x2] of a chart point.
void homogeneous(const ChartState& s, Cx h[3]) {
    switch (s.chart) {
        case Chart::U0:
            h[0] = Cx(1.0);
            h[1] = s.a;
            h[2] = s.b;
            break;
        case Chart::U1:
            h[0] = s.a;
            h[1] = Cx(1.0);
            h[2] = s.b;
            break;
        case Chart::U2:
            h[0] = s.a;
            h[1] = s.b;
            h[2] = Cx(1.0);
            break;
    }
}

ChartState to_chart(const ChartState& s, Chart target) {
    if (s.chart == target) return s;
    Cx h[3];
    homogeneous(s, h);
    ChartState t;
    t.chart = target;
    switch (target) {
        case Chart::U0:
            t.a = h[1] / h[0];
            t.b = h[2] / h[0];
            break;
        case Chart::U1:
            t.a = h[0] / h[1];
            t.b = h[2] / h[1];
            break;
        case Chart::U2:
            t.a = h[0] / h[2];
            t.b = h[1] / h[2];
            break;
    }
    return t;
}

} // namespace

TraceResult trace_leaf(const Foliation& f, Cx x0, Cx y0, const TraceBudget& budget,
                       const TransversalSpec& section, const TransportOptions& opt) {
    TraceResult out;
    const ChartForm forms[3] = {chart_form(f, Chart::U0), chart_form(f, Chart::U1),
                                chart_form(f, Chart::U2)};
    auto form_of = [&](Chart c) -> const ChartForm& { return forms[static_cast<int>(c)]; };

    auto field_ok = [&](const ChartState& s) {
        const ChartForm& cf = form_of(s.chart);
        const double mag = std::abs(cf.A.eval(s.a, s.b)) + std::abs(cf.B.eval(s.a, s.b));
        const double scale = cf.A.eval_scale(std::abs(s.a), std::abs(s.b)) +
                             cf.B.eval_scale(std::abs(s.a), std::abs(s.b)) + 1e-300;
        return mag > budget.min_field * scale;
    };

    ChartState cur{Chart::U0, x0, y0};
    if (!field_ok(cur)) {
        throw SingularPoint("trace_leaf: start point is singular");
    }

    Rng rng(budget.seed);
    out.points.push_back({cur.chart, cur.a, cur.b});
    out.escaped_radius = u0_radius(cur);
    out.stop_reason = "budget";

    auto outward_phase = [&](const ChartState& s) {
        const ChartForm& cf = form_of(s.chart);
        const Cx A = cf.A.eval(s.a, s.b), B = cf.B.eval(s.a, s.b);
        Cx wgt;
        if (s.chart == Chart::U0) {
            wgt = std::conj(s.a) * A + std::conj(s.b) * B;
        } else {
            // d log radius: outward means shrinking the first coordinate.
            wgt = std::conj(s.b) * B / (1.0 + std::norm(s.b)) -
                  std::conj(s.a) * A / std::max(std::norm(s.a), 1e-300);
        }
        double th;
        if (std::abs(wgt) < 1e-14) {
            th = rng.uniform(0.0, kTwoPi);
        } else {
            th = -std::arg(wgt) + budget.jitter * rng.uniform(-1.0, 1.0);
        }
        return Cx(std::cos(th), std::sin(th));
    };

    // One burst: fixed phase, unit speed, fixed arc length.
    auto burst = [&](ChartState& s, Cx phase, double len) {
        const ChartForm& cf = form_of(s.chart);
        std::vector<Cx> state = {s.a, s.b};
        const OdeFun rhs = [&](double, const std::vector<Cx>& z, std::vector<Cx>& d) {
            const Cx A = cf.A.eval(z[0], z[1]), B = cf.B.eval(z[0], z[1]);
            const double n = std::sqrt(std::norm(A) + std::norm(B));
            const double scale = cf.A.eval_scale(std::abs(z[0]), std::abs(z[1])) +
                                 cf.B.eval_scale(std::abs(z[0]), std::abs(z[1])) + 1e-300;
            if (n <= budget.min_field * scale) {
                throw PoleEncountered("trace_leaf: singular point approached");
            }
            d.resize(2);
            d[0] = phase * A / n;
            d[1] = phase * B / n;
        };
        integrate_ode(rhs, state, 0.0, len, opt.ode);
        s.a = state[0];
        s.b = state[1];
    };

    auto section_gap = [&](const ChartState& s) -> Cx {
        const ChartState t = to_chart(s, section.chart);
        return (section.coord == 0 ? t.a : t.b) - section.value;
    };
    auto section_other = [&](const ChartState& s) -> Cx {
        const ChartState t = to_chart(s, section.chart);
        return section.coord == 0 ? t.b : t.a;
    };

    // Burst length adapts: shrink after a burst that loses radius (the
    // move is discarded), grow back on success.  Near the infinity
    // leaf a fixed step overshoots forever; this ratchets outward.
    double len = budget.burst_length;
    for (int step = 0; step < budget.max_steps; ++step) {
        const ChartState prev = cur;
        const double r_prev = u0_radius(prev);
        const Cx phase = outward_phase(cur);
        const Cx psi_prev = section_gap(prev);
        const double step_len = len;
        try {
            burst(cur, phase, step_len);
        } catch (const NumericError&) {
            // The unit-speed phase flow reaches zeros of the field in
            // finite arc length, so a burst aimed near a singular point
            // aborts mid-flight.  The leaf itself continues past it:
            // discard the move, retry shorter with a fresh phase, and
            // only report "singular" once cornered at the length floor.
            cur = prev;
            if (step_len <= 2e-6 * budget.burst_length) {
                out.stop_reason = "singular";
                break;
            }
            len = std::max(0.5 * len, 1e-6 * budget.burst_length);
            continue;
        }
        if (u0_radius(cur) < 0.98 * r_prev) {
            cur = prev;
            len = std::max(0.5 * len, 1e-6 * budget.burst_length);
            continue;
        }
        len = std::min(1.3 * len, budget.burst_length);
        out.points.push_back({cur.chart, cur.a, cur.b});
        out.escaped_radius = std::max(out.escaped_radius, u0_radius(cur));

        // Transversal crossing: sign change of Im(psi) close to the
        // section, refined by one secant re-integration.
        const Cx psi_cur = section_gap(cur);
        if (psi_prev.imag() * psi_cur.imag() < 0.0 &&
            std::min(std::abs(psi_prev), std::abs(psi_cur)) <= section.eps) {
            const double tstar =
                std::abs(psi_prev.imag()) /
                (std::abs(psi_prev.imag()) + std::abs(psi_cur.imag()));
            ChartState refined = prev;
            bool ok = true;
            try {
                burst(refined, phase, step_len * tstar);
            } catch (const NumericError&) {
                ok = false;
            }
            if (ok && std::abs(section_gap(refined)) <= section.eps) {
                out.transversal_hits.push_back(section_other(refined));
            }
        }

        if (out.escaped_radius >= budget.escape_radius) {
            out.stop_reason = "escaped";
            break;
        }

        // Chart switch: move to the chart whose anchor coordinate is
        // the largest homogeneous entry, with hysteresis.
        Cx h[3];
        homogeneous(cur, h);
        int big = 0;
        for (int i = 1; i < 3; ++i) {
            if (std::abs(h[i]) > std::abs(h[big])) big = i;
        }
        const int anchor = static_cast<int>(cur.chart);
        if (big != anchor && std::abs(h[big]) > 1.5 * std::abs(h[anchor])) {
            cur = to_chart(cur, static_cast<Chart>(big));
        }
    }
    return out;
}

double density_statistic(const std::vector<Cx>& hits, Cx center, double radius, double eps) {
    if (eps <= 0.0 || radius <= 0.0) throw PreconditionError("density_statistic: bad window");
    // Bucket the hits on an eps-grid.
    std::unordered_map<std::uint64_t, std::vector<Cx>> cells;
    auto key = [&](long long ix, long long iy) {
        return static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL +
               static_cast<std::uint64_t>(iy) * 0xbf58476d1ce4e5b9ULL;
    };
    auto cell_of = [&](Cx z) {
        return std::pair<long long, long long>(
            static_cast<long long>(std::floor(z.real() / eps)),
            static_cast<long long>(std::floor(z.imag() / eps)));
    };
    for (Cx h : hits) {
        const auto [ix, iy] = cell_of(h);
        cells[key(ix, iy)].push_back(h);
    }
    long long total = 0, covered = 0;
    const long long lo_x = static_cast<long long>(std::ceil((center.real() - radius) / eps));
    const long long hi_x = static_cast<long long>(std::floor((center.real() + radius) / eps));
    for (long long gx = lo_x; gx <= hi_x; ++gx) {
        const long long lo_y = static_cast<long long>(std::ceil((center.imag() - radius) / eps));
        const long long hi_y = static_cast<long long>(std::floor((center.imag() + radius) / eps));
        for (long long gy = lo_y; gy <= hi_y; ++gy) {
            const Cx node(gx * eps, gy * eps);
            if (std::abs(node - center) > radius) continue;
            ++total;
            const auto [cx, cy] = cell_of(node);
            bool hit = false;
            for (long long ix = cx - 1; ix <= cx + 1 && !hit; ++ix) {
                for (long long iy = cy - 1; iy <= cy + 1 && !hit; ++iy) {
                    const auto it = cells.find(key(ix, iy));
                    if (it == cells.end()) continue;
                    for (Cx h : it->second) {
                        if (std::abs(h - node) <= eps) {
                            hit = true;
                            break;
                        }
                    }
                }
            }
            if (hit) ++covered;
        }
    }
    if (total == 0) return 0.0;
    return static_cast<double>(covered) / static_cast<double>(total);
}

} // namespace cpfol
