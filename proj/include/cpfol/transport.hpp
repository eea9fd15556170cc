#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpfol/foliation.hpp"
#include "cpfol/ode.hpp"

namespace cpfol {

// Piecewise path in one complex coordinate: straight lines and circular
// arcs.  An arc runs from angle0 to angle1 (radians, signed; a positive
// full loop is angle1 = angle0 + 2 pi).
struct Segment {
    enum Kind { line, arc } kind;
    // line
    Cx from, to;
    // arc
    Cx center;
    double radius = 0.0;
    double angle0 = 0.0, angle1 = 0.0;

    static Segment make_line(Cx a, Cx b);
    static Segment make_arc(Cx center, double radius, double angle0, double angle1);
    Cx start() const;
    Cx end() const;
    Cx at(double t) const;    // t in [0, 1]
    Cx deriv(double t) const; // d(at)/dt
    double length() const;
};

struct PathSpec {
    std::vector<Segment> segments;
};

// Consecutive segments must share endpoints within 1e-12 of the path
// scale; throws PreconditionError otherwise.
void validate_path(const PathSpec& p);
PathSpec reverse_path(const PathSpec& p);
// Endpoint of `a` must match the start of `b`.
PathSpec concat_paths(const PathSpec& a, const PathSpec& b);
double path_length(const PathSpec& p);

struct TransportOptions {
    OdeOptions ode;
    // Integration aborts (PoleEncountered) when the denominator of the
    // slope field drops below pole_floor * (local coefficient scale).
    double pole_floor = 1e-8;
};

struct HolonomyResult {
    Cx endpoint;                // transported fiber coordinate
    Cx multiplier_variational;  // d(endpoint)/d(start) from the linearized flow
    int steps = 0;              // accepted integrator steps
    double max_residual = 0.0;  // largest accepted local error vs tolerance, x rel_tol
};

// Continues the leaf through (x0, y0) over a path in the x coordinate:
// integrates dy/dx = Q/P together with the variational equation
// dxi/dx = ((Q_y P - P_y Q)/P^2) xi from xi = 1.  Requires P nonzero
// along the graph (PoleEncountered otherwise).
HolonomyResult continue_leaf(const Foliation& f, Cx x0, Cx y0, const PathSpec& path,
                             const TransportOptions& opt = {});

// Loop system around the singular points of the line at infinity, in
// the v coordinate of the U1 chart: a common base point (placed to
// maximize the minimum distance to the roots), one loop per root
// (approach segment, full positive circle, return), each circle's
// radius defaulting to radius_scale x the minimal root gap.  Approach
// segments detour around other roots' clearance circles.
struct LoopSystem {
    Cx base;
    double radius;
    std::vector<Cx> roots; // ordered as infinity_singularities
};
LoopSystem standard_loops(const Foliation& f, double radius_scale = 1.0 / 3.0);
// The loop around roots[j].  Throws RadiusTooLarge when the circle
// would enclose or touch another root.
PathSpec loop_around(const LoopSystem& sys, int j);

// Holonomy of the infinity leaf over a path in v: integrates
// du/dv = u Ptil(u,v) / Rtil(u,v) from u = u0, plus the variational
// equation along the trajectory.  On the leaf itself (u0 = 0) the
// variational factor is the derivative of the monodromy germ at 0.
HolonomyResult transversal_holonomy(const Foliation& f, const PathSpec& vpath, Cx u0,
                                    const TransportOptions& opt = {});

// Monodromy around the j-th infinity singularity: transversal_holonomy
// over loop_around(standard_loops(f), j) with u0 = 0 (or a caller
// radius).  Requires the pl property.
HolonomyResult infinity_monodromy(const Foliation& f, int j, double radius = 0.0,
                                  const TransportOptions& opt = {});

// The multiplier of the j-th infinity monodromy germ from the residue
// integral: exp of the loop integral of
// (Ptil(0,v) + Rtil_v(0,v)) / Rtil(0,v) dv minus the full-turn factor
// 2 pi i.  Requires the pl property.
Cx multiplier_by_integral(const Foliation& f, int j, double radius = 0.0);

// Orbit of a transversal coordinate under words in the monodromy
// letters (all loops and their reverses), breadth-first with value
// deduplication.  Values with |u| > u_cap are pruned (left the
// transversal neighborhood); letters whose integration fails are
// skipped.
struct OrbitBudget {
    int max_depth = 3;
    int max_points = 400;
    double dedupe_tol = 1e-7;
    double u_cap = 0.75;
};
struct OrbitResult {
    std::vector<Cx> points; // includes the seed
    int pruned = 0;         // values dropped by u_cap or failures
    bool truncated = false; // max_points reached before depth exhausted
};
OrbitResult monodromy_orbit(const Foliation& f, const LoopSystem& sys, Cx u_seed,
                            const OrbitBudget& budget = {}, const TransportOptions& opt = {});

// Complex-time leaf exploration.
struct TraceBudget {
    int max_steps = 4000;        // exploration bursts
    double burst_length = 0.25;  // arc length per burst
    double escape_radius = 100.0;
    double min_field = 1e-9;     // singularity floor on |(A,B)| / scale
    std::uint64_t seed = 1;
    double jitter = 0.6;         // radians of phase jitter per burst
};
struct TransversalSpec {
    Chart chart = Chart::U0;
    int coord = 0; // 0: first chart coordinate, 1: second
    Cx value = Cx(1.0);
    double eps = 1e-2; // capture window
};
struct TracePoint {
    Chart chart;
    Cx a, b;
};
struct TraceResult {
    std::vector<TracePoint> points;
    std::vector<Cx> transversal_hits; // other coordinate at each crossing
    double escaped_radius = 0.0;      // largest U0 Euclidean radius reached
    std::string stop_reason;          // "escaped" | "budget" | "singular"
};
TraceResult trace_leaf(const Foliation& f, Cx x0, Cx y0, const TraceBudget& budget = {},
                       const TransversalSpec& section = {},
                       const TransportOptions& opt = {});

// Fraction of an eps-grid of the disk (center, radius) lying within
// eps of some hit.
double density_statistic(const std::vector<Cx>& hits, Cx center, double radius, double eps);

} // namespace cpfol
