#pragma once

#include <string>
#include <vector>

#include "cpfol/foliation.hpp"

namespace cpfol {

// Fubini-Study length measurement of a tangent vector in the affine
// chart U0.
struct MetricSample {
    Cx x, y;   // base point
    Cx dx, dy; // tangent
    double fs_length_sq;
};

// (|dx|^2 + |dy|^2 + |x dy - y dx|^2) / (1 + |x|^2 + |y|^2)^2.
double fs_norm_sq(Cx x, Cx y, Cx dx, Cx dy);

MetricSample metric_sample(Cx x, Cx y, Cx dx, Cx dy);

// Energy of the straight segment from p0 to p1: the integral over
// [0, 1] of the Fubini-Study norm squared of the (constant-velocity)
// parametrization, by Gauss-Legendre quadrature.  It is bounded by
// |p0 - p1|^2 / (1 + delta^2) with delta the Euclidean distance of the
// segment to the origin; see segment_origin_distance.
double segment_energy(Cx x0, Cx y0, Cx x1, Cx y1, int quad_points = 64);

// Euclidean distance from the origin of C^2 to the segment [p0, p1].
double segment_origin_distance(Cx x0, Cx y0, Cx x1, Cx y1);

// Hermitian metric on leaves: the Fubini-Study form rescaled by
// (1 + |x|^2 + |y|^2)^{n+1} / (|P|^2 + |Q|^2 + |R|^2), with n the
// geometric degree.  Along the leaf direction (dx, dy) = (P, Q) dT the
// value is (1 + |x|^2 + |y|^2)^{n-1} |dT|^2, and the expression is
// invariant under the chart change to U1.  Throws SingularPoint when
// P, Q, R all vanish at the point.
double foliation_metric_norm_sq(const Foliation& f, Cx x, Cx y, Cx dx, Cx dy);

// Gaussian curvature of the leaf through a nonsingular point in the
// metric above: -2(n-1) (|P|^2 + |Q|^2 + |R|^2) / (1+|x|^2+|y|^2)^{n+1}.
// Identically zero when n = 1, strictly negative when n >= 2.
double leaf_curvature(const Foliation& f, Cx x, Cx y);

struct CurvatureSample {
    Cx x, y;
    double kappa;
};

// Independent estimate of the curvature at the same point: the leaf is
// parametrized by complex time T (dx/dT = P, dy/dT = Q, integrated by
// the adaptive Runge-Kutta), kappa = -(Laplacian of log h)/h^2 is
// evaluated by the 5-point stencil with spacing `step` in T, and
// h^2(T) = (1+|x|^2+|y|^2)^{n-1} is the leaf-direction metric weight.
double curvature_fd_check(const Foliation& f, Cx x, Cx y, double step);

// Curvature sampled on an axis-aligned grid of real points
// (re x, re y) in [-half_width, half_width]^2 (imaginary parts zero);
// grid nodes that hit a singular point are skipped.  Work is split over
// `jobs` threads; the sample order is fixed by grid index either way.
std::vector<CurvatureSample> curvature_grid(const Foliation& f, double half_width,
                                            int points_per_side, int jobs = 1);

// CSV with header "re x,im x,re y,im y,kappa", 17 significant digits.
std::string curvature_csv(const std::vector<CurvatureSample>& samples);

} // namespace cpfol
