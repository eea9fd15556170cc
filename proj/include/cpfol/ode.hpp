#pragma once

#include <functional>
#include <vector>

#include "cpfol/poly.hpp"

namespace cpfol {

// Adaptive embedded Runge-Kutta of order 5(4), Dormand-Prince
// coefficients, over vectors of complex state.  The independent
// variable is real (paths are pulled back to [t0, t1]).
struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    // First trial step as a fraction of the interval.
    double h_init_frac = 1e-2;
    // Throw StepUnderflow below this fraction of the interval.
    double h_min_frac = 1e-12;
    int max_steps = 400000;
    // > 0: integrate with this fixed step (fraction of the interval),
    // no adaptation; used by order-measurement tests.
    double fixed_step = 0.0;
};

struct OdeStats {
    int steps = 0;            // accepted steps
    int rejected = 0;
    double max_err_ratio = 0; // largest accepted (error / tolerance) ratio
};

using OdeFun = std::function<void(double, const std::vector<Cx>&, std::vector<Cx>&)>;

// Advances state from t0 to t1.  The right-hand side may throw (e.g.
// PoleEncountered); the exception propagates.  Throws StepUnderflow
// when the controller collapses the step and ToleranceNotMet when the
// step budget runs out.
void integrate_ode(const OdeFun& f, std::vector<Cx>& state, double t0, double t1,
                   const OdeOptions& opt, OdeStats* stats = nullptr);

// Adaptive Gauss-Kronrod 15(7) quadrature of a complex integrand over
// a real interval, bisecting until the embedded error estimate drops
// below abs_tol + rel_tol * |whole|.  Throws ToleranceNotMet when the
// depth limit is reached.
Cx integrate_gk(const std::function<Cx(double)>& f, double a, double b, double rel_tol = 1e-12,
                double abs_tol = 1e-14, int max_depth = 40);

// Gauss-Legendre nodes and weights on [0, 1], computed by Newton
// iteration on the Legendre recurrence and cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre_01(int n);

} // namespace cpfol
