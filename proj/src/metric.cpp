#include "cpfol/metric.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <vector>

#include "cpfol/errors.hpp"
#include "cpfol/ode.hpp"
#include "cpfol/util.hpp"

namespace cpfol {

double fs_norm_sq(Cx x, Cx y, Cx dx, Cx dy) {
    const double cross = std::norm(x * dy - y * dx);
    const double s = 1.0 + std::norm(x) + std::norm(y);
    return (std::norm(dx) + std::norm(dy) + cross) / (s * s);
}

MetricSample metric_sample(Cx x, Cx y, Cx dx, Cx dy) {
    return {x, y, dx, dy, fs_norm_sq(x, y, dx, dy)};
}

double segment_energy(Cx x0, Cx y0, Cx x1, Cx y1, int quad_points) {
    if (x0 == x1 && y0 == y1)
        throw PreconditionError("segment_energy: endpoints coincide");
    if (quad_points < 2 || quad_points > 4096)
        throw PreconditionError("segment_energy: quadrature order out of range");
    const Cx dx = x1 - x0, dy = y1 - y0;
    double e = 0.0;
    for (const auto& [node, weight] : gauss_legendre_01(quad_points)) {
        const Cx x = x0 + node * dx, y = y0 + node * dy;
        e += weight * fs_norm_sq(x, y, dx, dy);
    }
    return e;
}

double segment_origin_distance(Cx x0, Cx y0, Cx x1, Cx y1) {
    // |p0 + t d|^2 is a real quadratic in t; minimize over [0, 1].
    const Cx dx = x1 - x0, dy = y1 - y0;
    const double dd = std::norm(dx) + std::norm(dy);
    double t = 0.0;
    if (dd > 0.0) {
        const double pd = (x0 * std::conj(dx) + y0 * std::conj(dy)).real();
        t = std::min(1.0, std::max(0.0, -pd / dd));
    }
    const Cx x = x0 + t * dx, y = y0 + t * dy;
    return std::sqrt(std::norm(x) + std::norm(y));
}

namespace {

// |P|^2 + |Q|^2 + |R|^2 at the point; throws when the point is in
// sing(f), where all three vanish.
double triple_norm_sq(const Foliation& f, Cx x, Cx y) {
    const double d =
        std::norm(f.P.eval(x, y)) + std::norm(f.Q.eval(x, y)) + std::norm(f.R.eval(x, y));
    // The triple vanishes simultaneously only on sing(f); an exact (or
    // denormal) zero is the only reliable signal at unknown scale.
    if (!(d > 1e-300))
        throw SingularPoint("foliation metric: P, Q, R vanish at the point");
    return d;
}

} // namespace

double foliation_metric_norm_sq(const Foliation& f, Cx x, Cx y, Cx dx, Cx dy) {
    const int n = geometric_degree(f);
    const double s = 1.0 + std::norm(x) + std::norm(y);
    const double d = triple_norm_sq(f, x, y);
    return std::pow(s, n + 1) / d * fs_norm_sq(x, y, dx, dy);
}

double leaf_curvature(const Foliation& f, Cx x, Cx y) {
    const int n = geometric_degree(f);
    if (n == 1) {
        triple_norm_sq(f, x, y); // still refuse singular points
        return 0.0;
    }
    const double s = 1.0 + std::norm(x) + std::norm(y);
    return -2.0 * (n - 1) * triple_norm_sq(f, x, y) / std::pow(s, n + 1);
}

double curvature_fd_check(const Foliation& f, Cx x, Cx y, double step) {
    if (!(step > 0.0)) throw PreconditionError("curvature_fd_check: step must be positive");
    const int n = geometric_degree(f);
    triple_norm_sq(f, x, y);

    // log h at the endpoint of the complex-time flow T = 0 -> dir*step.
    auto log_h = [&](Cx dir) {
        std::vector<Cx> state{x, y};
        if (dir != Cx(0)) {
            OdeOptions opt;
            opt.rel_tol = 1e-12;
            opt.abs_tol = 1e-14;
            const Cx dt = dir * step;
            integrate_ode(
                [&](double, const std::vector<Cx>& z, std::vector<Cx>& out) {
                    out[0] = dt * f.P.eval(z[0], z[1]);
                    out[1] = dt * f.Q.eval(z[0], z[1]);
                },
                state, 0.0, 1.0, opt);
        }
        const double s = 1.0 + std::norm(state[0]) + std::norm(state[1]);
        return 0.5 * (n - 1) * std::log(s);
    };

    const double lap =
        (log_h(Cx(1)) + log_h(Cx(-1)) + log_h(Cx(0, 1)) + log_h(Cx(0, -1)) - 4.0 * log_h(Cx(0))) /
        (step * step);
    const double s0 = 1.0 + std::norm(x) + std::norm(y);
    const double h_sq = std::pow(s0, n - 1);
    return -lap / h_sq;
}

std::vector<CurvatureSample> curvature_grid(const Foliation& f, double half_width,
                                            int points_per_side, int jobs) {
    if (!(half_width > 0.0) || points_per_side < 2)
        throw PreconditionError("curvature_grid: bad grid parameters");
    const std::size_t total = static_cast<std::size_t>(points_per_side) * points_per_side;
    std::vector<CurvatureSample> slots(total);
    std::vector<char> keep(total, 0);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(total, jobs, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / points_per_side;
        const int j = static_cast<int>(idx) % points_per_side;
        const double gx = -half_width + 2.0 * half_width * i / (points_per_side - 1);
        const double gy = -half_width + 2.0 * half_width * j / (points_per_side - 1);
        try {
            slots[idx] = {Cx(gx), Cx(gy), leaf_curvature(f, Cx(gx), Cx(gy))};
            keep[idx] = 1;
        } catch (const SingularPoint&) {
            // grid node on sing(f): skipped
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    std::vector<CurvatureSample> out;
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx)
        if (keep[idx]) out.push_back(slots[idx]);
    return out;
}

std::string curvature_csv(const std::vector<CurvatureSample>& samples) {
    std::string out = "re x,im x,re y,im y,kappa\n";
    for (const auto& s : samples) {
        out += fmt17(s.x.real());
        out += ',';
        out += fmt17(s.x.imag());
        out += ',';
        out += fmt17(s.y.real());
        out += ',';
        out += fmt17(s.y.imag());
        out += ',';
        out += fmt17(s.kappa);
        out += '\n';
    }
    return out;
}

} // namespace cpfol
