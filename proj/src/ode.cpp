#include "cpfol/ode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace cpfol {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order weights for the error estimate.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

} // namespace

void integrate_ode(const OdeFun& f, std::vector<Cx>& y, double t0, double t1,
                   const OdeOptions& opt, OdeStats* stats) {
    const std::size_t n = y.size();
    const double span = t1 - t0;
    if (span == 0.0) return;
    OdeStats local;
    OdeStats& st = stats ? *stats : local;

    std::vector<Cx> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    double t = t0;
    double h = (opt.fixed_step > 0.0 ? opt.fixed_step : opt.h_init_frac) * span;
    const double hmin = opt.h_min_frac * std::abs(span);
    bool have_k1 = false;

    int iter = 0;
    while ((span > 0.0) ? (t < t1) : (t > t1)) {
        if (++iter > opt.max_steps) {
            throw ToleranceNotMet("integrate_ode: step budget exhausted");
        }
        if ((span > 0.0) ? (t + h > t1) : (t + h < t1)) h = t1 - t;
        if (!have_k1) {
            f(t, y, k1);
            have_k1 = true;
        }
        auto stage = [&](double frac, std::vector<Cx>& out,
                         std::initializer_list<std::pair<double, const std::vector<Cx>*>> terms) {
            for (std::size_t i = 0; i < n; ++i) {
                Cx acc(0.0);
                for (const auto& [w, k] : terms) acc += w * (*k)[i];
                ytmp[i] = y[i] + h * acc;
            }
            f(t + frac * h, ytmp, out);
        };
        stage(c2, k2, {{a21, &k1}});
        stage(c3, k3, {{a31, &k1}, {a32, &k2}});
        stage(c4, k4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        stage(c5, k5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        stage(1.0, k6, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        for (std::size_t i = 0; i < n; ++i) {
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        }
        f(t + h, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Cx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(e) / sc;
            err = std::max(err, r);
        }
        if (!std::isfinite(err)) err = 1e10;

        if (opt.fixed_step > 0.0 || err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7; // first-same-as-last
            ++st.steps;
            st.max_err_ratio = std::max(st.max_err_ratio, err);
            if (opt.fixed_step <= 0.0) {
                const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            }
        } else {
            ++st.rejected;
            have_k1 = true; // k1 still valid at unchanged t
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
            if (std::abs(h) < hmin) {
                throw StepUnderflow("integrate_ode: step size underflow");
            }
        }
    }
}

namespace {

// 15-point Kronrod nodes on [0,1]-half (positive abscissae) and the
// embedded 7-point Gauss weights.
constexpr double xgk[8] = {0.991455371120812639206854697526329,
                           0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926,
                           0.741531185599394439863864773280788,
                           0.586087235467691130294144838258730,
                           0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970,
                           0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518,
                           0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550,
                           0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649,
                           0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082,
                          0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975,
                          0.417959183673469387755102040816327};

struct GkEstimate {
    Cx kronrod;
    double err;
};

GkEstimate gk15(const std::function<Cx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Cx resg(0.0), resk(0.0);
    const Cx fc = f(mid);
    resk += wgk[7] * fc;
    resg += wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const Cx lo = f(mid - half * xgk[i]);
        const Cx hi = f(mid + half * xgk[i]);
        resk += wgk[i] * (lo + hi);
        if (i % 2 == 1) resg += wg[i / 2] * (lo + hi);
    }
    return {resk * half, std::abs(resk - resg) * std::abs(half)};
}

Cx gk_adaptive(const std::function<Cx(double)>& f, double a, double b, double tol, int depth,
               int max_depth) {
    const GkEstimate e = gk15(f, a, b);
    if (e.err <= tol || depth >= max_depth) {
        if (e.err > tol) throw ToleranceNotMet("integrate_gk: refinement depth exhausted");
        return e.kronrod;
    }
    const double mid = 0.5 * (a + b);
    return gk_adaptive(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           gk_adaptive(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

Cx integrate_gk(const std::function<Cx(double)>& f, double a, double b, double rel_tol,
                double abs_tol, int max_depth) {
    const GkEstimate whole = gk15(f, a, b);
    const double tol = abs_tol + rel_tol * std::abs(whole.kronrod);
    if (whole.err <= tol) return whole.kronrod;
    const double mid = 0.5 * (a + b);
    return gk_adaptive(f, a, mid, 0.5 * tol, 1, max_depth) +
           gk_adaptive(f, mid, b, 0.5 * tol, 1, max_depth);
}

const std::vector<std::pair<double, double>>& gauss_legendre_01(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::pair<double, double>> nw;
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess on [-1, 1].
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            // Legendre P_n(x) and derivative by recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nw.push_back({0.5 * (x + 1.0), 0.5 * w}); // map to [0,1]
    }
    std::sort(nw.begin(), nw.end());
    return cache[n] = std::move(nw);
}

} // namespace cpfol
