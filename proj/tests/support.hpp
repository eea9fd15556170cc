#pragma once

// Shared helpers for the test binaries: approximate comparisons and
// deterministic random generation of polynomials and foliations.

#include <cmath>
#include <complex>
#include <vector>

#include "cpfol/poly.hpp"
#include "cpfol/util.hpp"

namespace testutil {

using cpfol::Cx;
using cpfol::Poly1;
using cpfol::Poly2;
using cpfol::Rng;

inline bool close(Cx a, Cx b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(Cx a, Cx b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Dense random polynomial of total degree exactly d (top coefficient
// kept away from zero so the degree is unambiguous).
inline Poly2 random_poly2(Rng& rng, int d, double box = 1.0) {
    Poly2 p;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
            p.add_term(i, j, rng.complex_in_box(box));
        }
    }
    Cx top = rng.complex_in_box(box);
    while (std::abs(top) < 0.2 * box) top = rng.complex_in_box(box);
    p.add_term(d, 0, top - p.coeff(d, 0));
    return p;
}

inline Poly1 poly1_from_roots(const std::vector<std::pair<Cx, int>>& planted, Cx lead = Cx(1.0)) {
    Poly1 p{lead};
    for (const auto& [z, mult] : planted) {
        for (int k = 0; k < mult; ++k) p = p * Poly1{-z, Cx(1.0)};
    }
    return p;
}

inline double max_coeff_diff(const Poly2& a, const Poly2& b) {
    double m = 0.0;
    const Poly2 d = a - b;
    for (const auto& [key, c] : d.terms()) m = std::max(m, std::abs(c));
    return m;
}

} // namespace testutil
