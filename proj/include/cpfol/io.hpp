#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpfol/foliation.hpp"
#include "cpfol/germ.hpp"

namespace cpfol {

// Input documents are JSON objects.  A foliation document lists the
// monomials of P and Q with x-power i and y-power j:
//   {"name": "f2",
//    "P": [{"i": 0, "j": 1, "re": 1.0, "im": 0.0}],
//    "Q": [{"i": 1, "j": 0, "re": 1.0, "im": 0.0}],
//    "x0": {"re": 3.5, "im": 0.0},   // optional leaf seed (trace)
//    "y0": {"re": 2.0, "im": 0.0}}
struct FoliationDoc {
    Foliation fol;
    std::optional<Cx> x0, y0;
};
FoliationDoc parse_foliation(const std::string& text);

// Serialization of the same shape; numbers carry 17 significant digits
// so parse(emit(f)) reproduces every coefficient bit-exactly.
std::string emit_foliation(const Foliation& f);

// {"coeff": [{"re":..,"im":..}, ...], "radius": 1.0} with coeff[k-1]
// the z^k jet coefficient; radius defaults to 1.
struct GermDoc {
    Jet jet;
    double radius = 1.0;
};
GermDoc parse_germ(const std::string& text);

// {"germs": [<germ object>, ...], "z0": {"re":..,"im":..},
//  "reference_radius": 1.0}
struct OrbitDoc {
    std::vector<GermWithRadius> germs;
    Cx z0;
    double reference_radius = 1.0;
};
OrbitDoc parse_orbit_doc(const std::string& text);

// {"generators": [{"re":..,"im":..}, ...]}
std::vector<Cx> parse_generators(const std::string& text);

} // namespace cpfol
