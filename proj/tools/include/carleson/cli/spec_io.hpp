#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "carleson/admiss.hpp"
#include "carleson/measure.hpp"

namespace carleson::cli {

// Key:value text, one entry per line, '#' starts a comment.
//
//   kind: radial | halfplane | system
//   radial:     atom0: M | atom: AT M | power: LO HI COEFF ALPHA | table: R D R D ...
//   halfplane:  atom: RE IM M, and product blocks
//                 begin: product
//                 x.atom0 / x.atom / x.power / x.table   (as for radial)
//                 y.atom: AT M | y.uniform: LO HI DENSITY
//                 end: product
//   system:     q: Q, then mode: RE_LAMBDA IM_LAMBDA RE_B IM_B per mode
using Spec = std::variant<RadialMeasure, HalfPlaneMeasure, DiagonalSystem>;

Spec parse_spec(std::istream& in, const std::string& source = "<input>");
Spec parse_spec_text(const std::string& text, const std::string& source = "<input>");
Spec parse_spec_file(const std::string& path);

RadialMeasure expect_radial(const Spec& s, const std::string& source);
HalfPlaneMeasure expect_halfplane(const Spec& s, const std::string& source);
DiagonalSystem expect_system(const Spec& s, const std::string& source);

// Density components have no text form and are rejected.
std::string emit_spec(const Spec& s);

std::string format_double(double v);  // %.17g
std::string read_file(const std::string& path);
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace carleson::cli
