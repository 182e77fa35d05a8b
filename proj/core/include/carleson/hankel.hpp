#pragma once

#include <string>
#include <vector>

#include "carleson/embed.hpp"
#include "carleson/measure.hpp"

namespace carleson {

struct SymbolTerm {
  enum class Kind { Constant, Linear, Log, Pole };
  Kind kind = Kind::Constant;
  cplx c{1, 0};
  cplx a{1, 0};  // Log: c log(z + a); Pole: c / (z + a)^m. Needs Re a >= 0.
  int m = 1;
};

// b = sum of terms; b' is exact.
struct Symbol {
  std::vector<SymbolTerm> terms;
  void validate() const;
  cplx value(cplx z) const;
  cplx derivative(cplx z) const;
  bool is_constant() const;
};

// "log1p", "z", "inv1p", "const:c", "lin:c", "log:c:a", "pole:c:a:m", joined with '+'.
Symbol parse_symbol(const std::string& text);
std::string format_symbol(const Symbol& b);

// Region where the symbol-induced measure is sampled.
struct HankelWindow {
  double x_hi = 64;
  double y_lo = -64, y_hi = 64;
};

// |b'(z)|^2 Re z F(Re z) dA(z) restricted to the window.
HalfPlaneMeasure hankel_measure(const Symbol& b, const RadialMeasure& nu, const HankelWindow& w = {});

EmbeddingVerdict check_hankel_bounded(const Symbol& b, const RadialMeasure& nu, const HankelWindow& w = {},
                                      const GridOptions& opt = {});

struct BlochResult {
  double value = 0;
  cplx witness{0, 0};
  bool exceeds_cap = false;
};

struct BlochGrid {
  double x_lo = 0x1p-20, x_hi = 0x1p20;
  int per_octave = 4;
  std::vector<double> y{0.0};  // offsets sampled at every x, besides +-x and +-2x
  double cap = 1e6;
};

// grid sup of |b'(z)| Re z
BlochResult bloch_norm(const Symbol& b, const BlochGrid& grid = {});

struct LogIntegralBound {
  double sup_ratio = 0;  // sup_x int_0^x F(s)/s ds / F(x)
  double witness_x = 0;
  double predicted = 0;  // gamma (M - 1) / (gamma - 1)
  double gamma = 0;
  double M = 2;
};

// Throws InverseDoublingFails when inf_r F(M r) / F(r) <= 1 on the probe grid.
LogIntegralBound log_integral_bound(const RadialMeasure& nu, const std::vector<double>& x_grid, double M = 2);

}  // namespace carleson
