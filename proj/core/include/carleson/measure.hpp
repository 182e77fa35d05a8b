#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "carleson/numerics.hpp"

namespace carleson {

using cplx = std::complex<double>;

struct PointMass {
  double at = 0;
  double mass = 0;
  bool operator==(const PointMass&) const = default;
};

// coeff * r^alpha on [lo, hi); hi may be +inf.
struct PowerPiece {
  double lo = 0;
  double hi = num::kInf;
  double coeff = 1;
  double alpha = 0;
  bool operator==(const PowerPiece&) const = default;
};

// Density sampled at strictly increasing r, linear in between, supported on
// [r.front(), r.back()).
struct TabulatedPiece {
  std::vector<double> r;
  std::vector<double> density;
  bool operator==(const TabulatedPiece&) const = default;
};

// Positive measure on [0, inf).
struct RadialMeasure {
  double atom_at_zero = 0;
  std::vector<PointMass> atoms;
  std::vector<PowerPiece> powers;
  std::vector<TabulatedPiece> tables;

  bool operator==(const RadialMeasure&) const = default;

  void validate() const;
  double total_mass() const;
  bool empty() const;

  static RadialMeasure dirac_zero(double mass = 1);
  static RadialMeasure lebesgue(double hi = num::kInf);
  static RadialMeasure power_law(double alpha, double coeff = 1, double hi = num::kInf);
};

// Interval with explicit endpoint membership.
struct Span {
  double lo = 0;
  double hi = num::kInf;
  bool lo_closed = true;
  bool hi_closed = false;

  bool contains(double v) const;
  bool empty() const { return !(lo < hi) && !(lo == hi && lo_closed && hi_closed); }
  static Span half_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Span open(double lo, double hi) { return {lo, hi, false, false}; }
  static Span closed(double lo, double hi) { return {lo, hi, true, true}; }
};

// F(r) = nu([0, r)), left-continuous.
double radial_cdf(const RadialMeasure& nu, double r);
double radial_mass(const RadialMeasure& nu, const Span& span);
double integrate_radial(const RadialMeasure& nu, const std::function<double(double)>& g,
                        const Span& span = Span::half_open(0, num::kInf),
                        const std::vector<double>& breaks = {}, num::QuadOptions opt = {});
RadialMeasure restrict_radial(const RadialMeasure& nu, const Span& span);
RadialMeasure scale_radial(const RadialMeasure& nu, double c);

struct UniformPiece {
  double lo = 0;
  double hi = 0;
  double density = 1;
  bool operator==(const UniformPiece&) const = default;
};

// Measure on the imaginary axis direction: atoms plus piecewise-constant density.
struct LineMeasure {
  std::vector<PointMass> atoms;
  std::vector<UniformPiece> pieces;

  bool operator==(const LineMeasure&) const = default;

  void validate() const;
  static LineMeasure uniform(double lo, double hi, double density = 1);
  static LineMeasure point(double y, double mass = 1);
};

double line_mass(const LineMeasure& m, const Span& span);
double integrate_line_measure(const LineMeasure& m, const std::function<double(double)>& g,
                              const Span& span = {-num::kInf, num::kInf, false, false},
                              const std::vector<double>& breaks = {}, num::QuadOptions opt = {});
LineMeasure restrict_line(const LineMeasure& m, const Span& span);

struct Atom {
  cplx z;
  double mass = 0;
  bool operator==(const Atom&) const = default;
};

// x-profile (tensor) y-profile.
struct ProductComponent {
  RadialMeasure x;
  LineMeasure y;
  bool operator==(const ProductComponent&) const = default;
};

// Density rho(x, y) on the bounded box [x_lo, x_hi) x [y_lo, y_hi).
struct DensityComponent {
  std::function<double(double, double)> rho;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
};

struct Box {
  Span x;
  Span y;
};

// Positive measure on the closed right half-plane.
struct HalfPlaneMeasure {
  std::vector<Atom> atoms;
  std::vector<ProductComponent> products;
  std::vector<DensityComponent> densities;

  void validate() const;
  bool is_atomic() const { return products.empty() && densities.empty(); }
  bool empty() const { return atoms.empty() && products.empty() && densities.empty(); }
  double total_mass() const;

  static HalfPlaneMeasure from_atoms(std::vector<Atom> atoms);
  // nu-tilde (tensor) Lebesgue, restricted to y in [y_lo, y_hi).
  static HalfPlaneMeasure materialize(const RadialMeasure& nu, double y_lo, double y_hi);
  // coeff * x^alpha dx on the horizontal ray {x + i y : x in [lo, hi)}.
  static HalfPlaneMeasure axis_power(double lo, double hi, double coeff, double alpha,
                                     double y = 0);
};

bool same_measure(const HalfPlaneMeasure& a, const HalfPlaneMeasure& b);

double box_mass(const HalfPlaneMeasure& mu, const Box& box);
double integrate_measure(const HalfPlaneMeasure& mu, const std::function<double(cplx)>& g,
                         num::QuadOptions opt = {});

HalfPlaneMeasure scale_measure(const HalfPlaneMeasure& mu, double c);
HalfPlaneMeasure restrict_measure(const HalfPlaneMeasure& mu, const Box& box);
HalfPlaneMeasure translate_measure(const HalfPlaneMeasure& mu, double dy);
HalfPlaneMeasure add_measures(const HalfPlaneMeasure& a, const HalfPlaneMeasure& b);
// w(z) dmu(z). Atoms and density boxes are exact; product components must be
// absolutely continuous in both factors with bounded support.
HalfPlaneMeasure reweight_measure(const HalfPlaneMeasure& mu, const std::function<double(cplx)>& w);

struct Extent {
  double x_min = num::kInf, x_max = -num::kInf;
  double y_min = num::kInf, y_max = -num::kInf;
  bool empty() const { return x_min > x_max; }
};
Extent support_extent(const HalfPlaneMeasure& mu);

// Q = {0 < x < side, |y - center_y| < side / 2}.
struct CarlesonSquare {
  double center_y = 0;
  double side = 1;
  bool operator==(const CarlesonSquare&) const = default;
  // With count_boundary the closed edge x = 0 is included.
  Box box(bool count_boundary = true) const;
};

double square_mass(const HalfPlaneMeasure& mu, const CarlesonSquare& q, bool count_boundary = true);
// nu(Q) = |I| F(|I|) for nu = nu-tilde (tensor) Lebesgue.
double product_square_mass(const RadialMeasure& nu, const CarlesonSquare& q);

struct DoublingInfo {
  double R = 1;
  std::vector<double> grid;
  double sup_location = 0;
  bool exceeds_cap = false;
};

std::vector<double> default_probe_grid();
DoublingInfo doubling_constant(const RadialMeasure& nu, const std::vector<double>& probe_grid,
                               double cap = 1e8);
double inverse_doubling_infimum(const RadialMeasure& nu, double M,
                                const std::vector<double>& probe_grid);

using Gauge = std::function<double(double)>;
Gauge linear_gauge();
Gauge power_gauge(double s);
Gauge zen_gauge(const RadialMeasure& nu);

using SquareFamily = std::vector<CarlesonSquare>;
SquareFamily grid_family(const std::vector<double>& centers, const std::vector<double>& sides);
// Per side: centres that put an atom just inside either edge, the atom itself,
// plus a uniform sweep across the support. For atoms this attains the per-side sup.
SquareFamily adapted_family(const HalfPlaneMeasure& mu, const std::vector<double>& sides,
                            int uniform_centers = 16);
// Only squares centred at y = 0.
SquareFamily symmetric_family(const std::vector<double>& sides);
// Geometric sides spanning the scales of mu's support.
std::vector<double> default_sides(const HalfPlaneMeasure& mu, int per_octave = 4);

struct RatioSup {
  double constant = 0;
  std::optional<CarlesonSquare> witness;
  std::vector<double> ratios;
};

// Grid sup of mu(Q) / gauge(|I|): a lower bound for the sup over all squares.
RatioSup carleson_ratio_sup(const HalfPlaneMeasure& mu, const Gauge& gauge,
                            const SquareFamily& family, bool count_boundary = true);

}  // namespace carleson
