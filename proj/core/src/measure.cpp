#include "carleson/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

double power_mass(const PowerPiece& p, double a, double b) {
  a = std::max(a, p.lo);
  b = std::min(b, p.hi);
  if (!(b > a)) return 0.0;
  const double e = p.alpha + 1;
  if (e == 0) return p.coeff * std::log(b / a);
  if (std::isinf(b)) return e < 0 ? p.coeff * std::pow(a, e) / (-e) : kInf;
  return p.coeff * (std::pow(b, e) - std::pow(a, e)) / e;
}

double lerp_density(const TabulatedPiece& t, std::size_t i, double r) {
  const double w = (r - t.r[i]) / (t.r[i + 1] - t.r[i]);
  return t.density[i] + w * (t.density[i + 1] - t.density[i]);
}

double table_mass(const TabulatedPiece& t, double a, double b) {
  double m = 0;
  for (std::size_t i = 0; i + 1 < t.r.size(); ++i) {
    const double lo = std::max(a, t.r[i]), hi = std::min(b, t.r[i + 1]);
    if (!(hi > lo)) continue;
    m += 0.5 * (hi - lo) * (lerp_density(t, i, lo) + lerp_density(t, i, hi));
  }
  return m;
}

TabulatedPiece clip_table(const TabulatedPiece& t, double a, double b) {
  TabulatedPiece out;
  for (std::size_t i = 0; i + 1 < t.r.size(); ++i) {
    const double lo = std::max(a, t.r[i]), hi = std::min(b, t.r[i + 1]);
    if (!(hi > lo)) continue;
    if (out.r.empty()) {
      out.r.push_back(lo);
      out.density.push_back(lerp_density(t, i, lo));
    }
    out.r.push_back(hi);
    out.density.push_back(lerp_density(t, i, hi));
  }
  return out;
}

std::vector<double> clip_breaks(const std::vector<double>& breaks, double a, double b) {
  std::vector<double> out;
  for (double x : breaks)
    if (x > a && x < b) out.push_back(x);
  return out;
}

// Sorted (lo, hi) supports of the continuous pieces, for the disjointness check.
void check_disjoint(std::vector<std::pair<double, double>> sup, const char* what) {
  std::sort(sup.begin(), sup.end());
  for (std::size_t i = 0; i + 1 < sup.size(); ++i)
    require(sup[i].second <= sup[i + 1].first, std::string(what) + ": density pieces overlap");
}

}  // namespace

// ---------------------------------------------------------------- Span

bool Span::contains(double v) const {
  const bool above = lo_closed ? v >= lo : v > lo;
  const bool below = hi_closed ? v <= hi : v < hi;
  return above && below;
}

// ---------------------------------------------------------------- RadialMeasure

void RadialMeasure::validate() const {
  require(atom_at_zero >= 0 && std::isfinite(atom_at_zero), "atom_at_zero must be finite and >= 0");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require(atoms[i].at > 0 && std::isfinite(atoms[i].at), "radial atom location must be > 0");
    require(atoms[i].mass >= 0 && std::isfinite(atoms[i].mass), "radial atom mass must be >= 0");
    if (i > 0) require(atoms[i - 1].at < atoms[i].at, "radial atoms must be strictly ordered");
  }
  std::vector<std::pair<double, double>> sup;
  for (const auto& p : powers) {
    require(p.lo >= 0 && p.lo < p.hi, "power piece needs 0 <= lo < hi");
    require(p.coeff >= 0 && std::isfinite(p.coeff), "power coefficient must be >= 0");
    require(std::isfinite(p.alpha), "power exponent must be finite");
    if (p.lo == 0) require(p.alpha > -1, "power piece touching 0 needs alpha > -1");
    sup.emplace_back(p.lo, p.hi);
  }
  for (const auto& t : tables) {
    require(t.r.size() >= 2 && t.r.size() == t.density.size(), "table needs >= 2 samples");
    require(t.r.front() >= 0, "table must start at r >= 0");
    for (std::size_t i = 0; i < t.r.size(); ++i) {
      require(t.density[i] >= 0 && std::isfinite(t.density[i]), "table density must be >= 0");
      if (i > 0) require(t.r[i - 1] < t.r[i], "table radii must increase");
    }
    sup.emplace_back(t.r.front(), t.r.back());
  }
  check_disjoint(sup, "radial measure");
}

double RadialMeasure::total_mass() const { return radial_mass(*this, Span::half_open(0, kInf)); }

bool RadialMeasure::empty() const {
  return atom_at_zero == 0 && atoms.empty() && powers.empty() && tables.empty();
}

RadialMeasure RadialMeasure::dirac_zero(double mass) {
  RadialMeasure m;
  m.atom_at_zero = mass;
  return m;
}

RadialMeasure RadialMeasure::lebesgue(double hi) { return power_law(0.0, 1.0, hi); }

RadialMeasure RadialMeasure::power_law(double alpha, double coeff, double hi) {
  RadialMeasure m;
  m.powers.push_back({0.0, hi, coeff, alpha});
  m.validate();
  return m;
}

double radial_cdf(const RadialMeasure& nu, double r) {
  require(r >= 0, "radial_cdf needs r >= 0");
  return radial_mass(nu, Span::half_open(0, r));
}

double radial_mass(const RadialMeasure& nu, const Span& span) {
  double m = 0;
  if (span.contains(0)) m += nu.atom_at_zero;
  for (const auto& a : nu.atoms)
    if (span.contains(a.at)) m += a.mass;
  for (const auto& p : nu.powers) m += power_mass(p, span.lo, span.hi);
  for (const auto& t : nu.tables) m += table_mass(t, span.lo, span.hi);
  return m;
}

double integrate_radial(const RadialMeasure& nu, const std::function<double(double)>& g,
                        const Span& span, const std::vector<double>& breaks,
                        num::QuadOptions opt) {
  double s = 0;
  if (span.contains(0) && nu.atom_at_zero > 0) s += nu.atom_at_zero * g(0.0);
  for (const auto& a : nu.atoms)
    if (span.contains(a.at) && a.mass > 0) s += a.mass * g(a.at);
  for (const auto& p : nu.powers) {
    const double lo = std::max(span.lo, p.lo), hi = std::min(span.hi, p.hi);
    if (!(hi > lo) || p.coeff == 0) continue;
    auto h = [&](double r) { return g(r) * p.coeff * std::pow(r, p.alpha); };
    if (p.alpha < 0 && lo == 0) {
      const double mid = std::min(hi, 1.0);
      s += num::integrate_singular(h, 0.0, mid, opt);
      if (hi > mid) s += num::integrate(h, mid, hi, clip_breaks(breaks, mid, hi), opt);
    } else {
      s += num::integrate(h, lo, hi, clip_breaks(breaks, lo, hi), opt);
    }
  }
  for (const auto& t : nu.tables) {
    for (std::size_t i = 0; i + 1 < t.r.size(); ++i) {
      const double lo = std::max(span.lo, t.r[i]), hi = std::min(span.hi, t.r[i + 1]);
      if (!(hi > lo)) continue;
      auto h = [&](double r) { return g(r) * lerp_density(t, i, r); };
      s += num::integrate(h, lo, hi, clip_breaks(breaks, lo, hi), opt);
    }
  }
  return s;
}

RadialMeasure restrict_radial(const RadialMeasure& nu, const Span& span) {
  RadialMeasure out;
  if (span.contains(0)) out.atom_at_zero = nu.atom_at_zero;
  for (const auto& a : nu.atoms)
    if (span.contains(a.at)) out.atoms.push_back(a);
  for (const auto& p : nu.powers) {
    const double lo = std::max(span.lo, p.lo), hi = std::min(span.hi, p.hi);
    if (hi > lo) out.powers.push_back({lo, hi, p.coeff, p.alpha});
  }
  for (const auto& t : nu.tables) {
    TabulatedPiece c = clip_table(t, span.lo, span.hi);
    if (c.r.size() >= 2) out.tables.push_back(std::move(c));
  }
  return out;
}

RadialMeasure scale_radial(const RadialMeasure& nu, double c) {
  RadialMeasure out = nu;
  out.atom_at_zero *= c;
  for (auto& a : out.atoms) a.mass *= c;
  for (auto& p : out.powers) p.coeff *= c;
  for (auto& t : out.tables)
    for (auto& d : t.density) d *= c;
  return out;
}

// ---------------------------------------------------------------- LineMeasure

void LineMeasure::validate() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require(std::isfinite(atoms[i].at), "line atom location must be finite");
    require(atoms[i].mass >= 0 && std::isfinite(atoms[i].mass), "line atom mass must be >= 0");
    if (i > 0) require(atoms[i - 1].at < atoms[i].at, "line atoms must be strictly ordered");
  }
  std::vector<std::pair<double, double>> sup;
  for (const auto& p : pieces) {
    require(std::isfinite(p.lo) && std::isfinite(p.hi) && p.lo < p.hi,
            "uniform piece needs finite lo < hi");
    require(p.density >= 0 && std::isfinite(p.density), "uniform density must be >= 0");
    sup.emplace_back(p.lo, p.hi);
  }
  check_disjoint(sup, "line measure");
}

LineMeasure LineMeasure::uniform(double lo, double hi, double density) {
  LineMeasure m;
  m.pieces.push_back({lo, hi, density});
  m.validate();
  return m;
}

LineMeasure LineMeasure::point(double y, double mass) {
  LineMeasure m;
  m.atoms.push_back({y, mass});
  return m;
}

double line_mass(const LineMeasure& m, const Span& span) {
  double s = 0;
  for (const auto& a : m.atoms)
    if (span.contains(a.at)) s += a.mass;
  for (const auto& p : m.pieces) {
    const double lo = std::max(span.lo, p.lo), hi = std::min(span.hi, p.hi);
    if (hi > lo) s += p.density * (hi - lo);
  }
  return s;
}

double integrate_line_measure(const LineMeasure& m, const std::function<double(double)>& g,
                              const Span& span, const std::vector<double>& breaks,
                              num::QuadOptions opt) {
  double s = 0;
  for (const auto& a : m.atoms)
    if (span.contains(a.at) && a.mass > 0) s += a.mass * g(a.at);
  for (const auto& p : m.pieces) {
    const double lo = std::max(span.lo, p.lo), hi = std::min(span.hi, p.hi);
    if (!(hi > lo) || p.density == 0) continue;
    s += p.density * num::integrate(g, lo, hi, clip_breaks(breaks, lo, hi), opt);
  }
  return s;
}

LineMeasure restrict_line(const LineMeasure& m, const Span& span) {
  LineMeasure out;
  for (const auto& a : m.atoms)
    if (span.contains(a.at)) out.atoms.push_back(a);
  for (const auto& p : m.pieces) {
    const double lo = std::max(span.lo, p.lo), hi = std::min(span.hi, p.hi);
    if (hi > lo) out.pieces.push_back({lo, hi, p.density});
  }
  return out;
}

// ---------------------------------------------------------------- HalfPlaneMeasure

void HalfPlaneMeasure::validate() const {
  for (const auto& a : atoms) {
    require(std::isfinite(a.z.real()) && std::isfinite(a.z.imag()), "atom location must be finite");
    require(a.z.real() >= 0, "atom must lie in the closed right half-plane");
    require(a.mass > 0 && std::isfinite(a.mass), "atom mass must be > 0");
  }
  for (const auto& p : products) {
    p.x.validate();
    p.y.validate();
  }
  for (const auto& d : densities) {
    require(bool(d.rho), "density component needs a density");
    require(d.x_lo >= 0 && d.x_lo < d.x_hi && std::isfinite(d.x_hi), "density box x-range invalid");
    require(d.y_lo < d.y_hi && std::isfinite(d.y_lo) && std::isfinite(d.y_hi),
            "density box y-range invalid");
  }
}

double HalfPlaneMeasure::total_mass() const {
  return box_mass(*this, Box{Span::half_open(0, kInf), Span::open(-kInf, kInf)});
}

HalfPlaneMeasure HalfPlaneMeasure::from_atoms(std::vector<Atom> atoms) {
  HalfPlaneMeasure m;
  m.atoms = std::move(atoms);
  m.validate();
  return m;
}

HalfPlaneMeasure HalfPlaneMeasure::materialize(const RadialMeasure& nu, double y_lo, double y_hi) {
  HalfPlaneMeasure m;
  m.products.push_back({nu, LineMeasure::uniform(y_lo, y_hi)});
  m.validate();
  return m;
}

HalfPlaneMeasure HalfPlaneMeasure::axis_power(double lo, double hi, double coeff, double alpha,
                                              double y) {
  HalfPlaneMeasure m;
  RadialMeasure x;
  x.powers.push_back({lo, hi, coeff, alpha});
  m.products.push_back({x, LineMeasure::point(y)});
  m.validate();
  return m;
}

bool same_measure(const HalfPlaneMeasure& a, const HalfPlaneMeasure& b) {
  return a.densities.empty() && b.densities.empty() && a.atoms == b.atoms &&
         a.products == b.products;
}

double box_mass(const HalfPlaneMeasure& mu, const Box& box) {
  std::vector<double> parts;
  for (const auto& a : mu.atoms)
    if (box.x.contains(a.z.real()) && box.y.contains(a.z.imag())) parts.push_back(a.mass);
  double s = num::pairwise_sum(parts);
  for (const auto& p : mu.products) {
    const double mx = radial_mass(p.x, box.x);
    if (mx == 0) continue;
    const double my = line_mass(p.y, box.y);
    if (my == 0) continue;
    s += mx * my;
  }
  for (const auto& d : mu.densities) {
    const double x0 = std::max(d.x_lo, box.x.lo), x1 = std::min(d.x_hi, box.x.hi);
    const double y0 = std::max(d.y_lo, box.y.lo), y1 = std::min(d.y_hi, box.y.hi);
    if (!(x1 > x0) || !(y1 > y0)) continue;
    s += num::integrate(
        [&](double x) {
          return num::integrate([&](double y) { return d.rho(x, y); }, y0, y1);
        },
        x0, x1);
  }
  return s;
}

double integrate_measure(const HalfPlaneMeasure& mu, const std::function<double(cplx)>& g,
                         num::QuadOptions opt) {
  std::vector<double> parts;
  parts.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) parts.push_back(a.mass * g(a.z));
  double s = num::pairwise_sum(parts);
  for (const auto& p : mu.products) {
    s += integrate_radial(
        p.x,
        [&](double x) {
          return integrate_line_measure(p.y, [&](double y) { return g(cplx(x, y)); },
                                        Span::open(-kInf, kInf), {}, opt);
        },
        Span::half_open(0, kInf), {}, opt);
  }
  for (const auto& d : mu.densities) {
    s += num::integrate(
        [&](double x) {
          return num::integrate([&](double y) { return d.rho(x, y) * g(cplx(x, y)); }, d.y_lo,
                                d.y_hi, {}, opt);
        },
        d.x_lo, d.x_hi, {}, opt);
  }
  return s;
}

HalfPlaneMeasure scale_measure(const HalfPlaneMeasure& mu, double c) {
  require(c >= 0, "scale factor must be >= 0");
  HalfPlaneMeasure out;
  if (c == 0) return out;
  out.atoms = mu.atoms;
  for (auto& a : out.atoms) a.mass *= c;
  for (const auto& p : mu.products) out.products.push_back({scale_radial(p.x, c), p.y});
  for (const auto& d : mu.densities) {
    DensityComponent e = d;
    auto rho = d.rho;
    e.rho = [rho, c](double x, double y) { return c * rho(x, y); };
    out.densities.push_back(std::move(e));
  }
  return out;
}

HalfPlaneMeasure restrict_measure(const HalfPlaneMeasure& mu, const Box& box) {
  HalfPlaneMeasure out;
  for (const auto& a : mu.atoms)
    if (box.x.contains(a.z.real()) && box.y.contains(a.z.imag())) out.atoms.push_back(a);
  for (const auto& p : mu.products) {
    ProductComponent q{restrict_radial(p.x, box.x), restrict_line(p.y, box.y)};
    if (!q.x.empty() && (!q.y.atoms.empty() || !q.y.pieces.empty()))
      out.products.push_back(std::move(q));
  }
  for (const auto& d : mu.densities) {
    DensityComponent e = d;
    e.x_lo = std::max(d.x_lo, box.x.lo);
    e.x_hi = std::min(d.x_hi, box.x.hi);
    e.y_lo = std::max(d.y_lo, box.y.lo);
    e.y_hi = std::min(d.y_hi, box.y.hi);
    if (e.x_hi > e.x_lo && e.y_hi > e.y_lo) out.densities.push_back(std::move(e));
  }
  return out;
}

HalfPlaneMeasure translate_measure(const HalfPlaneMeasure& mu, double dy) {
  HalfPlaneMeasure out = mu;
  for (auto& a : out.atoms) a.z += cplx(0, dy);
  for (auto& p : out.products) {
    for (auto& a : p.y.atoms) a.at += dy;
    for (auto& u : p.y.pieces) {
      u.lo += dy;
      u.hi += dy;
    }
  }
  for (auto& d : out.densities) {
    auto rho = d.rho;
    d.rho = [rho, dy](double x, double y) { return rho(x, y - dy); };
    d.y_lo += dy;
    d.y_hi += dy;
  }
  return out;
}

HalfPlaneMeasure add_measures(const HalfPlaneMeasure& a, const HalfPlaneMeasure& b) {
  HalfPlaneMeasure out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  out.products.insert(out.products.end(), b.products.begin(), b.products.end());
  out.densities.insert(out.densities.end(), b.densities.begin(), b.densities.end());
  return out;
}

HalfPlaneMeasure reweight_measure(const HalfPlaneMeasure& mu,
                                  const std::function<double(cplx)>& w) {
  HalfPlaneMeasure out;
  for (const auto& a : mu.atoms) {
    const double m = a.mass * w(a.z);
    if (m > 0) out.atoms.push_back({a.z, m});
  }
  for (const auto& p : mu.products) {
    require(p.x.atom_at_zero == 0 && p.x.atoms.empty() && p.x.tables.empty() && p.y.atoms.empty(),
            "reweighting needs power-law x-density and uniform y-density");
    for (const auto& px : p.x.powers) {
      require(std::isfinite(px.hi), "reweighting needs bounded support");
      for (const auto& py : p.y.pieces) {
        DensityComponent d;
        d.x_lo = px.lo;
        d.x_hi = px.hi;
        d.y_lo = py.lo;
        d.y_hi = py.hi;
        const double c = px.coeff * py.density, al = px.alpha;
        d.rho = [c, al, w](double x, double y) { return c * std::pow(x, al) * w(cplx(x, y)); };
        out.densities.push_back(std::move(d));
      }
    }
  }
  for (const auto& d : mu.densities) {
    DensityComponent e = d;
    auto rho = d.rho;
    e.rho = [rho, w](double x, double y) { return rho(x, y) * w(cplx(x, y)); };
    out.densities.push_back(std::move(e));
  }
  return out;
}

Extent support_extent(const HalfPlaneMeasure& mu) {
  Extent e;
  auto grow_x = [&](double lo, double hi) {
    e.x_min = std::min(e.x_min, lo);
    e.x_max = std::max(e.x_max, hi);
  };
  auto grow_y = [&](double lo, double hi) {
    e.y_min = std::min(e.y_min, lo);
    e.y_max = std::max(e.y_max, hi);
  };
  for (const auto& a : mu.atoms) {
    grow_x(a.z.real(), a.z.real());
    grow_y(a.z.imag(), a.z.imag());
  }
  for (const auto& p : mu.products) {
    if (p.x.atom_at_zero > 0) grow_x(0, 0);
    for (const auto& a : p.x.atoms) grow_x(a.at, a.at);
    for (const auto& q : p.x.powers) grow_x(q.lo, q.hi);
    for (const auto& t : p.x.tables) grow_x(t.r.front(), t.r.back());
    for (const auto& a : p.y.atoms) grow_y(a.at, a.at);
    for (const auto& u : p.y.pieces) grow_y(u.lo, u.hi);
  }
  for (const auto& d : mu.densities) {
    grow_x(d.x_lo, d.x_hi);
    grow_y(d.y_lo, d.y_hi);
  }
  return e;
}

// ---------------------------------------------------------------- squares

Box CarlesonSquare::box(bool count_boundary) const {
  return Box{Span{0.0, side, count_boundary, false},
             Span::open(center_y - 0.5 * side, center_y + 0.5 * side)};
}

double square_mass(const HalfPlaneMeasure& mu, const CarlesonSquare& q, bool count_boundary) {
  return box_mass(mu, q.box(count_boundary));
}

double product_square_mass(const RadialMeasure& nu, const CarlesonSquare& q) {
  return q.side * radial_cdf(nu, q.side);
}

// ---------------------------------------------------------------- doubling

std::vector<double> default_probe_grid() {
  return num::geometric_grid(std::ldexp(1.0, -20), std::ldexp(1.0, 20), std::pow(2.0, 0.25));
}

DoublingInfo doubling_constant(const RadialMeasure& nu, const std::vector<double>& probe_grid,
                               double cap) {
  require(!probe_grid.empty(), "probe grid is empty");
  DoublingInfo info;
  info.grid = probe_grid;
  info.R = 1;
  info.sup_location = probe_grid.front();
  double best = -1;
  for (double t : probe_grid) {
    const double f = radial_cdf(nu, t);
    if (!(f > 0))
      throw Error(ErrorKind::ZeroMassNearOrigin, "F(t) = 0 at t = " + std::to_string(t));
    const double ratio = radial_cdf(nu, 2 * t) / f;
    if (ratio > best) {
      best = ratio;
      info.sup_location = t;
    }
  }
  info.R = std::max(1.0, best);
  info.exceeds_cap = !(info.R <= cap);
  return info;
}

double inverse_doubling_infimum(const RadialMeasure& nu, double M,
                                const std::vector<double>& probe_grid) {
  require(M > 1, "inverse doubling needs M > 1");
  require(!probe_grid.empty(), "probe grid is empty");
  double best = kInf;
  for (double r : probe_grid) {
    const double f = radial_cdf(nu, r);
    if (!(f > 0))
      throw Error(ErrorKind::ZeroMassNearOrigin, "F(r) = 0 at r = " + std::to_string(r));
    best = std::min(best, radial_cdf(nu, M * r) / f);
  }
  return best;
}

// ---------------------------------------------------------------- sup over squares

Gauge linear_gauge() {
  return [](double s) { return s; };
}

Gauge power_gauge(double e) {
  return [e](double s) { return e == 0 ? 1.0 : std::pow(s, e); };
}

Gauge zen_gauge(const RadialMeasure& nu) {
  return [nu](double s) { return s * radial_cdf(nu, s); };
}

SquareFamily grid_family(const std::vector<double>& centers, const std::vector<double>& sides) {
  SquareFamily f;
  f.reserve(centers.size() * sides.size());
  for (double s : sides)
    for (double c : centers) f.push_back({c, s});
  return f;
}

SquareFamily symmetric_family(const std::vector<double>& sides) {
  return grid_family({0.0}, sides);
}

SquareFamily adapted_family(const HalfPlaneMeasure& mu, const std::vector<double>& sides,
                            int uniform_centers) {
  const Extent e = support_extent(mu);
  std::vector<double> anchors;
  for (const auto& a : mu.atoms) anchors.push_back(a.z.imag());
  for (const auto& p : mu.products) {
    for (const auto& a : p.y.atoms) anchors.push_back(a.at);
    for (const auto& u : p.y.pieces) {
      anchors.push_back(u.lo);
      anchors.push_back(u.hi);
    }
  }
  for (const auto& d : mu.densities) {
    anchors.push_back(d.y_lo);
    anchors.push_back(d.y_hi);
  }
  constexpr double kEdge = 1e-9;
  SquareFamily f;
  for (double s : sides) {
    std::set<double> centers;
    for (double y : anchors) {
      centers.insert(y);
      centers.insert(y + 0.5 * s * (1 - 2 * kEdge));
      centers.insert(y - 0.5 * s * (1 - 2 * kEdge));
    }
    if (!e.empty() && std::isfinite(e.y_min) && std::isfinite(e.y_max) && uniform_centers > 0) {
      for (double c : num::linear_grid(e.y_min - 0.5 * s, e.y_max + 0.5 * s, uniform_centers))
        centers.insert(c);
    }
    if (centers.empty()) centers.insert(0.0);
    for (double c : centers) f.push_back({c, s});
  }
  return f;
}

std::vector<double> default_sides(const HalfPlaneMeasure& mu, int per_octave) {
  const Extent e = support_extent(mu);
  if (e.empty()) return {1.0};
  double lo = e.x_min > 0 ? e.x_min : 1e-3;
  double span = std::max(e.x_max, e.y_max - e.y_min);
  if (!std::isfinite(span)) span = lo * std::ldexp(1.0, 30);
  const double hi = std::max(4 * span, 2 * lo);
  std::vector<double> sides = num::geometric_grid(0.5 * lo, hi, std::pow(2.0, 1.0 / per_octave));
  // Squares whose side just clears an atom realise the per-atom maximum.
  for (const auto& a : mu.atoms)
    if (a.z.real() > 0) sides.push_back(a.z.real() * (1 + 1e-9));
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
  return sides;
}

RatioSup carleson_ratio_sup(const HalfPlaneMeasure& mu, const Gauge& gauge,
                            const SquareFamily& family, bool count_boundary) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "square family is empty");
  RatioSup out;
  out.ratios.reserve(family.size());
  for (const auto& q : family) {
    const double g = gauge(q.side);
    require(g > 0 && std::isfinite(g), "gauge must be positive on the side grid");
    const double r = square_mass(mu, q, count_boundary) / g;
    out.ratios.push_back(r);
    if (r > out.constant) {
      out.constant = r;
      out.witness = q;
    }
  }
  return out;
}

}  // namespace carleson
