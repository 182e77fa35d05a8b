#include "carleson/balayage.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;
using num::kPi;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

// n with 2^{n-1} < x <= 2^n.
int slab_index(double x) {
  int e;
  const double m = std::frexp(x, &e);
  return m == 0.5 ? e - 1 : e;
}

// n with 2^{n-2} < |s| <= 2^{n-1}, i.e. s in I_n \ I_{n-1}.
int ring_index(double s) { return slab_index(std::abs(s)) + 1; }

bool is_integer(double v) { return v == std::floor(v); }

struct Support {
  double x_min = kInf, x_max = -kInf, y_abs = 0;
  bool any = false;
};

Support support_of(const HalfPlaneMeasure& mu) {
  Support s;
  const Extent e = support_extent(mu);
  if (e.empty()) return s;
  s.any = true;
  s.x_min = e.x_min;
  s.x_max = e.x_max;
  s.y_abs = std::max(std::abs(e.y_min), std::abs(e.y_max));
  return s;
}

}  // namespace

bool supported_in(const HalfPlaneMeasure& mu, const SectorSpec& s) {
  for (const auto& a : mu.atoms)
    if (!s.contains(a.z)) return false;
  if (mu.products.empty() && mu.densities.empty()) return true;
  HalfPlaneMeasure rest = mu;
  rest.atoms.clear();
  const Support sp = support_of(rest);
  if (!sp.any) return true;
  return sp.x_min > 0 && sp.y_abs < std::tan(s.theta) * sp.x_min;
}

bool supported_in(const HalfPlaneMeasure& mu, const StripSpec& s) {
  const Extent e = support_extent(mu);
  if (e.empty()) return true;
  return e.x_min >= s.a1 && e.x_max <= s.a2;
}

Box DyadicCell::box() const {
  const double L = std::ldexp(1.0, n), h = 0.5 * L;
  const double c = static_cast<double>(k) * L;
  return {Span{h, L, false, true}, Span{c - h, c + h, false, true}};
}

Span DyadicCell::interval() const { return box().y; }

Box DyadicCell::slab(int n) {
  const double L = std::ldexp(1.0, n);
  return {Span{0.5 * L, L, false, true}, Span::open(-kInf, kInf)};
}

long DyadicCell::index_of(int n, double t) {
  return static_cast<long>(std::ceil(std::ldexp(t, -n) - 0.5));
}

double CellTable::at(int n, long k) const {
  if (n < n_lo || n > n_hi || k < k_lo || k > k_hi) return 0;
  return cells[static_cast<std::size_t>(n - n_lo)][static_cast<std::size_t>(k - k_lo)];
}

CellTable cell_masses(const HalfPlaneMeasure& mu, int n_lo, int n_hi, long k_lo, long k_hi) {
  require(n_lo <= n_hi && k_lo <= k_hi, "cell ranges must be nonempty");
  CellTable t;
  t.n_lo = n_lo;
  t.n_hi = n_hi;
  t.k_lo = k_lo;
  t.k_hi = k_hi;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<double> row;
    for (long k = k_lo; k <= k_hi; ++k) row.push_back(box_mass(mu, DyadicCell{n, k}.box()));
    const double slab = box_mass(mu, DyadicCell::slab(n));
    const double in = num::pairwise_sum(row);
    t.slab.push_back(slab);
    t.outside.push_back(std::max(0.0, slab - in));
    t.cells.push_back(std::move(row));
  }
  for (const auto& a : mu.atoms) {
    const double x = a.z.real();
    if (!(x > 0)) continue;
    const int n = slab_index(x);
    const bool x_edge = x == std::ldexp(1.0, n);
    const bool y_edge = is_integer(std::ldexp(a.z.imag(), -n) - 0.5);
    if (x_edge || y_edge) ++t.boundary_atoms;
  }
  return t;
}

BalayageValue balayage_eval(const HalfPlaneMeasure& mu, double t) {
  BalayageValue out;
  std::vector<double> parts;
  for (const auto& a : mu.atoms) {
    require(a.z.real() > 0, "balayage needs mass off the boundary line");
    parts.push_back(a.mass * poisson_kernel(a.z, t));
  }
  double s = num::pairwise_sum(parts);
  for (const auto& p : mu.products) {
    require(p.x.atom_at_zero == 0, "balayage needs mass off the boundary line");
    auto line = [&](double x) {
      double v = 0;
      for (const auto& a : p.y.atoms) v += a.mass * poisson_kernel(cplx(x, a.at), t);
      for (const auto& u : p.y.pieces)
        v += u.density * (std::atan((u.hi - t) / x) - std::atan((u.lo - t) / x)) / kPi;
      return v;
    };
    for (const auto& pc : p.x.powers) {
      if (!std::isinf(pc.hi) || pc.coeff == 0) continue;
      const double X = std::max(1e8, pc.lo * 1e3);
      if (pc.alpha + num::log_slope(line, X) > -1.05) {
        out.value = kInf;
        out.divergent = true;
        return out;
      }
    }
    s += integrate_radial(p.x, line);
  }
  for (const auto& d : mu.densities) {
    s += num::integrate(
        [&](double x) {
          return num::integrate([&](double y) { return d.rho(x, y) * poisson_kernel(cplx(x, y), t); },
                                d.y_lo, d.y_hi, {t});
        },
        d.x_lo, d.x_hi);
  }
  out.value = s;
  return out;
}

double dyadic_balayage(const HalfPlaneMeasure& mu, double t, int n_lo, int n_hi, long k_lo, long k_hi) {
  require(n_lo <= n_hi, "n range must be nonempty");
  std::vector<double> terms;
  for (int n = n_lo; n <= n_hi; ++n) {
    const long k = DyadicCell::index_of(n, t);
    if (k < k_lo || k > k_hi) continue;
    terms.push_back(box_mass(mu, DyadicCell{n, k}.box()) / std::ldexp(1.0, n));
  }
  return num::pairwise_sum(terms);
}

namespace {

struct CellCache {
  const HalfPlaneMeasure& mu;
  int n_lo, n_hi;
  std::map<int, double> mass;
  double T(int n) {
    if (n < n_lo || n > n_hi) return 0;
    auto it = mass.find(n);
    if (it != mass.end()) return it->second;
    const double m = box_mass(mu, DyadicCell{n, 0}.box());
    mass[n] = m;
    return m;
  }
  // S^d_{mu,k}(s)
  double layer(double s, int k) {
    if (s == 0) return 0;
    const int n = ring_index(s);
    return T(n + k) / std::ldexp(1.0, n + k);
  }
};

}  // namespace

LayerReport sectorial_balayage_layers(const HalfPlaneMeasure& mu, double t, int k_max, int n_lo,
                                      int n_hi, const SectorSpec& sector) {
  require(sector.theta > 0 && sector.theta <= std::atan(0.5) * (1 + 1e-15),
          "layers need an opening angle theta <= arctan(1/2)");
  require(k_max >= 0 && n_lo <= n_hi, "invalid layer ranges");
  if (!supported_in(mu, sector)) throw Error(ErrorKind::NotSectorial, "measure leaves the sector");
  CellCache cache{mu, n_lo, n_hi, {}};
  LayerReport r;
  for (int k = 0; k <= k_max; ++k) {
    r.layers.push_back(cache.layer(t, k));
    r.scaled.push_back(cache.layer(std::ldexp(t, k), 0));
    r.identity_holds = r.identity_holds && r.layers.back() == r.scaled.back();
  }
  return r;
}

double balayage_upper_estimate(const HalfPlaneMeasure& mu, double t, int n_lo, int n_hi, int j_min) {
  if (!supported_in(mu, SectorSpec{})) throw Error(ErrorKind::NotSectorial, "measure leaves the sector");
  CellCache cache{mu, n_lo, n_hi, {}};
  std::vector<double> terms;
  // For t in I_n \ I_{n-1}: max_{T_{n+j}} p_z(t) <= 64 2^{2j} / (pi 2^{n+j}) for j < 0, since
  // |y - t| > 2^{n-3} once j <= -2 and p <= 1 / (pi x) at j = -1; and <= 2 / (pi 2^{n+j}) for j >= 0.
  for (int j = j_min; j <= -1; ++j) terms.push_back(64 * std::ldexp(cache.layer(std::ldexp(t, j), 0), 2 * j));
  for (int n = n_lo; n <= n_hi; ++n)
    if (DyadicCell::index_of(n, t) == 0) terms.push_back(2 * cache.T(n) / std::ldexp(1.0, n));
  return num::pairwise_sum(terms) / kPi;
}

void StepFunction::validate() const {
  require(t.size() >= 2 && values.size() + 1 == t.size(), "step function needs n+1 nodes for n values");
  for (std::size_t i = 1; i < t.size(); ++i) require(t[i] > t[i - 1], "step nodes must increase");
  for (double v : values) require(v >= 0 && std::isfinite(v), "step values must be finite and >= 0");
}

double maximal_function(const StepFunction& f, double t) {
  f.validate();
  std::vector<double> nodes = f.t, vals = f.values;
  if (t < nodes.front()) {
    nodes.insert(nodes.begin(), t);
    vals.insert(vals.begin(), 0.0);
  } else if (t > nodes.back()) {
    nodes.push_back(t);
    vals.push_back(0.0);
  }
  std::vector<double> P(nodes.size(), 0.0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) P[i + 1] = P[i] + vals[i] * (nodes[i + 1] - nodes[i]);
  const std::size_t hiA = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), t) - nodes.begin());
  const std::size_t loB = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), t) - nodes.begin());
  double best = 0;
  for (std::size_t a = 0; a < hiA; ++a)
    for (std::size_t b = std::max(loB, a + 1); b < nodes.size(); ++b)
      best = std::max(best, (P[b] - P[a]) / (nodes[b] - nodes[a]));
  return best;
}

cplx laplace_step(const StepFunction& f, cplx z) {
  f.validate();
  cplx s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double h = f.t[i + 1] - f.t[i];
    const cplx w = z * h;
    cplx e1;
    if (std::abs(w) < 1e-3)
      e1 = 1.0 - w / 2.0 + w * w / 6.0 - w * w * w / 24.0;
    else
      e1 = (1.0 - std::exp(-w)) / w;
    s += f.values[i] * h * std::exp(-z * f.t[i]) * e1;
  }
  return s;
}

MaximalEstimate maximal_kernel_constant(const StepFunction& f, const std::vector<cplx>& zs) {
  MaximalEstimate out;
  for (cplx z : zs) {
    if (!(z.real() > 0)) continue;
    const int n = slab_index(z.real());
    if (std::abs(z.imag()) > std::ldexp(1.0, n - 1)) continue;
    const double s = std::ldexp(1.0, 1 - n);
    const double den = s * maximal_function(f, s);
    const double num = std::abs(laplace_step(f, z));
    const double r = den > 0 ? num / den : (num > 0 ? kInf : 0.0);
    if (r > out.constant) {
      out.constant = r;
      out.witness = z;
    }
  }
  return out;
}

}  // namespace carleson
