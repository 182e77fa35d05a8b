#include "carleson/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::SchemaError, "bad number in symbol: '" + s + "'");
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void Symbol::validate() const {
  for (const auto& t : terms) {
    require(std::isfinite(t.c.real()) && std::isfinite(t.c.imag()), "symbol coefficients must be finite");
    if (t.kind == SymbolTerm::Kind::Log || t.kind == SymbolTerm::Kind::Pole)
      require(t.a.real() >= 0, "symbol singularities must lie in the closed left half-plane");
    if (t.kind == SymbolTerm::Kind::Pole) require(t.m >= 1, "pole order must be >= 1");
  }
}

cplx Symbol::value(cplx z) const {
  cplx v = 0;
  for (const auto& t : terms) {
    switch (t.kind) {
      case SymbolTerm::Kind::Constant: v += t.c; break;
      case SymbolTerm::Kind::Linear: v += t.c * z; break;
      case SymbolTerm::Kind::Log: v += t.c * std::log(z + t.a); break;
      case SymbolTerm::Kind::Pole: v += t.c / std::pow(z + t.a, t.m); break;
    }
  }
  return v;
}

cplx Symbol::derivative(cplx z) const {
  cplx v = 0;
  for (const auto& t : terms) {
    switch (t.kind) {
      case SymbolTerm::Kind::Constant: break;
      case SymbolTerm::Kind::Linear: v += t.c; break;
      case SymbolTerm::Kind::Log: v += t.c / (z + t.a); break;
      case SymbolTerm::Kind::Pole: v -= double(t.m) * t.c / std::pow(z + t.a, t.m + 1); break;
    }
  }
  return v;
}

bool Symbol::is_constant() const {
  for (const auto& t : terms)
    if (t.kind != SymbolTerm::Kind::Constant && t.c != cplx(0, 0)) return false;
  return true;
}

Symbol parse_symbol(const std::string& text) {
  Symbol b;
  for (const std::string& raw : split(text, '+')) {
    const std::string term = trim(raw);
    if (term.empty()) throw Error(ErrorKind::SchemaError, "empty symbol term in '" + text + "'");
    SymbolTerm t;
    if (term == "log1p") {
      t.kind = SymbolTerm::Kind::Log;
    } else if (term == "z") {
      t.kind = SymbolTerm::Kind::Linear;
    } else if (term == "inv1p") {
      t.kind = SymbolTerm::Kind::Pole;
    } else {
      const auto f = split(term, ':');
      const std::string& k = f[0];
      auto want = [&](std::size_t n) {
        if (f.size() != n) throw Error(ErrorKind::SchemaError, "symbol term '" + term + "' takes " + std::to_string(n - 1) + " fields");
      };
      if (k == "const") {
        want(2);
        t.kind = SymbolTerm::Kind::Constant;
        t.c = number(f[1]);
      } else if (k == "lin") {
        want(2);
        t.kind = SymbolTerm::Kind::Linear;
        t.c = number(f[1]);
      } else if (k == "log") {
        want(3);
        t.kind = SymbolTerm::Kind::Log;
        t.c = number(f[1]);
        t.a = number(f[2]);
      } else if (k == "pole") {
        want(4);
        t.kind = SymbolTerm::Kind::Pole;
        t.c = number(f[1]);
        t.a = number(f[2]);
        const double m = number(f[3]);
        if (m != std::floor(m) || m < 1) throw Error(ErrorKind::SchemaError, "pole order must be a positive integer");
        t.m = static_cast<int>(m);
      } else {
        throw Error(ErrorKind::SchemaError, "unknown symbol term '" + term + "'");
      }
    }
    b.terms.push_back(t);
  }
  b.validate();
  return b;
}

std::string format_symbol(const Symbol& b) {
  std::string out;
  for (const auto& t : b.terms) {
    if (!out.empty()) out += "+";
    switch (t.kind) {
      case SymbolTerm::Kind::Constant: out += "const:" + fmt(t.c.real()); break;
      case SymbolTerm::Kind::Linear: out += "lin:" + fmt(t.c.real()); break;
      case SymbolTerm::Kind::Log: out += "log:" + fmt(t.c.real()) + ":" + fmt(t.a.real()); break;
      case SymbolTerm::Kind::Pole:
        out += "pole:" + fmt(t.c.real()) + ":" + fmt(t.a.real()) + ":" + std::to_string(t.m);
        break;
    }
  }
  return out;
}

HalfPlaneMeasure hankel_measure(const Symbol& b, const RadialMeasure& nu, const HankelWindow& w) {
  b.validate();
  nu.validate();
  require(w.x_hi > 0 && w.y_lo < w.y_hi && std::isfinite(w.x_hi) && std::isfinite(w.y_lo) &&
              std::isfinite(w.y_hi),
          "hankel window must be a bounded box");
  HalfPlaneMeasure mu;
  if (b.is_constant()) return mu;
  DensityComponent d;
  d.x_lo = 0;
  d.x_hi = w.x_hi;
  d.y_lo = w.y_lo;
  d.y_hi = w.y_hi;
  d.rho = [b, nu](double x, double y) { return std::norm(b.derivative(cplx(x, y))) * x * radial_cdf(nu, x); };
  mu.densities.push_back(std::move(d));
  return mu;
}

EmbeddingVerdict check_hankel_bounded(const Symbol& b, const RadialMeasure& nu, const HankelWindow& w,
                                      const GridOptions& opt) {
  const HalfPlaneMeasure mu = hankel_measure(b, nu, w);
  EmbeddingVerdict v;
  v.criterion = "hankel";
  const bool hardy = nu.atoms.empty() && nu.powers.empty() && nu.tables.empty() && nu.atom_at_zero > 0;
  if (mu.empty()) {
    v.grid = "symbol is constant";
  } else {
    const Gauge g = zen_gauge(nu);
    int level = 0;
    bool stable = !opt.refine;
    double prev = -1;
    for (int l = 0; l <= (opt.refine ? opt.max_levels : 0); ++l) {
      const int ppo = opt.per_octave << l;
      // Sides reach below the window scale and out to its full width.
      const double span = std::max(w.x_hi, w.y_hi - w.y_lo);
      const auto sides = num::geometric_grid(span * 0x1p-12, span, std::pow(2.0, 1.0 / ppo));
      SquareFamily fam = symmetric_family(sides);
      for (double c : num::linear_grid(w.y_lo, w.y_hi, opt.uniform_centers << l))
        for (double s : sides) fam.push_back({c, s});
      const RatioSup r = carleson_ratio_sup(mu, g, fam);
      v.constant = r.constant;
      if (r.witness) v.witness = *r.witness;
      v.grid = "squares=" + std::to_string(fam.size()) + " sides_per_octave=" + std::to_string(ppo);
      level = l;
      if (prev >= 0) {
        stable = std::abs(r.constant - prev) <= opt.refine_tol * std::max(r.constant, prev);
        if (stable) break;
      }
      prev = r.constant;
    }
    v.grid += " level=" + std::to_string(level) + (stable ? " stable" : " unstable");
  }
  v.cap = opt.cap;
  v.pass = v.constant <= opt.cap;
  v.notes = "window x<" + fmt(w.x_hi) + " y in [" + fmt(w.y_lo) + "," + fmt(w.y_hi) + ")";
  if (hardy) v.notes += "; Hardy weight: the square condition is also necessary";
  return v;
}

BlochResult bloch_norm(const Symbol& b, const BlochGrid& grid) {
  b.validate();
  require(grid.x_lo > 0 && grid.x_lo < grid.x_hi && grid.per_octave >= 1, "invalid Bloch grid");
  BlochResult r;
  for (double x : num::geometric_grid(grid.x_lo, grid.x_hi, std::pow(2.0, 1.0 / grid.per_octave))) {
    std::vector<double> ys = grid.y;
    for (double s : {-2.0, -1.0, 1.0, 2.0}) ys.push_back(s * x);
    for (double y : ys) {
      const double v = std::abs(b.derivative(cplx(x, y))) * x;
      if (v > r.value) {
        r.value = v;
        r.witness = cplx(x, y);
      }
    }
  }
  r.exceeds_cap = !(r.value <= grid.cap);
  return r;
}

LogIntegralBound log_integral_bound(const RadialMeasure& nu, const std::vector<double>& x_grid, double M) {
  nu.validate();
  require(!x_grid.empty(), "x grid is empty");
  LogIntegralBound out;
  out.M = M;
  out.gamma = inverse_doubling_infimum(nu, M, default_probe_grid());
  if (!(out.gamma > 1))
    throw Error(ErrorKind::InverseDoublingFails, "inf F(Mr)/F(r) = " + fmt(out.gamma) + " <= 1");
  out.predicted = out.gamma * (M - 1) / (out.gamma - 1);
  for (double x : x_grid) {
    require(x > 0, "x grid must be positive");
    const double F = radial_cdf(nu, x);
    if (!(F > 0)) throw Error(ErrorKind::ZeroMassNearOrigin, "F(x) = 0 at x = " + fmt(x));
    // F jumps at atoms, so panels end there
    std::vector<double> edges{0.0};
    for (const auto& a : nu.atoms)
      if (a.at > 0 && a.at < x) edges.push_back(a.at);
    std::sort(edges.begin(), edges.end());
    edges.push_back(x);
    std::vector<double> panels;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (edges[i] < edges[i + 1])
        panels.push_back(num::integrate_singular([&](double s) { return radial_cdf(nu, s) / s; }, edges[i],
                                                 edges[i + 1]));
    const double I = num::pairwise_sum(panels);
    const double ratio = I / F;
    if (ratio > out.sup_ratio) {
      out.sup_ratio = ratio;
      out.witness_x = x;
    }
  }
  return out;
}

}  // namespace carleson
