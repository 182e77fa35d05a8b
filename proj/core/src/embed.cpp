#include "carleson/embed.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;
using num::kPi;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void finish(EmbeddingVerdict& v, double cap) {
  v.cap = cap;
  v.pass = !v.divergent && v.constant <= cap;
}

// Re-evaluates at doubled densities until the constant moves less than refine_tol.
template <class Eval>
EmbeddingVerdict refined(const GridOptions& opt, Eval eval, int* level_out = nullptr) {
  EmbeddingVerdict v = eval(0);
  int level = 0;
  bool stable = !opt.refine;
  for (int l = 1; opt.refine && l <= opt.max_levels; ++l) {
    EmbeddingVerdict w = eval(l);
    const double scale = std::max(std::abs(w.constant), std::abs(v.constant));
    stable = std::abs(w.constant - v.constant) <= opt.refine_tol * scale;
    v = std::move(w);
    level = l;
    if (stable) break;
  }
  v.grid += " level=" + std::to_string(level) + (stable ? " stable" : " unstable");
  finish(v, opt.cap);
  if (level_out) *level_out = level;
  return v;
}

EmbeddingVerdict square_verdict(const std::string& id, const HalfPlaneMeasure& mu, const Gauge& gauge,
                                const GridOptions& opt, bool symmetric) {
  return refined(opt, [&](int level) {
    const int ppo = opt.per_octave << level;
    const auto sides = default_sides(mu, ppo);
    const SquareFamily fam =
        symmetric ? symmetric_family(sides) : adapted_family(mu, sides, opt.uniform_centers << level);
    const RatioSup r = carleson_ratio_sup(mu, gauge, fam);
    EmbeddingVerdict v;
    v.criterion = id;
    v.constant = r.constant;
    if (r.witness) v.witness = *r.witness;
    v.grid = "squares=" + std::to_string(fam.size()) + " sides_per_octave=" + std::to_string(ppo);
    return v;
  });
}

template <class Ratio>
EmbeddingVerdict point_sup(const std::string& id, const std::vector<cplx>& pts, Ratio ratio) {
  EmbeddingVerdict v;
  v.criterion = id;
  for (cplx z : pts) {
    const double r = ratio(z);
    if (std::isnan(r)) continue;
    if (r > v.constant) {
      v.constant = r;
      v.witness = z;
    }
  }
  v.divergent = std::isinf(v.constant);
  v.grid = "points=" + std::to_string(pts.size());
  return v;
}

std::vector<cplx> real_points(const std::vector<cplx>& pts) {
  std::set<double> re;
  for (cplx z : pts) re.insert(z.real());
  std::vector<cplx> out;
  for (double x : re) out.emplace_back(x, 0.0);
  return out;
}

EmbeddingVerdict empirical_verdict(const std::string& id, const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                   const std::vector<cplx>& pts, bool monomials, double cap) {
  std::vector<TestFunction> fam;
  for (cplx z : pts) fam.push_back(Exponential{z});
  if (monomials)
    for (cplx z : pts) fam.push_back(MonomialExponential{2, z});
  const LowerBound lb = embedding_norm_lower_bound(mu, pq, fam);
  EmbeddingVerdict v;
  v.criterion = id;
  v.constant = lb.bound;
  if (lb.argmax >= 0) {
    const auto& f = fam[static_cast<std::size_t>(lb.argmax)];
    v.witness = std::holds_alternative<Exponential>(f) ? std::get<Exponential>(f).lambda
                                                       : std::get<MonomialExponential>(f).lambda;
    v.notes = describe(f);
  }
  v.divergent = std::isinf(v.constant);
  v.grid = "family=" + std::to_string(fam.size());
  finish(v, cap);
  return v;
}

double dual_exponent_ratio(const ExponentPair& pq) { return pq.q / pq.p_conj(); }

void check_sector(const HalfPlaneMeasure& mu, const SectorSpec& sector) {
  if (!supported_in(mu, sector))
    throw Error(ErrorKind::NotSectorial, "measure is not supported in the sector |arg z| < " + fmt(sector.theta));
}

// Components lying on the real axis at x >= 1 with power-law x-profile, where the
// phi approximant's transform can be integrated in log coordinates.
bool phi_axis_product(const ProductComponent& p, double q) {
  if (p.x.atom_at_zero != 0 || !p.x.atoms.empty() || !p.x.tables.empty()) return false;
  if (!p.y.pieces.empty() || p.y.atoms.size() != 1 || p.y.atoms[0].at != 0) return false;
  for (const auto& pc : p.x.powers)
    if (pc.lo < 1 || pc.alpha + 1 - q >= 0) return false;
  return true;
}

}  // namespace

std::string describe(const Witness& w) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "none";
        else if constexpr (std::is_same_v<T, CarlesonSquare>)
          return "square(center=" + fmt(x.center_y) + ",side=" + fmt(x.side) + ")";
        else if constexpr (std::is_same_v<T, cplx>)
          return "point(" + fmt(x.real()) + "," + fmt(x.imag()) + ")";
        else
          return "index(" + std::to_string(x) + ")";
      },
      w);
}

std::vector<cplx> lambda_grid(const HalfPlaneMeasure& mu, const GridOptions& opt, int level) {
  const int ppo = opt.per_octave << level;
  const Extent e = support_extent(mu);
  double lo = 1.0 / 16, hi = 16;
  std::set<double> ims{0.0};
  if (!e.empty()) {
    const double xmin = e.x_min > 0 ? e.x_min : 1e-3;
    double span = std::max(e.x_max, e.y_max - e.y_min);
    if (!std::isfinite(span)) span = xmin * std::ldexp(1.0, 30);
    lo = xmin / 16;
    hi = 16 * std::max(span, xmin);
    for (const auto& a : mu.atoms) ims.insert(a.z.imag());
    for (const auto& p : mu.products) {
      for (const auto& a : p.y.atoms) ims.insert(a.at);
      for (const auto& u : p.y.pieces)
        if (std::isfinite(u.lo) && std::isfinite(u.hi)) {
          ims.insert(u.lo);
          ims.insert(u.hi);
          ims.insert(0.5 * (u.lo + u.hi));
        }
    }
    for (const auto& d : mu.densities) {
      ims.insert(d.y_lo);
      ims.insert(d.y_hi);
      ims.insert(0.5 * (d.y_lo + d.y_hi));
    }
    if (std::isfinite(e.y_min) && std::isfinite(e.y_max) && e.y_min < e.y_max)
      for (double y : num::linear_grid(e.y_min, e.y_max, opt.im_points << level)) ims.insert(y);
  }
  // Exponents k / ppo so that every power of two in range is hit exactly.
  const int k_lo = static_cast<int>(std::floor(std::log2(lo) * ppo));
  const int k_hi = static_cast<int>(std::ceil(std::log2(hi) * ppo));
  std::vector<cplx> pts;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double x = k % ppo == 0 ? std::ldexp(1.0, k / ppo) : std::exp2(double(k) / ppo);
    for (double y : ims) pts.emplace_back(x, y);
  }
  return pts;
}

double transform_lq_norm(const HalfPlaneMeasure& mu, const TestFunction& f, double q) {
  require(q >= 1 && std::isfinite(q), "q must lie in [1, inf)");
  validate(f);
  if (const auto* ph = std::get_if<PhiApproximant>(&f)) {
    std::vector<double> parts;
    for (const auto& a : mu.atoms) parts.push_back(a.mass * std::pow(std::abs(laplace(f, a.z)), q));
    HalfPlaneMeasure rest;
    rest.densities = mu.densities;
    for (const auto& p : mu.products) {
      if (!phi_axis_product(p, q)) {
        rest.products.push_back(p);
        continue;
      }
      // x = e^v: |F|^q x^alpha dx = |e^{v/2} F|^q e^{(alpha + 1 - q/2) v} dv, and the
      // transform has decayed like e^{-(v - U)/2} well before U + 100.
      const double vmax = ph->U + 100;
      for (const auto& pc : p.x.powers) {
        const double a = std::log(pc.lo), b = std::min(std::log(pc.hi), vmax);
        if (!(a < b)) continue;
        std::vector<double> br;
        for (double v = std::ceil(a / 10) * 10; v < b; v += 10)
          if (v > a) br.push_back(v);
        const double m = p.y.atoms[0].mass * pc.coeff, ex = pc.alpha + 1 - 0.5 * q;
        parts.push_back(m * num::integrate(
                                [&](double v) {
                                  return std::pow(std::abs(phi_axis_scaled(ph->U, v)), q) * std::exp(ex * v);
                                },
                                a, b, br));
      }
    }
    double s = num::pairwise_sum(parts);
    if (!rest.empty())
      s += integrate_measure(rest, [&](cplx z) { return std::pow(std::abs(laplace(f, z)), q); });
    return std::pow(s, 1 / q);
  }
  const double s = integrate_measure(mu, [&](cplx z) { return std::pow(std::abs(laplace(f, z)), q); });
  return std::pow(s, 1 / q);
}

LowerBound embedding_norm_lower_bound(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                      const std::vector<TestFunction>& family) {
  pq.validate();
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "test-function family is empty");
  LowerBound out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double den = lp_norm(family[i], pq.p);
    require(den > 0 && std::isfinite(den), "test function norms must be finite and nonzero");
    const double r = transform_lq_norm(mu, family[i], pq.q) / den;
    out.ratios.push_back(r);
    if (out.argmax < 0 || r > out.bound) {
      out.bound = r;
      out.argmax = static_cast<int>(i);
    }
  }
  return out;
}

ClassicalReport check_classical_carleson(const HalfPlaneMeasure& mu, const GridOptions& opt) {
  mu.validate();
  ClassicalReport r;
  r.square = square_verdict("classical.square", mu, linear_gauge(), opt, false);
  int level = 0;
  r.kernel = refined(
      opt,
      [&](int l) {
        return point_sup("classical.kernel", lambda_grid(mu, opt, l), [&](cplx lam) {
          const cplx lb = std::conj(lam);
          return lam.real() / kPi * integrate_measure(mu, [&](cplx z) { return 1 / std::norm(z + lb); });
        });
      },
      &level);
  std::vector<cplx> pts;
  for (cplx l : lambda_grid(mu, opt, level)) pts.push_back(std::conj(l));
  r.empirical = empirical_verdict("classical.empirical", mu, {2, 2}, pts, false, opt.cap);
  return r;
}

int select_kernel_power(double R, double p) {
  require(R >= 1 && p >= 1 && std::isfinite(R) && std::isfinite(p), "kernel power needs R >= 1, p >= 1");
  int N = 1;
  while (std::pow(2.0, N * p) < 4 * R) ++N;
  return N;
}

double kernel_power_reference(const RadialMeasure& nu, double a, int N, double p) {
  require(a > 0 && N >= 1 && N * p > 1, "kernel power reference needs a > 0, N p > 1");
  const double e = N * p;
  // int_R |2 pi (r + a + i s)|^{-e} ds = B (r + a)^{1-e}
  const double B = std::sqrt(kPi) * boost::math::tgamma(0.5 * (e - 1)) / boost::math::tgamma(0.5 * e) /
                   std::pow(2 * kPi, e);
  return B * integrate_radial(nu, [&](double r) { return std::pow(r + a, 1 - e); },
                              Span::half_open(0, kInf), {a});
}

ZenReport check_zen_embedding(const HalfPlaneMeasure& mu, const RadialMeasure& nu, double p,
                              std::optional<int> N, const GridOptions& opt) {
  mu.validate();
  nu.validate();
  require(p >= 1 && std::isfinite(p), "p must lie in [1, inf)");
  const DoublingInfo d = doubling_constant(nu, default_probe_grid());
  if (d.exceeds_cap) throw Error(ErrorKind::NotDoubling, "doubling ratio exceeds the cap");
  ZenReport r;
  r.R = d.R;
  const int need = select_kernel_power(d.R, p);
  r.N = N.value_or(need);
  require(r.N >= need, "kernel power below the threshold " + std::to_string(need));
  r.square = square_verdict("zen.square", mu, zen_gauge(nu), opt, false);
  const double e = r.N * p;
  r.kernel_power = refined(opt, [&](int l) {
    return point_sup("zen.kernel_power", lambda_grid(mu, opt, l), [&](cplx lam) {
      const cplx lb = std::conj(lam);
      const double top = integrate_measure(mu, [&](cplx z) { return std::pow(2 * kPi * std::abs(z + lb), -e); });
      return top / kernel_power_reference(nu, lam.real(), r.N, p);
    });
  });
  r.kernel_power.notes = "N=" + std::to_string(r.N);
  return r;
}

EmbeddingVerdict check_necessary_power_bound(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                             const GridOptions& opt) {
  mu.validate();
  pq.validate();
  EmbeddingVerdict v = square_verdict("power_bound", mu, power_gauge(dual_exponent_ratio(pq)), opt, false);
  v.notes = "gauge=|I|^" + fmt(dual_exponent_ratio(pq));
  return v;
}

double exponential_test_ratio(const HalfPlaneMeasure& mu, const ExponentPair& pq, cplx z) {
  const TestFunction f = Exponential{z};
  return transform_lq_norm(mu, f, pq.q) / lp_norm(f, pq.p);
}

PQReport check_pprime_le_q(const HalfPlaneMeasure& mu, const ExponentPair& pq, const GridOptions& opt) {
  mu.validate();
  pq.validate();
  if (pq.p > 2 || pq.p_conj() > pq.q)
    throw Error(ErrorKind::ExponentWindow, "needs p <= 2 and p' <= q");
  PQReport r;
  r.power_bound = check_necessary_power_bound(mu, pq, opt);
  r.power_bound.criterion = "pq.2";
  int level = 0;
  r.exponential = refined(
      opt,
      [&](int l) {
        return point_sup("pq.3", lambda_grid(mu, opt, l),
                         [&](cplx z) { return exponential_test_ratio(mu, pq, z); });
      },
      &level);
  r.empirical = empirical_verdict("pq.1", mu, pq, lambda_grid(mu, opt, level), true, opt.cap);
  return r;
}

SectorQgepReport check_sectorial_qgep(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                      const SectorSpec& sector, const GridOptions& opt) {
  mu.validate();
  pq.validate();
  if (!(pq.q >= pq.p && pq.p > 1)) throw Error(ErrorKind::ExponentWindow, "needs q >= p > 1");
  check_sector(mu, sector);
  SectorQgepReport r;
  r.symmetric_square = square_verdict("sector.2", mu, power_gauge(dual_exponent_ratio(pq)), opt, true);
  int level = 0;
  r.real_exponential = refined(
      opt,
      [&](int l) {
        return point_sup("sector.3", real_points(lambda_grid(mu, opt, l)),
                         [&](cplx z) { return exponential_test_ratio(mu, pq, z); });
      },
      &level);
  EmbeddingVerdict& d = r.dyadic_exponential;
  d.criterion = "sector.4";
  for (int n = opt.n_lo; n <= opt.n_hi; ++n) {
    const double v = exponential_test_ratio(mu, pq, cplx(std::ldexp(1.0, n), 0));
    r.dyadic_values.push_back(v);
    if (v > d.constant) {
      d.constant = v;
      d.witness = n;
    }
  }
  d.divergent = std::isinf(d.constant);
  d.grid = "n=" + std::to_string(opt.n_lo) + ".." + std::to_string(opt.n_hi);
  finish(d, opt.cap);
  r.empirical = empirical_verdict("sector.1", mu, pq, real_points(lambda_grid(mu, opt, level)), true, opt.cap);
  return r;
}

BalayageCondition balayage_condition(const HalfPlaneMeasure& mu, const ExponentPair& pq) {
  mu.validate();
  pq.validate();
  if (!(pq.p_conj() < pq.q))
    throw Error(ErrorKind::BalayageNotApplicable, "the sweep may be infinite unless p' < q");
  require(pq.q < pq.p, "the sweep condition needs q < p");
  BalayageCondition c;
  c.exponent = pq.q * (2 - pq.p) / pq.p;
  c.s = pq.p / (pq.p - pq.q);
  if (mu.empty() || mu.total_mass() == 0) return c;
  const double es = c.exponent * c.s;
  bool divergent = false;
  auto S = [&](double t) {
    const BalayageValue b = balayage_eval(mu, t);
    if (b.divergent) divergent = true;
    return b.value;
  };
  auto g = [&](double t) { return std::pow(std::abs(t), es) * std::pow(S(t), c.s); };
  S(0);
  if (divergent) {
    c.divergent = true;
    c.norm = kInf;
    c.reason = "the sweep itself diverges";
    return c;
  }
  const Extent e = support_extent(mu);
  const double scale = std::max({1.0, std::abs(e.y_min), std::abs(e.y_max), e.x_max});
  std::vector<double> parts;
  for (double sign : {-1.0, 1.0}) {
    auto h = [&](double t) { return g(sign * t); };
    const double eps = 1e-8 * scale;
    const double slope0 = num::log_slope(h, eps);
    if (slope0 <= -0.95) {
      c.divergent = true;
      c.reason = "t^" + fmt(es) + " S_mu(t)^" + fmt(c.s) + " is not integrable at t = 0";
      break;
    }
    const double T = 1e8 * scale;
    const double slope_inf = num::log_slope(h, T);
    if (slope_inf >= -1.05) {
      c.divergent = true;
      c.reason = "not integrable at |t| = infinity";
      break;
    }
    std::vector<double> br;
    for (const auto& a : mu.atoms)
      if (sign * a.z.imag() > eps && sign * a.z.imag() < T) br.push_back(sign * a.z.imag());
    for (double b = 1e-6 * scale; b < T; b *= 16) br.push_back(b);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    parts.push_back(h(eps) * eps / (1 + slope0));
    parts.push_back(num::integrate(h, eps, T, br));
    parts.push_back(h(T) * T / (-1 - slope_inf));
  }
  if (c.divergent) {
    c.norm = kInf;
    return c;
  }
  c.norm = std::pow(num::pairwise_sum(parts), 1 / c.s);
  return c;
}

SectorPlqReport check_sectorial_plq(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                    const SectorSpec& sector, const GridOptions& opt) {
  mu.validate();
  pq.validate();
  if (!(pq.q < pq.p)) throw Error(ErrorKind::ExponentWindow, "needs 1 <= q < p");
  check_sector(mu, sector);
  require(opt.n_lo <= opt.n_hi, "empty dyadic window");
  SectorPlqReport r;
  const double qp = dual_exponent_ratio(pq);
  const double total = mu.total_mass();
  double inside = 0;
  r.slab_masses.n_lo = r.kernel_norms.n_lo = opt.n_lo;
  r.slab_masses.s = pq.p / (pq.p - pq.q);
  r.kernel_norms.s = pq.q * pq.p / (pq.p - pq.q);
  std::vector<double> slab;
  for (int n = opt.n_lo; n <= opt.n_hi; ++n) {
    const double m = box_mass(mu, DyadicCell::slab(n));
    slab.push_back(m);
    r.slab_masses.values.push_back(std::exp2(-n * qp) * m);
    const double k = transform_lq_norm(mu, Exponential{cplx(std::ldexp(1.0, n), 0)}, pq.q);
    r.kernel_norms.values.push_back(std::exp2(n / pq.p) * k);
  }
  inside = num::pairwise_sum(slab);
  r.slab_masses.out_of_window = r.kernel_norms.out_of_window = std::max(0.0, total - inside);
  for (auto* sc : {&r.slab_masses, &r.kernel_norms}) {
    sc->norm = num::sequence_norm(sc->values, sc->s);
    sc->divergent = !std::isfinite(sc->norm);
  }
  if (pq.p_conj() < pq.q) {
    r.balayage = balayage_condition(mu, pq);
  } else {
    r.notes = "sweep condition not applicable: p' >= q";
  }
  std::vector<cplx> pts;
  for (int n = opt.n_lo; n <= opt.n_hi; ++n) pts.emplace_back(std::ldexp(1.0, n), 0.0);
  r.empirical = empirical_verdict("sector_plq.1", mu, pq, pts, true, opt.cap);
  return r;
}

std::vector<std::vector<double>> lacunary_gram(int n_lo, int n_hi) {
  std::vector<std::vector<double>> g;
  for (int m = n_lo; m <= n_hi; ++m) {
    std::vector<double> row;
    for (int n = n_lo; n <= n_hi; ++n)
      row.push_back(std::exp2(0.5 * (m + n)) / (std::ldexp(1.0, m) + std::ldexp(1.0, n)));
    g.push_back(std::move(row));
  }
  return g;
}

MacaevReport gurarii_macaev_ratio(const std::vector<double>& alpha, int n_lo, double p) {
  require(p >= 1 && std::isfinite(p), "p must lie in [1, inf)");
  require(!alpha.empty(), "coefficient window is empty");
  MacaevReport r;
  const int n_hi = n_lo + static_cast<int>(alpha.size()) - 1;
  if (p == 2) {
    const auto g = lacunary_gram(n_lo, n_hi);
    const Eigen::Index n = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) G(i, j) = g[std::size_t(i)][std::size_t(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    r.lambda_min = es.eigenvalues().minCoeff();
    r.lambda_max = es.eigenvalues().maxCoeff();
  }
  const double a = num::sequence_norm(alpha, p);
  if (a == 0) return r;
  r.defined = true;
  auto f = [&](double t) {
    double s = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const double lam = std::ldexp(1.0, n_lo + static_cast<int>(i));
      s += alpha[i] * std::pow(lam, 1 / p) * std::exp(-lam * t);
    }
    return std::pow(std::abs(s), p);
  };
  std::vector<double> br;
  for (int n = n_hi + 2; n >= n_lo - 4; --n) br.push_back(std::ldexp(1.0, -n));
  r.ratio = std::pow(num::integrate(f, 0, kInf, br), 1 / p) / a;
  return r;
}

HalfPlaneMeasure counterexample_measure() { return HalfPlaneMeasure::axis_power(1, kInf, 1, -0.5); }

bool CounterexampleReport::ok(double target) const {
  return square_ok && partial_closed >= 4.6 && std::abs(partial_quad - partial_closed) <= 1e-8 &&
         best_lower_bound > target;
}

CounterexampleReport counterexample_suite(const CounterexampleOptions& opt) {
  require(opt.squares >= 1 && opt.log_T > 0, "invalid counterexample options");
  const HalfPlaneMeasure mu = counterexample_measure();
  CounterexampleReport r;
  std::vector<double> sides;
  for (int i = 0; i < opt.squares; ++i) sides.push_back(std::exp2(-1.0 + 0.5 * i));
  const SquareFamily fam = symmetric_family(sides);
  r.squares = fam.size();
  r.square = carleson_ratio_sup(mu, power_gauge(0.5), fam);
  r.square_ok = r.square.constant <= 2;

  for (int k = 0; k <= 10; ++k) {
    const double t = std::ldexp(1.0, k);
    const HalfPlaneMeasure cone = restrict_measure(mu, Box{Span::half_open(t, kInf), Span::open(-kInf, kInf)});
    r.cone_t.push_back(t);
    r.cone_quad.push_back(integrate_measure(cone, [](cplx z) { return 1 / z.real(); }));
    r.cone_closed.push_back(2 / std::sqrt(t));
  }

  r.partial_T_log = opt.log_T;
  std::vector<double> br;
  for (int k = 1; k < opt.log_T; ++k) br.push_back(std::exp(double(k)));
  // phi(t) t^{-1/2} = 1 / (t (1 + log t)) for t >= 1
  r.partial_quad =
      num::integrate([](double t) { return 1 / (t * (1 + std::log(t))); }, 1, std::exp(opt.log_T), br);
  r.partial_closed = std::log1p(opt.log_T);

  for (double U : opt.U) {
    const LowerBound lb = embedding_norm_lower_bound(mu, {2, 1}, {PhiApproximant{U}});
    r.U.push_back(U);
    r.lower_bounds.push_back(lb.bound);
    r.best_lower_bound = std::max(r.best_lower_bound, lb.bound);
  }
  return r;
}

StripReport check_strip(const HalfPlaneMeasure& mu, const ExponentPair& pq, const StripSpec& strip,
                        const GridOptions& opt) {
  mu.validate();
  pq.validate();
  require(strip.a1 > 0 && strip.a1 <= strip.a2, "strip needs 0 < a1 <= a2");
  if (pq.p_conj() > pq.q || pq.q < 2) throw Error(ErrorKind::ExponentWindow, "needs p' <= q and q >= 2");
  if (!supported_in(mu, strip)) throw Error(ErrorKind::NotInStrip, "measure leaves the strip");
  StripReport r;
  r.power_bound = check_necessary_power_bound(mu, pq, opt);
  r.power_bound.criterion = "strip.2";
  auto strip_points = [&](int l) {
    std::set<double> ims;
    for (cplx z : lambda_grid(mu, opt, l)) ims.insert(z.imag());
    std::vector<double> re{strip.a1};
    if (strip.a2 > strip.a1) {
      const int n = std::max(2, static_cast<int>(std::ceil(std::log2(strip.a2 / strip.a1) * (opt.per_octave << l))) + 1);
      re = num::geometric_grid(strip.a1, strip.a2, std::pow(strip.a2 / strip.a1, 1.0 / (n - 1)));
      re.back() = strip.a2;
    }
    std::vector<cplx> pts;
    for (double x : re)
      for (double y : ims) pts.emplace_back(x, y);
    return pts;
  };
  int level = 0;
  r.exponential = refined(
      opt,
      [&](int l) {
        return point_sup("strip.3", strip_points(l), [&](cplx z) { return exponential_test_ratio(mu, pq, z); });
      },
      &level);
  r.empirical = empirical_verdict("strip.1", mu, pq, strip_points(level), true, opt.cap);
  r.predicted_bound = 2 * kPi * std::pow(r.power_bound.constant, 1 / pq.q) *
                      std::pow(strip.a2 / strip.a1, 0.5 - 1 / pq.p);
  return r;
}

SobolevReport check_sobolev(const HalfPlaneMeasure& mu, double beta, const ExponentPair& pq, SobolevMode mode,
                            const GridOptions& opt) {
  mu.validate();
  pq.validate();
  require(beta >= 0 && std::isfinite(beta), "beta must be >= 0");
  SobolevReport r;
  if (mode == SobolevMode::L2) {
    if (pq.p != 2 || pq.q != 2) throw Error(ErrorKind::ExponentWindow, "the L2 mode needs p = q = 2");
    r.transformed = beta == 0 ? mu : reweight_measure(mu, [beta](cplx z) { return std::pow(std::abs(1.0 + z), -2 * beta); });
    r.verdict = square_verdict("sobolev.l2", r.transformed, linear_gauge(), opt, false);
    // ||(1+z)^{-beta} / (z + lambda)||_{L^2(mu)} / ||1 / (z + lambda)||_{H^2}
    r.empirical = refined(opt, [&](int l) {
      return point_sup("sobolev.l2.empirical", lambda_grid(mu, opt, l), [&](cplx lam) {
        const double top = integrate_measure(
            mu, [&](cplx z) { return std::pow(std::abs(1.0 + z), -2 * beta) / std::norm(z + lam); });
        return std::sqrt(top * lam.real() / kPi);
      });
    });
    return r;
  }
  if (!(pq.q >= pq.p && pq.p > 1)) throw Error(ErrorKind::ExponentWindow, "the sectorial mode needs q >= p > 1");
  const double qb = pq.q * beta;
  r.transformed = reweight_measure(mu, [qb](cplx z) { return 1 + std::pow(std::abs(z), -qb); });
  const SectorQgepReport s = check_sectorial_qgep(r.transformed, pq, SectorSpec{}, opt);
  r.verdict = s.symmetric_square;
  r.verdict.criterion = "sobolev.sector";
  r.empirical = s.empirical;
  return r;
}

}  // namespace carleson
