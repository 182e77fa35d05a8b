#include "carleson/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <fftw3.h>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;
using num::kPi;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExponentialSum lacunary_terms(const Lacunary& f) {
  ExponentialSum s;
  for (std::size_t i = 0; i < f.alpha.size(); ++i) {
    const double lam = std::ldexp(1.0, f.n_lo + static_cast<int>(i));
    s.coeff.emplace_back(f.alpha[i] * std::pow(lam, 1.0 / f.p), 0.0);
    s.lambda.emplace_back(lam, 0.0);
  }
  return s;
}

double expsum_l2_sq(const ExponentialSum& s) {
  double total = 0;
  for (std::size_t j = 0; j < s.coeff.size(); ++j)
    for (std::size_t k = 0; k < s.coeff.size(); ++k)
      total += (s.coeff[j] * std::conj(s.coeff[k]) / (s.lambda[j] + std::conj(s.lambda[k]))).real();
  return std::max(total, 0.0);
}

// int_0^h e^{-zs} ds / h and int_0^h (s/h) e^{-zs} ds / h, as functions of w = zh.
void segment_moments(cplx w, cplx& e1, cplx& e2) {
  if (std::abs(w) < 0.5) {
    cplx term(1, 0);  // (-w)^k / k!
    e1 = e2 = 0;
    for (int k = 0; k < 30; ++k) {
      e1 += term / double(k + 1);
      e2 += term / double(k + 2);
      term *= -w / double(k + 1);
    }
    return;
  }
  const cplx ew = std::exp(-w);
  e1 = (1.0 - ew) / w;
  e2 = (1.0 - ew * (1.0 + w)) / (w * w);
}

// phi(e^u) on the outer range.
double phi_outer_part(double u) { return std::exp(-0.5 * u) / (1 + u); }

}  // namespace

std::string describe(const TestFunction& f) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Exponential& e) { os << "exp:" << e.lambda.real() << ":" << e.lambda.imag(); },
                 [&](const MonomialExponential& e) {
                   os << "monexp:" << e.N << ":" << e.lambda.real() << ":" << e.lambda.imag();
                 },
                 [&](const NormalizedKernel& e) { os << "kernel:" << e.lambda << ":" << e.p; },
                 [&](const Lacunary& e) { os << "lacunary:" << e.n_lo << ":" << e.alpha.size() << ":" << e.p; },
                 [&](const ExponentialSum& e) { os << "expsum:" << e.coeff.size(); },
                 [&](const Sampled& e) { os << "sampled:" << e.t.size(); },
                 [&](const PhiApproximant& e) { os << "phi:" << e.U; },
             },
             f);
  return os.str();
}

void validate(const TestFunction& f) {
  std::visit(overloaded{
                 [](const Exponential& e) { require(e.lambda.real() > 0, "Re lambda must be > 0"); },
                 [](const MonomialExponential& e) {
                   require(e.N >= 1, "monomial degree N must be >= 1");
                   require(e.lambda.real() > 0, "Re lambda must be > 0");
                 },
                 [](const NormalizedKernel& e) {
                   require(e.lambda > 0 && e.p >= 1, "kernel needs lambda > 0, p >= 1");
                 },
                 [](const Lacunary& e) {
                   require(e.p >= 1, "lacunary p must be >= 1");
                   for (double a : e.alpha) require(std::isfinite(a), "coefficients must be finite");
                 },
                 [](const ExponentialSum& e) {
                   require(e.coeff.size() == e.lambda.size(), "coefficient/exponent count mismatch");
                   for (auto l : e.lambda) require(l.real() > 0, "Re lambda must be > 0");
                 },
                 [](const Sampled& e) {
                   require(e.t.size() >= 2 && e.t.size() == e.values.size(), "sampled needs >= 2 points");
                   require(e.t.front() >= 0, "sampled grid must start at t >= 0");
                   for (std::size_t i = 1; i < e.t.size(); ++i)
                     require(e.t[i] > e.t[i - 1], "sampled grid must increase");
                 },
                 [](const PhiApproximant& e) { require(e.U > 0 && std::isfinite(e.U), "U must be > 0"); },
             },
             f);
}

cplx kernel(cplx lambda, cplx z) {
  require(lambda.real() > 0, "kernel needs Re lambda > 0");
  return 1.0 / (2 * kPi * (z + std::conj(lambda)));
}

double kernel_norm_sq(cplx lambda) {
  require(lambda.real() > 0, "kernel needs Re lambda > 0");
  return 1.0 / (4 * kPi * lambda.real());
}

double poisson_kernel(cplx z, double t) {
  require(z.real() > 0, "Poisson kernel needs Re z > 0");
  const double x = z.real(), d = z.imag() - t;
  return x / (kPi * (x * x + d * d));
}

double phi_profile(double s, double U) {
  const double a = std::abs(s);
  if (a <= 1) return 1;
  if (std::log(a) > U) return 0;
  return 1 / (std::sqrt(a) * (1 + std::log(a)));
}

double phi_norm_sq(double U) { return 2 * (2 - 1 / (1 + U)); }

double phi_axis_scaled(double U, double v) {
  require(U > 0 && v >= 0, "phi axis evaluation needs U > 0, v >= 0");
  // e^{v/2} (2/pi) atan(e^{-v}); atan(e^{-v}) = e^{-v} to double precision beyond v = 20
  const double core = v > 20 ? 2 / kPi * std::exp(-0.5 * v) : 2 / kPi * std::atan(std::exp(-v)) * std::exp(0.5 * v);
  // s 2x / (x^2 + s^2) = 1 / cosh(u - v); the kernel has decayed below 1e-17 beyond 80
  const double lo = std::max(0.0, v - 80), hi = std::min(U, v + 80);
  if (!(lo < hi)) return core;
  auto g = [&](double u) { return std::exp(-0.5 * (u - v)) / ((1 + u) * std::cosh(u - v)); };
  std::vector<double> br;
  if (v > lo && v < hi) br.push_back(v);
  return core + num::integrate(g, lo, hi, br) / kPi;
}

cplx evaluate(const TestFunction& f, double t) {
  if (t < 0) return 0;
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return std::exp(-e.lambda * t); },
          [&](const MonomialExponential& e) { return std::pow(t, e.N - 1) * std::exp(-e.lambda * t); },
          [&](const NormalizedKernel& e) {
            return cplx(std::pow(e.lambda, 1 / e.p) * std::exp(-e.lambda * t), 0);
          },
          [&](const Lacunary& e) {
            const ExponentialSum s = lacunary_terms(e);
            cplx v = 0;
            for (std::size_t k = 0; k < s.coeff.size(); ++k) v += s.coeff[k] * std::exp(-s.lambda[k] * t);
            return v;
          },
          [&](const ExponentialSum& s) {
            cplx v = 0;
            for (std::size_t k = 0; k < s.coeff.size(); ++k) v += s.coeff[k] * std::exp(-s.lambda[k] * t);
            return v;
          },
          [&](const Sampled& s) {
            if (t < s.t.front() || t > s.t.back()) return cplx(0);
            auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
            std::size_t i = static_cast<std::size_t>(it - s.t.begin());
            if (i >= s.t.size()) return cplx(s.values.back());
            i -= 1;
            const double w = (t - s.t[i]) / (s.t[i + 1] - s.t[i]);
            return cplx(s.values[i] + w * (s.values[i + 1] - s.values[i]));
          },
          [&](const PhiApproximant&) -> cplx {
            throw Error(ErrorKind::Precondition, "phi approximant has no closed time-domain form");
          },
      },
      f);
}

cplx laplace(const TestFunction& f, cplx z) {
  validate(f);
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return 1.0 / (z + e.lambda); },
          [&](const MonomialExponential& e) { return std::tgamma(double(e.N)) / std::pow(z + e.lambda, e.N); },
          [&](const NormalizedKernel& e) { return std::pow(e.lambda, 1 / e.p) / (z + e.lambda); },
          [&](const Lacunary& e) {
            const ExponentialSum s = lacunary_terms(e);
            cplx v = 0;
            for (std::size_t k = 0; k < s.coeff.size(); ++k) v += s.coeff[k] / (z + s.lambda[k]);
            return v;
          },
          [&](const ExponentialSum& s) {
            cplx v = 0;
            for (std::size_t k = 0; k < s.coeff.size(); ++k) v += s.coeff[k] / (z + s.lambda[k]);
            return v;
          },
          [&](const Sampled& s) {
            cplx v = 0;
            for (std::size_t i = 0; i + 1 < s.t.size(); ++i) {
              const double h = s.t[i + 1] - s.t[i];
              cplx e1, e2;
              segment_moments(z * h, e1, e2);
              v += std::exp(-z * s.t[i]) * h * (s.values[i] * e1 + (s.values[i + 1] - s.values[i]) * e2);
            }
            return v;
          },
          [&](const PhiApproximant& ph) {
            require(z.real() > 0, "phi approximant needs Re z > 0");
            // (1/pi) int phi(s) / (z - i s) ds; the core |s| <= 1 in closed form, the
            // even tails folded to 2z/(z^2 + s^2) and taken in u = log s.
            const cplx I(0, 1);
            const cplx core = I * (std::log(z - I) - std::log(z + I));
            auto part = [&](double u, bool imag) {
              // s 2z / (z^2 + s^2) with s = e^u, kept finite for large u
              const double e = std::exp(-u);
              const cplx v = phi_outer_part(u) * 2.0 * (z * e) / ((z * e) * (z * e) + 1.0);
              return imag ? v.imag() : v.real();
            };
            std::vector<double> br;
            const double lz = std::log(std::max(std::abs(z), 1e-300));
            if (lz > 0 && lz < ph.U) br.push_back(lz);
            const double re = num::integrate([&](double u) { return part(u, false); }, 0, ph.U, br);
            const double im = num::integrate([&](double u) { return part(u, true); }, 0, ph.U, br);
            return (core + cplx(re, im)) / kPi;
          },
      },
      f);
}

cplx laplace_numeric(const TestFunction& f, cplx z, num::QuadOptions opt) {
  validate(f);
  if (std::holds_alternative<PhiApproximant>(f))
    throw Error(ErrorKind::Precondition, "no time-domain quadrature for phi approximants");
  double lo = 0, hi = kInf;
  std::vector<double> br{1.0};
  if (const auto* s = std::get_if<Sampled>(&f)) {
    lo = s->t.front();
    hi = s->t.back();
    br = s->t;
  }
  auto g = [&](double t, bool imag) {
    const cplx v = std::exp(-z * t) * evaluate(f, t);
    return imag ? v.imag() : v.real();
  };
  const double re = num::integrate([&](double t) { return g(t, false); }, lo, hi, br, opt);
  const double im = num::integrate([&](double t) { return g(t, true); }, lo, hi, br, opt);
  return {re, im};
}

double lp_norm(const TestFunction& f, double p) {
  validate(f);
  require(p >= 1 && std::isfinite(p), "lp_norm needs p in [1, inf)");
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return std::pow(p * e.lambda.real(), -1 / p); },
          [&](const MonomialExponential& e) {
            const double a = (e.N - 1) * p + 1;
            return std::pow(std::tgamma(a) / std::pow(p * e.lambda.real(), a), 1 / p);
          },
          [&](const NormalizedKernel& e) { return std::pow(e.lambda, 1 / e.p) * std::pow(p * e.lambda, -1 / p); },
          [&](const Lacunary& e) {
            if (p == 2) return std::sqrt(expsum_l2_sq(lacunary_terms(e)));
            return lp_norm_numeric(f, p);
          },
          [&](const ExponentialSum& s) {
            if (p == 2) return std::sqrt(expsum_l2_sq(s));
            return lp_norm_numeric(f, p);
          },
          [&](const Sampled& s) {
            if (p != 2) return lp_norm_numeric(f, p);
            double tot = 0;
            for (std::size_t i = 0; i + 1 < s.t.size(); ++i) {
              const double a = s.values[i], b = s.values[i + 1];
              tot += (s.t[i + 1] - s.t[i]) * (a * a + a * b + b * b) / 3;
            }
            return std::sqrt(tot);
          },
          [&](const PhiApproximant& ph) {
            require(p == 2, "phi approximant norm is available for p = 2 only");
            // ||Lf||_{H^2} = sqrt(2) ||phi|| and ||Lf||_{H^2}^2 = 2 pi ||f||_2^2.
            return std::sqrt(phi_norm_sq(ph.U) / kPi);
          },
      },
      f);
}

double lp_norm_numeric(const TestFunction& f, double p, num::QuadOptions opt) {
  validate(f);
  if (std::holds_alternative<PhiApproximant>(f))
    throw Error(ErrorKind::Precondition, "no time-domain quadrature for phi approximants");
  auto g = [&](double t) { return std::pow(std::abs(evaluate(f, t)), p); };
  if (const auto* s = std::get_if<Sampled>(&f)) {
    double tot = 0;
    for (std::size_t i = 0; i + 1 < s->t.size(); ++i) tot += num::integrate(g, s->t[i], s->t[i + 1], {}, opt);
    return std::pow(tot, 1 / p);
  }
  return std::pow(num::integrate(g, 0, 1, {}, opt) + num::integrate(g, 1, kInf, {}, opt), 1 / p);
}

std::vector<double> pole_heights(const TestFunction& f) {
  return std::visit(overloaded{
                        [](const Exponential& e) { return std::vector<double>{-e.lambda.imag()}; },
                        [](const MonomialExponential& e) { return std::vector<double>{-e.lambda.imag()}; },
                        [](const NormalizedKernel&) { return std::vector<double>{0.0}; },
                        [](const Lacunary&) { return std::vector<double>{0.0}; },
                        [](const ExponentialSum& s) {
                          std::vector<double> v;
                          for (auto l : s.lambda) v.push_back(-l.imag());
                          return v;
                        },
                        [](const Sampled&) { return std::vector<double>{0.0}; },
                        [](const PhiApproximant&) { return std::vector<double>{-1.0, 0.0, 1.0}; },
                    },
                    f);
}

namespace {

double pole_offset(const TestFunction& f) {
  return std::visit(overloaded{
                        [](const Exponential& e) { return e.lambda.real(); },
                        [](const MonomialExponential& e) { return e.lambda.real(); },
                        [](const NormalizedKernel& e) { return e.lambda; },
                        [](const Lacunary& e) { return std::ldexp(1.0, e.n_lo); },
                        [](const ExponentialSum& s) {
                          double m = kInf;
                          for (auto l : s.lambda) m = std::min(m, l.real());
                          return s.lambda.empty() ? 1.0 : m;
                        },
                        [](const Sampled& s) { return 1.0 / std::max(1.0, s.t.back()); },
                        [](const PhiApproximant&) { return 1e-2; },
                    },
                    f);
}

}  // namespace

void ExponentPair::validate() const {
  require(p >= 1 && std::isfinite(p) && q >= 1 && std::isfinite(q), "exponents must lie in [1, inf)");
}

WeightFunction weight_from_measure(const RadialMeasure& nu) {
  nu.validate();
  WeightFunction w;
  const bool only_zero = nu.atoms.empty() && nu.powers.empty() && nu.tables.empty();
  if (only_zero) {
    std::ostringstream os;
    os.precision(17);
    os << "2*pi*" << nu.atom_at_zero;
    w.closed_form = os.str();
  } else if (nu.atom_at_zero == 0 && nu.atoms.empty() && nu.tables.empty() && nu.powers.size() == 1 &&
             nu.powers[0].lo == 0 && std::isinf(nu.powers[0].hi)) {
    const auto& p = nu.powers[0];
    w.closed_form = p.alpha == 0 && p.coeff == 1 ? "pi/t" : "2*pi*c*Gamma(alpha+1)/(2t)^(alpha+1)";
  }
  const double total = nu.total_mass();
  w.eval = [nu, total](double t) {
    if (!(t > 0)) {
      if (std::isinf(total)) throw Error(ErrorKind::DivergentWeight, "weight diverges at t <= 0");
      throw Error(ErrorKind::Precondition, "weight is defined for t > 0");
    }
    double s = nu.atom_at_zero;
    for (const auto& a : nu.atoms) s += a.mass * std::exp(-2 * a.at * t);
    for (const auto& p : nu.powers) {
      const double a = p.alpha + 1, x = 2 * t;
      if (a > 0) {
        double g;
        if (std::isinf(p.hi))
          g = boost::math::tgamma(a, x * p.lo);
        else
          g = boost::math::tgamma_lower(a, x * p.hi) - boost::math::tgamma_lower(a, x * p.lo);
        s += p.coeff * g / std::pow(x, a);
      } else {
        RadialMeasure one;
        one.powers.push_back(p);
        s += integrate_radial(one, [&](double r) { return std::exp(-2 * r * t); });
      }
    }
    if (!nu.tables.empty()) {
      RadialMeasure tab;
      tab.tables = nu.tables;
      s += integrate_radial(tab, [&](double r) { return std::exp(-2 * r * t); });
    }
    return 2 * kPi * s;
  };
  return w;
}

double line_integral(const AnalyticFn& f, double r, double p, const std::vector<double>& breaks,
                     num::QuadOptions opt) {
  auto g = [&](double y) { return std::pow(std::abs(f(cplx(r, y))), p); };
  return num::integrate(g, -kInf, kInf, breaks, opt);
}

namespace {

std::vector<double> line_breaks(const std::vector<double>& heights, double d) {
  std::vector<double> br;
  for (double b : heights) {
    br.push_back(b);
    for (double s : {1.0, 8.0, 64.0}) {
      br.push_back(b - s * d);
      br.push_back(b + s * d);
    }
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

}  // namespace

double zen_norm(const AnalyticFn& f, const RadialMeasure& nu, double p, ZenNormOptions opt) {
  nu.validate();
  require(p >= 1 && std::isfinite(p), "zen_norm needs p in [1, inf)");
  num::QuadOptions inner = opt.quad;
  inner.rel_tol = opt.quad.rel_tol * 0.1;
  const std::vector<double> heights = opt.line_breaks.empty() ? std::vector<double>{0.0} : opt.line_breaks;
  auto g = [&](double r) {
    return line_integral(f, r, p, line_breaks(heights, std::max(r, 1e-3) + 1e-3), inner);
  };
  for (const auto& pc : nu.powers) {
    if (!std::isinf(pc.hi) || pc.coeff == 0) continue;
    const double R = std::max(opt.probe_r, pc.lo * 1e3);
    const double e = num::log_slope(g, R);
    if (pc.alpha + e > -1.05)
      throw Error(ErrorKind::DivergentNorm, "radial integral diverges at infinity");
  }
  const double total = integrate_radial(nu, g, Span::half_open(0, kInf), {1.0}, opt.quad);
  return std::pow(total, 1 / p);
}

double zen_norm(const TestFunction& f, const RadialMeasure& nu, double p) {
  validate(f);
  ZenNormOptions opt;
  opt.line_breaks = pole_heights(f);
  const double d = pole_offset(f);
  auto F = [&f](cplx z) { return laplace(f, z); };
  num::QuadOptions inner;
  inner.rel_tol = 1e-10;
  const std::vector<double> heights = opt.line_breaks;
  auto g = [&](double r) { return line_integral(F, r, p, line_breaks(heights, r + d), inner); };
  for (const auto& pc : nu.powers) {
    if (!std::isinf(pc.hi) || pc.coeff == 0) continue;
    const double R = std::max(1e6, pc.lo * 1e3);
    const double e = num::log_slope(g, R);
    if (pc.alpha + e > -1.05)
      throw Error(ErrorKind::DivergentNorm, "radial integral diverges at infinity");
  }
  const double total = integrate_radial(nu, g, Span::half_open(0, kInf), {d, 1.0}, {});
  return std::pow(total, 1 / p);
}

SobolevResult sobolev_norm(const Sampled& f, double beta) {
  validate(TestFunction{f});
  require(beta >= 0, "beta must be >= 0");
  const std::size_t n = f.t.size();
  const double h = (f.t.back() - f.t.front()) / double(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    require(std::abs(f.t[i] - f.t[i - 1] - h) <= 1e-9 * h, "sobolev_norm needs a uniform grid");
  double vmax = 0;
  for (double v : f.values) vmax = std::max(vmax, std::abs(v));
  require(std::abs(f.values.front()) <= 1e-10 * vmax && std::abs(f.values.back()) <= 1e-10 * vmax,
          "samples must decay below 1e-10 of the maximum at the grid edge");

  std::size_t M = 1;
  while (M < 4 * n) M <<= 1;
  double* in = fftw_alloc_real(M);
  fftw_complex* out = fftw_alloc_complex(M / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in, out, FFTW_ESTIMATE);
  std::fill(in, in + M, 0.0);
  for (std::size_t i = 0; i < n; ++i) in[i] = f.values[i];
  fftw_execute(plan);

  SobolevResult r;
  std::vector<double> l2(n);
  for (std::size_t i = 0; i < n; ++i) l2[i] = f.values[i] * f.values[i];
  r.l2_sq = h * num::pairwise_sum(l2);
  std::vector<double> energy(M / 2 + 1), weighted(M / 2 + 1);
  double tail = 0;
  for (std::size_t k = 0; k <= M / 2; ++k) {
    const double mult = (k == 0 || k == M / 2) ? 1.0 : 2.0;
    const double e = mult * (out[k][0] * out[k][0] + out[k][1] * out[k][1]);
    const double xi = 2 * kPi * double(k) / (double(M) * h);
    energy[k] = e;
    weighted[k] = e * (beta == 0 ? 1.0 : std::pow(xi, 2 * beta));
    if (8 * k > 3 * M) tail += e;
  }
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
  const double etot = num::pairwise_sum(energy);
  r.tail_fraction = etot > 0 ? tail / etot : 0;
  if (r.tail_fraction > 0.01)
    throw Error(ErrorKind::GridTooCoarse, "more than 1% of the spectral energy sits in the top quarter band");
  r.deriv_sq = h / double(M) * num::pairwise_sum(weighted);
  if (beta > 0) {
    // The rule sum_{k>=1} (k dxi)^{2 beta} g(k dxi) dxi overshoots the integral by
    // dxi^{2 beta + 1} (zeta(-2 beta) g(0) + zeta(-2 beta - 2) g''(0) dxi^2 / 2), zero for
    // integer beta; g is even, so g''(0) dxi^2 / 2 ~ g(dxi) - g(0).
    const double dxi = 2 * kPi / (double(M) * h);
    const double g0 = h * h * energy[0], g1 = h * h * energy[1] / 2;
    const double c = boost::math::zeta(-2 * beta) * g0 + boost::math::zeta(-2 * beta - 2) * (g1 - g0);
    r.deriv_sq -= c * std::pow(dxi, 2 * beta + 1) / kPi;
  }
  r.norm = std::sqrt(r.l2_sq + r.deriv_sq);
  return r;
}

bool PaleyWienerResult::agree(double tol) const {
  if (lhs_divergent || rhs_divergent) return lhs_divergent && rhs_divergent;
  return gap <= tol;
}

PaleyWienerResult paley_wiener_check(const RadialMeasure& nu, const TestFunction& f) {
  PaleyWienerResult out;
  try {
    const double z = zen_norm(f, nu, 2);
    out.lhs = z * z;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivergentNorm) throw;
    out.lhs = kInf;
    out.lhs_divergent = true;
  }
  const WeightFunction w = weight_from_measure(nu);
  auto h = [&](double t) { return std::norm(evaluate(f, t)) * w(t); };
  // Power-law behaviour near 0 decides convergence; below eps the integrand is
  // replaced by its local power law.
  const double eps = 1e-10;
  const double h0 = h(eps);
  const double slope = h0 > 0 ? num::log_slope(h, eps) : 0.0;
  if (h0 > 0 && slope <= -0.95) {
    out.rhs = kInf;
    out.rhs_divergent = true;
  } else {
    out.rhs = h0 * eps / (1 + slope) + num::integrate_singular(h, eps, 1) + num::integrate(h, 1, kInf);
  }
  if (out.lhs_divergent || out.rhs_divergent) {
    out.gap = out.lhs_divergent && out.rhs_divergent ? 0 : kInf;
  } else if (out.rhs == 0) {
    out.gap = out.lhs == 0 ? 0 : kInf;
  } else {
    out.gap = std::abs(out.lhs - out.rhs) / out.rhs;
  }
  return out;
}

}  // namespace carleson
