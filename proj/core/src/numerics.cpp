#include "carleson/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "carleson/error.hpp"

namespace carleson {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::ZeroMassNearOrigin: return "ZeroMassNearOrigin";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotDoubling: return "NotDoubling";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::CarlesonViolation: return "CarlesonViolation";
    case ErrorKind::DivergentWeight: return "DivergentWeight";
    case ErrorKind::DivergentNorm: return "DivergentNorm";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NotSectorial: return "NotSectorial";
    case ErrorKind::BalayageNotApplicable: return "BalayageNotApplicable";
    case ErrorKind::ExponentWindow: return "ExponentWindow";
    case ErrorKind::NotInStrip: return "NotInStrip";
    case ErrorKind::InverseDoublingFails: return "InverseDoublingFails";
    case ErrorKind::EigenvalueInRightHalfPlane: return "EigenvalueInRightHalfPlane";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

namespace num {

namespace {

struct Panel {
  double value = 0;
  double error = 0;
  double l1 = 0;
};

Panel finite_panel(const std::function<double(double)>& f, double a, double b,
                   const QuadOptions& opt) {
  using boost::math::quadrature::gauss_kronrod;
  Panel p;
  p.value = gauss_kronrod<double, 61>::integrate(f, a, b, 18, opt.rel_tol * 1e-2, &p.error, &p.l1);
  if (p.error <= std::max(opt.rel_tol * p.l1, opt.abs_floor)) return p;
  // Kronrod struggles with endpoint singularities; tanh-sinh usually does not.
  boost::math::quadrature::tanh_sinh<double> ts(12);
  Panel q;
  q.value = ts.integrate(f, a, b, opt.rel_tol * 1e-2, &q.error, &q.l1);
  return q.error < p.error ? q : p;
}

Panel tail_panel(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  Panel p;
  if (std::isinf(a) && std::isinf(b)) {
    boost::math::quadrature::sinh_sinh<double> ss(12);
    p.value = ss.integrate(f, opt.rel_tol * 1e-2, &p.error, &p.l1);
  } else {
    boost::math::quadrature::exp_sinh<double> es(12);
    p.value = es.integrate(f, a, b, opt.rel_tol * 1e-2, &p.error, &p.l1);
  }
  return p;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breaks, QuadOptions opt) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, breaks, opt);
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double x : breaks)
    if (x > a && x < b && std::isfinite(x)) inner.push_back(x);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  pts.insert(pts.end(), inner.begin(), inner.end());
  pts.push_back(b);

  double total = 0, err = 0, l1 = 0;
  try {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double lo = pts[i], hi = pts[i + 1];
      Panel p = (std::isinf(lo) || std::isinf(hi)) ? tail_panel(f, lo, hi, opt)
                                                   : finite_panel(f, lo, hi, opt);
      total += p.value;
      err += p.error;
      l1 += p.l1;
    }
  } catch (const std::exception& e) {
    throw Error(ErrorKind::QuadratureFailure, e.what());
  }
  if (!std::isfinite(total))
    throw Error(ErrorKind::QuadratureFailure, "non-finite integral");
  const double allowed = std::max(opt.rel_tol * l1, opt.abs_floor * double(pts.size() - 1));
  if (err > allowed)
    throw Error(ErrorKind::QuadratureFailure,
                "error estimate " + std::to_string(err) + " exceeds " + std::to_string(allowed));
  return total;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          QuadOptions opt) {
  if (a == b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0, l1 = 0, v = 0;
  try {
    v = ts.integrate(f, a, b, opt.rel_tol * 1e-2, &err, &l1);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::QuadratureFailure, e.what());
  }
  if (!std::isfinite(v) || err > std::max(opt.rel_tol * l1, opt.abs_floor))
    throw Error(ErrorKind::QuadratureFailure, "tanh-sinh did not converge");
  return v;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0) || !(hi >= lo) || !(ratio > 1))
    throw Error(ErrorKind::Precondition, "geometric grid needs 0 < lo <= hi and ratio > 1");
  std::vector<double> g;
  const int n = int(std::floor(std::log(hi / lo) / std::log(ratio) + 1e-9));
  for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(ratio, i));
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "linear grid needs n >= 1");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

namespace {
double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}
}  // namespace

double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

double sequence_norm(const std::vector<double>& v, double s) {
  if (std::isinf(s)) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> pw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) pw[i] = std::pow(std::abs(v[i]), s);
  return std::pow(pairwise_sum(pw), 1.0 / s);
}

double log_slope(const std::function<double(double)>& g, double x) {
  const double g1 = g(x), g2 = g(2 * x);
  if (!(g1 > 0) || !(g2 > 0)) return -kInf;
  return std::log(g2 / g1) / std::log(2.0);
}

}  // namespace num
}  // namespace carleson
