#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "carleson/measure.hpp"

namespace carleson {

// e^{-lambda t}
struct Exponential {
  cplx lambda{1, 0};
};

// t^{N-1} e^{-lambda t}; its Laplace transform is (N-1)!/(z+lambda)^N.
struct MonomialExponential {
  int N = 1;
  cplx lambda{1, 0};
};

// lambda^{1/p} e^{-lambda t}
struct NormalizedKernel {
  double lambda = 1;
  double p = 2;
};

// sum_n alpha_n k~_{2^n}, n = n_lo .. n_lo + alpha.size() - 1
struct Lacunary {
  int n_lo = 0;
  std::vector<double> alpha;
  double p = 2;
};

// sum_k c_k e^{-lambda_k t}
struct ExponentialSum {
  std::vector<cplx> coeff;
  std::vector<cplx> lambda;
};

// Piecewise-linear through (t_i, v_i), zero outside [t_0, t_last].
struct Sampled {
  std::vector<double> t;
  std::vector<double> values;
};

// The inverse Laplace transform of the H^2 function whose boundary real part is
// phi_U(s) = 1 for |s| <= 1, |s|^{-1/2} (1 + log|s|)^{-1} for 1 < |s| <= e^U, 0 beyond.
struct PhiApproximant {
  double U = 1;
};

using TestFunction = std::variant<Exponential, MonomialExponential, NormalizedKernel, Lacunary,
                                  ExponentialSum, Sampled, PhiApproximant>;

std::string describe(const TestFunction& f);
void validate(const TestFunction& f);

cplx kernel(cplx lambda, cplx z);
double kernel_norm_sq(cplx lambda);
double poisson_kernel(cplx z, double t);

// Time-domain value; PhiApproximant is not available pointwise.
cplx evaluate(const TestFunction& f, double t);
cplx laplace(const TestFunction& f, cplx z);
// Direct quadrature of int_0^inf e^{-zt} f(t) dt.
cplx laplace_numeric(const TestFunction& f, cplx z, num::QuadOptions opt = {});
double lp_norm(const TestFunction& f, double p);
double lp_norm_numeric(const TestFunction& f, double p, num::QuadOptions opt = {});
// Imaginary parts of the poles of Lf (where |Lf| peaks along vertical lines).
std::vector<double> pole_heights(const TestFunction& f);

double phi_profile(double s, double U);
double phi_norm_sq(double U);
// e^{v/2} F(e^v) for the phi approximant's transform F on the positive axis, taken in
// log coordinates so that truncations far beyond the double range stay finite.
double phi_axis_scaled(double U, double v);

struct ExponentPair {
  double p = 2;
  double q = 2;
  double p_conj() const { return p == 1 ? num::kInf : p / (p - 1); }
  void validate() const;
};

struct WeightFunction {
  std::function<double(double)> eval;
  std::string closed_form;  // empty when the evaluator uses quadrature
  double operator()(double t) const { return eval(t); }
};

WeightFunction weight_from_measure(const RadialMeasure& nu);

using AnalyticFn = std::function<cplx(cplx)>;

struct ZenNormOptions {
  num::QuadOptions quad{};
  std::vector<double> line_breaks;  // y-values where |f| concentrates
  double probe_r = 1e6;
};

// (int |f|^p dnu)^{1/p}, nu = nu-tilde x Lebesgue. Throws DivergentNorm when the
// radial integral diverges at infinity.
double zen_norm(const AnalyticFn& f, const RadialMeasure& nu, double p, ZenNormOptions opt = {});
double zen_norm(const TestFunction& f, const RadialMeasure& nu, double p);
// int_R |f(r + iy)|^p dy
double line_integral(const AnalyticFn& f, double r, double p,
                     const std::vector<double>& breaks = {}, num::QuadOptions opt = {});

struct SobolevResult {
  double norm = 0;
  double l2_sq = 0;
  double deriv_sq = 0;
  double tail_fraction = 0;
};

// (||f||_2^2 + ||D^beta f||_2^2)^{1/2}, D^beta the |xi|^beta Fourier multiplier on
// the zero-extended uniform grid.
SobolevResult sobolev_norm(const Sampled& f, double beta);

struct PaleyWienerResult {
  double lhs = 0;  // ||Lf||^2 in A^2_nu
  double rhs = 0;  // int |f|^2 w
  double gap = 0;
  bool lhs_divergent = false;
  bool rhs_divergent = false;
  bool agree(double tol) const;
};

PaleyWienerResult paley_wiener_check(const RadialMeasure& nu, const TestFunction& f);

}  // namespace carleson
