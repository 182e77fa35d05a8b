#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace carleson::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_floor = 1e-14;
};

// Adaptive integral of f over [a, b]; either end may be infinite. Breakpoints
// strictly inside (a, b) split the range so that peaks and kinks sit on panel
// edges. Throws QuadratureFailure when the error estimate misses tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breaks = {}, QuadOptions opt = {});

// Both a and b are finite and f may have integrable endpoint singularities.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          QuadOptions opt = {});

std::vector<double> geometric_grid(double lo, double hi, double ratio);
std::vector<double> linear_grid(double lo, double hi, int n);

// Fixed-order pairwise summation, so reductions are reproducible.
double pairwise_sum(const std::vector<double>& v);

// l^s norm; s = infinity gives the max norm.
double sequence_norm(const std::vector<double>& v, double s);

// Local power-law exponent of a positive function around x, from g(x) and g(2x).
double log_slope(const std::function<double(double)>& g, double x);

}  // namespace carleson::num
