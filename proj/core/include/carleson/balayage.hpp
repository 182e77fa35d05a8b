#pragma once

#include <vector>

#include "carleson/measure.hpp"
#include "carleson/transforms.hpp"

namespace carleson {

struct SectorSpec {
  double theta = 0.4636476090008061;  // arctan(1/2)
  bool contains(cplx z) const { return z.real() > 0 && std::abs(std::arg(z)) < theta; }
};

struct StripSpec {
  double a1 = 1, a2 = 1;
  bool contains(cplx z) const { return z.real() >= a1 && z.real() <= a2; }
};

bool supported_in(const HalfPlaneMeasure& mu, const SectorSpec& s);
bool supported_in(const HalfPlaneMeasure& mu, const StripSpec& s);

// T_{n,k} = {2^{n-1} < x <= 2^n, k 2^n - 2^{n-1} < y <= k 2^n + 2^{n-1}}.
struct DyadicCell {
  int n = 0;
  long k = 0;
  Box box() const;
  Span interval() const;  // I_{n,k}, same half-open convention as the cell
  static Box slab(int n);  // S_n
  // Unique k with t in I_{n,k}.
  static long index_of(int n, double t);
};

struct CellTable {
  int n_lo = 0, n_hi = -1;
  long k_lo = 0, k_hi = -1;
  std::vector<std::vector<double>> cells;  // [n - n_lo][k - k_lo]
  std::vector<double> slab;                // mu(S_n)
  std::vector<double> outside;             // mu(S_n) minus the in-range row sum
  std::size_t boundary_atoms = 0;          // atoms on a cell edge (assigned to the lower cell)
  double at(int n, long k) const;
};

CellTable cell_masses(const HalfPlaneMeasure& mu, int n_lo, int n_hi, long k_lo, long k_hi);

struct BalayageValue {
  double value = 0;
  bool divergent = false;
};

// S_mu(t) = int p_z(t) dmu(z).
BalayageValue balayage_eval(const HalfPlaneMeasure& mu, double t);
// sum over the ranges of chi_{I_{n,k}}(t) mu(T_{n,k}) / 2^n; at most (5 pi / 2) S_mu(t).
double dyadic_balayage(const HalfPlaneMeasure& mu, double t, int n_lo, int n_hi, long k_lo, long k_hi);

struct LayerReport {
  std::vector<double> layers;  // S^d_{mu,k}(t), k = 0 .. k_max
  std::vector<double> scaled;  // S^d_{mu,0}(2^k t)
  bool identity_holds = true;
};

// S^d_{mu,k}(t) = sum_n chi_{I_n \ I_{n-1}}(t) mu(T_{n+k}) / 2^{n+k}, n over [n_lo, n_hi].
LayerReport sectorial_balayage_layers(const HalfPlaneMeasure& mu, double t, int k_max, int n_lo,
                                      int n_hi, const SectorSpec& sector = {});
// (1/pi) (64 sum_{j=j_min}^{-1} 2^{2j} S^d_{mu,0}(2^j t) + 2 S^d_mu(t)), an upper bound for S_mu(t)
// when mu is sectorial (up to the truncation at j_min).
double balayage_upper_estimate(const HalfPlaneMeasure& mu, double t, int n_lo, int n_hi,
                               int j_min = -60);

// Step function v_i on [t_i, t_{i+1}); zero outside the grid.
struct StepFunction {
  std::vector<double> t;
  std::vector<double> values;  // size t.size() - 1
  void validate() const;
};

// sup over grid-aligned [t_a, t_b] containing t of the mean of f (t is added as a node
// when it falls outside the grid).
double maximal_function(const StepFunction& f, double t);
cplx laplace_step(const StepFunction& f, cplx z);

struct MaximalEstimate {
  double constant = 0;  // sup |Lf(z)| / (2^{-n+1} Mf(2^{-n+1}))
  cplx witness{0, 0};
};

// Empirical C_Theta over the sample points (each assigned to its cell T_n).
MaximalEstimate maximal_kernel_constant(const StepFunction& f, const std::vector<cplx>& zs);

}  // namespace carleson
