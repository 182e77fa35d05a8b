#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "carleson/balayage.hpp"
#include "carleson/measure.hpp"
#include "carleson/transforms.hpp"

namespace carleson {

using Witness = std::variant<std::monostate, CarlesonSquare, cplx, int>;

struct EmbeddingVerdict {
  std::string criterion;  // e.g. "classical.square", "pq.3"
  double constant = 0;
  Witness witness;
  bool divergent = false;
  double cap = num::kInf;
  bool pass = true;  // constant <= cap and not divergent
  std::string grid;  // grid descriptor
  std::string notes;
};

struct SequenceCondition {
  int n_lo = 0;
  std::vector<double> values;
  double s = 1;  // exponent of the l^s space
  double norm = 0;
  bool divergent = false;
  double out_of_window = 0;  // mass of mu outside the windowed slabs
};

// Grid controls shared by every check. Each refinement level doubles the densities.
struct GridOptions {
  int per_octave = 2;        // square sides and real parts of lambda
  int im_points = 9;         // imaginary offsets per real part, on top of the atom heights
  int uniform_centers = 8;   // square centres swept across the support
  double cap = 1e6;
  double refine_tol = 0.01;  // stop when the constant moves less than this (relative)
  int max_levels = 4;
  bool refine = true;
  int n_lo = -20, n_hi = 20;  // dyadic window
};

std::string describe(const Witness& w);

// Points lambda (or z) in C_+ spread over the scales of mu; level doubles densities.
std::vector<cplx> lambda_grid(const HalfPlaneMeasure& mu, const GridOptions& opt, int level);

// ||L f||_{L^q(mu)}
double transform_lq_norm(const HalfPlaneMeasure& mu, const TestFunction& f, double q);

struct LowerBound {
  double bound = 0;
  int argmax = -1;
  std::vector<double> ratios;
};

// max over the family of ||Lf||_{L^q(mu)} / ||f||_p.
LowerBound embedding_norm_lower_bound(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                      const std::vector<TestFunction>& family);

struct ClassicalReport {
  EmbeddingVerdict square, kernel, empirical;
};

// Square sup with gauge |I|, kernel test sup (Re lambda / pi) int dmu / |z + conj(lambda)|^2,
// and the L^2(0, inf) -> L^2(mu) lower bound over exponentials e^{-conj(lambda) t}.
ClassicalReport check_classical_carleson(const HalfPlaneMeasure& mu, const GridOptions& opt = {});

int select_kernel_power(double R, double p);

struct ZenReport {
  EmbeddingVerdict square, kernel_power;
  int N = 0;
  double R = 1;
};

// std::nullopt picks the kernel power automatically.
ZenReport check_zen_embedding(const HalfPlaneMeasure& mu, const RadialMeasure& nu, double p,
                              std::optional<int> N = std::nullopt, const GridOptions& opt = {});
// int |k_lambda^N|^p dnu for nu = nu-tilde (tensor) Lebesgue; depends on Re lambda only.
double kernel_power_reference(const RadialMeasure& nu, double a, int N, double p);

// sup mu(Q) / |I|^{q/p'} (gauge 1 when p = 1).
EmbeddingVerdict check_necessary_power_bound(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                             const GridOptions& opt = {});

// ||L e^{-.z}||_{L^q(mu)} / ||e^{-.z}||_p
double exponential_test_ratio(const HalfPlaneMeasure& mu, const ExponentPair& pq, cplx z);

struct PQReport {
  EmbeddingVerdict power_bound, exponential, empirical;
};

PQReport check_pprime_le_q(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                           const GridOptions& opt = {});

struct SectorQgepReport {
  EmbeddingVerdict symmetric_square, real_exponential, dyadic_exponential, empirical;
  std::vector<double> dyadic_values;  // ratio at lambda = 2^n, n = opt.n_lo .. opt.n_hi
};

SectorQgepReport check_sectorial_qgep(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                      const SectorSpec& sector = {}, const GridOptions& opt = {});

struct BalayageCondition {
  double norm = 0;  // (int |t^e S_mu(t)|^s dt)^{1/s}
  bool divergent = false;
  std::string reason;
  double exponent = 0;  // e = q (2 - p) / p
  double s = 1;         // p / (p - q)
};

// Throws BalayageNotApplicable unless p' < q.
BalayageCondition balayage_condition(const HalfPlaneMeasure& mu, const ExponentPair& pq);

struct SectorPlqReport {
  SequenceCondition slab_masses;     // 2^{-n q/p'} mu(S_n) in l^{p/(p-q)}
  SequenceCondition kernel_norms;    // 2^{n/p} ||L k_{2^n}||_{L^q(mu)} in l^{qp/(p-q)}
  std::optional<BalayageCondition> balayage;
  EmbeddingVerdict empirical;
  std::string notes;
};

SectorPlqReport check_sectorial_plq(const HalfPlaneMeasure& mu, const ExponentPair& pq,
                                    const SectorSpec& sector = {}, const GridOptions& opt = {});

struct MacaevReport {
  bool defined = false;  // false for the zero coefficient vector
  double ratio = 0;
  double lambda_min = 0, lambda_max = 0;  // Gram eigenvalues, p = 2 only
};

// ||sum alpha_n k~_{2^n}||_p / ||alpha||_p with n = n_lo + index.
MacaevReport gurarii_macaev_ratio(const std::vector<double>& alpha, int n_lo, double p);
// <k~_{2^m}, k~_{2^n}> = 2^{(m+n)/2} / (2^m + 2^n)
std::vector<std::vector<double>> lacunary_gram(int n_lo, int n_hi);

struct CounterexampleReport {
  // mu = dx / sqrt(x) on [1, inf)
  RatioSup square;  // mu(Q) / sqrt(h) over the sweep
  std::size_t squares = 0;
  bool square_ok = false;  // constant <= 2
  std::vector<double> cone_t, cone_quad, cone_closed;  // int_{[t,inf)} x^{-1} dmu = 2 t^{-1/2}
  double partial_T_log = 100;  // log T
  double partial_quad = 0, partial_closed = 0;  // int_1^T phi(t) t^{-1/2} dt = log(1 + log T)
  std::vector<double> U, lower_bounds;  // embedding lower bounds at p = 2, q = 1
  double best_lower_bound = 0;
  bool ok(double target = 10) const;
};

struct CounterexampleOptions {
  int squares = 64;
  double log_T = 100;
  std::vector<double> U{10, 100, 1000, 10000};
};

CounterexampleReport counterexample_suite(const CounterexampleOptions& opt = {});
HalfPlaneMeasure counterexample_measure();

struct StripReport {
  EmbeddingVerdict power_bound, exponential, empirical;
  double predicted_bound = 0;  // 2 pi C^{1/q} (a2 / a1)^{1/2 - 1/p}
};

StripReport check_strip(const HalfPlaneMeasure& mu, const ExponentPair& pq, const StripSpec& strip,
                        const GridOptions& opt = {});

enum class SobolevMode { Sectorial, L2 };

struct SobolevReport {
  HalfPlaneMeasure transformed;
  EmbeddingVerdict verdict;  // Carleson constant of the transformed measure
  EmbeddingVerdict empirical;  // over (1+z)^{-beta} L e^{-lambda t}, normalised in H^2
};

SobolevReport check_sobolev(const HalfPlaneMeasure& mu, double beta, const ExponentPair& pq,
                            SobolevMode mode, const GridOptions& opt = {});

}  // namespace carleson
