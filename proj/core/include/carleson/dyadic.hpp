#pragma once

#include <optional>
#include <vector>

#include "carleson/measure.hpp"

namespace carleson {

// a_n for n = n_first .. n_first + a.size() - 1, and beta_n = nu([a_n, a_{n+1})).
// With an atom at zero a_0 = 0 and betas[0] is the mass of the open interval (0, a_1).
struct AdaptedSequence {
  int n_first = 0;
  std::vector<double> a;
  std::vector<double> betas;
  double c = 0.5;
  double R = 1;
  double zero_atom = 0;
  double below_mass = 0;  // F(a_first)
  double tail_mass = 0;   // nu([a_last, inf))
  bool truncated_right = false;

  int n_last() const { return n_first + static_cast<int>(a.size()) - 1; }
  double at(int n) const;
  double beta(int n) const;
  double min_separation() const;
};

struct SequenceOptions {
  std::vector<double> probe_grid = default_probe_grid();
  std::optional<double> R;
  double cap = 1e8;
};

// sup{r >= 0 : F(r) <= target}; +inf when the total mass does not exceed target.
// Returns the largest probed radius with F(r) <= target, so atoms sitting exactly at
// the supremum are not counted in F(a_n).
double cdf_level_sup(const RadialMeasure& nu, double target, int iterations = 60);

AdaptedSequence build_adapted_sequence(const RadialMeasure& nu, int n_min, int n_max,
                                       const SequenceOptions& opt = {});

struct RefinedSequence {
  std::vector<double> b;
  std::vector<std::optional<int>> parent;  // n with b_j == a_n
  double c = 0;
  int N = 0;
};

inline constexpr double kRefineC = 0.29289321881345254;  // 1 - 1/sqrt(2)

RefinedSequence refine_sequence(const AdaptedSequence& a, int N);
RefinedSequence refine_points(const std::vector<double>& a, int N = 0);
// b_{j+1}/b_j in [1/(1-c), 1/(1-c)^2), lower edge with a slack of a few ulps.
bool satisfies_geometric_bounds(const RefinedSequence& r);

struct Tile {
  int j = 0;
  long k = 0;
  double x_lo = 0, x_hi = 0;
  double y_lo = 0, y_hi = 0;
  Box box() const { return {Span::half_open(x_lo, x_hi), Span::half_open(y_lo, y_hi)}; }
};

// Tiles [b_j, b_{j+1}) x [kL_j, (k+1)L_j) over y in [-extent/2, extent/2).
struct TileSet {
  RefinedSequence seq;
  double extent = 0;
  std::vector<double> sizes;       // L_j
  std::vector<std::size_t> first;  // index of the first tile of generation j; first[J] = total
  std::vector<Tile> tiles;

  int generations() const { return static_cast<int>(sizes.size()); }
  long count(int j) const { return static_cast<long>(first[j + 1] - first[j]); }
  long k_min(int j) const;
  const Tile& at(int j, long k) const { return tiles[index(j, k)]; }
  std::size_t index(int j, long k) const { return first[j] + static_cast<std::size_t>(k - k_min(j)); }
  // (0, b_{j+1}) x I_{j,k} as a half-open box.
  Box square(int j, long k) const;
  // Generation j-1 intervals inside I_{j,k}.
  std::vector<long> children(int j, long k) const;
};

// Smallest a_N 2^m with b <= sqrt(2) L.
double generation_size(double b_next, double a_N);
TileSet build_tiles(const RefinedSequence& b, double y_extent);

struct TypeLogEntry {
  int n = 0;
  int j = 0;
  long k = 0;
  int type = 0;
};

struct FamilyRatio {
  double constant = 0;
  int j = -1;
  long k = 0;
  int n = 0;
};

struct Decomposition {
  int N = 0;
  std::vector<HalfPlaneMeasure> parts;
  std::vector<double> line_masses;           // beta-hat_n: nu_n = beta-hat_n delta_{a_n} x lambda
  std::vector<double> line_x;                // a_n
  std::vector<double> tile_mass;             // mu(T) after restriction
  std::vector<std::vector<double>> assigned; // [stage][tile] = mu_n(T)
  std::vector<TypeLogEntry> type_log;
  double truncation_loss = 0;
  double snapped_residue = 0;
  FamilyRatio domination;                    // max over n, F of mu_n(Q_{I,j}) / nu_n(Q_{I,j})

  const HalfPlaneMeasure& part(int n) const { return parts.at(static_cast<std::size_t>(n - N)); }
};

// Line masses used by decompose: F(a_{N+1}) for the first stage, beta_n afterwards.
std::vector<double> stage_line_masses(const AdaptedSequence& a, int N, int n_end);

// sup over F of mu(Q_{I,j}) / nu-hat(Q_{I,j}), nu-hat = sum_n beta-hat_n delta_{a_n} x lambda.
FamilyRatio family_domination(const HalfPlaneMeasure& mu, const TileSet& tiles,
                              const AdaptedSequence& a);

Decomposition decompose(const HalfPlaneMeasure& mu, const RadialMeasure& nu, const TileSet& tiles,
                        const AdaptedSequence& a);

struct ShiftedConstant {
  double constant = 0;
  std::optional<CarlesonSquare> witness;
  // sup of mu_n(Q~) / nu_n(Q~) over the covering squares Q~ = (0, shift + |I|) x I.
  double c_prime = 0;
};

// sup mu_n(Q) / |I| over squares {shift < x < shift + |I|, |y - c| < |I|/2}.
ShiftedConstant shifted_carleson_constant(const HalfPlaneMeasure& mu_n, double shift,
                                          double line_x = -1, double line_mass = 0,
                                          std::vector<double> sides = {});

}  // namespace carleson
