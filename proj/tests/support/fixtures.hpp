#pragma once

// Random problem instances built on the library (unlike oracles.hpp).

#include <algorithm>
#include <cmath>

#include "carleson/dyadic.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace carleson;

struct DecompositionCase {
  HalfPlaneMeasure mu;
  RadialMeasure nu;
  AdaptedSequence a;
  TileSet tiles;
  double scale = 1;  // factor applied to the raw atoms to meet the domination precondition
};

inline TileSet tiles_for(const AdaptedSequence& a, int N, double y_need) {
  const RefinedSequence r = refine_sequence(a, N);
  double L = 0;
  for (std::size_t j = 0; j + 1 < r.b.size(); ++j) L = std::max(L, generation_size(r.b[j + 1], r.b.front()));
  double mult = 1;
  while (mult * L < y_need) mult *= 2;
  return build_tiles(r, 2 * L * mult);
}

// nu is Lebesgue or a power law; mu is an atom cloud inside the tiled region,
// scaled so that family_domination(mu) = target.
inline DecompositionCase random_decomposition_case(oracle::Rng& g, double target = 0.9) {
  DecompositionCase c;
  const int kind = static_cast<int>(oracle::uniform(g, 0, 3));
  c.nu = kind == 0 ? RadialMeasure::lebesgue() : RadialMeasure::power_law(kind == 1 ? 1.0 : 0.5);
  c.a = build_adapted_sequence(c.nu, -1, 1);
  const int N = c.a.n_first;
  const double x_lo = c.a.at(N), x_hi = c.a.at(c.a.n_last());
  c.tiles = tiles_for(c.a, N, x_hi);
  const double half = 0.5 * c.tiles.extent;
  const int n = 4 + static_cast<int>(oracle::uniform(g, 0, 20));
  std::vector<Atom> atoms = oracle::random_atoms(g, n, x_lo, x_hi * (1 - 1e-9), -half, half * (1 - 1e-9));
  HalfPlaneMeasure raw = HalfPlaneMeasure::from_atoms(atoms);
  const double dom = family_domination(raw, c.tiles, c.a).constant;
  c.scale = dom > 0 ? target / dom : 1;
  c.mu = scale_measure(raw, c.scale);
  return c;
}

}  // namespace fixture
