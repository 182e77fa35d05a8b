#include <gtest/gtest.h>

#include <cmath>

#include "carleson/balayage.hpp"
#include "carleson/error.hpp"
#include "oracles.hpp"

using namespace carleson;

namespace {

HalfPlaneMeasure atom(cplx z, double m = 1) { return HalfPlaneMeasure::from_atoms({{z, m}}); }

// mean of a step function over [a, b], summed cell by cell
double step_mean(const StepFunction& f, double a, double b) {
  double s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double lo = std::max(a, f.t[i]), hi = std::min(b, f.t[i + 1]);
    if (hi > lo) s += f.values[i] * (hi - lo);
  }
  return s / (b - a);
}

double brute_maximal(const StepFunction& f, double t) {
  std::vector<double> nodes = f.t;
  if (t < f.t.front() || t > f.t.back()) nodes.push_back(t);
  double best = 0;
  for (double a : nodes)
    for (double b : nodes)
      if (a <= t && t <= b && a < b) best = std::max(best, step_mean(f, a, b));
  return best;
}

}  // namespace

TEST(DyadicCell, IndexAndBoxConventions) {
  const Box b = DyadicCell{2, 1}.box();
  EXPECT_TRUE(b.x.contains(4));
  EXPECT_FALSE(b.x.contains(2));
  EXPECT_TRUE(b.y.contains(6));
  EXPECT_FALSE(b.y.contains(2));
  EXPECT_EQ(DyadicCell::index_of(2, 5), 1);
  EXPECT_EQ(DyadicCell::index_of(0, 0.5), 0);
  EXPECT_EQ(DyadicCell::index_of(0, 0.50001), 1);
  EXPECT_EQ(DyadicCell::index_of(0, -0.5), -1);
}

TEST(CellMasses, AtomsLandInTheirCells) {
  HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms({{{1, 0}, 1}, {{3, 5}, 2}, {{1, 0.5}, 4}});
  const CellTable t = cell_masses(mu, -1, 3, -2, 2);
  EXPECT_EQ(t.at(0, 0), 5);
  EXPECT_EQ(t.at(2, 1), 2);
  EXPECT_EQ(t.boundary_atoms, 2u);  // x = 1 is a right edge; y = 0.5 a top edge
  EXPECT_EQ(t.at(1, 0), 0);
}

TEST(CellMasses, RowsSumToTheSlab) {
  auto g = oracle::make_rng(41);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 60, 0.2, 30, -40, 40));
  const CellTable t = cell_masses(mu, -3, 5, -4, 4);
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    double row = 0;
    for (double v : t.cells[i]) row += v;
    EXPECT_NEAR(row + t.outside[i], t.slab[i], 1e-12);
  }
}

TEST(CellMasses, SqrtAxisSlabsMatchClosedForm) {
  const HalfPlaneMeasure mu = HalfPlaneMeasure::axis_power(1, num::kInf, 1, -0.5);
  const CellTable t = cell_masses(mu, 1, 8, -1, 1);
  for (int n = 1; n <= 8; ++n) {
    const double want = 2 * (std::pow(2.0, n / 2.0) - std::pow(2.0, (n - 1) / 2.0));
    EXPECT_NEAR(t.slab[std::size_t(n - 1)], want, 1e-10 * want);
    EXPECT_NEAR(t.at(n, 0), want, 1e-10 * want);
  }
}

TEST(Balayage, PoissonValues) {
  EXPECT_NEAR(balayage_eval(atom({1, 0}), 0).value, 1 / num::kPi, 1e-15);
  EXPECT_NEAR(balayage_eval(atom({2, 0}, 2), 0).value, 1 / num::kPi, 1e-15);
  HalfPlaneMeasure seg;
  RadialMeasure x;
  x.atoms.push_back({1, 1});
  seg.products.push_back({x, LineMeasure::uniform(0, 1)});
  EXPECT_NEAR(balayage_eval(seg, 0).value, 0.25, 1e-12);
}

TEST(Balayage, DensityAgreesWithOracle) {
  HalfPlaneMeasure mu;
  mu.densities.push_back({[](double x, double y) { return x * (1 + y * y); }, 0.5, 2, -1, 1});
  const double t = 0.3;
  const double o = oracle::simpson_2d(
      [&](double x, double y) { return x * (1 + y * y) * x / (num::kPi * (x * x + (y - t) * (y - t))); }, 0.5, 2,
      -1, 1, 200, 200);
  EXPECT_NEAR(balayage_eval(mu, t).value, o, 1e-9 * o);
}

TEST(Balayage, HalfLineDensityDiverges) {
  EXPECT_TRUE(balayage_eval(HalfPlaneMeasure::axis_power(1, num::kInf, 1, 0), 0).divergent);
  EXPECT_FALSE(balayage_eval(HalfPlaneMeasure::axis_power(1, num::kInf, 1, -0.5), 0).divergent);
}

TEST(DyadicBalayage, Examples) {
  EXPECT_EQ(dyadic_balayage(atom({1, 0}), 0, -10, 10, -100, 100), 1);
  EXPECT_EQ(dyadic_balayage(atom({2, 0}), 0, -10, 10, -100, 100), 0.5);
  EXPECT_EQ(dyadic_balayage(atom({2, 0}), 5, -10, 10, -100, 100), 0);
}

TEST(DyadicBalayage, DominatedByFivePiOverTwoTimesThePoissonBalayage) {
  // for z in T_{n,k} and t in I_{n,k}: p_z(t) >= 2 / (5 pi 2^n)
  auto g = oracle::make_rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 20, 0.05, 50, -30, 30));
    for (int i = 0; i < 20; ++i) {
      const double t = oracle::uniform(g, -40, 40);
      const double sd = dyadic_balayage(mu, t, -8, 8, -1000, 1000);
      EXPECT_LE(sd, 2.5 * num::kPi * balayage_eval(mu, t).value * (1 + 1e-12));
    }
  }
}

TEST(DyadicBalayage, CornerAtomExceedsTwoPi) {
  // atom at the inner top corner of T_0, t at the bottom edge of I_0
  const double eps = 1e-9;
  const HalfPlaneMeasure mu = atom({0.5 + eps, 0.5});
  const double t = -0.5 + eps;
  const double r = dyadic_balayage(mu, t, -2, 2, -2, 2) / balayage_eval(mu, t).value;
  EXPECT_GT(r, 2 * num::kPi);
  EXPECT_NEAR(r, 2.5 * num::kPi, 1e-6);
}

TEST(Layers, ScalingIdentity) {
  auto g = oracle::make_rng(29);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_sector_atoms(g, 40, std::atan(0.5), 0.01, 100));
  for (double t : {0.013, 0.3, -2.0, 7.7}) {
    const LayerReport r = sectorial_balayage_layers(mu, t, 6, -10, 10);
    EXPECT_TRUE(r.identity_holds);
    ASSERT_EQ(r.layers.size(), 7u);
    for (std::size_t k = 0; k < r.layers.size(); ++k) EXPECT_EQ(r.layers[k], r.scaled[k]);
  }
}

TEST(Layers, NotSectorial) {
  try {
    sectorial_balayage_layers(atom({1, 5}), 0.5, 2, -3, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSectorial);
  }
}

TEST(Layers, UpperEstimateBoundsThePoissonBalayage) {
  auto g = oracle::make_rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const HalfPlaneMeasure mu =
        HalfPlaneMeasure::from_atoms(oracle::random_sector_atoms(g, 25, std::atan(0.5), 0.01, 100));
    for (double t : {-3.0, -0.2, 0.05, 0.9, 12.0}) {
      const double s = balayage_eval(mu, t).value;
      EXPECT_LE(s, balayage_upper_estimate(mu, t, -12, 12) * (1 + 1e-12)) << t;
    }
  }
}

TEST(Balayage, HomogeneousAndTranslationInvariant) {
  auto g = oracle::make_rng(37);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 15, 0.1, 10, -5, 5));
  for (double t : {-1.0, 0.0, 2.5}) {
    const double s = balayage_eval(mu, t).value;
    EXPECT_NEAR(balayage_eval(scale_measure(mu, 3.5), t).value, 3.5 * s, 1e-13 * s);
    EXPECT_NEAR(balayage_eval(translate_measure(mu, 1.25), t + 1.25).value, s, 1e-12 * s);
  }
}

TEST(Maximal, StepExamples) {
  const StepFunction f{{0, 1, 2}, {2, 0}};
  EXPECT_NEAR(maximal_function(f, 0.5), 2, 1e-15);
  EXPECT_NEAR(maximal_function(f, 1.5), 1, 1e-15);
  EXPECT_NEAR(maximal_function(f, 3), 2.0 / 3, 1e-15);
  EXPECT_NEAR(maximal_function(f, -1), 1, 1e-15);
}

TEST(Maximal, MatchesBruteForce) {
  auto g = oracle::make_rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    StepFunction f;
    double t = 0;
    f.t.push_back(t);
    for (int i = 0; i < 12; ++i) {
      t += oracle::uniform(g, 0.1, 2);
      f.t.push_back(t);
      f.values.push_back(oracle::uniform(g, 0, 3));
    }
    for (int i = 0; i < 10; ++i) {
      const double s = oracle::uniform(g, -2, t + 2);
      EXPECT_NEAR(maximal_function(f, s), brute_maximal(f, s), 1e-12);
    }
  }
}

TEST(Maximal, LaplaceOfAStepAgreesWithQuadrature) {
  const StepFunction f{{0, 0.5, 2, 3}, {1, 0.25, 2}};
  for (cplx z : {cplx(1, 0), cplx(0.3, 2), cplx(1e-5, 1e-5)}) {
    auto re = [&](double t) { return (std::exp(-z * t)).real(); };
    auto im = [&](double t) { return (std::exp(-z * t)).imag(); };
    cplx o = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      o += f.values[i] * cplx(oracle::simpson(re, f.t[i], f.t[i + 1]), oracle::simpson(im, f.t[i], f.t[i + 1]));
    EXPECT_LT(std::abs(laplace_step(f, z) - o), 1e-11);
  }
}

TEST(Maximal, KernelConstantIsFiniteOnSectorSamples) {
  auto g = oracle::make_rng(47);
  const StepFunction f{{0, 1, 4}, {1, 0.5}};
  std::vector<cplx> zs;
  for (const auto& a : oracle::random_sector_atoms(g, 50, std::atan(0.5), 0.01, 100)) zs.push_back(a.z);
  const MaximalEstimate m = maximal_kernel_constant(f, zs);
  EXPECT_GT(m.constant, 0);
  EXPECT_TRUE(std::isfinite(m.constant));
}
