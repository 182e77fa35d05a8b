#include <gtest/gtest.h>

#include <cmath>

#include "carleson/embed.hpp"
#include "carleson/error.hpp"
#include "oracles.hpp"

using namespace carleson;

namespace {

HalfPlaneMeasure atom(cplx z, double m = 1) { return HalfPlaneMeasure::from_atoms({{z, m}}); }

GridOptions coarse() {
  GridOptions o;
  o.refine = false;
  return o;
}

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::SchemaError;  // sentinel: nothing thrown
}

}  // namespace

TEST(Classical, UnitAtomValues) {
  const ClassicalReport r = check_classical_carleson(atom({1, 0}));
  EXPECT_LE(r.square.constant, 1);
  EXPECT_GT(r.square.constant, 0.999);
  EXPECT_NEAR(r.kernel.constant, 1 / (4 * num::kPi), 1e-12);
  EXPECT_NEAR(r.empirical.constant, std::sqrt(0.5), 1e-12);
  EXPECT_TRUE(r.square.pass);
}

TEST(Classical, EmpiricalIsTheKernelSupInOtherUnits) {
  // ||L e^{-conj(l) t}||^2 / ||e^{-conj(l) t}||^2 = 2 Re l int |z + conj l|^{-2} dmu = 2 pi kernel(l)
  auto g = oracle::make_rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 8, 0.1, 10, -5, 5));
    const ClassicalReport r = check_classical_carleson(mu, coarse());
    EXPECT_NEAR(r.empirical.constant * r.empirical.constant, 2 * num::kPi * r.kernel.constant,
                1e-10 * r.empirical.constant * r.empirical.constant);
  }
}

TEST(Classical, HomogeneousInTheMeasure) {
  auto g = oracle::make_rng(53);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 10, 0.1, 10, -5, 5));
  const ClassicalReport a = check_classical_carleson(mu, coarse());
  const ClassicalReport b = check_classical_carleson(scale_measure(mu, 7), coarse());
  EXPECT_NEAR(b.square.constant, 7 * a.square.constant, 1e-12 * b.square.constant);
  EXPECT_NEAR(b.kernel.constant, 7 * a.kernel.constant, 1e-12 * b.kernel.constant);
  EXPECT_NEAR(b.empirical.constant, std::sqrt(7.0) * a.empirical.constant, 1e-12 * b.empirical.constant);
}

TEST(Classical, CapDecidesThePass) {
  GridOptions o = coarse();
  o.cap = 0.5;
  EXPECT_FALSE(check_classical_carleson(atom({1, 0}), o).square.pass);
}

TEST(Zen, KernelPowerThreshold) {
  EXPECT_EQ(select_kernel_power(1, 2), 1);
  EXPECT_EQ(select_kernel_power(2, 2), 2);
  EXPECT_EQ(select_kernel_power(16, 2), 3);
  EXPECT_EQ(select_kernel_power(2, 1), 3);
}

TEST(Zen, KernelPowerReferenceMatchesOracle) {
  // Lebesgue nu, a = 1, N p = 4: int_0^inf int |2 pi (r + 1 + i s)|^{-4} ds dr
  const double o = oracle::simpson_half_line(
      [](double r) {
        return 2 * oracle::simpson_half_line(
                       [&](double s) { return std::pow(2 * num::kPi * std::abs(cplx(r + 1, s)), -4); }, 0, 4000);
      },
      0, 4000);
  EXPECT_NEAR(kernel_power_reference(RadialMeasure::lebesgue(), 1, 2, 2), o, 1e-9 * o);
}

TEST(Zen, UnitAtomAgainstLebesgue) {
  // nu(Q) = |I|^2; the kernel ratio 4 a^2 / (pi (1 + a)^4) peaks at a = 1
  const ZenReport r = check_zen_embedding(atom({1, 0}), RadialMeasure::lebesgue(), 2);
  EXPECT_EQ(r.N, 2);
  EXPECT_NEAR(r.R, 2, 1e-12);
  EXPECT_LE(r.square.constant, 1);
  EXPECT_GT(r.square.constant, 0.99);
  EXPECT_NEAR(r.kernel_power.constant, 1 / (4 * num::kPi), 1e-9);
}

TEST(Zen, BelowThresholdIsRejected) {
  EXPECT_THROW(check_zen_embedding(atom({1, 0}), RadialMeasure::lebesgue(), 2, 1, coarse()), Error);
}

TEST(Necessary, QEqualsPIsTheClassicalSquare) {
  auto g = oracle::make_rng(57);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 10, 0.1, 10, -5, 5));
  const EmbeddingVerdict v = check_necessary_power_bound(mu, {2, 2}, coarse());
  EXPECT_DOUBLE_EQ(v.constant, check_classical_carleson(mu, coarse()).square.constant);
}

TEST(ExponentialRatio, ClosedFormForAnAtom) {
  const cplx w(2, 1);
  for (cplx z : {cplx(1, 0), cplx(0.5, -3), cplx(4, 2)}) {
    const double p = 1.5, q = 3;
    const double want = std::pow(p * z.real(), 1 / p) / std::abs(w + z);
    EXPECT_NEAR(exponential_test_ratio(atom(w), {p, q}, z), want, 1e-14 * want);
  }
}

TEST(PQ, WindowAndValues) {
  EXPECT_EQ(kind_of([] { check_pprime_le_q(atom({1, 0}), {3, 4}, coarse()); }), ErrorKind::ExponentWindow);
  EXPECT_EQ(kind_of([] { check_pprime_le_q(atom({1, 0}), {1.5, 2}, coarse()); }), ErrorKind::ExponentWindow);
  const PQReport r = check_pprime_le_q(atom({1, 0}), {1.5, 3}, coarse());
  // (1.5 x)^{2/3} / (1 + x) peaks at x = 2
  EXPECT_NEAR(r.exponential.constant, std::cbrt(9.0) / 3, 1e-12);
  EXPECT_GE(r.empirical.constant, r.exponential.constant * (1 - 1e-12));
  EXPECT_EQ(r.power_bound.criterion, "pq.2");
}

TEST(SectorQgep, DyadicValuesAreExponentialRatios) {
  auto g = oracle::make_rng(59);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_sector_atoms(g, 10, std::atan(0.5), 0.1, 10));
  GridOptions o = coarse();
  o.n_lo = -3;
  o.n_hi = 3;
  const SectorQgepReport r = check_sectorial_qgep(mu, {2, 3}, SectorSpec{}, o);
  ASSERT_EQ(r.dyadic_values.size(), 7u);
  for (int n = -3; n <= 3; ++n)
    EXPECT_DOUBLE_EQ(r.dyadic_values[std::size_t(n + 3)], exponential_test_ratio(mu, {2, 3}, std::ldexp(1.0, n)));
}

TEST(SectorQgep, SymmetricSquaresNeverExceedAllSquares) {
  auto g = oracle::make_rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const auto atoms = oracle::random_sector_atoms(g, 12, std::atan(0.5), 0.1, 10);
    const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(atoms);
    const SectorQgepReport r = check_sectorial_qgep(mu, {2, 2}, SectorSpec{}, coarse());
    std::vector<double> centers;
    for (int i = -40; i <= 40; ++i) centers.push_back(0.25 * i);
    const auto o = oracle::atom_square_sup(atoms, [](double s) { return s; }, centers,
                                           default_sides(mu, coarse().per_octave));
    EXPECT_LE(r.symmetric_square.constant, o.value * (1 + 1e-12));
  }
}

TEST(SectorQgep, Preconditions) {
  EXPECT_EQ(kind_of([] { check_sectorial_qgep(atom({1, 5}), {2, 3}); }), ErrorKind::NotSectorial);
  EXPECT_EQ(kind_of([] { check_sectorial_qgep(atom({1, 0}), {3, 2}); }), ErrorKind::ExponentWindow);
}

TEST(SectorPlq, UnitAtomSequences) {
  GridOptions o = coarse();
  o.n_lo = -6;
  o.n_hi = 6;
  const SectorPlqReport r = check_sectorial_plq(atom({1, 0}), {4, 2}, SectorSpec{}, o);
  EXPECT_NEAR(r.slab_masses.norm, 1, 1e-15);
  EXPECT_EQ(r.slab_masses.out_of_window, 0);
  double s = 0;
  for (int n = -6; n <= 6; ++n) s += std::pow(std::exp2(n / 4.0) / (1 + std::ldexp(1.0, n)), 4);
  EXPECT_NEAR(r.kernel_norms.norm, std::pow(s, 0.25), 1e-12);
  ASSERT_TRUE(r.balayage);
  EXPECT_TRUE(r.balayage->divergent);
}

TEST(SectorPlq, SweepNotApplicableBelowTheDualExponent) {
  const SectorPlqReport r = check_sectorial_plq(atom({1, 0}), {3, 1.2}, SectorSpec{}, coarse());
  EXPECT_FALSE(r.balayage);
  EXPECT_FALSE(r.notes.empty());
  EXPECT_EQ(kind_of([] { balayage_condition(atom({1, 0}), {3, 1.2}); }), ErrorKind::BalayageNotApplicable);
}

TEST(BalayageCondition, WeightedSweepDivergesAtTheOriginWheneverApplicable) {
  // p' < q forces q (2 - p) / (p - q) <= -1, and S_mu(0) > 0
  auto g = oracle::make_rng(67);
  const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_sector_atoms(g, 6, std::atan(0.5), 0.5, 4));
  for (ExponentPair pq : {ExponentPair{4, 2}, ExponentPair{3, 2}, ExponentPair{6, 1.5}, ExponentPair{2.5, 2}}) {
    const BalayageCondition c = balayage_condition(mu, pq);
    EXPECT_TRUE(c.divergent) << pq.p << " " << pq.q;
    EXPECT_NE(c.reason.find("t = 0"), std::string::npos);
    EXPECT_NEAR(c.exponent, pq.q * (2 - pq.p) / pq.p, 1e-15);
  }
}

TEST(Macaev, GramMatchesQuadrature) {
  const auto G = lacunary_gram(-2, 2);
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      EXPECT_NEAR(G[std::size_t(m + 2)][std::size_t(n + 2)],
                  oracle::lacunary_inner_product(std::ldexp(1.0, m), std::ldexp(1.0, n)), 1e-9);
}

TEST(Macaev, RatioLiesBetweenTheGramEigenvalues) {
  auto g = oracle::make_rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> alpha;
    for (int i = 0; i < 6; ++i) alpha.push_back(oracle::uniform(g, -1, 1));
    const MacaevReport r = gurarii_macaev_ratio(alpha, -2, 2);
    ASSERT_TRUE(r.defined);
    const auto ev = oracle::jacobi_eigenvalues(lacunary_gram(-2, 3));
    EXPECT_NEAR(r.lambda_min, ev.front(), 1e-12);
    EXPECT_NEAR(r.lambda_max, ev.back(), 1e-12);
    EXPECT_GE(r.ratio * r.ratio, ev.front() * (1 - 1e-9));
    EXPECT_LE(r.ratio * r.ratio, ev.back() * (1 + 1e-9));
  }
}

TEST(Macaev, ZeroVectorIsUndefined) { EXPECT_FALSE(gurarii_macaev_ratio({0, 0, 0}, 0, 2).defined); }

TEST(Macaev, SingleTermIsTheKernelNorm) {
  for (double p : {1.0, 2.0, 3.0}) EXPECT_NEAR(gurarii_macaev_ratio({1}, 3, p).ratio, std::pow(p, -1 / p), 1e-9);
}

TEST(Counterexample, Pieces) {
  CounterexampleOptions o;
  o.U = {10, 100};
  const CounterexampleReport r = counterexample_suite(o);
  EXPECT_TRUE(r.square_ok);
  EXPECT_LE(r.square.constant, 2);
  EXPECT_GT(r.square.constant, 1.9);
  for (std::size_t i = 0; i < r.cone_t.size(); ++i) EXPECT_NEAR(r.cone_quad[i], r.cone_closed[i], 1e-9);
  EXPECT_NEAR(r.partial_quad, r.partial_closed, 1e-8);
  EXPECT_NEAR(r.partial_closed, std::log(101.0), 1e-14);
  ASSERT_EQ(r.lower_bounds.size(), 2u);
  EXPECT_GT(r.lower_bounds[1], r.lower_bounds[0]);
  EXPECT_TRUE(same_measure(counterexample_measure(), HalfPlaneMeasure::axis_power(1, num::kInf, 1, -0.5)));
}

TEST(Counterexample, PhiTransformNormAgreesWithGenericQuadrature) {
  // x in [1, e^3): the log-coordinate path versus integrate_measure on the same product
  const HalfPlaneMeasure mu = HalfPlaneMeasure::axis_power(1, std::exp(3.0), 1, -0.5);
  const TestFunction f = PhiApproximant{2};
  const double fast = transform_lq_norm(mu, f, 1);
  const double o = oracle::simpson([&](double x) { return std::abs(laplace(f, cplx(x, 0))) / std::sqrt(x); }, 1,
                                   std::exp(3.0), 4000);
  EXPECT_NEAR(fast, o, 1e-8 * o);
}

TEST(Strip, EmpiricalBelowPredictedBound) {
  auto g = oracle::make_rng(73);
  for (int trial = 0; trial < 4; ++trial) {
    const HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 10, 1, 2, -5, 5));
    const StripReport r = check_strip(mu, {3, 2}, {1, 2}, coarse());
    EXPECT_LE(r.empirical.constant, r.predicted_bound);
    EXPECT_LE(r.exponential.constant, r.empirical.constant * (1 + 1e-12));
  }
}

TEST(Strip, Preconditions) {
  EXPECT_EQ(kind_of([] { check_strip(atom({3, 0}), {2, 2}, {1, 2}); }), ErrorKind::NotInStrip);
  EXPECT_EQ(kind_of([] { check_strip(atom({1, 0}), {1.5, 2}, {1, 2}); }), ErrorKind::ExponentWindow);
}

TEST(Sobolev, L2WeightsTheAtoms) {
  const SobolevReport r = check_sobolev(atom({1, 2}, 3), 0.5, {2, 2}, SobolevMode::L2, coarse());
  ASSERT_EQ(r.transformed.atoms.size(), 1u);
  EXPECT_NEAR(r.transformed.atoms[0].mass, 3 / std::abs(cplx(2, 2)), 1e-14);
}

TEST(Sobolev, ZeroOrderIsTheClassicalEmbedding) {
  const HalfPlaneMeasure mu = atom({1, 0});
  const SobolevReport s = check_sobolev(mu, 0, {2, 2}, SobolevMode::L2, coarse());
  const ClassicalReport c = check_classical_carleson(mu, coarse());
  EXPECT_DOUBLE_EQ(s.verdict.constant, c.square.constant);
  // H^2 normalization against the L^2(0, inf) one: ||F||_{H^2}^2 = 2 pi ||f||^2
  EXPECT_NEAR(s.empirical.constant * std::sqrt(2 * num::kPi), c.empirical.constant, 1e-12);
}

TEST(Sobolev, SectorialModeAddsTheInverseWeight) {
  const SobolevReport r = check_sobolev(atom({2, 0}), 1, {2, 2}, SobolevMode::Sectorial, coarse());
  EXPECT_NEAR(r.transformed.atoms[0].mass, 1 + std::pow(2.0, -2), 1e-15);
  EXPECT_EQ(kind_of([] { check_sobolev(atom({1, 0}), 1, {2, 3}, SobolevMode::L2); }), ErrorKind::ExponentWindow);
}

TEST(LowerBound, EmptyFamilyAndArgmax) {
  EXPECT_EQ(kind_of([] { embedding_norm_lower_bound(atom({1, 0}), {2, 2}, {}); }), ErrorKind::EmptyFamily);
  const LowerBound lb =
      embedding_norm_lower_bound(atom({1, 0}), {2, 2}, {Exponential{{10, 0}}, Exponential{{1, 0}}, Exponential{{0.1, 0}}});
  EXPECT_EQ(lb.argmax, 1);
  EXPECT_NEAR(lb.bound, std::sqrt(0.5), 1e-14);
}

TEST(LambdaGrid, HitsPowersOfTwoExactly) {
  const auto pts = lambda_grid(atom({1, 0.5}), coarse(), 1);
  bool one = false;
  for (cplx z : pts)
    if (z.real() == 1 && z.imag() == 0.5) one = true;
  EXPECT_TRUE(one);
}
