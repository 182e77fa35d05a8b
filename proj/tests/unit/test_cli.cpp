#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "carleson/cli/manifest.hpp"
#include "carleson/cli/parse.hpp"
#include "carleson/cli/run.hpp"
#include "carleson/cli/spec_io.hpp"
#include "carleson/embed.hpp"
#include "carleson/error.hpp"
#include "oracles.hpp"

using namespace carleson;
using namespace carleson::cli;

namespace {

const std::string kData = CARLESON_TEST_DATA;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Precondition;  // sentinel: nothing thrown
}

RadialMeasure random_radial(oracle::Rng& g) {
  RadialMeasure nu;
  if (oracle::uniform(g, 0, 1) < 0.5) nu.atom_at_zero = oracle::uniform(g, 0.1, 2);
  double at = 0;
  for (int i = 0; i < 3; ++i) nu.atoms.push_back({at += oracle::uniform(g, 0.01, 3), oracle::uniform(g, 0.1, 1)});
  const double lo = oracle::uniform(g, 2, 2.5);
  nu.powers.push_back({lo, lo + oracle::uniform(g, 0.5, 2), oracle::uniform(g, 0.1, 3), oracle::uniform(g, -0.9, 2)});
  nu.powers.push_back({5, num::kInf, 1, -3});
  nu.tables.push_back({{0.5, 1 + 1.0 / 3, 2}, {0.2, 1, 0.7}});
  return nu;
}

HalfPlaneMeasure random_halfplane(oracle::Rng& g) {
  HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(oracle::random_atoms(g, 5, 0.01, 50, -10, 10));
  mu.products.push_back({random_radial(g), LineMeasure::uniform(-oracle::uniform(g, 0, 3), oracle::uniform(g, 0, 3), 0.3)});
  mu.products.push_back({random_radial(g), LineMeasure::point(oracle::uniform(g, -1, 1), 2)});
  return mu;
}

struct Ran {
  int code;
  std::string out, err;
};

Ran run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), kToolName);
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(SpecIo, SqrtAxisFileIsTheCounterexampleMeasure) {
  const HalfPlaneMeasure mu = expect_halfplane(parse_spec_file(kData + "/sqrt_axis.spec"), "sqrt_axis");
  EXPECT_TRUE(same_measure(mu, counterexample_measure()));
}

TEST(SpecIo, SystemFile) {
  const DiagonalSystem s = expect_system(parse_spec_file(kData + "/geometric.sys"), "geometric");
  ASSERT_EQ(s.lambda.size(), 5u);
  EXPECT_EQ(s.q, 2);
  EXPECT_EQ(s.lambda[4], cplx(-16, 0));
  EXPECT_EQ(s.b[1], cplx(std::sqrt(2.0), 0));
}

TEST(SpecIo, ErrorsCarryTheLine) {
  try {
    parse_spec_file(kData + "/bad_mass.spec");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaError);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  for (const char* bad : {"kind: radial\natom: 1\n", "kind: sphere\n", "atom: 1 0 1\n", "kind: halfplane\nbegin: product\n",
                          "kind: radial\npower: 2 1 1 0\n", "kind: system\nq: 2\nmode: 1 0 1 0\n"})
    EXPECT_EQ(kind_of([&] { parse_spec_text(bad); }), ErrorKind::SchemaError) << bad;
  EXPECT_EQ(kind_of([&] { expect_radial(parse_spec_text("kind: halfplane\natom: 1 0 1\n"), "x"); }),
            ErrorKind::SchemaError);
}

TEST(SpecIo, RoundTripsRandomMeasures) {
  auto g = oracle::make_rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const RadialMeasure nu = random_radial(g);
    EXPECT_EQ(expect_radial(parse_spec_text(emit_spec(nu)), "emit"), nu);
    const HalfPlaneMeasure mu = random_halfplane(g);
    const HalfPlaneMeasure back = expect_halfplane(parse_spec_text(emit_spec(mu)), "emit");
    EXPECT_EQ(back.atoms, mu.atoms);
    EXPECT_EQ(back.products, mu.products);
  }
  HalfPlaneMeasure d;
  d.densities.push_back({[](double, double) { return 1.0; }, 0, 1, 0, 1});
  EXPECT_THROW(emit_spec(d), Error);
}

TEST(SpecIo, SystemRoundTrip) {
  DiagonalSystem s{{{-1, 2}, {-0.1, -3}}, {{0.25, -1}, {1.0 / 3, 0}}, 1.5};
  const DiagonalSystem t = expect_system(parse_spec_text(emit_spec(s)), "emit");
  EXPECT_EQ(t.lambda, s.lambda);
  EXPECT_EQ(t.b, s.b);
  EXPECT_EQ(t.q, s.q);
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(0xaf63dc4c8601ec8cull), "af63dc4c8601ec8c");
}

TEST(Parse, Options) {
  EXPECT_EQ(parse_index_window("-3..5"), std::make_pair(-3, 5));
  EXPECT_EQ(parse_index_window("2:4"), std::make_pair(2, 4));
  const TGrid t = parse_t_grid("-1:2:7");
  EXPECT_EQ(t.lo, -1);
  EXPECT_EQ(t.count, 7);
  EXPECT_EQ(parse_list("1,2.5,-3", "U"), (std::vector<double>{1, 2.5, -3}));
  EXPECT_TRUE(std::holds_alternative<Exponential>(parse_test_function("exp:1:2")));
  EXPECT_TRUE(std::holds_alternative<Lacunary>(parse_test_function("lacunary:-2:2:1,0.5")));
  for (const char* bad : {"exp:-1", "exp", "monexp:x:1", "kernel:1", "wavelet:1"})
    EXPECT_EQ(kind_of([&] { parse_test_function(bad); }), ErrorKind::SchemaError) << bad;
  EXPECT_EQ(kind_of([] { parse_index_window("5..1"); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { parse_number("1.5x", "tol"); }), ErrorKind::SchemaError);
}

TEST(CliMain, ExitCodes) {
  EXPECT_EQ(run_cli({"check", "--mu", kData + "/delta1.spec", "--criterion", "classical"}).code, kPass);
  const Ran bad = run_cli({"check", "--mu", kData + "/delta1.spec", "--criterion", "bogus"});
  EXPECT_EQ(bad.code, kError);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run_cli({"measure", "--spec", kData + "/bad_mass.spec"}).code, kError);
  EXPECT_EQ(run_cli({"measure", "--spec", kData + "/missing.spec"}).code, kError);
  EXPECT_EQ(run_cli({"hankel", "--symbol", "z", "--nu", kData + "/lebesgue.spec"}).code, kFail);
}

TEST(CliMain, ManifestReplayIsByteIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "carleson_cli_test";
  std::filesystem::create_directories(dir);
  const std::string m = (dir / "run.manifest").string();
  const Ran rec = run_cli({"admiss", "--sys", kData + "/geometric.sys", "--space", "l2", "--manifest", m});
  ASSERT_EQ(rec.code, kPass) << rec.err;
  const Ran a = run_cli({"--manifest", m});
  const Ran b = run_cli({"--manifest", m});
  EXPECT_EQ(a.code, rec.code);
  EXPECT_EQ(a.out, rec.out);
  EXPECT_EQ(a.out, b.out);

  const RunManifest parsed = parse_manifest(read_file(m), m);
  EXPECT_EQ(parsed.inv.command, "admiss");
  EXPECT_EQ(parsed.spec_hashes.at("sys"), hex64(fnv1a(read_file(kData + "/geometric.sys"))));
  EXPECT_EQ(parse_manifest(emit_manifest(parsed), "again").inv.args, parsed.inv.args);

  RunManifest stale = parsed;
  stale.version = "0.0.0";
  EXPECT_EQ(kind_of([&] { verify_manifest(stale, tool_version()); }), ErrorKind::SchemaError);
  stale = parsed;
  stale.spec_hashes["sys"] = "0";
  EXPECT_EQ(kind_of([&] { verify_manifest(stale, tool_version()); }), ErrorKind::SchemaError);
  std::filesystem::remove_all(dir);
}
