#include <algorithm>
#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "carleson/admiss.hpp"
#include "carleson/balayage.hpp"
#include "carleson/cli/parse.hpp"
#include "carleson/cli/run.hpp"
#include "carleson/cli/spec_io.hpp"
#include "carleson/dyadic.hpp"
#include "carleson/embed.hpp"
#include "carleson/error.hpp"
#include "carleson/hankel.hpp"

#ifndef CARLESON_VERSION
#define CARLESON_VERSION "0.0.0"
#endif

namespace carleson::cli {

const char* tool_version() { return CARLESON_VERSION; }

namespace {

std::string fmt(double v) { return format_double(v); }
std::string fmt(bool b) { return b ? "true" : "false"; }

struct Output {
  std::ostringstream text;
  std::vector<std::pair<std::string, std::string>> csvs;
  bool pass = true;

  void kv(const std::string& k, const std::string& v) { text << k << ": " << v << "\n"; }
  void kv(const std::string& k, double v) { kv(k, fmt(v)); }
  void kv(const std::string& k, const char* v) { kv(k, std::string(v)); }
  void kv_int(const std::string& k, long long v) { kv(k, std::to_string(v)); }
  void flag(const std::string& k, bool b) { kv(k, fmt(b)); }

  void verdict(const EmbeddingVerdict& v) {
    text << "verdict: " << v.criterion << "\n";
    text << "  constant: " << fmt(v.constant) << "\n";
    text << "  divergent: " << fmt(v.divergent) << "\n";
    text << "  cap: " << fmt(v.cap) << "\n";
    text << "  pass: " << fmt(v.pass) << "\n";
    text << "  witness: " << describe(v.witness) << "\n";
    if (!v.grid.empty()) text << "  grid: " << v.grid << "\n";
    if (!v.notes.empty()) text << "  notes: " << v.notes << "\n";
    pass = pass && v.pass;
  }

  void sequence(const std::string& name, const SequenceCondition& s) {
    text << "sequence: " << name << "\n";
    text << "  norm: " << fmt(s.norm) << "\n";
    text << "  s: " << fmt(s.s) << "\n";
    text << "  divergent: " << fmt(s.divergent) << "\n";
    text << "  out_of_window: " << fmt(s.out_of_window) << "\n";
  }

  void csv(std::string name, std::string body) { csvs.emplace_back(std::move(name), std::move(body)); }
};

struct Csv {
  std::ostringstream os;
  explicit Csv(const std::string& header) { os << header << "\n"; }
  template <class... T>
  void row(const T&... v) {
    bool first = true;
    ((os << (first ? "" : ",") << cell(v), first = false), ...);
    os << "\n";
  }
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  std::string str() const { return os.str(); }
};

GridOptions grid_options(const Invocation& inv) {
  GridOptions o;
  if (inv.has("grid")) {
    o.per_octave = parse_int(inv.get("grid"), "grid");
    if (o.per_octave < 1) throw Error(ErrorKind::SchemaError, "grid: per-octave density must be >= 1");
  }
  if (inv.has("tol")) {
    o.refine_tol = parse_number(inv.get("tol"), "tol");
    if (!(o.refine_tol > 0)) throw Error(ErrorKind::SchemaError, "tol must be > 0");
  }
  if (inv.has("window")) std::tie(o.n_lo, o.n_hi) = parse_index_window(inv.get("window"));
  if (inv.has("cap")) o.cap = parse_number(inv.get("cap"), "cap");
  if (inv.has("levels")) {
    o.max_levels = parse_int(inv.get("levels"), "levels");
    if (o.max_levels < 0) throw Error(ErrorKind::SchemaError, "levels must be >= 0");
    o.refine = o.max_levels > 0;
  }
  return o;
}

double number_or(const Invocation& inv, const std::string& key, double fallback) {
  return inv.has(key) ? parse_number(inv.get(key), key) : fallback;
}

HalfPlaneMeasure load_halfplane(const Invocation& inv, const std::string& key) {
  const std::string& path = inv.get(key);
  return expect_halfplane(parse_spec_file(path), path);
}

RadialMeasure load_radial(const Invocation& inv, const std::string& key) {
  const std::string& path = inv.get(key);
  return expect_radial(parse_spec_file(path), path);
}

// ---------------------------------------------------------------- measure

void cmd_measure(const Invocation& inv, Output& o) {
  const std::string& path = inv.get("spec");
  const Spec spec = parse_spec_file(path);
  if (const auto* nu = std::get_if<RadialMeasure>(&spec)) {
    const std::string op = inv.get_or("op", "doubling");
    o.kv("kind", "radial");
    o.kv("op", op);
    o.kv("total_mass", nu->total_mass());
    if (op == "doubling") {
      const DoublingInfo d = doubling_constant(*nu, default_probe_grid(), number_or(inv, "cap", 1e8));
      o.kv("doubling_constant", d.R);
      o.kv("sup_location", d.sup_location);
      o.flag("exceeds_cap", d.exceeds_cap);
      o.pass = !d.exceeds_cap;
    } else if (op != "mass" && op != "cdf") {
      throw Error(ErrorKind::SchemaError, "measure: unknown op '" + op + "' for a radial spec");
    }
    if (op != "mass") {
      Csv c("r,F");
      for (double r : default_probe_grid()) c.row(r, radial_cdf(*nu, r));
      o.csv("cdf", c.str());
    }
    return;
  }
  const HalfPlaneMeasure mu = expect_halfplane(spec, path);
  const std::string op = inv.get_or("op", "sup");
  o.kv("kind", "halfplane");
  o.kv("op", op);
  o.kv("total_mass", mu.total_mass());
  const Extent e = support_extent(mu);
  if (!e.empty()) {
    o.kv("extent_x", fmt(e.x_min) + " " + fmt(e.x_max));
    o.kv("extent_y", fmt(e.y_min) + " " + fmt(e.y_max));
  }
  if (op == "mass") return;
  if (op != "sup") throw Error(ErrorKind::SchemaError, "measure: unknown op '" + op + "' for a halfplane spec");
  const std::string gauge_name = inv.get_or("gauge", "lin");
  const Gauge g = parse_gauge(gauge_name);
  const int ppo = inv.has("grid") ? parse_int(inv.get("grid"), "grid") : 4;
  const int centers = inv.has("centers") ? parse_int(inv.get("centers"), "centers") : 16;
  const SquareFamily fam = adapted_family(mu, default_sides(mu, ppo), centers);
  const RatioSup r = carleson_ratio_sup(mu, g, fam);
  const double cap = number_or(inv, "cap", 1e6);
  o.kv("gauge", gauge_name);
  o.kv_int("squares", static_cast<long long>(fam.size()));
  o.kv("constant", r.constant);
  o.kv("witness", r.witness ? describe(Witness{*r.witness}) : std::string("none"));
  o.kv("cap", cap);
  o.pass = r.constant <= cap;
  Csv c("center_y,side,ratio");
  for (std::size_t i = 0; i < fam.size() && i < r.ratios.size(); ++i) c.row(fam[i].center_y, fam[i].side, r.ratios[i]);
  o.csv("squares", c.str());
}

// ---------------------------------------------------------------- decompose

void cmd_decompose(const Invocation& inv, Output& o) {
  const HalfPlaneMeasure mu = load_halfplane(inv, "mu");
  const RadialMeasure nu = load_radial(inv, "nu");
  const auto [n_min, n_max] = parse_index_window(inv.get_or("window", "-1..1"));
  const AdaptedSequence a = build_adapted_sequence(nu, n_min, n_max);
  const int N = inv.has("N") ? parse_int(inv.get("N"), "N") : a.n_first;
  if (N < a.n_first || N >= a.n_last())
    throw Error(ErrorKind::EmptyWindow, "decompose: N = " + std::to_string(N) + " outside [" +
                                            std::to_string(a.n_first) + ", " + std::to_string(a.n_last()) + ")");
  const RefinedSequence r = refine_sequence(a, N);
  std::vector<double> sizes;
  for (std::size_t j = 0; j + 1 < r.b.size(); ++j) sizes.push_back(generation_size(r.b[j + 1], r.b.front()));
  const double L_max = *std::max_element(sizes.begin(), sizes.end());
  // A power-of-two multiple keeps extent / (2 L_max) an exact integer.
  const Extent e = support_extent(mu);
  const double need = e.empty() ? L_max : std::max(std::abs(e.y_min), std::abs(e.y_max));
  double mult = 1;
  while (mult * L_max <= need) mult *= 2;
  const double extent = 2 * L_max * mult;
  double count = 0;
  for (double L : sizes) count += extent / L;
  if (count > 4e6)
    throw Error(ErrorKind::Precondition, "decompose: the window needs " + fmt(count) + " tiles; narrow it");
  const TileSet tiles = build_tiles(r, extent);

  o.kv("n_first", static_cast<double>(a.n_first));
  o.kv("n_last", static_cast<double>(a.n_last()));
  o.kv("N", static_cast<double>(N));
  o.kv("doubling_constant", a.R);
  o.kv("y_extent", extent);
  o.kv_int("generations", tiles.generations());
  o.kv_int("tiles", static_cast<long long>(tiles.tiles.size()));

  Decomposition d;
  try {
    d = decompose(mu, nu, tiles, a);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::CarlesonViolation) throw;
    o.kv("violation", err.what());
    o.pass = false;
    return;
  }
  o.kv("truncation_loss", d.truncation_loss);
  o.kv("snapped_residue", d.snapped_residue);
  o.kv("domination", d.domination.constant);
  o.kv("domination_at", "n=" + std::to_string(d.domination.n) + " j=" + std::to_string(d.domination.j) +
                            " k=" + std::to_string(d.domination.k));
  long counts[4] = {0, 0, 0, 0};
  for (const auto& t : d.type_log) ++counts[t.type];
  o.kv("type_counts", std::to_string(counts[1]) + " " + std::to_string(counts[2]) + " " + std::to_string(counts[3]));
  o.pass = d.domination.constant <= 1 + 1e-9;

  Csv parts("n,a_n,line_mass,part_mass");
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    parts.row(N + static_cast<int>(i), d.line_x[i], d.line_masses[i], num::pairwise_sum(d.assigned[i]));
  o.csv("parts", parts.str());
  Csv log("n,j,k,type");
  for (const auto& t : d.type_log) log.row(t.n, t.j, t.k, t.type);
  o.csv("type_log", log.str());
  Csv rect("j,k,x_lo,x_hi,y_lo,y_hi,mass");
  for (std::size_t i = 0; i < tiles.tiles.size(); ++i) {
    const Tile& t = tiles.tiles[i];
    rect.row(t.j, t.k, t.x_lo, t.x_hi, t.y_lo, t.y_hi, d.tile_mass[i]);
  }
  o.csv("tiles", rect.str());
}

// ---------------------------------------------------------------- pw-check

void cmd_pw_check(const Invocation& inv, Output& o) {
  const RadialMeasure nu = load_radial(inv, "nu");
  const TestFunction f = parse_test_function(inv.get_or("f", "exp:1"));
  const double tol = number_or(inv, "tol", 1e-6);
  const PaleyWienerResult r = paley_wiener_check(nu, f);
  o.kv("function", describe(f));
  o.kv("transform_norm_sq", r.lhs);
  o.kv("weighted_l2_sq", r.rhs);
  o.kv("relative_gap", r.gap);
  o.flag("transform_divergent", r.lhs_divergent);
  o.flag("weighted_divergent", r.rhs_divergent);
  o.kv("tol", tol);
  o.pass = r.agree(tol);
  const WeightFunction w = weight_from_measure(nu);
  if (!w.closed_form.empty()) o.kv("weight", w.closed_form);
  Csv c("t,w");
  for (double t : num::geometric_grid(0x1p-8, 0x1p8, std::pow(2.0, 0.25))) c.row(t, w(t));
  o.csv("weight", c.str());
}

// ---------------------------------------------------------------- balayage

void cmd_balayage(const Invocation& inv, Output& o) {
  const HalfPlaneMeasure mu = load_halfplane(inv, "mu");
  const TGrid g = parse_t_grid(inv.get_or("grid", "-8:8:512"));
  const auto [n_lo, n_hi] = parse_index_window(inv.get_or("window", "-20..20"));
  Csv c("t,S,S_dyadic");
  std::size_t divergent = 0;
  double s_max = 0, d_max = 0;
  for (int i = 0; i < g.count; ++i) {
    const double t = g.lo + (g.hi - g.lo) * i / (g.count - 1);
    const BalayageValue s = balayage_eval(mu, t);
    const double d = dyadic_balayage(mu, t, n_lo, n_hi, LONG_MIN / 4, LONG_MAX / 4);
    if (s.divergent) ++divergent;
    else s_max = std::max(s_max, s.value);
    d_max = std::max(d_max, d);
    c.row(t, s.divergent ? num::kInf : s.value, d);
  }
  o.kv_int("points", g.count);
  o.kv("window", std::to_string(n_lo) + ".." + std::to_string(n_hi));
  o.kv("sup_S", s_max);
  o.kv("sup_S_dyadic", d_max);
  o.kv_int("divergent_points", static_cast<long long>(divergent));
  o.pass = divergent == 0;
  o.csv("balayage", c.str());
}

// ---------------------------------------------------------------- check

void grid_csv(Output& o, const HalfPlaneMeasure& mu, const ExponentPair& pq, const GridOptions& opt) {
  Csv c("re,im,exponential_ratio");
  for (cplx z : lambda_grid(mu, opt, 0)) c.row(z.real(), z.imag(), exponential_test_ratio(mu, pq, z));
  o.csv("grid", c.str());
}

void cmd_check(const Invocation& inv, Output& o) {
  const std::string crit = inv.get("criterion");
  const GridOptions opt = grid_options(inv);
  const ExponentPair pq{number_or(inv, "p", 2), number_or(inv, "q", 2)};
  pq.validate();
  o.kv("criterion", crit);
  if (crit == "macaev") {
    const std::vector<double> alpha = parse_list(inv.get("alpha"), "alpha");
    const int n_lo = inv.has("n-lo") ? parse_int(inv.get("n-lo"), "n-lo") : 0;
    const MacaevReport r = gurarii_macaev_ratio(alpha, n_lo, pq.p);
    o.kv("p", pq.p);
    o.flag("defined", r.defined);
    o.kv("ratio", r.ratio);
    if (pq.p == 2) {
      o.kv("lambda_min", r.lambda_min);
      o.kv("lambda_max", r.lambda_max);
    }
    o.pass = r.defined && r.ratio <= opt.cap;
    return;
  }
  const HalfPlaneMeasure mu = load_halfplane(inv, "mu");
  const double theta = number_or(inv, "theta", SectorSpec{}.theta);
  o.kv("p", pq.p);
  o.kv("q", pq.q);
  if (crit == "classical") {
    const ClassicalReport r = check_classical_carleson(mu, opt);
    o.verdict(r.square);
    o.verdict(r.kernel);
    o.verdict(r.empirical);
    grid_csv(o, mu, {2, 2}, opt);
  } else if (crit == "zen") {
    const RadialMeasure nu = load_radial(inv, "nu");
    std::optional<int> N;
    if (inv.has("N")) N = parse_int(inv.get("N"), "N");
    const ZenReport r = check_zen_embedding(mu, nu, pq.p, N, opt);
    o.kv_int("kernel_power", r.N);
    o.kv("doubling_constant", r.R);
    o.verdict(r.square);
    o.verdict(r.kernel_power);
  } else if (crit == "necessary") {
    o.verdict(check_necessary_power_bound(mu, pq, opt));
    grid_csv(o, mu, pq, opt);
  } else if (crit == "pq") {
    const PQReport r = check_pprime_le_q(mu, pq, opt);
    o.verdict(r.power_bound);
    o.verdict(r.exponential);
    o.verdict(r.empirical);
    grid_csv(o, mu, pq, opt);
  } else if (crit == "sector-qgep") {
    const SectorQgepReport r = check_sectorial_qgep(mu, pq, SectorSpec{theta}, opt);
    o.kv("theta", theta);
    o.verdict(r.symmetric_square);
    o.verdict(r.real_exponential);
    o.verdict(r.dyadic_exponential);
    o.verdict(r.empirical);
    Csv c("n,ratio");
    for (std::size_t i = 0; i < r.dyadic_values.size(); ++i) c.row(opt.n_lo + static_cast<int>(i), r.dyadic_values[i]);
    o.csv("grid", c.str());
  } else if (crit == "sector-plq") {
    const SectorPlqReport r = check_sectorial_plq(mu, pq, SectorSpec{theta}, opt);
    o.kv("theta", theta);
    o.sequence("slab_masses", r.slab_masses);
    o.sequence("kernel_norms", r.kernel_norms);
    bool ok = !r.slab_masses.divergent && !r.kernel_norms.divergent && r.slab_masses.norm <= opt.cap &&
              r.kernel_norms.norm <= opt.cap;
    if (r.balayage) {
      o.text << "balayage:\n";
      o.text << "  norm: " << fmt(r.balayage->norm) << "\n";
      o.text << "  divergent: " << fmt(r.balayage->divergent) << "\n";
      if (!r.balayage->reason.empty()) o.text << "  reason: " << r.balayage->reason << "\n";
      o.text << "  exponent: " << fmt(r.balayage->exponent) << "\n";
      o.text << "  s: " << fmt(r.balayage->s) << "\n";
      ok = ok && !r.balayage->divergent && r.balayage->norm <= opt.cap;
    }
    o.verdict(r.empirical);
    if (!r.notes.empty()) o.kv("notes", r.notes);
    o.pass = o.pass && ok;
    Csv c("n,slab_term,kernel_term");
    const std::size_t m = std::max(r.slab_masses.values.size(), r.kernel_norms.values.size());
    for (std::size_t i = 0; i < m; ++i)
      c.row(r.slab_masses.n_lo + static_cast<int>(i), i < r.slab_masses.values.size() ? r.slab_masses.values[i] : 0.0,
            i < r.kernel_norms.values.size() ? r.kernel_norms.values[i] : 0.0);
    o.csv("grid", c.str());
  } else if (crit == "strip") {
    const Extent e = support_extent(mu);
    const StripSpec s{number_or(inv, "a1", e.x_min), number_or(inv, "a2", e.x_max)};
    const StripReport r = check_strip(mu, pq, s, opt);
    o.kv("strip", fmt(s.a1) + " " + fmt(s.a2));
    o.kv("predicted_bound", r.predicted_bound);
    o.verdict(r.power_bound);
    o.verdict(r.exponential);
    o.verdict(r.empirical);
    grid_csv(o, mu, pq, opt);
  } else if (crit == "sobolev") {
    const double beta = number_or(inv, "beta", 1);
    const std::string mode = inv.get_or("mode", "l2");
    if (mode != "l2" && mode != "sectorial") throw Error(ErrorKind::SchemaError, "sobolev mode must be l2 or sectorial");
    const SobolevReport r =
        check_sobolev(mu, beta, pq, mode == "l2" ? SobolevMode::L2 : SobolevMode::Sectorial, opt);
    o.kv("beta", beta);
    o.kv("mode", mode);
    o.verdict(r.verdict);
    o.verdict(r.empirical);
  } else {
    throw Error(ErrorKind::SchemaError, "unknown criterion '" + crit + "'");
  }
}

// ---------------------------------------------------------------- hankel

void cmd_hankel(const Invocation& inv, Output& o) {
  const Symbol b = parse_symbol(inv.get_or("symbol", "log1p"));
  const RadialMeasure nu = load_radial(inv, "nu");
  const GridOptions opt = grid_options(inv);
  HankelWindow w;
  if (inv.has("box")) {
    const auto v = parse_list(inv.get("box"), "box");
    if (v.size() != 3) throw Error(ErrorKind::SchemaError, "box: expected X_HI,Y_LO,Y_HI");
    w = {v[0], v[1], v[2]};
  }
  o.kv("symbol", format_symbol(b));
  o.verdict(check_hankel_bounded(b, nu, w, opt));
  BlochGrid bg;
  bg.cap = opt.cap;
  const BlochResult bl = bloch_norm(b, bg);
  o.kv("bloch_norm", bl.value);
  o.kv("bloch_witness", describe(Witness{bl.witness}));
  o.flag("bloch_exceeds_cap", bl.exceeds_cap);
  o.pass = o.pass && !bl.exceeds_cap;
  const double M = number_or(inv, "M", 2);
  try {
    const LogIntegralBound li = log_integral_bound(nu, num::geometric_grid(0x1p-10, 0x1p10, std::sqrt(2.0)), M);
    o.kv("log_integral_sup", li.sup_ratio);
    o.kv("log_integral_witness", li.witness_x);
    o.kv("log_integral_predicted", li.predicted);
    o.kv("inverse_doubling", li.gamma);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InverseDoublingFails && e.kind() != ErrorKind::ZeroMassNearOrigin) throw;
    o.kv("log_integral", e.what());
  }
}

// ---------------------------------------------------------------- admiss

void cmd_admiss(const Invocation& inv, Output& o) {
  const std::string& path = inv.get("sys");
  DiagonalSystem sys = expect_system(parse_spec_file(path), path);
  if (inv.has("q")) sys.q = parse_number(inv.get("q"), "q");
  const InputSpace space = parse_input_space(inv.get_or("space", "l2"));
  const AdmissReport r = admissibility_verdict(sys, space, grid_options(inv));
  o.kv("space", describe(space));
  o.kv("q", sys.q);
  o.kv_int("modes", static_cast<long long>(sys.lambda.size()));
  o.kv("route", route_name(r.route));
  o.flag("admissible", r.admissible);
  o.verdict(r.verdict);
  for (const auto& v : r.supporting) o.verdict(v);
  if (!r.notes.empty()) o.kv("notes", r.notes);
  o.pass = r.admissible;
  Csv c("re,im,mass");
  for (const auto& a : system_measure(sys).atoms) c.row(a.z.real(), a.z.imag(), a.mass);
  o.csv("measure", c.str());
}

// ---------------------------------------------------------------- counterexample

void cmd_counterexample(const Invocation& inv, Output& o) {
  CounterexampleOptions opt;
  if (inv.has("squares")) opt.squares = parse_int(inv.get("squares"), "squares");
  if (inv.has("log-T")) opt.log_T = parse_number(inv.get("log-T"), "log-T");
  if (inv.has("U")) opt.U = parse_list(inv.get("U"), "U");
  const CounterexampleReport r = counterexample_suite(opt);
  o.kv_int("squares", static_cast<long long>(r.squares));
  o.kv("square_constant", r.square.constant);
  o.kv("square_witness", r.square.witness ? describe(Witness{*r.square.witness}) : std::string("none"));
  o.flag("square_ok", r.square_ok);
  o.kv("partial_log_T", r.partial_T_log);
  o.kv("partial_quadrature", r.partial_quad);
  o.kv("partial_closed_form", r.partial_closed);
  o.kv("partial_gap", std::abs(r.partial_quad - r.partial_closed));
  o.kv("best_lower_bound", r.best_lower_bound);
  o.flag("unbounded_at_desk_scale", r.ok());
  o.pass = r.ok();
  Csv cone("t,quadrature,closed_form");
  for (std::size_t i = 0; i < r.cone_t.size(); ++i) cone.row(r.cone_t[i], r.cone_quad[i], r.cone_closed[i]);
  o.csv("cone", cone.str());
  Csv lb("U,lower_bound");
  for (std::size_t i = 0; i < r.U.size(); ++i) lb.row(r.U[i], r.lower_bounds[i]);
  o.csv("lower_bounds", lb.str());
}

const std::map<std::string, std::function<void(const Invocation&, Output&)>>& commands() {
  static const std::map<std::string, std::function<void(const Invocation&, Output&)>> table{
      {"measure", cmd_measure},   {"decompose", cmd_decompose}, {"pw-check", cmd_pw_check},
      {"balayage", cmd_balayage}, {"check", cmd_check},         {"hankel", cmd_hankel},
      {"admiss", cmd_admiss},     {"counterexample", cmd_counterexample},
  };
  return table;
}

}  // namespace

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  Output o;
  try {
    const auto it = commands().find(inv.command);
    if (it == commands().end()) throw Error(ErrorKind::SchemaError, "unknown command '" + inv.command + "'");
    it->second(inv, o);
  } catch (const Error& e) {
    err << kToolName << ": error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << kToolName << ": error: " << e.what() << "\n";
    return kError;
  }

  out << "tool: " << kToolName << " " << tool_version() << "\n";
  out << "command: " << inv.command << "\n";
  for (const auto& [k, v] : inv.args) {
    out << "arg." << k << ": " << v << "\n";
    if (is_spec_arg(k)) out << "hash." << k << ": " << hex64(fnv1a(read_file(v))) << "\n";
  }
  out << o.text.str();
  out << "status: " << (o.pass ? "pass" : "fail") << "\n";

  if (inv.has("out-dir")) {
    const std::filesystem::path dir(inv.get("out-dir"));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (const auto& [name, body] : o.csvs) {
      const auto file = dir / (name + ".csv");
      std::ofstream f(file, std::ios::binary);
      f << body;
      if (!f) {
        err << kToolName << ": error: cannot write '" << file.string() << "'\n";
        return kError;
      }
      out << "csv: " << file.string() << "\n";
    }
  } else {
    for (const auto& [name, body] : o.csvs) out << "# csv: " << name << "\n" << body;
  }
  return o.pass ? kPass : kFail;
}

}  // namespace carleson::cli
