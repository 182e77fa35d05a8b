#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include "carleson/cli/manifest.hpp"
#include "carleson/cli/run.hpp"
#include "carleson/cli/spec_io.hpp"
#include "carleson/error.hpp"

namespace carleson::cli {

namespace {

struct CommandDef {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> options;  // long name, help
};

const std::vector<CommandDef>& command_defs() {
  static const std::vector<CommandDef> defs{
      {"measure",
       "Square-ratio sup, masses or doubling data for a measure spec",
       {{"spec", "measure spec file"},
        {"op", "sup | mass (halfplane); doubling | cdf | mass (radial)"},
        {"gauge", "lin | pow:S"},
        {"centers", "uniform square centres per side"}}},
      {"decompose",
       "Split mu into parts dominated by the line measures of nu",
       {{"mu", "halfplane spec"}, {"nu", "radial spec"}, {"N", "first stage index"}}},
      {"pw-check",
       "Compare ||Lf||^2 in the weighted Bergman space with int |f|^2 w",
       {{"nu", "radial spec"}, {"f", "exp:RE[:IM] | monexp:N:RE[:IM] | kernel:L:P | expsum:C:L,... | phi:U"}}},
      {"balayage", "Tabulate the balayage and its dyadic model on a t grid", {{"mu", "halfplane spec"}}},
      {"check",
       "Run one embedding criterion",
       {{"mu", "halfplane spec"},
        {"nu", "radial spec (zen)"},
        {"criterion", "classical | zen | necessary | pq | sector-qgep | sector-plq | strip | sobolev | macaev"},
        {"p", "input exponent"},
        {"q", "output exponent"},
        {"beta", "Sobolev order"},
        {"mode", "l2 | sectorial (sobolev)"},
        {"theta", "sector half-angle"},
        {"N", "kernel power (zen)"},
        {"a1", "strip left edge"},
        {"a2", "strip right edge"},
        {"alpha", "coefficients (macaev)"},
        {"n-lo", "first dyadic index (macaev)"}}},
      {"hankel",
       "Little Hankel boundedness via the symbol measure",
       {{"symbol", "log1p | z | inv1p | const:c | lin:c | log:c:a | pole:c:a:m, joined with +"},
        {"nu", "radial spec"},
        {"box", "X_HI,Y_LO,Y_HI sampling box"},
        {"M", "dilation for the inverse doubling bound"}}},
      {"admiss",
       "Admissibility of a diagonal semigroup control operator",
       {{"sys", "system spec"}, {"q", "output exponent"}, {"space", "l2 | lp:P | l2w:lebesgue | l2w:hardy | l2w:power:A"}}},
      {"counterexample",
       "The dx/sqrt(x) measure: bounded square ratios, unbounded embedding",
       {{"squares", "squares in the sweep"}, {"log-T", "log of the partial-integral cutoff"}, {"U", "truncations"}}},
  };
  return defs;
}

const std::vector<std::pair<const char*, const char*>>& global_options() {
  static const std::vector<std::pair<const char*, const char*>> g{
      {"tol", "refinement tolerance (relative), or comparison tolerance for pw-check"},
      {"grid", "grid density per octave; lo:hi:count t grid for balayage"},
      {"window", "dyadic index window lo..hi"},
      {"out-dir", "write CSV series to this directory"},
      {"cap", "pass/fail cap on constants"},
      {"levels", "maximum refinement levels (0 disables refinement)"},
  };
  return g;
}

std::string absolute(const std::string& p) { return std::filesystem::absolute(p).lexically_normal().string(); }

int replay(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const RunManifest m = parse_manifest(read_file(path), path);
    verify_manifest(m, tool_version());
    return run(m.inv, out, err);
  } catch (const Error& e) {
    err << kToolName << ": error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for Carleson and Laplace-Carleson embeddings", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + tool_version());
  app.fallthrough();

  std::map<std::string, std::string> globals;
  std::map<std::string, std::map<std::string, std::string>> locals;
  std::string manifest;
  app.add_option("--manifest", manifest, "record the run to FILE, or replay FILE when no subcommand is given");
  for (const auto& [name, help] : global_options()) app.add_option(std::string("--") + name, globals[name], help);

  std::map<std::string, CLI::App*> subs;
  for (const auto& def : command_defs()) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    auto& store = locals[def.name];
    for (const auto& [name, help] : def.options) sub->add_option(std::string("--") + name, store[name], help);
    subs[def.name] = sub;
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kError;
  }

  const CLI::App* chosen = nullptr;
  std::string name;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) {
      chosen = sub;
      name = n;
    }
  if (!chosen) {
    if (!manifest.empty()) return replay(manifest, out, err);
    err << app.help();
    return kError;
  }

  Invocation inv;
  inv.command = name;
  for (const auto& [key, value] : locals[name])
    if (chosen->count(std::string("--") + key) > 0) inv.args[key] = value;
  for (const auto& [key, value] : globals)
    if (app.count(std::string("--") + key) > 0) inv.args[key] = value;
  // Manifests must replay from any working directory.
  for (auto& [key, value] : inv.args)
    if (is_spec_arg(key) || key == "out-dir") value = absolute(value);

  if (!manifest.empty()) {
    try {
      const std::string text = emit_manifest(make_manifest(inv, tool_version()));
      std::ofstream f(manifest, std::ios::binary);
      f << text;
      if (!f) throw Error(ErrorKind::SchemaError, "cannot write manifest '" + manifest + "'");
    } catch (const Error& e) {
      err << kToolName << ": error: " << e.what() << "\n";
      return kError;
    }
  }
  return run(inv, out, err);
}

}  // namespace carleson::cli
