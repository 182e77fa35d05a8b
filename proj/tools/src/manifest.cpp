#include "carleson/cli/manifest.hpp"

#include <sstream>

#include "carleson/cli/spec_io.hpp"
#include "carleson/error.hpp"

namespace carleson::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

const std::string& Invocation::get(const std::string& key) const {
  const auto it = args.find(key);
  if (it == args.end()) bad(command + ": missing --" + key);
  return it->second;
}

std::string Invocation::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = args.find(key);
  return it == args.end() ? fallback : it->second;
}

bool is_spec_arg(const std::string& key) { return key == "spec" || key == "mu" || key == "nu" || key == "sys"; }

RunManifest make_manifest(const Invocation& inv, const std::string& version) {
  RunManifest m;
  m.version = version;
  m.inv = inv;
  for (const auto& [k, v] : inv.args)
    if (is_spec_arg(k)) m.spec_hashes[k] = hex64(fnv1a(read_file(v)));
  m.tol = inv.get_or("tol", "default");
  m.grid = inv.get_or("grid", "default");
  m.window = inv.get_or("window", "default");
  return m;
}

std::string emit_manifest(const RunManifest& m) {
  std::ostringstream os;
  os << "# " << kToolName << " run manifest\n";
  os << "version: " << m.version << "\n";
  os << "command: " << m.inv.command << "\n";
  for (const auto& [k, v] : m.inv.args) os << "arg." << k << ": " << v << "\n";
  for (const auto& [k, v] : m.spec_hashes) os << "hash." << k << ": " << v << "\n";
  os << "tol: " << m.tol << "\n";
  os << "grid: " << m.grid << "\n";
  os << "window: " << m.window << "\n";
  os << "seed: " << m.seed << "\n";
  return os.str();
}

RunManifest parse_manifest(const std::string& text, const std::string& source) {
  RunManifest m;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  bool have_command = false;
  while (std::getline(in, raw)) {
    ++n;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) bad(source + ":" + std::to_string(n) + ": expected 'key: value'");
    const std::string key = trim(s.substr(0, colon));
    const std::string value = trim(s.substr(colon + 1));
    if (key == "version") {
      m.version = value;
    } else if (key == "command") {
      m.inv.command = value;
      have_command = true;
    } else if (key.rfind("arg.", 0) == 0) {
      m.inv.args[key.substr(4)] = value;
    } else if (key.rfind("hash.", 0) == 0) {
      m.spec_hashes[key.substr(5)] = value;
    } else if (key == "tol") {
      m.tol = value;
    } else if (key == "grid") {
      m.grid = value;
    } else if (key == "window") {
      m.window = value;
    } else if (key == "seed") {
      try {
        m.seed = std::stoull(value);
      } catch (const std::exception&) {
        bad(source + ":" + std::to_string(n) + ": bad seed '" + value + "'");
      }
    } else {
      bad(source + ":" + std::to_string(n) + ": unknown manifest key '" + key + "'");
    }
  }
  if (!have_command) bad(source + ": manifest has no command");
  return m;
}

void verify_manifest(const RunManifest& m, const std::string& version) {
  if (m.version != version) bad("manifest was written by version " + m.version + ", this is " + version);
  for (const auto& [k, v] : m.inv.args) {
    if (!is_spec_arg(k)) continue;
    const auto it = m.spec_hashes.find(k);
    if (it == m.spec_hashes.end()) bad("manifest lacks a hash for --" + k);
    const std::string now = hex64(fnv1a(read_file(v)));
    if (now != it->second) bad("spec file '" + v + "' changed since the manifest was written");
  }
}

}  // namespace carleson::cli
