#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace carleson::cli {

inline constexpr const char* kToolName = "carleson-lab";

// A subcommand with its options, keyed by long name without the dashes.
struct Invocation {
  std::string command;
  std::map<std::string, std::string> args;

  bool has(const std::string& key) const { return args.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

// Options whose value names a spec file; their bytes are hashed into the manifest.
bool is_spec_arg(const std::string& key);

struct RunManifest {
  std::string version;
  Invocation inv;
  std::map<std::string, std::string> spec_hashes;  // option -> FNV-1a of the file
  std::string tol, grid, window;                   // as passed, "default" otherwise
  std::uint64_t seed = 0;
};

// Hashes the spec files the invocation names.
RunManifest make_manifest(const Invocation& inv, const std::string& version);
std::string emit_manifest(const RunManifest& m);
RunManifest parse_manifest(const std::string& text, const std::string& source);
// Throws SchemaError when the version or a spec-file hash no longer matches.
void verify_manifest(const RunManifest& m, const std::string& version);

}  // namespace carleson::cli
