#include "carleson/cli/parse.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "carleson/error.hpp"

namespace carleson::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

cplx complex_from(const std::vector<std::string>& f, std::size_t i, const std::string& what) {
  const double re = parse_number(f.at(i), what);
  const double im = f.size() > i + 1 ? parse_number(f[i + 1], what) : 0.0;
  return {re, im};
}

}  // namespace

double parse_number(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) bad(what + ": expected a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) bad(what + ": expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& f : split(s, ',')) out.push_back(parse_number(f, what));
  if (out.empty()) bad(what + ": empty list");
  return out;
}

std::pair<int, int> parse_index_window(const std::string& s) {
  std::string lo, hi;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    lo = s.substr(0, dots);
    hi = s.substr(dots + 2);
  } else if (const auto colon = s.find(':', 1); colon != std::string::npos) {
    lo = s.substr(0, colon);
    hi = s.substr(colon + 1);
  } else {
    bad("window: expected 'lo..hi', got '" + s + "'");
  }
  const int a = parse_int(lo, "window"), b = parse_int(hi, "window");
  if (a > b) bad("window: lo > hi in '" + s + "'");
  return {a, b};
}

TGrid parse_t_grid(const std::string& s) {
  const auto f = split(s, ':');
  if (f.size() != 3) bad("grid: expected 'lo:hi:count', got '" + s + "'");
  TGrid g{parse_number(f[0], "grid"), parse_number(f[1], "grid"), parse_int(f[2], "grid")};
  if (!(g.lo < g.hi) || g.count < 2) bad("grid: needs lo < hi and count >= 2");
  return g;
}

TestFunction parse_test_function(const std::string& s) {
  const auto f = split(s, ':');
  const std::string& k = f.at(0);
  TestFunction out;
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (f.size() < lo || f.size() > hi) bad("test function '" + s + "': wrong number of fields");
  };
  if (k == "exp") {
    arity(2, 3);
    out = Exponential{complex_from(f, 1, "exp")};
  } else if (k == "monexp") {
    arity(3, 4);
    out = MonomialExponential{parse_int(f[1], "monexp"), complex_from(f, 2, "monexp")};
  } else if (k == "kernel") {
    arity(3, 3);
    out = NormalizedKernel{parse_number(f[1], "kernel"), parse_number(f[2], "kernel")};
  } else if (k == "phi") {
    arity(2, 2);
    out = PhiApproximant{parse_number(f[1], "phi")};
  } else if (k == "expsum") {
    // expsum:C:L,C:L is split on ':' first, so rebuild the pair list
    const std::string body = s.substr(7);
    ExponentialSum e;
    for (const auto& pair : split(body, ',')) {
      const auto cl = split(pair, ':');
      if (cl.size() != 2) bad("expsum: expected C:L pairs in '" + s + "'");
      e.coeff.emplace_back(parse_number(cl[0], "expsum"));
      e.lambda.emplace_back(parse_number(cl[1], "expsum"));
    }
    out = e;
  } else if (k == "lacunary") {
    arity(4, 4);
    out = Lacunary{parse_int(f[1], "lacunary"), parse_list(f[3], "lacunary"), parse_number(f[2], "lacunary")};
  } else {
    bad("unknown test function '" + s + "'");
  }
  try {
    validate(out);
  } catch (const Error& e) {
    bad("test function '" + s + "': " + e.what());
  }
  return out;
}

Gauge parse_gauge(const std::string& s) {
  if (s == "lin") return linear_gauge();
  if (s.rfind("pow:", 0) == 0) {
    const double e = parse_number(s.substr(4), "gauge");
    if (!(e >= 0) || !std::isfinite(e)) bad("gauge exponent must be finite and >= 0");
    return power_gauge(e);
  }
  bad("unknown gauge '" + s + "'");
}

}  // namespace carleson::cli
