#include "carleson/cli/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "carleson/error.hpp"

namespace carleson::cli {

namespace {

struct Line {
  int number = 0;
  std::string key;
  std::vector<std::string> fields;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw Error(ErrorKind::SchemaError, source + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& s, const std::string& source, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) fail(source, line, "expected a number, got '" + s + "'");
  return v;
}

struct Reader {
  const std::string& source;
  const Line& ln;

  void arity(std::size_t n) const {
    if (ln.fields.size() != n)
      fail(source, ln.number,
           "'" + ln.key + "' takes " + std::to_string(n) + " values, got " + std::to_string(ln.fields.size()));
  }
  double at(std::size_t i) const { return to_double(ln.fields[i], source, ln.number); }
  void check(bool ok, const std::string& msg) const {
    if (!ok) fail(source, ln.number, "'" + ln.key + "': " + msg);
  }
};

bool radial_entry(RadialMeasure& nu, const std::string& key, const Reader& r) {
  if (key == "atom0") {
    r.arity(1);
    const double m = r.at(0);
    r.check(m >= 0 && std::isfinite(m), "mass must be finite and >= 0");
    nu.atom_at_zero += m;
  } else if (key == "atom") {
    r.arity(2);
    const double at = r.at(0), m = r.at(1);
    r.check(at > 0 && std::isfinite(at), "atom position must be finite and > 0");
    r.check(m > 0 && std::isfinite(m), "mass must be finite and > 0");
    nu.atoms.push_back({at, m});
  } else if (key == "power") {
    r.arity(4);
    PowerPiece p{r.at(0), r.at(1), r.at(2), r.at(3)};
    r.check(p.lo >= 0 && p.lo < p.hi, "needs 0 <= lo < hi");
    r.check(p.coeff >= 0 && std::isfinite(p.coeff), "coefficient must be finite and >= 0");
    r.check(std::isfinite(p.alpha), "alpha must be finite");
    nu.powers.push_back(p);
  } else if (key == "table") {
    r.check(r.ln.fields.size() >= 4 && r.ln.fields.size() % 2 == 0, "needs pairs R D, at least two");
    TabulatedPiece t;
    for (std::size_t i = 0; i < r.ln.fields.size(); i += 2) {
      t.r.push_back(r.at(i));
      t.density.push_back(r.at(i + 1));
      r.check(t.density.back() >= 0, "densities must be >= 0");
      r.check(t.r.size() < 2 || t.r[t.r.size() - 1] > t.r[t.r.size() - 2], "radii must increase");
    }
    r.check(t.r.front() >= 0, "radii must be >= 0");
    nu.tables.push_back(std::move(t));
  } else {
    return false;
  }
  return true;
}

std::vector<Line> tokenize(std::istream& in, const std::string& source) {
  std::vector<Line> out;
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) fail(source, n, "expected 'key: value'");
    Line ln;
    ln.number = n;
    ln.key = trim(s.substr(0, colon));
    if (ln.key.empty()) fail(source, n, "empty key");
    std::istringstream vs(s.substr(colon + 1));
    for (std::string f; vs >> f;) ln.fields.push_back(f);
    out.push_back(std::move(ln));
  }
  return out;
}

template <class F>
void validated(const std::string& source, int line, F f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    fail(source, line, e.what());
  }
}

}  // namespace

Spec parse_spec(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = tokenize(in, source);
  if (lines.empty() || lines.front().key != "kind") fail(source, lines.empty() ? 0 : lines.front().number, "first entry must be 'kind'");
  const Line& head = lines.front();
  if (head.fields.size() != 1) fail(source, head.number, "'kind' takes one value");
  const std::string kind = head.fields[0];
  const int last = lines.back().number;

  if (kind == "radial") {
    RadialMeasure nu;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const Reader r{source, lines[i]};
      if (!radial_entry(nu, lines[i].key, r)) fail(source, lines[i].number, "unknown radial key '" + lines[i].key + "'");
    }
    validated(source, last, [&] { nu.validate(); });
    return nu;
  }

  if (kind == "halfplane") {
    HalfPlaneMeasure mu;
    std::optional<ProductComponent> open;
    int open_line = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const Line& ln = lines[i];
      const Reader r{source, ln};
      if (ln.key == "begin" || ln.key == "end") {
        r.arity(1);
        r.check(ln.fields[0] == "product", "only product blocks exist");
        if (ln.key == "begin") {
          r.check(!open, "product blocks do not nest");
          open.emplace();
          open_line = ln.number;
        } else {
          r.check(open.has_value(), "no product block is open");
          validated(source, ln.number, [&] {
            open->x.validate();
            open->y.validate();
          });
          mu.products.push_back(std::move(*open));
          open.reset();
        }
      } else if (open && ln.key.rfind("x.", 0) == 0) {
        if (!radial_entry(open->x, ln.key.substr(2), r)) fail(source, ln.number, "unknown key '" + ln.key + "'");
      } else if (open && ln.key == "y.atom") {
        r.arity(2);
        const double at = r.at(0), m = r.at(1);
        r.check(std::isfinite(at), "position must be finite");
        r.check(m > 0 && std::isfinite(m), "mass must be finite and > 0");
        open->y.atoms.push_back({at, m});
      } else if (open && ln.key == "y.uniform") {
        r.arity(3);
        UniformPiece u{r.at(0), r.at(1), r.at(2)};
        r.check(u.lo < u.hi, "needs lo < hi");
        r.check(u.density >= 0 && std::isfinite(u.density), "density must be finite and >= 0");
        open->y.pieces.push_back(u);
      } else if (!open && ln.key == "atom") {
        r.arity(3);
        const Atom a{cplx(r.at(0), r.at(1)), r.at(2)};
        r.check(a.z.real() >= 0 && std::isfinite(a.z.real()) && std::isfinite(a.z.imag()),
                "atoms must lie in the closed right half-plane");
        r.check(a.mass > 0 && std::isfinite(a.mass), "mass must be finite and > 0");
        mu.atoms.push_back(a);
      } else {
        fail(source, ln.number, "unexpected key '" + ln.key + "'" + (open ? " inside a product block" : ""));
      }
    }
    if (open) fail(source, open_line, "product block is never closed");
    validated(source, last, [&] { mu.validate(); });
    return mu;
  }

  if (kind == "system") {
    DiagonalSystem sys;
    bool have_q = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const Line& ln = lines[i];
      const Reader r{source, ln};
      if (ln.key == "q") {
        r.arity(1);
        sys.q = r.at(0);
        r.check(sys.q >= 1 && std::isfinite(sys.q), "q must lie in [1, inf)");
        have_q = true;
      } else if (ln.key == "mode") {
        r.arity(4);
        const cplx lam(r.at(0), r.at(1)), b(r.at(2), r.at(3));
        r.check(lam.real() < 0, "eigenvalues must have Re < 0");
        r.check(std::isfinite(lam.imag()) && std::isfinite(std::abs(b)), "entries must be finite");
        sys.lambda.push_back(lam);
        sys.b.push_back(b);
      } else {
        fail(source, ln.number, "unknown system key '" + ln.key + "'");
      }
    }
    if (!have_q) fail(source, last, "system spec needs 'q'");
    validated(source, last, [&] { sys.validate(); });
    return sys;
  }

  fail(source, head.number, "unknown kind '" + kind + "'");
}

Spec parse_spec_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_spec(in, source);
}

Spec parse_spec_file(const std::string& path) { return parse_spec_text(read_file(path), path); }

RadialMeasure expect_radial(const Spec& s, const std::string& source) {
  if (const auto* v = std::get_if<RadialMeasure>(&s)) return *v;
  throw Error(ErrorKind::SchemaError, source + ": expected a radial spec");
}

HalfPlaneMeasure expect_halfplane(const Spec& s, const std::string& source) {
  if (const auto* v = std::get_if<HalfPlaneMeasure>(&s)) return *v;
  throw Error(ErrorKind::SchemaError, source + ": expected a halfplane spec");
}

DiagonalSystem expect_system(const Spec& s, const std::string& source) {
  if (const auto* v = std::get_if<DiagonalSystem>(&s)) return *v;
  throw Error(ErrorKind::SchemaError, source + ": expected a system spec");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit_radial(std::ostringstream& os, const RadialMeasure& nu, const std::string& prefix) {
  if (nu.atom_at_zero != 0) os << prefix << "atom0: " << format_double(nu.atom_at_zero) << "\n";
  for (const auto& a : nu.atoms) os << prefix << "atom: " << format_double(a.at) << " " << format_double(a.mass) << "\n";
  for (const auto& p : nu.powers)
    os << prefix << "power: " << format_double(p.lo) << " " << format_double(p.hi) << " " << format_double(p.coeff)
       << " " << format_double(p.alpha) << "\n";
  for (const auto& t : nu.tables) {
    os << prefix << "table:";
    for (std::size_t i = 0; i < t.r.size(); ++i) os << " " << format_double(t.r[i]) << " " << format_double(t.density[i]);
    os << "\n";
  }
}

}  // namespace

std::string emit_spec(const Spec& s) {
  std::ostringstream os;
  if (const auto* nu = std::get_if<RadialMeasure>(&s)) {
    os << "kind: radial\n";
    emit_radial(os, *nu, "");
  } else if (const auto* mu = std::get_if<HalfPlaneMeasure>(&s)) {
    if (!mu->densities.empty())
      throw Error(ErrorKind::SchemaError, "density components have no text form");
    os << "kind: halfplane\n";
    for (const auto& a : mu->atoms)
      os << "atom: " << format_double(a.z.real()) << " " << format_double(a.z.imag()) << " " << format_double(a.mass)
         << "\n";
    for (const auto& p : mu->products) {
      os << "begin: product\n";
      emit_radial(os, p.x, "x.");
      for (const auto& a : p.y.atoms) os << "y.atom: " << format_double(a.at) << " " << format_double(a.mass) << "\n";
      for (const auto& u : p.y.pieces)
        os << "y.uniform: " << format_double(u.lo) << " " << format_double(u.hi) << " " << format_double(u.density)
           << "\n";
      os << "end: product\n";
    }
  } else {
    const auto& sys = std::get<DiagonalSystem>(s);
    os << "kind: system\nq: " << format_double(sys.q) << "\n";
    for (std::size_t k = 0; k < sys.lambda.size(); ++k)
      os << "mode: " << format_double(sys.lambda[k].real()) << " " << format_double(sys.lambda[k].imag()) << " "
         << format_double(sys.b[k].real()) << " " << format_double(sys.b[k].imag()) << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace carleson::cli
