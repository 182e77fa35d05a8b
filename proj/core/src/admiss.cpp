#include "carleson/admiss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carleson/error.hpp"

namespace carleson {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw Error(ErrorKind::SchemaError, "bad number '" + s + "'");
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

InputSpace parse_input_space(const std::string& text) {
  if (text == "l2") return LpInput{2};
  if (text.rfind("lp:", 0) == 0) {
    const double p = number(text.substr(3));
    if (!(p >= 1) || !std::isfinite(p)) throw Error(ErrorKind::SchemaError, "lp exponent must be >= 1");
    return LpInput{p};
  }
  if (text == "l2w:lebesgue") return WeightedL2Input{RadialMeasure::lebesgue(), "lebesgue"};
  if (text == "l2w:hardy") return WeightedL2Input{RadialMeasure::dirac_zero(), "hardy"};
  if (text.rfind("l2w:power:", 0) == 0) {
    const double a = number(text.substr(10));
    if (!(a > -1)) throw Error(ErrorKind::SchemaError, "power weight exponent must be > -1");
    return WeightedL2Input{RadialMeasure::power_law(a), "power:" + fmt(a)};
  }
  throw Error(ErrorKind::SchemaError, "unknown input space '" + text + "'");
}

std::string describe(const InputSpace& z) {
  if (const auto* lp = std::get_if<LpInput>(&z)) return "lp:" + fmt(lp->p);
  return "l2w:" + std::get<WeightedL2Input>(z).name;
}

void DiagonalSystem::validate() const {
  require(lambda.size() == b.size(), "eigenvalue and control counts differ");
  require(q >= 1 && std::isfinite(q), "q must lie in [1, inf)");
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (!(lambda[k].real() < 0))
      throw Error(ErrorKind::EigenvalueInRightHalfPlane,
                  "eigenvalue " + std::to_string(k) + " has Re >= 0: " + fmt(lambda[k].real()));
    require(std::isfinite(lambda[k].imag()) && std::isfinite(std::abs(b[k])), "system entries must be finite");
  }
}

const char* route_name(AdmissRoute r) {
  switch (r) {
    case AdmissRoute::WeightedL2: return "weighted-l2";
    case AdmissRoute::PprimeLeQ: return "pprime-le-q";
    case AdmissRoute::SectorialQgeP: return "sectorial-q-ge-p";
    case AdmissRoute::SectorialPgtQ: return "sectorial-p-gt-q";
    case AdmissRoute::Strip: return "strip";
    case AdmissRoute::NecessaryOnly: return "necessary-only";
  }
  return "?";
}

HalfPlaneMeasure system_measure(const DiagonalSystem& sys) {
  sys.validate();
  struct Entry {
    cplx z;
    double mass;
  };
  std::vector<Entry> e;
  for (std::size_t k = 0; k < sys.lambda.size(); ++k) {
    const double m = std::pow(std::abs(sys.b[k]), sys.q);
    if (m > 0) e.push_back({-sys.lambda[k], m});
  }
  // Sorting by position, then mass, makes the merged sums independent of labelling.
  std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.mass < b.mass;
  });
  HalfPlaneMeasure mu;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    std::vector<double> ms;
    while (j < e.size() && e[j].z == e[i].z) ms.push_back(e[j++].mass);
    mu.atoms.push_back({e[i].z, num::pairwise_sum(ms)});
    i = j;
  }
  mu.validate();
  return mu;
}

AdmissReport admissibility_verdict(const DiagonalSystem& sys, const InputSpace& z, const GridOptions& opt) {
  const HalfPlaneMeasure mu = system_measure(sys);
  AdmissReport r;
  const double q = sys.q;
  auto necessary = [&](double p) {
    r.route = AdmissRoute::NecessaryOnly;
    r.verdict = check_necessary_power_bound(mu, {p, q}, opt);
    r.notes = "sufficiency not certified: only the necessary power bound applies in this regime";
  };
  if (const auto* w = std::get_if<WeightedL2Input>(&z)) {
    if (q == 2) {
      r.route = AdmissRoute::WeightedL2;
      const ZenReport zr = check_zen_embedding(mu, w->nu, 2, std::nullopt, opt);
      r.verdict = zr.square;
      r.supporting.push_back(zr.kernel_power);
    } else {
      necessary(2);
    }
  } else {
    const double p = std::get<LpInput>(z).p;
    const ExponentPair pq{p, q};
    const Extent e = support_extent(mu);
    if (p <= 2 && pq.p_conj() <= q) {
      r.route = AdmissRoute::PprimeLeQ;
      const PQReport pr = check_pprime_le_q(mu, pq, opt);
      r.verdict = pr.power_bound;
      r.supporting = {pr.exponential, pr.empirical};
    } else if (supported_in(mu, SectorSpec{}) && q >= p && p > 1) {
      r.route = AdmissRoute::SectorialQgeP;
      const SectorQgepReport s = check_sectorial_qgep(mu, pq, SectorSpec{}, opt);
      r.verdict = s.symmetric_square;
      r.supporting = {s.real_exponential, s.dyadic_exponential, s.empirical};
    } else if (supported_in(mu, SectorSpec{}) && q < p) {
      r.route = AdmissRoute::SectorialPgtQ;
      const SectorPlqReport s = check_sectorial_plq(mu, pq, SectorSpec{}, opt);
      EmbeddingVerdict v;
      v.criterion = "sector_plq.2";
      v.constant = s.slab_masses.norm;
      v.divergent = s.slab_masses.divergent;
      v.grid = "n=" + std::to_string(opt.n_lo) + ".." + std::to_string(opt.n_hi);
      v.cap = opt.cap;
      v.pass = !v.divergent && v.constant <= opt.cap;
      r.verdict = v;
      r.supporting.push_back(s.empirical);
      r.notes = s.notes;
    } else if (!e.empty() && pq.p_conj() <= q && q >= 2) {
      r.route = AdmissRoute::Strip;
      const StripReport s = check_strip(mu, pq, StripSpec{e.x_min, e.x_max}, opt);
      r.verdict = s.power_bound;
      r.supporting = {s.exponential, s.empirical};
      r.notes = "predicted norm bound " + fmt(s.predicted_bound);
    } else {
      necessary(p);
    }
  }
  r.admissible = r.verdict.pass;
  return r;
}

}  // namespace carleson
