#include "carleson/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "carleson/error.hpp"

namespace carleson {

using num::kInf;
using num::kSqrt2;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Precondition, msg);
}

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTie = 1e-12;

}  // namespace

double AdaptedSequence::at(int n) const {
  require(n >= n_first && n <= n_last(), "index outside the adapted sequence");
  return a[static_cast<std::size_t>(n - n_first)];
}

double AdaptedSequence::beta(int n) const {
  require(n >= n_first && n < n_last(), "beta index outside the adapted sequence");
  return betas[static_cast<std::size_t>(n - n_first)];
}

double AdaptedSequence::min_separation() const {
  double best = 1;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) best = std::min(best, (a[i + 1] - a[i]) / a[i + 1]);
  return best;
}

double cdf_level_sup(const RadialMeasure& nu, double target, int iterations) {
  if (nu.total_mass() <= target) return kInf;
  auto F = [&](double r) { return radial_cdf(nu, r); };
  double lo, hi = 1;
  if (F(hi) <= target) {
    while (F(hi) <= target) {
      hi *= 2;
      if (!std::isfinite(hi)) return kInf;
    }
    lo = hi / 2;
  } else {
    lo = 0.5;
    while (F(lo) > target) {
      hi = lo;
      lo /= 2;
      if (lo < 1e-300) return 0;
    }
  }
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

AdaptedSequence build_adapted_sequence(const RadialMeasure& nu, int n_min, int n_max,
                                       const SequenceOptions& opt) {
  nu.validate();
  if (n_min > n_max) throw Error(ErrorKind::EmptyWindow, "empty index window");
  AdaptedSequence s;
  if (opt.R) {
    require(*opt.R >= 1, "doubling constant must be >= 1");
    s.R = *opt.R;
  } else {
    try {
      const DoublingInfo d = doubling_constant(nu, opt.probe_grid, opt.cap);
      if (d.exceeds_cap) throw Error(ErrorKind::NotDoubling, "doubling ratio exceeds cap");
      s.R = d.R;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroMassNearOrigin)
        throw Error(ErrorKind::NotDoubling, std::string("measure is not doubling: ") + e.what());
      throw;
    }
  }
  const double base = 2 * s.R;
  s.zero_atom = nu.atom_at_zero;
  const bool atom = nu.atom_at_zero > 0;
  int n = atom ? std::max(0, n_min) : n_min;
  s.n_first = n;
  for (; n <= n_max; ++n) {
    double an;
    if (atom && n == 0) {
      an = 0;
    } else {
      const double target = atom ? std::pow(base, 2.0 * (n + 1)) * nu.atom_at_zero
                                 : std::pow(base, 2.0 * n);
      an = std::isfinite(target) ? cdf_level_sup(nu, target) : kInf;
    }
    if (!std::isfinite(an)) {
      s.truncated_right = true;
      break;
    }
    s.a.push_back(an);
  }
  if (s.a.empty()) throw Error(ErrorKind::EmptyWindow, "no finite a_n in the window");
  std::vector<double> F(s.a.size());
  for (std::size_t i = 0; i < s.a.size(); ++i) F[i] = radial_cdf(nu, s.a[i]);
  for (std::size_t i = 0; i + 1 < s.a.size(); ++i) {
    double b = F[i + 1] - F[i];
    if (s.a[i] == 0) b = F[i + 1] - nu.atom_at_zero;
    s.betas.push_back(b);
  }
  s.below_mass = F.front();
  s.tail_mass = nu.total_mass() - F.back();

  for (std::size_t i = 0; i + 1 < s.a.size(); ++i) {
    if (!(s.a[i + 1] > s.a[i]) || (s.a[i + 1] - s.a[i]) / s.a[i + 1] < s.c * (1 - 1e-12))
      throw Error(ErrorKind::NotDoubling, "separation (a_{n+1}-a_n)/a_{n+1} < 1/2");
  }
  for (std::size_t i = 1; i < s.betas.size(); ++i) {
    const double r = s.betas[i] / s.betas[i - 1];
    if (!(r >= base * (1 - 1e-9) && r <= base * base * base * (1 + 1e-9)))
      throw Error(ErrorKind::NotDoubling, "mass ratio beta_n/beta_{n-1} outside [2R, (2R)^3]");
  }
  return s;
}

// ---------------------------------------------------------------- refinement

namespace {

bool step_ok(double lo, double hi) {
  return hi < 2 * lo && hi >= kSqrt2 * lo * (1 - 8 * kEps);
}

}  // namespace

RefinedSequence refine_points(const std::vector<double>& a, int N) {
  require(!a.empty(), "empty sequence");
  require(a.front() > 0, "refinement needs a_N > 0");
  RefinedSequence r;
  r.c = kRefineC;
  r.N = N;
  r.b.push_back(a.front());
  r.parent.push_back(N);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const double lo = a[i], hi = a[i + 1];
    require(hi >= kSqrt2 * lo * (1 - 8 * kEps), "consecutive ratio below 1/(1-c)");
    for (int l = 1;; ++l) {
      const double g = std::pow(hi / lo, 1.0 / l);
      std::vector<double> pts;
      for (int m = 1; m < l; ++m) pts.push_back(lo * std::pow(g, m));
      pts.push_back(hi);
      bool ok = true;
      double prev = lo;
      for (double p : pts) {
        ok = ok && step_ok(prev, p);
        prev = p;
      }
      if (ok) {
        for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
          r.b.push_back(pts[m]);
          r.parent.push_back(std::nullopt);
        }
        r.b.push_back(hi);
        r.parent.push_back(N + static_cast<int>(i) + 1);
        break;
      }
      require(l < 4096, "refinement did not converge");
    }
  }
  return r;
}

RefinedSequence refine_sequence(const AdaptedSequence& a, int N) {
  std::vector<double> pts;
  for (int n = N; n <= a.n_last(); ++n) pts.push_back(a.at(n));
  return refine_points(pts, N);
}

bool satisfies_geometric_bounds(const RefinedSequence& r) {
  for (std::size_t j = 0; j + 1 < r.b.size(); ++j)
    if (!step_ok(r.b[j], r.b[j + 1])) return false;
  return true;
}

// ---------------------------------------------------------------- tiles

double generation_size(double b_next, double a_N) {
  require(a_N > 0 && b_next > a_N, "generation size needs b_{j+1} > a_N > 0");
  double L = a_N;
  while (!(b_next <= kSqrt2 * L)) L *= 2;
  return L;
}

long TileSet::k_min(int j) const {
  return -static_cast<long>(std::llround(extent / (2 * sizes[static_cast<std::size_t>(j)])));
}

Box TileSet::square(int j, long k) const {
  const double L = sizes[static_cast<std::size_t>(j)];
  return {Span::open(0, seq.b[static_cast<std::size_t>(j) + 1]),
          Span::half_open(static_cast<double>(k) * L, static_cast<double>(k + 1) * L)};
}

std::vector<long> TileSet::children(int j, long k) const {
  if (j == 0) return {};
  const long m = std::llround(sizes[static_cast<std::size_t>(j)] /
                              sizes[static_cast<std::size_t>(j) - 1]);
  std::vector<long> out;
  for (long i = 0; i < m; ++i) out.push_back(k * m + i);
  return out;
}

TileSet build_tiles(const RefinedSequence& b, double y_extent) {
  require(b.b.size() >= 2, "tiles need at least two b_j");
  require(y_extent > 0 && std::isfinite(y_extent), "y extent must be positive");
  TileSet t;
  t.seq = b;
  t.extent = y_extent;
  const double aN = b.b.front();
  for (std::size_t j = 0; j + 1 < b.b.size(); ++j) {
    const double L = generation_size(b.b[j + 1], aN);
    require(b.b[j + 1] <= kSqrt2 * L && b.b[j + 1] > kSqrt2 * L / 2, "eccentricity violated");
    t.sizes.push_back(L);
  }
  const double Lmax = *std::max_element(t.sizes.begin(), t.sizes.end());
  const double q = (0.5 * y_extent) / Lmax;
  require(q >= 1 && q == std::floor(q), "y_extent/2 must be a multiple of the largest interval");
  for (int j = 0; j < t.generations(); ++j) {
    t.first.push_back(t.tiles.size());
    const double L = t.sizes[static_cast<std::size_t>(j)];
    const long K = std::llround(y_extent / L);
    for (long k = -K / 2; k < K / 2; ++k) {
      Tile tile;
      tile.j = j;
      tile.k = k;
      tile.x_lo = b.b[static_cast<std::size_t>(j)];
      tile.x_hi = b.b[static_cast<std::size_t>(j) + 1];
      tile.y_lo = static_cast<double>(k) * L;
      tile.y_hi = static_cast<double>(k + 1) * L;
      t.tiles.push_back(tile);
    }
  }
  t.first.push_back(t.tiles.size());
  return t;
}

// ---------------------------------------------------------------- decomposition

namespace {

int b_index_of(const TileSet& t, int n) {
  for (std::size_t j = 0; j < t.seq.parent.size(); ++j)
    if (t.seq.parent[j] && *t.seq.parent[j] == n) return static_cast<int>(j);
  return -1;
}

// Q-masses from tile masses via Q_{I,j} = T_{I,j} u union of Q_{I',j-1}.
std::vector<double> accumulate_squares(const TileSet& t, const std::vector<double>& tile_val,
                                       int j_start) {
  std::vector<double> q(t.tiles.size(), 0.0);
  for (int j = j_start; j < t.generations(); ++j) {
    for (long k = t.k_min(j); k < t.k_min(j) + t.count(j); ++k) {
      const std::size_t i = t.index(j, k);
      double s = tile_val[i];
      if (j > j_start)
        for (long c : t.children(j, k)) s += q[t.index(j - 1, c)];
      q[i] = s;
    }
  }
  return q;
}

std::vector<double> tile_masses(const HalfPlaneMeasure& mu, const TileSet& t) {
  std::vector<double> m(t.tiles.size());
  for (std::size_t i = 0; i < t.tiles.size(); ++i) m[i] = box_mass(mu, t.tiles[i].box());
  return m;
}

std::string describe(const TileSet& t, const FamilyRatio& r) {
  std::ostringstream os;
  os.precision(17);
  const double L = t.sizes[static_cast<std::size_t>(r.j)];
  os << "Q_{I,j} with j=" << r.j << ", I=[" << static_cast<double>(r.k) * L << ", "
     << static_cast<double>(r.k + 1) * L << "), side " << t.seq.b[static_cast<std::size_t>(r.j) + 1]
     << ": ratio " << r.constant;
  return os.str();
}

}  // namespace

std::vector<double> stage_line_masses(const AdaptedSequence& a, int N, int n_end) {
  std::vector<double> out;
  for (int n = N; n < n_end; ++n) {
    if (n == N) {
      double F = a.below_mass + (a.a.front() == 0 ? a.zero_atom : 0.0);
      for (int m = a.n_first; m <= N; ++m) F += a.beta(m);
      out.push_back(F);
    } else {
      out.push_back(a.beta(n));
    }
  }
  return out;
}

FamilyRatio family_domination(const HalfPlaneMeasure& mu, const TileSet& t,
                              const AdaptedSequence& a) {
  const int N = t.seq.N;
  const int n_end = a.n_last();
  const std::vector<double> lm = stage_line_masses(a, N, n_end);
  const std::vector<double> q = accumulate_squares(t, tile_masses(mu, t), 0);
  FamilyRatio best;
  for (int j = 0; j < t.generations(); ++j) {
    const double side = t.seq.b[static_cast<std::size_t>(j) + 1];
    double line = 0;
    for (int n = N; n < n_end; ++n)
      if (a.at(n) < side) line += lm[static_cast<std::size_t>(n - N)];
    const double nu_q = line * t.sizes[static_cast<std::size_t>(j)];
    for (long k = t.k_min(j); k < t.k_min(j) + t.count(j); ++k) {
      const double m = q[t.index(j, k)];
      double r = 0;
      if (m > 0) r = nu_q > 0 ? m / nu_q : kInf;
      if (r > best.constant || best.j < 0) {
        best.constant = r;
        best.j = j;
        best.k = k;
      }
    }
  }
  return best;
}

Decomposition decompose(const HalfPlaneMeasure& mu, const RadialMeasure& nu, const TileSet& t,
                        const AdaptedSequence& a) {
  mu.validate();
  nu.validate();
  const int N = t.seq.N;
  require(N >= a.n_first && N < a.n_last(), "tile start index outside the adapted sequence");
  require(t.seq.b.front() == a.at(N) && t.seq.b.back() == a.at(a.n_last()),
          "tiles were not built from this adapted sequence");
  const int n_end = a.n_last();

  Decomposition d;
  d.N = N;
  d.line_masses = stage_line_masses(a, N, n_end);
  for (int n = N; n < n_end; ++n) d.line_x.push_back(a.at(n));

  const Box region{Span::half_open(t.seq.b.front(), t.seq.b.back()),
                   Span::half_open(-0.5 * t.extent, 0.5 * t.extent)};
  const HalfPlaneMeasure mr = restrict_measure(mu, region);
  const double total = mu.total_mass();
  d.tile_mass = tile_masses(mr, t);
  const double kept = num::pairwise_sum(d.tile_mass);
  d.truncation_loss = std::isfinite(total) ? std::max(0.0, total - kept) : kInf;

  const FamilyRatio pre = family_domination(mr, t, a);
  if (pre.constant > 1 + 1e-9)
    throw Error(ErrorKind::CarlesonViolation,
                "mu(Q) > nu(Q) on the tile family: " + describe(t, pre));

  const std::size_t T = t.tiles.size();
  std::vector<double> remaining(T, 1.0);  // fraction of mu(T) not yet assigned
  for (std::size_t i = 0; i < T; ++i)
    if (d.tile_mass[i] <= 0) remaining[i] = 0;
  std::vector<double> rem_line(T, 0.0);   // nu^j on {a_n} x I_{j,k}
  d.domination.constant = 0;

  for (int n = N; n < n_end; ++n) {
    const double beta = d.line_masses[static_cast<std::size_t>(n - N)];
    const int j0 = b_index_of(t, n);
    const int j1 = b_index_of(t, n + 1);
    require(j0 >= 0 && j1 > j0, "a_n missing from the refined sequence");
    std::vector<double> frac(T, 0.0);  // fraction of mu(T) assigned to part n
    for (int j = j0; j < t.generations(); ++j) {
      const double L = t.sizes[static_cast<std::size_t>(j)];
      for (long k = t.k_min(j); k < t.k_min(j) + t.count(j); ++k) {
        const std::size_t i = t.index(j, k);
        double V = 0;
        if (j == j0) {
          V = L * beta;
        } else {
          for (long c : t.children(j, k)) V += rem_line[t.index(j - 1, c)];
        }
        const double mT = d.tile_mass[i];
        const double m = remaining[i] * mT;
        int type;
        if (V > 0 && m <= V * (1 + kTie)) {
          type = 1;
          frac[i] = remaining[i];
          rem_line[i] = std::max(0.0, V - m);
        } else if (V > 0) {
          type = 2;
          frac[i] = V / mT;
          rem_line[i] = 0;
        } else {
          type = 3;
          rem_line[i] = 0;
        }
        remaining[i] -= frac[i];
        if (remaining[i] < 0) remaining[i] = 0;
        d.type_log.push_back({n, j, k, type});
      }
    }
    // Tiles of the strip a_n <= Re z < a_{n+1} must be used up; absorb rounding dust.
    for (int j = j0; j < j1; ++j) {
      for (long k = t.k_min(j); k < t.k_min(j) + t.count(j); ++k) {
        const std::size_t i = t.index(j, k);
        if (remaining[i] == 0) continue;
        if (remaining[i] > 1e-9) {
          FamilyRatio w{remaining[i], j, k, n};
          throw Error(ErrorKind::CarlesonViolation,
                      "mass left in strip after stage " + std::to_string(n) + ": " + describe(t, w));
        }
        d.snapped_residue += remaining[i] * d.tile_mass[i];
        frac[i] += remaining[i];
        remaining[i] = 0;
      }
    }

    std::vector<double> assigned(T, 0.0);
    HalfPlaneMeasure part;
    for (std::size_t i = 0; i < T; ++i) {
      if (frac[i] <= 0 || d.tile_mass[i] <= 0) continue;
      assigned[i] = frac[i] * d.tile_mass[i];
      part = add_measures(part, scale_measure(restrict_measure(mr, t.tiles[i].box()), frac[i]));
    }
    const std::vector<double> q = accumulate_squares(t, assigned, j0);
    for (int j = j0; j < t.generations(); ++j) {
      const double nu_q = t.sizes[static_cast<std::size_t>(j)] * beta;
      for (long k = t.k_min(j); k < t.k_min(j) + t.count(j); ++k) {
        const double m = q[t.index(j, k)];
        const double r = m > 0 ? (nu_q > 0 ? m / nu_q : kInf) : 0.0;
        if (r > d.domination.constant) d.domination = {r, j, k, n};
      }
    }
    d.assigned.push_back(std::move(assigned));
    d.parts.push_back(std::move(part));
  }
  return d;
}

ShiftedConstant shifted_carleson_constant(const HalfPlaneMeasure& mu_n, double shift,
                                          double line_x, double line_mass,
                                          std::vector<double> sides) {
  require(shift >= 0, "shift must be >= 0");
  const Extent e = support_extent(mu_n);
  require(e.empty() || e.x_min >= shift, "measure not supported right of the shift");
  if (sides.empty()) {
    const HalfPlaneMeasure moved = mu_n;
    sides = default_sides(moved, 8);
    if (!e.empty()) {
      const double gap = e.x_min - shift;
      if (gap > 0) sides.push_back(gap * (1 + 1e-9));
    }
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
  }
  const SquareFamily fam = adapted_family(mu_n, sides);
  if (fam.empty()) throw Error(ErrorKind::EmptyFamily, "no shifted squares");
  ShiftedConstant out;
  for (const auto& q : fam) {
    const Box b{Span::open(shift, shift + q.side),
                Span::open(q.center_y - 0.5 * q.side, q.center_y + 0.5 * q.side)};
    const double m = box_mass(mu_n, b);
    const double r = m / q.side;
    if (r > out.constant) {
      out.constant = r;
      out.witness = q;
    }
    if (line_x >= 0 && m > 0) {
      const double big = shift + q.side;
      const CarlesonSquare cover{q.center_y, big};
      const double mc = square_mass(mu_n, cover);
      const double nc = line_x < big ? line_mass * big : 0.0;
      const double rc = nc > 0 ? mc / nc : kInf;
      out.c_prime = std::max(out.c_prime, rc);
    }
  }
  return out;
}

}  // namespace carleson
