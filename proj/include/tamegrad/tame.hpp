#pragma once

// Empirical tame-topology harness: component counting of trajectories
// against semialgebraic cuts, Rolle-style tangency witnesses along paths
// joining points of one leaf, and the seeded finiteness experiment. All
// numeric, clearly labeled as evidence rather than proof.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "flow.hpp"

namespace tamegrad {

enum class Relation { greater, less, equals };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::greater: return ">";
    case Relation::less: return "<";
    case Relation::equals: return "=";
  }
  return "?";
}

struct SemialgebraicPredicate {
  Poly2 poly;  // nonzero
  Relation rel;
};

// Shared dense sampling of a trajectory (per_segment points per accepted
// step, plus the final endpoint), optionally truncated at t_limit. When the
// per-step sampling would exceed max_points — stability-limited stepping near
// a finite-time blow-up can produce hundreds of thousands of accepted steps —
// the grid falls back to max_points samples uniform in t, which concentrates
// resolution in the slow (geometrically interesting) part of the flow.
struct DenseGrid {
  std::vector<double> ts;
  std::vector<std::pair<double, double>> pts;
};

inline DenseGrid make_dense_grid(const Trajectory& traj, int per_segment = 8,
                                 double t_limit = std::numeric_limits<double>::infinity(),
                                 size_t max_points = 100000) {
  DenseGrid g;
  double t_end = std::min(traj.t_end(), t_limit);
  double dense_total = static_cast<double>(traj.segments.size()) * per_segment;
  if (dense_total > static_cast<double>(max_points) && max_points >= 2 &&
      !traj.segments.empty()) {
    double t0 = traj.samples.front().t;
    if (t_end > t0) {
      size_t n = max_points;
      g.ts.reserve(n);
      g.pts.reserve(n);
      for (size_t j = 0; j < n; ++j) {
        double t = t0 + (t_end - t0) * static_cast<double>(j) / static_cast<double>(n - 1);
        g.ts.push_back(t);
        g.pts.push_back(traj.eval(t));
      }
      return g;
    }
  }
  for (const auto& seg : traj.segments) {
    if (seg.t0 >= t_limit) break;
    for (int j = 0; j < per_segment; ++j) {
      double t = seg.t0 + seg.h * j / per_segment;
      if (t >= t_limit) break;
      g.ts.push_back(t);
      g.pts.push_back(traj.eval(t));
    }
  }
  if (g.ts.empty() || g.ts.back() < t_end) {
    g.ts.push_back(t_end);
    g.pts.push_back(traj.eval(t_end));
  }
  return g;
}

namespace detail {

constexpr double kValueTol = 1e-9;   // |value| target for refined events
constexpr double kParamTol = 1e-12;  // bisection tolerance in t

// Bisection refinement of a sign change of v on [tl, tr]; returns the
// parameter with the smallest |v| seen.
inline double refine_crossing(const std::function<double(double)>& v, double tl, double tr,
                              double vl) {
  double best_t = tl, best_av = std::fabs(vl);
  for (int it = 0; it < 200 && tr - tl > kParamTol * (1.0 + std::fabs(tl)); ++it) {
    double tm = 0.5 * (tl + tr);
    double vm = v(tm);
    if (std::fabs(vm) < best_av) {
      best_av = std::fabs(vm);
      best_t = tm;
    }
    if (vm == 0.0) return tm;
    if ((vl < 0) == (vm < 0)) {
      tl = tm;
      vl = vm;
    } else {
      tr = tm;
    }
  }
  double tm = 0.5 * (tl + tr);
  if (std::fabs(v(tm)) < best_av) best_t = tm;
  return best_t;
}

// Dead-band sign classification: -1, 0, +1 with |v| <= kValueTol read as 0.
// Without the dead band, tolerance-level integrator noise (for instance a
// coordinate that has decayed to the absolute-tolerance floor and oscillates
// around zero at the stability boundary) would masquerade as thousands of
// transversal crossings.
inline int sign_class(double v) {
  if (std::fabs(v) <= kValueTol) return 0;
  return v < 0 ? -1 : 1;
}

struct ScanEvents {
  std::vector<double> crossings;  // refined parameters of transversal zeros
  int tangential = 0;             // near-zero excursions without a sign change
  bool all_zero = true;           // |v| below tolerance everywhere
};

inline ScanEvents scan(const DenseGrid& grid, const std::function<double(double)>& v_of_t,
                       const std::vector<double>& vs) {
  ScanEvents ev;
  std::vector<size_t> nz;  // samples with a definite sign
  for (size_t i = 0; i < vs.size(); ++i)
    if (sign_class(vs[i]) != 0) nz.push_back(i);
  ev.all_zero = nz.empty();
  if (ev.all_zero) return ev;

  // A near-zero run at either end of the parameter range counts as an
  // isolated touch only if it contains an exact zero (e.g. a start point
  // placed exactly on the cut); asymptotic tails that merely approach the
  // zero set stay uncounted.
  for (size_t i = 0; i < nz.front(); ++i)
    if (vs[i] == 0.0) {
      ev.crossings.push_back(grid.ts[i]);
      break;
    }

  // Between consecutive definite-sign samples: a sign change is a transversal
  // crossing (bisection-refined inside the bracket); a same-sign pair with a
  // near-zero run between them is a tangential (even-order) contact.
  for (size_t k = 0; k + 1 < nz.size(); ++k) {
    size_t i = nz[k], j = nz[k + 1];
    if (sign_class(vs[i]) != sign_class(vs[j]))
      ev.crossings.push_back(refine_crossing(v_of_t, grid.ts[i], grid.ts[j], vs[i]));
    else if (j > i + 1)
      ++ev.tangential;
  }

  for (size_t i = vs.size(); i-- > nz.back() + 1;)
    if (vs[i] == 0.0) {
      ev.crossings.push_back(grid.ts[i]);
      break;
    }
  return ev;
}

}  // namespace detail

struct ComponentCount {
  int count = 0;
  std::vector<std::pair<double, double>> intervals;  // parameter intervals, rel > / <
  int tangential = 0;
  bool degenerate_containment = false;
};

// Number of maximal parameter intervals on which the predicate holds; the
// boundaries are bisection-refined zeros of the cut polynomial along the
// trajectory. For '=' cuts, components are the isolated transversal zeros
// (or the whole trajectory, flagged, when it lies inside the zero set).
inline ComponentCount count_components(const Trajectory& traj, const SemialgebraicPredicate& cut,
                                       const DenseGrid* grid_in = nullptr) {
  if (cut.poly.is_zero()) throw std::invalid_argument("count_components: zero cut polynomial");
  DenseGrid local;
  const DenseGrid& grid = grid_in ? *grid_in : (local = make_dense_grid(traj), local);
  CompiledPoly2 g(cut.poly);
  auto v_of_t = [&](double t) {
    auto [x, y] = traj.eval(t);
    return g.eval(x, y);
  };
  std::vector<double> vs(grid.ts.size());
  for (size_t i = 0; i < grid.ts.size(); ++i) vs[i] = g.eval(grid.pts[i].first, grid.pts[i].second);

  ComponentCount out;
  auto ev = detail::scan(grid, v_of_t, vs);
  out.tangential = ev.tangential;
  if (ev.all_zero) {
    out.degenerate_containment = true;
    if (cut.rel == Relation::equals) {
      out.count = 1;
      out.intervals.push_back({grid.ts.front(), grid.ts.back()});
    }
    return out;
  }
  if (cut.rel == Relation::equals) {
    out.count = static_cast<int>(ev.crossings.size());
    for (double t : ev.crossings) out.intervals.push_back({t, t});
    return out;
  }

  const int want = cut.rel == Relation::greater ? 1 : -1;
  if (grid.ts.size() == 1) {
    if (detail::sign_class(vs[0]) == want) {
      out.count = 1;
      out.intervals.push_back({grid.ts[0], grid.ts[0]});
    }
    return out;
  }
  // Split the parameter range at the refined zeros; each piece where the
  // predicate holds (sampled at its midpoint) is one component. A strict
  // inequality is violated at a zero, so an exact even-order touch does
  // split a component in two.
  std::vector<double> cuts_t = ev.crossings;
  cuts_t.insert(cuts_t.begin(), grid.ts.front());
  cuts_t.push_back(grid.ts.back());
  for (size_t p = 0; p + 1 < cuts_t.size(); ++p) {
    double lo = cuts_t[p], hi = cuts_t[p + 1];
    if (!(hi > lo)) continue;
    // The piece counts when it contains at least one sample where the strict
    // inequality holds with a definite sign; pieces that hover inside the
    // dead band (asymptotic tails) are not certified as components.
    auto first = std::lower_bound(grid.ts.begin(), grid.ts.end(), lo);
    auto last = std::upper_bound(grid.ts.begin(), grid.ts.end(), hi);
    bool holds = false;
    for (auto it = first; it != last; ++it) {
      if (detail::sign_class(vs[static_cast<size_t>(it - grid.ts.begin())]) == want) {
        holds = true;
        break;
      }
    }
    if (holds) {
      out.intervals.push_back({lo, hi});
      ++out.count;
    }
  }
  return out;
}

struct LineIntersections {
  int count = 0;
  std::vector<TrajectorySample> points;
  int tangential = 0;
  bool degenerate_containment = false;
};

inline LineIntersections line_intersections(const Trajectory& traj, double a, double b, double c,
                                            const DenseGrid* grid_in = nullptr) {
  if (a == 0.0 && b == 0.0)
    throw std::invalid_argument("line_intersections: (a, b) must be nonzero");
  DenseGrid local;
  const DenseGrid& grid = grid_in ? *grid_in : (local = make_dense_grid(traj), local);
  auto v_of_t = [&](double t) {
    auto [x, y] = traj.eval(t);
    return a * x + b * y + c;
  };
  std::vector<double> vs(grid.ts.size());
  for (size_t i = 0; i < grid.ts.size(); ++i)
    vs[i] = a * grid.pts[i].first + b * grid.pts[i].second + c;

  LineIntersections out;
  auto ev = detail::scan(grid, v_of_t, vs);
  out.tangential = ev.tangential;
  if (ev.all_zero) {
    out.degenerate_containment = true;
    return out;
  }
  out.count = static_cast<int>(ev.crossings.size());
  for (double t : ev.crossings) {
    auto [x, y] = traj.eval(t);
    out.points.push_back({t, x, y});
  }
  return out;
}

struct RolleWitness {
  double t;
  double x, y;
  double residual;  // |s(t)| at the witness
};

struct RolleResult {
  enum class Status { ok, degenerate, not_applicable };
  Status status = Status::ok;
  std::vector<RolleWitness> witnesses;
  std::string note;
};

// Tangency witnesses of a piecewise-linear path against the gradient
// foliation: zeros of s(t) = F_y(path(t)) * x'(t) - F_x(path(t)) * y'(t).
// The endpoints must lie on one leaf, checked by integrating from the first
// endpoint both ways and measuring the distance to the second; `tol` is the
// acceptance distance of that check.
inline RolleResult rolle_witness(const std::vector<std::pair<double, double>>& path,
                                 const Poly2& F, double tol = 1e-6,
                                 const FlowOptions& opts = {}) {
  if (path.size() < 2) throw std::invalid_argument("rolle_witness: path needs >= 2 vertices");
  RolleResult out;

  // Leaf verification. Membership of the second endpoint in the leaf through
  // the first is a local question, so the check integrates inside a box just
  // covering the path rather than out to the caller's (possibly huge) box.
  {
    FlowOptions leaf_opts = opts;
    double radius = 0.0;
    for (const auto& [px, py] : path)
      radius = std::max({radius, std::fabs(px), std::fabs(py)});
    leaf_opts.box_halfwidth = std::min(opts.box_halfwidth, radius + 10.0);
    auto [bx, by] = path.back();
    double dist = std::numeric_limits<double>::infinity();
    for (Direction dir : {Direction::ascent, Direction::descent}) {
      Trajectory tr;
      try {
        tr = integrate_flow(F, path.front(), dir, leaf_opts);
      } catch (const StepSizeUnderflow& e) {
        tr = e.partial;
      }
      DenseGrid g = make_dense_grid(tr, 16);
      for (size_t i = 0; i + 1 < g.pts.size(); ++i) {
        double x1 = g.pts[i].first, y1 = g.pts[i].second;
        double x2 = g.pts[i + 1].first, y2 = g.pts[i + 1].second;
        double dx = x2 - x1, dy = y2 - y1;
        double len2 = dx * dx + dy * dy;
        double u = len2 == 0 ? 0 : ((bx - x1) * dx + (by - y1) * dy) / len2;
        u = std::clamp(u, 0.0, 1.0);
        dist = std::min(dist, std::hypot(bx - (x1 + u * dx), by - (y1 + u * dy)));
      }
      if (g.pts.size() == 1)
        dist = std::min(dist, std::hypot(bx - g.pts[0].first, by - g.pts[0].second));
    }
    if (!(dist < tol)) {
      out.status = RolleResult::Status::not_applicable;
      out.note = "endpoints not verified to lie on one leaf (distance " +
                 std::to_string(dist) + ")";
      return out;
    }
  }

  CompiledPoly2 Fx(F.derivative_x()), Fy(F.derivative_y());
  size_t m = path.size() - 1;
  auto gamma = [&](double t) -> std::array<double, 4> {  // x, y, x', y'
    double u = t * static_cast<double>(m);
    size_t k = std::min(static_cast<size_t>(u), m - 1);
    double f = u - static_cast<double>(k);
    double sx = path[k + 1].first - path[k].first;
    double sy = path[k + 1].second - path[k].second;
    return {path[k].first + f * sx, path[k].second + f * sy,
            sx * static_cast<double>(m), sy * static_cast<double>(m)};
  };
  auto s_of_t = [&](double t) {
    auto g = gamma(t);
    return Fy.eval(g[0], g[1]) * g[2] - Fx.eval(g[0], g[1]) * g[3];
  };

  const int per_seg = 64;
  DenseGrid grid;
  for (size_t k = 0; k < m; ++k)
    for (int j = 0; j < per_seg; ++j)
      grid.ts.push_back((static_cast<double>(k) + static_cast<double>(j) / per_seg) / m);
  grid.ts.push_back(1.0);
  std::vector<double> vs(grid.ts.size());
  double max_rel = 0.0;
  for (size_t i = 0; i < grid.ts.size(); ++i) {
    auto g = gamma(grid.ts[i]);
    double fy = Fy.eval(g[0], g[1]), fx = Fx.eval(g[0], g[1]);
    vs[i] = fy * g[2] - fx * g[3];
    double scale = std::fabs(fy * g[2]) + std::fabs(fx * g[3]);
    max_rel = std::max(max_rel, std::fabs(vs[i]) / (1.0 + scale));
    grid.pts.push_back({g[0], g[1]});
  }
  if (max_rel < 1e-12) {
    out.status = RolleResult::Status::degenerate;
    out.note = "the path lies inside the leaf; every point is a tangency";
    return out;
  }
  auto ev = detail::scan(grid, s_of_t, vs);
  for (double t : ev.crossings) {
    auto g = gamma(t);
    out.witnesses.push_back({t, g[0], g[1], std::fabs(s_of_t(t))});
  }
  out.status = RolleResult::Status::ok;
  return out;
}

// ---- Seeded finiteness experiment.

namespace detail {

struct SplitMix64 {
  uint64_t s;
  uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

}  // namespace detail

struct TamenessReport {
  std::string potential;
  uint64_t seed = 0;
  int n_traj = 0, n_cuts = 0;
  std::vector<SemialgebraicPredicate> cuts;
  std::vector<std::vector<int>> counts;  // [trajectory][cut]; -1 on flow failure
  int b0 = 0;
  bool stable = false;
  double stable_fraction = 0.0;
  std::vector<std::array<int, 4>> disagreements;  // trajectory, cut, count, refined count
  std::vector<std::pair<int, std::string>> failures;
  long tangential_total = 0;
};

// Integrate n_traj descent trajectories from seeded starts in [-2,2]^2,
// count components against n_cuts seeded cuts (alternating half-planes and
// lines with small rational coefficients), and re-count with halved flow
// tolerances to measure refinement stability.
inline TamenessReport finiteness_experiment(const Poly2& F, int n_traj, int n_cuts,
                                            uint64_t seed, const FlowOptions& opts = {}) {
  if (n_traj < 1 || n_cuts < 1)
    throw std::invalid_argument("finiteness_experiment: need n_traj, n_cuts >= 1");
  TamenessReport rep;
  rep.potential = format_canonical(F);
  rep.seed = seed;
  rep.n_traj = n_traj;
  rep.n_cuts = n_cuts;

  detail::SplitMix64 cut_rng{seed ^ 0xC2B2AE3D27D4EB4Full};
  for (int j = 0; j < n_cuts; ++j) {
    long long an = cut_rng.range(-4, 4), ad = cut_rng.range(1, 2);
    long long bn = cut_rng.range(-4, 4), bd = cut_rng.range(1, 2);
    long long cn = cut_rng.range(-4, 4), cd = cut_rng.range(1, 2);
    Rational a = Rational(an) / ad, b = Rational(bn) / bd, c = Rational(cn) / cd;
    if (a == 0 && b == 0) b = 1;
    Poly2 poly = Poly2::x() * a + Poly2::y() * b + Poly2(c);
    rep.cuts.push_back({poly, j % 2 == 0 ? Relation::greater : Relation::equals});
  }

  FlowOptions fine = opts;
  fine.rtol = opts.rtol / 2;
  fine.atol = opts.atol / 2;

  long agree = 0, total = 0;
  for (int i = 0; i < n_traj; ++i) {
    detail::SplitMix64 rng{seed + 0x9E3779B97F4A7C15ull * static_cast<uint64_t>(i + 1)};
    std::pair<double, double> start{-2.0 + 4.0 * rng.uniform(), -2.0 + 4.0 * rng.uniform()};
    std::vector<int> row(n_cuts, -1);
    try {
      Trajectory tr = integrate_flow(F, start, Direction::descent, opts);
      Trajectory tr2 = integrate_flow(F, start, Direction::descent, fine);
      DenseGrid g = make_dense_grid(tr), g2 = make_dense_grid(tr2);
      for (int j = 0; j < n_cuts; ++j) {
        auto c1 = count_components(tr, rep.cuts[j], &g);
        auto c2 = count_components(tr2, rep.cuts[j], &g2);
        row[j] = c1.count;
        rep.tangential_total += c1.tangential;
        ++total;
        if (c1.count == c2.count)
          ++agree;
        else
          rep.disagreements.push_back({i, j, c1.count, c2.count});
        rep.b0 = std::max(rep.b0, c1.count);
      }
    } catch (const StepSizeUnderflow&) {
      rep.failures.push_back({i, "step size underflow"});
    }
    rep.counts.push_back(std::move(row));
  }
  rep.stable_fraction = total == 0 ? 0.0 : static_cast<double>(agree) / total;
  rep.stable = rep.stable_fraction >= 0.99;
  return rep;
}

}  // namespace tamegrad
