#pragma once

// Gradient-flow integration: Dormand-Prince 5(4) embedded pair with FSAL
// and quartic dense output. Coefficients are exact literals; the polynomial
// field is compiled to nested Horner form once per call.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly2.hpp"

namespace tamegrad {

enum class Direction { ascent, descent };

enum class Termination { critical_point, box_exit, t_max_reached };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::critical_point: return "critical-point";
    case Termination::box_exit: return "box-exit";
    case Termination::t_max_reached: return "t-max";
  }
  return "?";
}

struct FlowOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double crit_threshold = 1e-10;  // terminate when |grad F| drops below
  double box_halfwidth = 1e6;
  double t_max = 50.0;
};

// Nested Horner evaluation of a Poly2 in doubles; coefficients converted
// from exact rationals once. A zero coefficient row stays exactly zero.
class CompiledPoly2 {
 public:
  CompiledPoly2() = default;
  explicit CompiledPoly2(const Poly2& p) {
    for (const auto& row : p.rows_y()) {
      std::vector<double> r(row.degree() + 1);
      for (int i = 0; i <= row.degree(); ++i) r[i] = rat_double(row.coeff(i));
      rows_.push_back(std::move(r));
    }
  }
  double eval(double x, double y) const {
    double acc = 0.0;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      double rv = 0.0;
      for (auto cit = it->rbegin(); cit != it->rend(); ++cit) rv = rv * x + *cit;
      acc = acc * y + rv;
    }
    return acc;
  }

 private:
  std::vector<std::vector<double>> rows_;
};

struct TrajectorySample {
  double t, x, y;
};

struct DenseSegment {
  double t0, h;
  std::array<std::array<double, 2>, 5> rcont;  // quartic interpolant coefficients
};

struct Trajectory {
  Direction direction = Direction::descent;
  std::vector<TrajectorySample> samples;  // one row per accepted step, plus the start
  Termination termination = Termination::t_max_reached;
  long accepted = 0, rejected = 0;
  std::vector<DenseSegment> segments;

  double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }

  // Dense-output evaluation; clamps outside [0, t_end].
  std::pair<double, double> eval(double t) const {
    if (segments.empty()) {
      const auto& s = samples.front();
      return {s.x, s.y};
    }
    size_t lo = 0, hi = segments.size();
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (segments[mid].t0 <= t)
        lo = mid;
      else
        hi = mid;
    }
    const DenseSegment& s = segments[lo];
    double th = (t - s.t0) / s.h;
    th = std::clamp(th, 0.0, 1.0);
    double th1 = 1.0 - th;
    std::pair<double, double> out;
    for (int i = 0; i < 2; ++i) {
      double v = s.rcont[0][i] +
                 th * (s.rcont[1][i] +
                       th1 * (s.rcont[2][i] + th * (s.rcont[3][i] + th1 * s.rcont[4][i])));
      (i == 0 ? out.first : out.second) = v;
    }
    return out;
  }
};

struct StepSizeUnderflow : std::runtime_error {
  explicit StepSizeUnderflow(Trajectory partial_)
      : std::runtime_error("integrate_flow: step size underflow"), partial(std::move(partial_)) {}
  Trajectory partial;
};

namespace detail {

struct Dopri5 {
  // Dormand-Prince 5(4) tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  // Dense-output weights.
  static constexpr double d1 = -12715105075.0 / 11282082432.0;
  static constexpr double d3 = 87487479700.0 / 32700410799.0;
  static constexpr double d4 = -10690763975.0 / 1880347072.0;
  static constexpr double d5 = 701980252875.0 / 199316789632.0;
  static constexpr double d6 = -1453857185.0 / 822651844.0;
  static constexpr double d7 = 69997945.0 / 29380423.0;
};

}  // namespace detail

inline Trajectory integrate_flow(const Poly2& F, std::pair<double, double> start,
                                 Direction dir, const FlowOptions& opts = {}) {
  if (!std::isfinite(start.first) || !std::isfinite(start.second))
    throw std::invalid_argument("integrate_flow: start must be finite");
  if (!(opts.rtol > 0) || !(opts.atol > 0) || !(opts.t_max > 0))
    throw std::invalid_argument("integrate_flow: tolerances and t_max must be positive");

  CompiledPoly2 P(F.derivative_x()), Q(F.derivative_y());
  double sgn = dir == Direction::ascent ? 1.0 : -1.0;
  auto field = [&](const std::array<double, 2>& u) -> std::array<double, 2> {
    return {sgn * P.eval(u[0], u[1]), sgn * Q.eval(u[0], u[1])};
  };
  auto grad_norm = [&](const std::array<double, 2>& u) {
    return std::hypot(P.eval(u[0], u[1]), Q.eval(u[0], u[1]));
  };

  Trajectory traj;
  traj.direction = dir;
  std::array<double, 2> y{start.first, start.second};
  double t = 0.0;
  traj.samples.push_back({t, y[0], y[1]});

  if (grad_norm(y) < opts.crit_threshold) {
    traj.termination = Termination::critical_point;
    return traj;
  }
  if (std::fabs(y[0]) > opts.box_halfwidth || std::fabs(y[1]) > opts.box_halfwidth) {
    traj.termination = Termination::box_exit;
    return traj;
  }

  using D = detail::Dopri5;
  std::array<double, 2> k1 = field(y), k2{}, k3{}, k4{}, k5{}, k6{}, k7{};

  auto sc = [&](const std::array<double, 2>& y0, const std::array<double, 2>& y1, int i) {
    return opts.atol + opts.rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
  };

  // Initial step size: standard two-evaluation heuristic.
  double h;
  {
    double d0 = 0, d1n = 0;
    for (int i = 0; i < 2; ++i) {
      double s = opts.atol + opts.rtol * std::fabs(y[i]);
      d0 += (y[i] / s) * (y[i] / s);
      d1n += (k1[i] / s) * (k1[i] / s);
    }
    d0 = std::sqrt(d0 / 2);
    d1n = std::sqrt(d1n / 2);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    std::array<double, 2> y1{y[0] + h0 * k1[0], y[1] + h0 * k1[1]};
    auto f1 = field(y1);
    double d2 = 0;
    for (int i = 0; i < 2; ++i) {
      double s = opts.atol + opts.rtol * std::fabs(y[i]);
      d2 += ((f1[i] - k1[i]) / s) * ((f1[i] - k1[i]) / s);
    }
    d2 = std::sqrt(d2 / 2) / h0;
    double dm = std::max(d1n, d2);
    double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100 * h0, h1, opts.t_max});
  }

  double facmax = 5.0;
  while (true) {
    bool clamped = false;
    if (t + h >= opts.t_max) {
      h = opts.t_max - t;
      clamped = true;
      if (h <= 1e-14 * std::max(1.0, opts.t_max)) {
        traj.samples.back().t = opts.t_max;
        traj.termination = Termination::t_max_reached;
        return traj;
      }
    }
    if (h < 1e-14 * std::max(1.0, std::fabs(t))) throw StepSizeUnderflow(traj);

    auto stage = [&](double a1, double a2, double a3, double a4, double a5, double a6) {
      std::array<double, 2> u;
      for (int i = 0; i < 2; ++i)
        u[i] = y[i] + h * (a1 * k1[i] + a2 * k2[i] + a3 * k3[i] + a4 * k4[i] + a5 * k5[i] +
                           a6 * k6[i]);
      return u;
    };
    k2 = field(stage(D::a21, 0, 0, 0, 0, 0));
    k3 = field(stage(D::a31, D::a32, 0, 0, 0, 0));
    k4 = field(stage(D::a41, D::a42, D::a43, 0, 0, 0));
    k5 = field(stage(D::a51, D::a52, D::a53, D::a54, 0, 0));
    k6 = field(stage(D::a61, D::a62, D::a63, D::a64, D::a65, 0));
    std::array<double, 2> y1;
    for (int i = 0; i < 2; ++i)
      y1[i] = y[i] + h * (D::b1 * k1[i] + D::b3 * k3[i] + D::b4 * k4[i] + D::b5 * k5[i] +
                          D::b6 * k6[i]);
    k7 = field(y1);

    double err = 0;
    for (int i = 0; i < 2; ++i) {
      double e = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] + D::e5 * k5[i] +
                      D::e6 * k6[i] + D::e7 * k7[i]);
      double s = sc(y, y1, i);
      err += (e / s) * (e / s);
    }
    err = std::sqrt(err / 2);

    if (err <= 1.0) {
      DenseSegment seg;
      seg.t0 = t;
      seg.h = h;
      for (int i = 0; i < 2; ++i) {
        double dy = y1[i] - y[i];
        double bspl = h * k1[i] - dy;
        seg.rcont[0][i] = y[i];
        seg.rcont[1][i] = dy;
        seg.rcont[2][i] = bspl;
        seg.rcont[3][i] = dy - h * k7[i] - bspl;
        seg.rcont[4][i] = h * (D::d1 * k1[i] + D::d3 * k3[i] + D::d4 * k4[i] +
                               D::d5 * k5[i] + D::d6 * k6[i] + D::d7 * k7[i]);
      }
      traj.segments.push_back(seg);

      t = clamped ? opts.t_max : t + h;
      y = y1;
      k1 = k7;  // FSAL
      ++traj.accepted;
      traj.samples.push_back({t, y[0], y[1]});

      if (grad_norm(y) < opts.crit_threshold) {
        traj.termination = Termination::critical_point;
        return traj;
      }
      if (std::fabs(y[0]) > opts.box_halfwidth || std::fabs(y[1]) > opts.box_halfwidth) {
        traj.termination = Termination::box_exit;
        return traj;
      }
      if (t >= opts.t_max) {
        traj.termination = Termination::t_max_reached;
        return traj;
      }
      double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, facmax);
      h *= fac;
      facmax = 5.0;
    } else {
      ++traj.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
      facmax = 1.0;  // no growth right after a rejection
    }
  }
}

}  // namespace tamegrad
