#pragma once

// Invariant straight lines of planar polynomial fields, normalization of a
// line to {y=0}, and the coefficients of the second linearized variational
// system along that line.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "expr.hpp"
#include "poly2.hpp"
#include "ratfun.hpp"

namespace tamegrad {

struct ConstantPotential : std::runtime_error {
  ConstantPotential() : std::runtime_error("potential is constant; gradient field vanishes") {}
};

struct NotInvariant : std::runtime_error {
  explicit NotInvariant(const std::string& what) : std::runtime_error(what) {}
};

struct LineOfCriticalPoints : std::runtime_error {
  LineOfCriticalPoints()
      : std::runtime_error("the invariant line consists of critical points (P vanishes on it)") {}
};

struct InfiniteFamilyError : std::runtime_error {
  explicit InfiniteFamilyError(const std::string& note)
      : std::runtime_error("infinitely many invariant lines: " + note) {}
};

struct NoInvariantLineError : std::runtime_error {
  NoInvariantLineError()
      : std::runtime_error("no invariant line with rational coefficients was found") {}
};

struct PlanarField {
  Poly2 P, Q;  // xdot = P, ydot = Q
};

// Line a*x + b*y + c = 0, normalized so the first nonzero of (a, b) is 1.
struct InvariantLine {
  Rational a, b, c;

  InvariantLine(Rational a_, Rational b_, Rational c_) : a(a_), b(b_), c(c_) {
    if (a == 0 && b == 0) throw std::invalid_argument("line needs (a, b) != (0, 0)");
    Rational s = a != 0 ? a : b;
    a /= s;
    b /= s;
    c /= s;
  }

  Poly2 polynomial() const {
    return Poly2::x() * a + Poly2::y() * b + Poly2(c);
  }

  std::string display() const { return format_canonical(polynomial()) + " = 0"; }

  bool operator==(const InvariantLine& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const InvariantLine& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
  }
};

inline PlanarField gradient_field(const Poly2& F) {
  if (F.total_degree() <= 0) throw ConstantPotential();
  return {F.derivative_x(), F.derivative_y()};
}

// Exact test: does the line polynomial divide a*P + b*Q?
inline bool is_invariant(const PlanarField& field, const InvariantLine& line) {
  Poly2 S = field.P * line.a + field.Q * line.b;
  if (line.b != 0) {
    // Substitute y = -(a x + c)/b via Horner on the y-rows.
    Poly y0 = Poly::from_coeffs({-line.c / line.b, -line.a / line.b});
    auto rows = S.rows_y();
    if (rows.empty()) return true;
    Poly acc = rows.back();
    for (int j = static_cast<int>(rows.size()) - 2; j >= 0; --j) acc = acc * y0 + rows[j];
    return acc.is_zero();
  }
  return S.substitute_x(-line.c / line.a).is_zero();
}

struct InvariantLineResult {
  std::vector<InvariantLine> lines;
  bool infinite_family = false;
  std::string family_note;
  int unresolved = 0;  // solution components needing irrational or algebraic data
};

namespace detail {

struct RootExtraction {
  std::vector<Rational> roots;
  bool leftover = false;  // a positive-degree factor without rational roots remains
};

inline RootExtraction extract_rational_roots(const Poly& p) {
  RootExtraction out;
  if (p.degree() <= 0) return out;
  Poly rem = p;
  for (const auto& [r, mult] : rational_roots(p)) {
    out.roots.push_back(r);
    Poly lin = Poly::x() - Poly(r);
    for (int i = 0; i < mult; ++i) rem = rem.exact_div(lin);
  }
  out.leftover = rem.degree() >= 1;
  return out;
}

inline Poly gcd_list(const std::vector<Poly>& ps) {
  Poly g;
  for (const auto& p : ps) g = g.is_zero() ? p : poly_gcd(g, p);
  return g;
}

// Coefficients of y^i in S(-(b*y + c), y), as polynomials in (b, c). The
// Poly2 slots are read as x := b, y := c.
inline std::vector<Poly2> line_substitution_rows(const Poly2& S) {
  int max_deg = S.total_degree();
  if (max_deg < 0) return {};
  std::vector<Poly2> rows(static_cast<size_t>(max_deg) + 1);
  // Binomial table.
  std::vector<std::vector<Rational>> binom(max_deg + 1);
  for (int n = 0; n <= max_deg; ++n) {
    binom[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  for (const auto& [mono, coeff] : S.terms()) {
    // x^dx y^dy -> (-1)^dx sum_k C(dx,k) b^k c^(dx-k) y^(k+dy).
    Rational sgn = mono.dx % 2 == 0 ? 1 : -1;
    for (int k = 0; k <= mono.dx; ++k) {
      Poly2 t = Poly2::monomial(coeff * sgn * binom[mono.dx][k], k, mono.dx - k);
      rows[k + mono.dy] = rows[k + mono.dy] + t;
    }
  }
  return rows;
}

inline void note_line(InvariantLineResult& res, const PlanarField& field, InvariantLine line) {
  if (!is_invariant(field, line))
    throw std::logic_error("invariant_lines: candidate failed exact verification");
  if (std::find(res.lines.begin(), res.lines.end(), line) == res.lines.end())
    res.lines.push_back(line);
}

// Solve the fiber {v(b0, c) = 0 for all v} for rational c.
inline void solve_fiber(InvariantLineResult& res, const PlanarField& field,
                        const std::vector<Poly2>& conds, const Rational& b0) {
  std::vector<Poly> fiber;
  bool all_zero = true;
  for (const auto& v : conds) {
    Poly f = v.substitute_x(b0);
    if (!f.is_zero()) {
      fiber.push_back(f);
      all_zero = false;
    }
  }
  if (all_zero) {
    res.infinite_family = true;
    res.family_note = "every line x + " + rat_str(b0) + "*y + c = 0 is invariant";
    return;
  }
  Poly g = gcd_list(fiber);
  auto ex = extract_rational_roots(g);
  if (ex.leftover) ++res.unresolved;
  for (const auto& c0 : ex.roots) note_line(res, field, InvariantLine(1, b0, c0));
}

}  // namespace detail

// All invariant lines with rational coefficients. Horizontal lines y = y0
// come from common rational roots of the x-coefficients of Q(x, c); lines
// x + b*y + c = 0 come from the polynomial system r_i(b, c) = 0 expressing
// that P + b*Q vanishes on the line. Components of the solution set that
// need irrational coordinates are tallied in `unresolved` rather than
// enumerated.
inline InvariantLineResult invariant_lines(const PlanarField& field) {
  if (field.P.is_zero() && field.Q.is_zero())
    throw std::invalid_argument("invariant_lines: zero field");
  InvariantLineResult res;

  // Horizontal branch: y = y0 invariant iff Q(x, y0) == 0.
  if (field.Q.is_zero()) {
    res.infinite_family = true;
    res.family_note = "Q vanishes identically, so every horizontal line y = c is invariant";
    return res;
  }
  {
    auto rows = field.Q.rows_y();  // Q = sum_j q_j(x) y^j
    int max_x = 0;
    for (const auto& q : rows) max_x = std::max(max_x, q.degree());
    std::vector<Poly> conds;
    for (int i = 0; i <= max_x; ++i) {
      std::vector<Rational> cs(rows.size());
      for (size_t j = 0; j < rows.size(); ++j) cs[j] = rows[j].coeff(i);
      Poly cond = Poly::from_coeffs(cs);
      if (!cond.is_zero()) conds.push_back(cond);
    }
    Poly g = detail::gcd_list(conds);
    auto ex = detail::extract_rational_roots(g);
    if (ex.leftover) ++res.unresolved;
    for (const auto& y0 : ex.roots) detail::note_line(res, field, InvariantLine(0, 1, -y0));
  }

  // General branch: x + b*y + c = 0. Conditions are the y-rows of
  // (P + b*Q)(-(b*y + c), y), polynomials in (b, c).
  auto prows = detail::line_substitution_rows(field.P);
  auto qrows = detail::line_substitution_rows(field.Q);
  size_t n = std::max(prows.size(), qrows.size()) + 1;
  std::vector<Poly2> conds;
  Poly2 b = Poly2::x();
  for (size_t i = 0; i < n; ++i) {
    Poly2 r;
    if (i < prows.size()) r = r + prows[i];
    if (i < qrows.size()) r = r + qrows[i] * b;
    if (!r.is_zero()) conds.push_back(r);
  }
  if (conds.empty()) {
    res.infinite_family = true;
    res.family_note = "every line x + b*y + c = 0 is invariant";
    return res;
  }

  std::vector<Poly> pure_b;        // conditions not involving c
  std::vector<Poly2> with_c;       // the rest
  for (const auto& r : conds) {
    if (r.degree_y() == 0)
      pure_b.push_back(r.to_univariate_x());
    else
      with_c.push_back(r);
  }

  if (!pure_b.empty()) {
    Poly g = detail::gcd_list(pure_b);
    auto ex = detail::extract_rational_roots(g);
    if (ex.leftover) ++res.unresolved;
    for (const auto& b0 : ex.roots) {
      if (with_c.empty()) {
        res.infinite_family = true;
        res.family_note = "every line x + " + rat_str(b0) + "*y + c = 0 is invariant";
        return res;
      }
      detail::solve_fiber(res, field, with_c, b0);
      if (res.infinite_family) return res;
    }
  } else {
    // Every condition involves c; intersect via gcd in c over Q(b).
    Poly2 G = with_c.front();
    for (size_t i = 1; i < with_c.size(); ++i) G = gcd_in_y(G, with_c[i]);
    G = G * (Rational(1) / G.rows_y().back().lc());
    if (G.degree_y() == 1) {
      res.infinite_family = true;
      res.family_note =
          "the conditions share the factor " + format_canonical(G, "b", "c") +
          ", giving an invariant line for all but finitely many slopes b";
      return res;
    }
    if (G.degree_y() >= 2) {
      ++res.unresolved;  // a curve of solutions needing algebraic parametrization
    } else {
      // Isolated points: slopes come from pairwise resultants in c.
      std::vector<Poly> resultants;
      for (size_t i = 0; i < with_c.size(); ++i)
        for (size_t j = i + 1; j < with_c.size(); ++j) {
          Poly r = resultant_y(with_c[i], with_c[j]);
          if (!r.is_zero()) resultants.push_back(r);
        }
      if (resultants.empty()) {
        ++res.unresolved;
      } else {
        Poly g = detail::gcd_list(resultants);
        auto ex = detail::extract_rational_roots(g);
        if (ex.leftover) ++res.unresolved;
        for (const auto& b0 : ex.roots) {
          detail::solve_fiber(res, field, with_c, b0);
          if (res.infinite_family) return res;
        }
      }
    }
  }

  std::sort(res.lines.begin(), res.lines.end());
  return res;
}

// Affine rational change of coordinates sending the line to {y = 0}; the
// returned field is the pushforward, with new Q vanishing on y = 0.
inline PlanarField normalize_to_y0(const PlanarField& field, const InvariantLine& line) {
  if (!is_invariant(field, line))
    throw NotInvariant("normalize_to_y0: " + line.display() + " is not invariant");
  Poly2 X = Poly2::x(), Y = Poly2::y();
  if (line.a == 0) {
    // y = y0: translate. New coordinates (x, y - y0); inverse y -> y + y0.
    Rational y0 = -line.c / line.b;
    Poly2 ys = Y + Poly2(y0);
    return {field.P.compose(X, ys), field.Q.compose(X, ys)};
  }
  // x + b*y + c = 0. New coordinates (u, v) = (y, x + b*y + c): the line
  // becomes {v = 0}. Inverse: x = v - b*u - c, y = u. In the new chart
  // udot = Q, vdot = P + b*Q, evaluated at the inverse point.
  Poly2 xs = Y - Poly2(line.b) * X - Poly2(line.c);
  Poly2 newP = field.Q.compose(xs, X);
  Poly2 newQ = (field.P + Poly2(line.b) * field.Q).compose(xs, X);
  return {newP, newQ};
}

struct VariationalSystem {
  InvariantLine line{0, 1, 0};
  RatFun beta1, beta2;
};

// Along {y=0} with foliation slope Q/P: beta1 = d/dy (Q/P) at y=0 and
// beta2 = d^2/dy^2 (Q/P) at y=0, both rational in x.
inline VariationalSystem variational_coefficients(const PlanarField& field) {
  Poly p0 = field.P.substitute_y(0);
  if (!field.Q.substitute_y(0).is_zero())
    throw NotInvariant("variational_coefficients: Q does not vanish on y = 0");
  if (p0.is_zero()) throw LineOfCriticalPoints();
  Poly qy0 = field.Q.derivative_y().substitute_y(0);
  Poly qyy0 = field.Q.derivative_y().derivative_y().substitute_y(0);
  Poly py0 = field.P.derivative_y().substitute_y(0);
  VariationalSystem vs;
  vs.beta1 = RatFun(qy0, p0);
  vs.beta2 = RatFun(qyy0, p0) - Rational(2) * RatFun(qy0 * py0, p0 * p0);
  return vs;
}

// chi1' = 2 beta1 chi1; chi2' = beta1 chi2 + beta2 chi1 (prime = d/dx).
struct LVE2System {
  RatFun chi1_coeff;   // 2 beta1
  RatFun chi2_self;    // beta1
  RatFun chi2_source;  // beta2
};

inline LVE2System lve2_system(const VariationalSystem& vs) {
  return {Rational(2) * vs.beta1, vs.beta1, vs.beta2};
}

}  // namespace tamegrad
