#pragma once

// Sparse bivariate polynomials over the rationals. Terms are kept in a map
// ordered by (total degree, x-degree) ascending; reverse iteration gives the
// canonical graded-lexicographic print order with x before y. Zero
// coefficients are never stored.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace tamegrad {

struct Mono2 {
  int dx = 0, dy = 0;
  friend bool operator<(const Mono2& a, const Mono2& b) {
    int ga = a.dx + a.dy, gb = b.dx + b.dy;
    if (ga != gb) return ga < gb;
    return a.dx < b.dx;
  }
  friend bool operator==(const Mono2& a, const Mono2& b) { return a.dx == b.dx && a.dy == b.dy; }
};

class Poly2 {
 public:
  Poly2() = default;
  Poly2(const Rational& constant) {  // NOLINT: implicit by design
    if (constant != 0) t_[{0, 0}] = constant;
  }
  Poly2(int constant) : Poly2(Rational(constant)) {}

  static Poly2 monomial(const Rational& c, int dx, int dy) {
    Poly2 p;
    if (c != 0) p.t_[{dx, dy}] = c;
    return p;
  }
  static Poly2 x() { return monomial(1, 1, 0); }
  static Poly2 y() { return monomial(1, 0, 1); }

  static Poly2 from_poly_x(const Poly& p) {
    Poly2 r;
    for (int i = 0; i <= p.degree(); ++i)
      if (p.coeff(i) != 0) r.t_[{i, 0}] = p.coeff(i);
    return r;
  }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono2{0, 0});
  }

  const std::map<Mono2, Rational>& terms() const { return t_; }

  Rational coeff(int dx, int dy) const {
    auto it = t_.find({dx, dy});
    return it == t_.end() ? Rational(0) : it->second;
  }

  int degree_x() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.dx);
    return d;
  }
  int degree_y() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.dy);
    return d;
  }
  int total_degree() const { return t_.empty() ? -1 : t_.rbegin()->first.dx + t_.rbegin()->first.dy; }

  void add_term(int dx, int dy, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(Mono2{dx, dy}, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Poly2 operator-() const {
    Poly2 r(*this);
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }

  Poly2 operator+(const Poly2& o) const {
    Poly2 r(*this);
    for (const auto& [m, c] : o.t_) r.add_term(m.dx, m.dy, c);
    return r;
  }
  Poly2 operator-(const Poly2& o) const { return *this + (-o); }

  Poly2 operator*(const Poly2& o) const {
    Poly2 r;
    for (const auto& [ma, ca] : t_)
      for (const auto& [mb, cb] : o.t_) r.add_term(ma.dx + mb.dx, ma.dy + mb.dy, ca * cb);
    return r;
  }

  Poly2 operator*(const Rational& s) const {
    Poly2 r;
    if (s == 0) return r;
    r.t_ = t_;
    for (auto& [m, c] : r.t_) c = c * s;
    return r;
  }

  Poly2& operator+=(const Poly2& o) { return *this = *this + o; }
  Poly2& operator-=(const Poly2& o) { return *this = *this - o; }
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }

  bool operator==(const Poly2& o) const { return t_ == o.t_; }
  bool operator!=(const Poly2& o) const { return !(*this == o); }

  Poly2 pow(unsigned e) const {
    Poly2 r(Rational(1)), b(*this);
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  Poly2 derivative_x() const {
    Poly2 r;
    for (const auto& [m, c] : t_)
      if (m.dx > 0) r.add_term(m.dx - 1, m.dy, c * Rational(m.dx));
    return r;
  }
  Poly2 derivative_y() const {
    Poly2 r;
    for (const auto& [m, c] : t_)
      if (m.dy > 0) r.add_term(m.dx, m.dy - 1, c * Rational(m.dy));
    return r;
  }

  // Coefficient polynomials of powers of y; index = y-degree, entries in x.
  std::vector<Poly> rows_y() const {
    std::vector<Poly> rows(static_cast<size_t>(std::max(degree_y(), -1) + 1));
    for (const auto& [m, c] : t_) {
      auto& row = rows[static_cast<size_t>(m.dy)];
      row.set_coeff(m.dx, row.coeff(m.dx) + c);
    }
    return rows;
  }

  static Poly2 from_rows_y(const std::vector<Poly>& rows) {
    Poly2 r;
    for (size_t j = 0; j < rows.size(); ++j)
      for (int i = 0; i <= rows[j].degree(); ++i)
        r.add_term(i, static_cast<int>(j), rows[j].coeff(i));
    return r;
  }

  // Coefficient polynomials of powers of x; index = x-degree, entries in y.
  std::vector<Poly> rows_x() const {
    std::vector<Poly> rows(static_cast<size_t>(std::max(degree_x(), -1) + 1));
    for (const auto& [m, c] : t_) {
      auto& row = rows[static_cast<size_t>(m.dx)];
      row.set_coeff(m.dy, row.coeff(m.dy) + c);
    }
    return rows;
  }

  // Substitute y = value; result is a polynomial in x.
  Poly substitute_y(const Rational& value) const {
    Poly out;
    for (const auto& [m, c] : t_) {
      Rational v = c * rat_pow(value, m.dy);
      out.set_coeff(m.dx, out.coeff(m.dx) + v);
    }
    return out;
  }

  // Substitute x = value; result is a polynomial in y.
  Poly substitute_x(const Rational& value) const {
    Poly out;
    for (const auto& [m, c] : t_) {
      Rational v = c * rat_pow(value, m.dx);
      out.set_coeff(m.dy, out.coeff(m.dy) + v);
    }
    return out;
  }

  Rational eval(const Rational& vx, const Rational& vy) const {
    Rational acc(0);
    for (const auto& [m, c] : t_) acc += c * rat_pow(vx, m.dx) * rat_pow(vy, m.dy);
    return acc;
  }

  // General substitution x -> u(x,y), y -> v(x,y), via memoized powers.
  Poly2 compose(const Poly2& u, const Poly2& v) const {
    std::vector<Poly2> up{Poly2(Rational(1))}, vp{Poly2(Rational(1))};
    auto power = [](std::vector<Poly2>& cache, const Poly2& base, int e) -> const Poly2& {
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
      return cache[static_cast<size_t>(e)];
    };
    Poly2 acc;
    for (const auto& [m, c] : t_) acc += power(up, u, m.dx) * power(vp, v, m.dy) * c;
    return acc;
  }

  Poly to_univariate_x() const {
    if (degree_y() > 0) throw std::domain_error("to_univariate_x: polynomial depends on y");
    Poly out;
    for (const auto& [m, c] : t_) out.set_coeff(m.dx, c);
    return out;
  }

 private:
  std::map<Mono2, Rational> t_;
};

inline Poly2 operator*(const Rational& s, const Poly2& p) { return p * s; }

// ---- Bivariate helpers used by the invariant-line solver. The two
// variables of a Poly2 are read as (b, c) there: x-slot = b, y-slot = c.

// Content in the y-variable: gcd over the coefficient polynomials of y^k.
inline Poly content_in_y(const Poly2& p) {
  Poly g;
  for (const auto& row : p.rows_y()) {
    if (row.is_zero()) continue;
    g = g.is_zero() ? row.monic() : poly_gcd(g, row);
    if (g.degree() == 0) break;
  }
  return g;
}

inline Poly2 exact_div_by_x_poly(const Poly2& p, const Poly& d) {
  auto rows = p.rows_y();
  for (auto& row : rows) row = row.exact_div(d);
  return Poly2::from_rows_y(rows);
}

inline Poly2 primitive_part_in_y(const Poly2& p) {
  if (p.is_zero()) return p;
  return exact_div_by_x_poly(p, content_in_y(p));
}

namespace detail {

// Pseudo-remainder of a by b, both viewed as polynomials in y with
// coefficients in Q[x]; lc(b)^(da-db+1) * a = q*b + r.
inline Poly2 pseudo_rem_y(Poly2 a, const Poly2& b) {
  int db = b.degree_y();
  if (db < 0) throw std::domain_error("pseudo_rem_y: zero divisor");
  auto brows = b.rows_y();
  Poly blc = brows.back();
  Poly2 blc2 = Poly2::from_poly_x(blc);
  int guard = a.degree_y() - db + 1;
  int used = 0;
  while (!a.is_zero() && a.degree_y() >= db) {
    auto arows = a.rows_y();
    Poly alc = arows.back();
    int k = a.degree_y() - db;
    // a <- lc(b)*a - lc(a)*y^k*b
    Poly2 shift = Poly2::from_poly_x(alc) * Poly2::monomial(1, 0, k);
    a = blc2 * a - shift * b;
    ++used;
  }
  for (; used < guard; ++used) a = blc2 * a;
  return a;
}

}  // namespace detail

// gcd of two bivariate polynomials viewed in Q(x)[y], primitive in y.
// Only the y-structure matters to callers; the result is defined up to a
// factor in Q[x], normalized primitive with monic leading row.
inline Poly2 gcd_in_y(Poly2 a, Poly2 b) {
  if (a.is_zero()) return primitive_part_in_y(b);
  if (b.is_zero()) return primitive_part_in_y(a);
  a = primitive_part_in_y(a);
  b = primitive_part_in_y(b);
  if (a.degree_y() < b.degree_y()) std::swap(a, b);
  while (!b.is_zero() && b.degree_y() > 0) {
    Poly2 r = detail::pseudo_rem_y(a, b);
    a = std::move(b);
    if (r.is_zero()) {
      b = Poly2();
    } else {
      b = primitive_part_in_y(r);
    }
  }
  if (!b.is_zero()) return Poly2(Rational(1));  // nonzero y-constant remainder: coprime
  Rational scale = a.rows_y().back().lc();
  return a * (Rational(1) / scale);
}

// Resultant with respect to y of two bivariate polynomials, computed by
// evaluation at interpolation nodes that preserve both leading y-rows.
inline Poly resultant_y(const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  int da = a.degree_y(), db = b.degree_y();
  if (da == 0 && db == 0) return Poly(Rational(1));
  Poly alc = a.rows_y().back(), blc = b.rows_y().back();
  int bound = da * std::max(b.degree_x(), 0) + db * std::max(a.degree_x(), 0);
  std::vector<std::pair<Rational, Rational>> pts;
  for (BigInt k = 0; static_cast<int>(pts.size()) < bound + 1; ++k) {
    Rational node{k};
    if (alc.eval(node) == 0 || blc.eval(node) == 0) continue;
    Poly av = a.substitute_x(node), bv = b.substitute_x(node);
    pts.emplace_back(node, resultant(av, bv));
  }
  return lagrange_interpolate(pts);
}

}  // namespace tamegrad
