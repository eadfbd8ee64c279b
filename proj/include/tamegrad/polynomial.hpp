#pragma once

// Dense univariate polynomials over an exact field, plus the exact
// algorithms the rest of the library is built on: Euclidean and extended
// gcd, Yun squarefree factorization, Sturm-based real root isolation,
// exact rational root extraction, resultants, and Lagrange interpolation.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace tamegrad {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const T& constant) {  // NOLINT: implicit by design
    if (!(constant == T(0))) c_.push_back(constant);
  }
  Polynomial(int constant) : Polynomial(T(constant)) {}

  static Polynomial from_coeffs(std::vector<T> ascending) {
    Polynomial p;
    p.c_ = std::move(ascending);
    p.trim();
    return p;
  }

  static Polynomial monomial(const T& coeff, int deg) {
    Polynomial p;
    if (coeff == T(0)) return p;
    p.c_.assign(static_cast<size_t>(deg) + 1, T(0));
    p.c_.back() = coeff;
    return p;
  }

  static Polynomial x() { return monomial(T(1), 1); }

  // degree() is -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const T& coeff(int i) const {
    static const T zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
  }

  void set_coeff(int i, const T& v) {
    if (i >= static_cast<int>(c_.size())) {
      if (v == T(0)) return;
      c_.resize(static_cast<size_t>(i) + 1, T(0));
    }
    c_[static_cast<size_t>(i)] = v;
    trim();
  }

  const T& lc() const {
    if (is_zero()) throw std::domain_error("lc of zero polynomial");
    return c_.back();
  }

  const std::vector<T>& coeffs() const { return c_; }

  T eval(const T& at) const {
    T acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
  }

  double eval_double(double at) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * at + coeff_double(i);
    return acc;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), T(0));
    for (size_t i = 0; i < r.c_.size(); ++i) {
      if (i < c_.size()) r.c_[i] += c_[i];
      if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.trim();
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
  }

  Polynomial operator*(const T& s) const {
    Polynomial r(*this);
    for (auto& v : r.c_) v = v * s;
    r.trim();
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative() const {
    Polynomial r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * T(static_cast<int>(i));
    r.trim();
    return r;
  }

  // Antiderivative with zero constant term.
  Polynomial integral() const {
    Polynomial r;
    if (is_zero()) return r;
    r.c_.assign(c_.size() + 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + 1] = c_[i] / T(static_cast<int>(i) + 1);
    r.trim();
    return r;
  }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial q, r(*this);
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<size_t>(r.degree() - d.degree()) + 1, T(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      T f = r.lc() / d.lc();
      q.c_[static_cast<size_t>(k)] = f;
      for (int i = 0; i <= d.degree(); ++i)
        r.c_[static_cast<size_t>(i + k)] -= f * d.coeff(i);
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  // Exact quotient; throws if the division leaves a remainder.
  Polynomial exact_div(const Polynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("exact_div: division is not exact");
    return q;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * (T(1) / lc());
  }

 private:
  double coeff_double(size_t i) const {
    if constexpr (std::is_same_v<T, Rational>) {
      return rat_double(c_[i]);
    } else {
      return static_cast<double>(c_[i]);
    }
  }

  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;  // ascending powers, no trailing zeros
};

template <class T>
Polynomial<T> operator*(const T& s, const Polynomial<T>& p) {
  return p * s;
}

using Poly = Polynomial<Rational>;

// Monic greatest common divisor. gcd(p, 0) = monic(p); gcd(0, 0) is a
// domain error (callers must not reach it).
template <class T>
Polynomial<T> poly_gcd(Polynomial<T> a, Polynomial<T> b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    Polynomial<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
std::tuple<Polynomial<T>, Polynomial<T>, Polynomial<T>> poly_xgcd(const Polynomial<T>& a,
                                                                  const Polynomial<T>& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("xgcd(0, 0) is undefined");
  Polynomial<T> r0 = a, r1 = b;
  Polynomial<T> s0(T(1)), s1, t0, t1(T(1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r2);
    Polynomial<T> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial<T> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  T inv = T(1) / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

struct SquarefreeFactorization {
  Rational unit;                             // leading coefficient of the input
  std::vector<std::pair<Poly, int>> factors;  // monic, pairwise coprime, multiplicities strictly increasing
};

// Yun's algorithm. p = unit * prod factor^multiplicity.
inline SquarefreeFactorization squarefree_factorization(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree factorization of zero");
  SquarefreeFactorization out;
  out.unit = p.lc();
  Poly f = p.monic();
  if (f.is_constant()) return out;
  Poly fp = f.derivative();
  Poly a = poly_gcd(f, fp);
  Poly b = f.exact_div(a);
  Poly d = fp.exact_div(a) - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly g = poly_gcd(b, d);
    if (g.degree() > 0) out.factors.emplace_back(g, i);
    b = b.exact_div(g);
    d = d.exact_div(g) - b.derivative();
    ++i;
  }
  return out;
}

inline Poly squarefree_part(const Poly& p) {
  Poly g = poly_gcd(p, p.derivative());
  return p.exact_div(g).monic();
}

// Scale to a primitive integer polynomial (integer coefficients with content 1,
// positive leading coefficient), returned with Rational coefficient storage.
inline Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  BigInt l(1);
  for (const auto& c : p.coeffs()) l = int_lcm(l, denom(c));
  std::vector<Rational> sc;
  sc.reserve(p.coeffs().size());
  BigInt g(0);
  for (const auto& c : p.coeffs()) {
    Rational v = c * Rational(l);
    sc.push_back(v);
    g = int_gcd(g, numer(v));
  }
  if (g == 0) g = 1;
  for (auto& v : sc) v /= Rational(g);
  Poly out = Poly::from_coeffs(std::move(sc));
  if (out.lc() < 0) out = -out;
  return out;
}

namespace detail {

// Sturm chain of a squarefree polynomial.
inline std::vector<Poly> sturm_chain(const Poly& q) {
  std::vector<Poly> chain{q, q.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Poly r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rational& at) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = rat_sign(p.eval(at));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Simplest rational strictly inside the open interval (a, b).
inline Rational simplest_in_open(const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("simplest_in_open: empty interval");
  if (a < 0 && b > 0) return Rational(0);
  if (b <= 0) return -simplest_in_open(-b, -a);
  BigInt fa = rat_floor(a);
  if (b > Rational(fa + 1)) return Rational(fa + 1);
  Rational a2 = a - Rational(fa), b2 = b - Rational(fa);  // 0 <= a2 < b2 <= 1
  if (a2 == 0) {
    // smallest n with 1/n < b2
    BigInt n = rat_floor(Rational(1) / b2) + 1;
    return Rational(fa) + Rational(1) / Rational(n);
  }
  Rational inner = simplest_in_open(Rational(1) / b2, Rational(1) / a2);
  return Rational(fa) + Rational(1) / inner;
}

}  // namespace detail

// All rational roots of p with multiplicities, ascending. Exact: uses Sturm
// isolation plus simplest-rational reconstruction, no integer factorization.
inline std::vector<std::pair<Rational, int>> rational_roots(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
  std::vector<Rational> roots;
  Poly q = squarefree_part(p);
  // Deflate exact rational hits found during bisection and restart isolation.
  for (bool restart = true; restart;) {
    restart = false;
    if (q.degree() <= 0) break;
    if (q.eval(Rational(0)) == 0) {
      roots.push_back(Rational(0));
      q = q.exact_div(Poly::x());
      restart = true;
      continue;
    }
    auto chain = detail::sturm_chain(q);
    // Strict Cauchy-style bound: every real root lies in (-B, B).
    Rational maxr(0);
    for (int i = 0; i < q.degree(); ++i)
      maxr = std::max(maxr, rat_abs(q.coeff(i) / q.lc()));
    Rational B = maxr + 1;
    if (q.eval(B) == 0 || q.eval(-B) == 0) {
      B += 1;  // keep endpoints off roots
    }
    struct Iv {
      Rational lo, hi;
      int vlo, vhi;
    };
    std::vector<Iv> stack{{-B, B, detail::sign_variations(chain, -B), detail::sign_variations(chain, B)}};
    std::vector<std::pair<Rational, Rational>> isolating;
    std::optional<Rational> exact_hit;
    while (!stack.empty() && !exact_hit) {
      Iv iv = stack.back();
      stack.pop_back();
      int count = iv.vlo - iv.vhi;
      if (count <= 0) continue;
      if (count == 1) {
        isolating.emplace_back(iv.lo, iv.hi);
        continue;
      }
      Rational mid = (iv.lo + iv.hi) / 2;
      if (q.eval(mid) == 0) {
        exact_hit = mid;
        break;
      }
      int vmid = detail::sign_variations(chain, mid);
      stack.push_back({iv.lo, mid, iv.vlo, vmid});
      stack.push_back({mid, iv.hi, vmid, iv.vhi});
    }
    if (exact_hit) {
      roots.push_back(*exact_hit);
      q = q.exact_div(Poly::from_coeffs({-*exact_hit, Rational(1)}));
      restart = true;
      continue;
    }
    // Each isolating interval holds exactly one simple real root. A rational
    // root u/v in lowest terms has v dividing the leading coefficient of the
    // primitive integer form; narrowing the interval below 1/(2*lc^2) makes
    // the root the unique simplest rational inside, if it is rational at all.
    Poly qz = integer_primitive(q);
    Rational L = rat_abs(qz.lc());
    Rational target = Rational(1) / (2 * L * L);
    for (auto [lo, hi] : isolating) {
      bool hit = false;
      while (hi - lo >= target) {
        Rational mid = (lo + hi) / 2;
        Rational vm = qz.eval(mid);
        if (vm == 0) {
          roots.push_back(mid);
          hit = true;
          break;
        }
        if (rat_sign(qz.eval(lo)) * rat_sign(vm) < 0)
          hi = mid;
        else
          lo = mid;
      }
      if (hit) continue;
      Rational cand = detail::simplest_in_open(lo, hi);
      if (qz.eval(cand) == 0) roots.push_back(cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<std::pair<Rational, int>> out;
  for (const auto& r : roots) {
    Poly lin = Poly::from_coeffs({-r, Rational(1)});
    int mult = 0;
    Poly rest = p;
    while (true) {
      auto [quo, rem] = rest.divmod(lin);
      if (!rem.is_zero()) break;
      ++mult;
      rest = quo;
    }
    out.emplace_back(r, mult);
  }
  return out;
}

// Resultant of two univariate polynomials over the coefficient field.
template <class T>
T resultant(Polynomial<T> a, Polynomial<T> b) {
  if (a.is_zero() || b.is_zero()) return T(0);
  if (a.degree() == 0 && b.degree() == 0) return T(1);
  T acc(1);
  bool swapped = false;
  while (true) {
    if (a.degree() < b.degree()) {
      if ((a.degree() & 1) && (b.degree() & 1)) acc = -acc;
      std::swap(a, b);
      swapped = !swapped;
    }
    if (b.degree() == 0) {
      T r = acc;
      T l = b.lc();
      for (int i = 0; i < a.degree(); ++i) r = r * l;
      return r;
    }
    Polynomial<T> rem = a % b;
    if (rem.is_zero()) return T(0);
    T l = b.lc();
    int e = a.degree() - rem.degree();
    for (int i = 0; i < e; ++i) acc = acc * l;
    if ((a.degree() & 1) && (b.degree() & 1)) acc = -acc;
    a = std::move(b);
    b = std::move(rem);
  }
}

// Unique interpolating polynomial through distinct sample points.
inline Poly lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  Poly acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    Poly basis(Rational(1));
    Rational scale = pts[i].second;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      basis *= Poly::from_coeffs({-pts[j].first, Rational(1)});
      scale /= (pts[i].first - pts[j].first);
    }
    acc += basis * scale;
  }
  return acc;
}

}  // namespace tamegrad
