#pragma once

// Cotangent lift of a planar field: the momentum-linear Hamiltonian
// f = p1*P + p2*Q on T*R^2 and its Hamiltonian field, which projects onto
// the base dynamics and conserves f identically.

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "expr.hpp"
#include "variational.hpp"

namespace tamegrad {

struct Mono4 {
  int dx = 0, dy = 0, dp1 = 0, dp2 = 0;
  int grade() const { return dx + dy + dp1 + dp2; }
  bool operator<(const Mono4& o) const {
    return std::tuple(grade(), dx, dy, dp1) < std::tuple(o.grade(), o.dx, o.dy, o.dp1);
  }
  bool operator==(const Mono4& o) const {
    return dx == o.dx && dy == o.dy && dp1 == o.dp1 && dp2 == o.dp2;
  }
};

// Sparse polynomial in x, y, p1, p2 over Q; no stored zeros.
class Poly4 {
 public:
  Poly4() = default;
  explicit Poly4(const Rational& c) {
    if (c != 0) terms_[{}] = c;
  }
  static Poly4 from_poly2(const Poly2& p) {
    Poly4 out;
    for (const auto& [m, c] : p.terms()) out.terms_[{m.dx, m.dy, 0, 0}] = c;
    return out;
  }
  static Poly4 monomial(const Rational& c, Mono4 m) {
    Poly4 out;
    if (c != 0) out.terms_[m] = c;
    return out;
  }
  static Poly4 p1() { return monomial(1, {0, 0, 1, 0}); }
  static Poly4 p2() { return monomial(1, {0, 0, 0, 1}); }

  const std::map<Mono4, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly4 operator+(const Poly4& o) const {
    Poly4 out = *this;
    for (const auto& [m, c] : o.terms_) out.add(m, c);
    return out;
  }
  Poly4 operator-(const Poly4& o) const {
    Poly4 out = *this;
    for (const auto& [m, c] : o.terms_) out.add(m, -c);
    return out;
  }
  Poly4 operator*(const Poly4& o) const {
    Poly4 out;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_)
        out.add({m1.dx + m2.dx, m1.dy + m2.dy, m1.dp1 + m2.dp1, m1.dp2 + m2.dp2}, c1 * c2);
    return out;
  }
  Poly4 operator-() const {
    Poly4 out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
  }
  bool operator==(const Poly4& o) const { return terms_ == o.terms_; }

  // var: 0 = x, 1 = y, 2 = p1, 3 = p2
  Poly4 derivative(int var) const {
    Poly4 out;
    for (const auto& [m, c] : terms_) {
      Mono4 n = m;
      int e = 0;
      switch (var) {
        case 0: e = m.dx; --n.dx; break;
        case 1: e = m.dy; --n.dy; break;
        case 2: e = m.dp1; --n.dp1; break;
        case 3: e = m.dp2; --n.dp2; break;
        default: throw std::invalid_argument("Poly4::derivative: bad variable");
      }
      if (e > 0) out.add(n, c * e);
    }
    return out;
  }

  int momentum_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.dp1 + m.dp2);
    return d;
  }
  bool momentum_linear() const {
    for (const auto& [m, c] : terms_)
      if (m.dp1 + m.dp2 != 1) return false;
    return !terms_.empty();
  }

 private:
  void add(Mono4 m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0) terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  std::map<Mono4, Rational> terms_;
};

inline std::string format_canonical(const Poly4& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    detail::append_term(s, first, it->second,
                        {{"x", it->first.dx},
                         {"y", it->first.dy},
                         {"p1", it->first.dp1},
                         {"p2", it->first.dp2}});
    first = false;
  }
  return s;
}

struct LiftedHamiltonian {
  Poly4 f;  // p1*P + p2*Q, degree exactly 1 in (p1, p2)
};

struct LiftedField {
  Poly4 xdot, ydot, p1dot, p2dot;
};

struct NotMomentumLinear : std::runtime_error {
  NotMomentumLinear()
      : std::runtime_error("Hamiltonian must be linear homogeneous in the momenta") {}
};

inline LiftedHamiltonian cotangent_lift(const PlanarField& field) {
  return {Poly4::p1() * Poly4::from_poly2(field.P) + Poly4::p2() * Poly4::from_poly2(field.Q)};
}

// (df/dp1, df/dp2, -df/dx, -df/dy)
inline LiftedField hamiltonian_field(const LiftedHamiltonian& h) {
  if (!h.f.momentum_linear()) throw NotMomentumLinear();
  return {h.f.derivative(2), h.f.derivative(3), -h.f.derivative(0), -h.f.derivative(1)};
}

inline bool verify_projection(const LiftedField& lifted, const PlanarField& base) {
  return lifted.xdot == Poly4::from_poly2(base.P) && lifted.ydot == Poly4::from_poly2(base.Q);
}

// Derivative of h along the field; identically zero when the field is the
// Hamiltonian field of h.
inline Poly4 conservation_defect(const LiftedHamiltonian& h, const LiftedField& v) {
  return h.f.derivative(0) * v.xdot + h.f.derivative(1) * v.ydot +
         h.f.derivative(2) * v.p1dot + h.f.derivative(3) * v.p2dot;
}

}  // namespace tamegrad
