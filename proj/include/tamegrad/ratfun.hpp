#pragma once

// Rational functions in one variable over Q, always normalized: numerator
// and denominator coprime, denominator monic and nonzero. Zero is 0/1.

#include <stdexcept>
#include <utility>

#include "polynomial.hpp"

namespace tamegrad {

class RatFun {
 public:
  RatFun() : num_(), den_(Rational(1)) {}
  RatFun(const Rational& constant) : num_(constant), den_(Rational(1)) {}  // NOLINT
  RatFun(int constant) : num_(Rational(constant)), den_(Rational(1)) {}    // NOLINT
  RatFun(const Poly& p) : num_(p), den_(Rational(1)) {}                    // NOLINT

  RatFun(Poly numerator, Poly denominator) {
    if (denominator.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (numerator.is_zero()) {
      num_ = Poly();
      den_ = Poly(Rational(1));
      return;
    }
    Poly g = poly_gcd(numerator, denominator);
    numerator = numerator.exact_div(g);
    denominator = denominator.exact_div(g);
    Rational l = denominator.lc();
    num_ = numerator * (Rational(1) / l);
    den_ = denominator * (Rational(1) / l);
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }

  RatFun operator-() const {
    RatFun r(*this);
    r.num_ = -r.num_;
    return r;
  }
  RatFun operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFun operator-(const RatFun& o) const { return *this + (-o); }
  RatFun operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
  RatFun operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
  }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  // Split into polynomial part and proper remainder: *this = poly + rest.
  std::pair<Poly, RatFun> proper_split() const {
    auto [q, r] = num_.divmod(den_);
    return {q, RatFun(r, den_)};
  }

  Rational eval(const Rational& at) const {
    Rational d = den_.eval(at);
    if (d == 0) throw std::domain_error("RatFun::eval at a pole");
    return num_.eval(at) / d;
  }

 private:
  Poly num_, den_;
};

inline RatFun operator*(const Rational& s, const RatFun& f) { return RatFun(s) * f; }

}  // namespace tamegrad
