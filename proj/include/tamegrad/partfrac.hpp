#pragma once

// Partial fractions over Q(x) and the logarithmic-derivative split
// beta = g' + sum n_i f_i'/f_i used to build hyperexponential solutions
// exp(int beta) = e^g * prod f_i^{n_i}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "ratfun.hpp"

namespace tamegrad {

struct PartialFractionTerm {
  Poly factor;     // monic squarefree
  int order;       // >= 1
  Poly numerator;  // deg < deg factor, nonzero
};

struct PartialFractions {
  Poly poly_part;
  std::vector<PartialFractionTerm> terms;

  RatFun value() const {
    RatFun acc{poly_part};
    for (const auto& t : terms) {
      Poly d(Rational(1));
      for (int i = 0; i < t.order; ++i) d = d * t.factor;
      acc = acc + RatFun(t.numerator, d);
    }
    return acc;
  }
};

// f = poly_part + sum numerator_{j,k} / factor_j^k with deg numerator < deg
// factor; recombining reproduces f exactly.
inline PartialFractions partial_fractions(const RatFun& f) {
  PartialFractions out;
  auto [p, proper] = f.proper_split();
  out.poly_part = p;
  if (proper.is_zero()) return out;

  auto sqf = squarefree_factorization(proper.den());
  Poly num = proper.num();
  Poly den = proper.den();

  for (const auto& [fac, mult] : sqf.factors) {
    Poly power(Rational(1));
    for (int i = 0; i < mult; ++i) power = power * fac;
    Poly rest = den.exact_div(power);
    Poly part;
    if (rest.degree() == 0) {
      part = num * (Rational(1) / rest.lc());
    } else {
      // s*power + t*rest = 1, so num/(power*rest) = num*t/power + num*s/rest.
      auto [g, s, t] = poly_xgcd(power, rest);
      part = (num * t) % power;
    }
    // Base-fac digits: part = sum c_k fac^k, giving terms c_k / fac^{mult-k}.
    Poly q = part;
    for (int k = 0; k < mult && !q.is_zero(); ++k) {
      auto [quot, rem] = q.divmod(fac);
      if (!rem.is_zero())
        out.terms.push_back({fac, mult - k, rem});
      q = quot;
    }
  }
  return out;
}

enum class UnsupportedReason { NonIntegerResidue, HigherOrderPole };

inline const char* to_string(UnsupportedReason r) {
  switch (r) {
    case UnsupportedReason::NonIntegerResidue: return "NonIntegerResidue";
    case UnsupportedReason::HigherOrderPole: return "HigherOrderPole";
  }
  return "?";
}

struct LogDerivSplit {
  Poly g;  // polynomial part integrated, zero constant term
  std::vector<std::pair<Poly, long long>> factors;  // monic, pairwise coprime, exponent != 0
};

struct LogDerivOutcome {
  std::optional<LogDerivSplit> split;
  std::optional<UnsupportedReason> reason;
  std::string detail;
  bool ok() const { return split.has_value(); }

  static LogDerivOutcome unsupported(UnsupportedReason r, std::string d) {
    LogDerivOutcome o;
    o.reason = r;
    o.detail = std::move(d);
    return o;
  }
};

// Decompose beta = g' + sum n_i f_i'/f_i with integer n_i. Fails when beta
// has a pole of order >= 2 (the exponent would not be a polynomial) or a
// residue outside Z (the cofactor would not be a rational function).
inline LogDerivOutcome logderiv_split(const RatFun& beta) {
  auto pf = partial_fractions(beta);
  LogDerivSplit out;
  out.g = pf.poly_part.integral();

  // Group order-1 numerators by factor (partial_fractions emits one term
  // per (factor, order) pair already).
  for (const auto& t : pf.terms) {
    if (t.order >= 2)
      return LogDerivOutcome::unsupported(
          UnsupportedReason::HigherOrderPole,
          "pole of order " + std::to_string(t.order) + " at a root of " +
              format_canonical(t.factor));
    RatFun r(t.numerator, t.factor);
    Poly fprime = t.factor.derivative();
    // Peel integer residues at rational roots.
    for (const auto& [c, mult] : rational_roots(t.factor)) {
      (void)mult;  // squarefree
      Rational rho = t.numerator.eval(c) / fprime.eval(c);
      if (rho == 0) continue;
      if (!is_integer(rho))
        return LogDerivOutcome::unsupported(
            UnsupportedReason::NonIntegerResidue,
            "residue " + rat_str(rho) + " at x = " + rat_str(c));
      Poly lin = Poly::x() - Poly(c);
      out.factors.push_back({lin, numer(rho).convert_to<long long>()});
      r = r - RatFun(Poly(rho), lin);
    }
    if (r.is_zero()) continue;
    // Leftover part with no rational poles: accept only a uniform integer
    // residue n across the (unfactored) remaining denominator e, i.e.
    // num = n * e'.
    Poly e = r.den();
    Poly eprime = e.derivative();
    if (e.degree() < 1 || r.num().degree() != eprime.degree())
      return LogDerivOutcome::unsupported(
          UnsupportedReason::NonIntegerResidue,
          "irrational or mismatched residues at roots of " + format_canonical(e));
    Rational n = r.num().lc() / eprime.lc();
    if (!is_integer(n) || !(r.num() == n * eprime))
      return LogDerivOutcome::unsupported(
          UnsupportedReason::NonIntegerResidue,
          "residues at roots of " + format_canonical(e) + " are not a uniform integer");
    out.factors.push_back({e, numer(n).convert_to<long long>()});
  }

  // Soundness audit: the split must recombine to beta exactly.
  RatFun audit{out.g.derivative()};
  for (const auto& [f, n] : out.factors)
    audit = audit + Rational(n) * RatFun(f.derivative(), f);
  if (!(audit == beta)) throw std::logic_error("logderiv_split: recombination mismatch");

  LogDerivOutcome o;
  o.split = std::move(out);
  return o;
}

}  // namespace tamegrad
