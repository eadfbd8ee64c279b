#pragma once

// The decision pipeline: build omega = exp(int beta1) as a hyperexponential
// element, test whether theta1 = int beta2*omega stays inside the field
// generated by x and omega (Risch differential equation), and combine the
// two answers into an integrability verdict for the gradient system. Also:
// exact verification of closed forms that mix elementary terms with the
// exponential-integral special function.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partfrac.hpp"
#include "risch.hpp"
#include "variational.hpp"

namespace tamegrad {

// A(x) * e^{g(x)} with A != 0. `display` keeps A in factored shape for
// printing; `audit_beta` records the logarithmic derivative the element was
// built to match.
struct HyperExp {
  RatFun A{Rational(1)};
  Poly g;
  FactoredRatFun display;
  std::optional<RatFun> audit_beta;

  RatFun log_derivative() const {
    return RatFun(A.num().derivative(), A.num()) - RatFun(A.den().derivative(), A.den()) +
           RatFun(g.derivative());
  }
};

struct OmegaOutcome {
  std::optional<HyperExp> omega;
  std::optional<UnsupportedReason> reason;
  std::string detail;
  bool ok() const { return omega.has_value(); }
};

// omega = exp(int beta1): A = prod f_i^{n_i}, g = int(poly part of beta1).
inline OmegaOutcome exponential_solution(const RatFun& beta1) {
  auto ld = logderiv_split(beta1);
  if (!ld.ok()) {
    OmegaOutcome o;
    o.reason = ld.reason;
    o.detail = ld.detail;
    return o;
  }
  HyperExp h;
  h.g = ld.split->g;
  Poly num(Rational(1)), den(Rational(1));
  FactoredRatFun disp;
  for (const auto& [f, n] : ld.split->factors) {
    if (n > 0) {
      for (long long i = 0; i < n; ++i) num = num * f;
      disp.num_factors.push_back({f, static_cast<int>(n)});
    } else {
      for (long long i = 0; i < -n; ++i) den = den * f;
      disp.den_factors.push_back({f, static_cast<int>(-n)});
    }
  }
  h.A = RatFun(num, den);
  h.display = disp;
  h.audit_beta = beta1;
  if (!(h.log_derivative() == beta1))
    throw std::logic_error("exponential_solution: A'/A + g' != beta1");
  OmegaOutcome o;
  o.omega = std::move(h);
  return o;
}

struct ZeroBeta2 : std::runtime_error {
  ZeroBeta2() : std::runtime_error("beta2 vanishes; the second variational layer decouples") {}
};

// Integrand of theta1: beta2 * omega, same exponent.
inline HyperExp theta_integrand(const RatFun& beta2, const HyperExp& omega) {
  if (beta2.is_zero()) throw ZeroBeta2();
  HyperExp h;
  h.A = beta2 * omega.A;
  h.g = omega.g;
  h.display = FactoredRatFun::factored(h.A);
  return h;
}

enum class Verdict { NON_INTEGRABLE, INCONCLUSIVE, UNSUPPORTED };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NON_INTEGRABLE: return "NON_INTEGRABLE";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    case Verdict::UNSUPPORTED: return "UNSUPPORTED";
  }
  return "?";
}

// NON_INTEGRABLE iff omega is genuinely exponential (g nonconstant) and
// theta1 provably leaves the field (Risch has no rational solution): the
// Galois group then carries a non-commuting pair of multiplicative and
// additive actions. Everything else stays INCONCLUSIVE or UNSUPPORTED.
inline Verdict abelianity_verdict(const OmegaOutcome& omega, const RatFun& beta2,
                                  const std::optional<RischOutcome>& risch) {
  if (!omega.ok()) return Verdict::UNSUPPORTED;
  if (omega.omega->g.degree() < 1) return Verdict::INCONCLUSIVE;
  if (beta2.is_zero()) return Verdict::INCONCLUSIVE;
  if (!risch || !risch->no_solution()) return Verdict::INCONCLUSIVE;
  return Verdict::NON_INTEGRABLE;
}

struct Certificate {
  std::optional<Poly2> potential;
  PlanarField field;           // original coordinates
  InvariantLine line{0, 1, 0};  // original coordinates
  bool degenerate = false;
  std::string note;
  std::optional<VariationalSystem> vs;  // coefficients after normalization
  OmegaOutcome omega;
  std::optional<HyperExp> theta;
  std::optional<RischOutcome> risch;
  Verdict verdict = Verdict::UNSUPPORTED;
  std::vector<std::string> citations;
};

namespace detail {

inline std::vector<std::string> standard_citations() {
  return {
      "Morales-Ruiz & Ramis: meromorphic integrability forces an abelian identity "
      "component of the differential Galois group of the variational equations "
      "along any integral curve.",
      "Ayoul & Zung: the same criterion applies to arbitrary polynomial fields "
      "through the Hamiltonian cotangent lift.",
      "Acosta-Humanez, Lazaro, Morales-Ruiz & Pantazi: higher variational "
      "equations along invariant planar curves reduce to linear systems with "
      "rational-function coefficients.",
      "Risch: elementarity of integrals of f*e^g over Q(x) is equivalent to a "
      "rational solution of y' + g'y = f.",
  };
}

inline Certificate analyze_line(const PlanarField& field, const InvariantLine& line) {
  Certificate cert;
  cert.field = field;
  cert.line = line;
  cert.citations = standard_citations();
  PlanarField local = normalize_to_y0(field, line);
  try {
    cert.vs = variational_coefficients(local);
  } catch (const LineOfCriticalPoints& e) {
    cert.degenerate = true;
    cert.note = e.what();
    cert.verdict = Verdict::UNSUPPORTED;
    return cert;
  }
  cert.omega = exponential_solution(cert.vs->beta1);
  if (!cert.omega.ok()) {
    cert.verdict = Verdict::UNSUPPORTED;
    return cert;
  }
  if (!cert.vs->beta2.is_zero()) {
    cert.theta = theta_integrand(cert.vs->beta2, *cert.omega.omega);
    if (cert.omega.omega->g.degree() >= 1)
      cert.risch = risch_de_solve({cert.omega.omega->g.derivative(), cert.theta->A});
  }
  cert.verdict = abelianity_verdict(cert.omega, cert.vs->beta2, cert.risch);
  return cert;
}

}  // namespace detail

// One certificate per rational invariant line. Degenerate one-dimensional
// situations (a vanishing field component) collapse to a single UNSUPPORTED
// certificate; genuinely two-dimensional infinite families are errors.
inline std::vector<Certificate> analyze_field(const PlanarField& field) {
  std::vector<Certificate> certs;
  if (field.P.is_zero() || field.Q.is_zero()) {
    Certificate cert;
    cert.field = field;
    cert.degenerate = true;
    cert.line = field.Q.is_zero() ? InvariantLine(0, 1, 0) : InvariantLine(1, 0, 0);
    cert.note = field.Q.is_zero()
                    ? "Q vanishes identically: every horizontal line is invariant and the "
                      "second variational layer carries no data"
                    : "P vanishes identically: every vertical line is invariant and the "
                      "second variational layer carries no data";
    cert.verdict = Verdict::UNSUPPORTED;
    cert.citations = detail::standard_citations();
    certs.push_back(std::move(cert));
    return certs;
  }
  auto found = invariant_lines(field);
  if (found.infinite_family) throw InfiniteFamilyError(found.family_note);
  if (found.lines.empty()) throw NoInvariantLineError();
  for (const auto& line : found.lines) {
    Certificate cert = detail::analyze_line(field, line);
    if (found.unresolved > 0 && cert.note.empty())
      cert.note = std::to_string(found.unresolved) +
                  " solution component(s) of the line conditions need irrational "
                  "coefficients and were not enumerated";
    certs.push_back(std::move(cert));
  }
  return certs;
}

inline std::vector<Certificate> analyze_potential(const Poly2& F) {
  PlanarField field = gradient_field(F);
  auto certs = analyze_field(field);
  for (auto& c : certs) c.potential = F;
  return certs;
}

// ---- Closed forms built from A_i e^{g_i} plus exponential-integral terms.

struct MalformedClosedForm : std::runtime_error {
  explicit MalformedClosedForm(const std::string& what) : std::runtime_error(what) {}
};

// q * e^{shift} * Ei1(u) with affine u; differentiation uses
// d/dx Ei1(u) = -e^{-u} u'/u.
struct EiTerm {
  Rational q;
  Rational shift;
  Poly u;
};

struct SpecialClosedForm {
  std::vector<std::pair<RatFun, Poly>> elementary;  // A e^{g}
  std::vector<EiTerm> ei;
};

// Exact check that d/dx(cf) == integrand. Derivatives are grouped by their
// exponent polynomial; the e^{g} for distinct polynomial g are linearly
// independent over Q(x), so the identity holds iff every group cancels.
inline bool verify_closed_form(const SpecialClosedForm& cf, const HyperExp& integrand) {
  std::map<std::vector<Rational>, RatFun> groups;
  auto add = [&groups](const RatFun& a, const Poly& g) {
    if (a.is_zero()) return;
    auto key = g.coeffs();
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, a);
    else
      it->second = it->second + a;
  };
  for (const auto& [A, g] : cf.elementary)
    add(A.derivative() + RatFun(g.derivative()) * A, g);
  for (const auto& t : cf.ei) {
    if (t.u.degree() != 1)
      throw MalformedClosedForm("Ei argument must be affine in x");
    // d/dx [q e^s Ei1(u)] = -q e^{s-u} u'/u.
    RatFun part = RatFun(Poly(-t.q * t.u.coeff(1)), t.u);
    add(part, Poly(t.shift) - t.u);
  }
  add(Rational(-1) * integrand.A, integrand.g);
  for (const auto& [g, sum] : groups)
    if (!sum.is_zero()) return false;
  return true;
}

}  // namespace tamegrad
