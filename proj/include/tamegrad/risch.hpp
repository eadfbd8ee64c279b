#pragma once

// Rational solutions of the Risch differential equation y' + g'y = rhs
// with polynomial nonzero g'. Either a verified solution or a refutation
// witness a third party can re-check: a simple pole of rhs (no rational y
// can produce one), or an inconsistent linear system with a certificate
// vector lambda satisfying lambda^T A = 0, lambda^T b != 0.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ratfun.hpp"

namespace tamegrad {

struct RischProblem {
  Poly gprime;  // nonzero
  RatFun rhs;
};

struct SimplePoleWitness {
  Poly factor;  // squarefree factor of den(rhs) of multiplicity 1
};

struct LinearSystemWitness {
  // Coefficient matching for the cleared equation N'D - ND' + g'ND = R,
  // deg N <= numerator_bound, row i = coefficient of x^i.
  Poly denominator;  // D
  int numerator_bound = 0;
  std::vector<std::vector<Rational>> matrix;  // rows x cols
  std::vector<Rational> rhs_vector;
  std::vector<Rational> lambda;  // lambda^T matrix = 0, lambda^T rhs_vector != 0
};

struct RischOutcome {
  enum class Kind { Solution, NoSolutionPole, NoSolutionSystem };
  Kind kind;
  RatFun solution;  // Kind::Solution, satisfies y' + g'y = rhs exactly
  std::optional<SimplePoleWitness> pole;
  std::optional<LinearSystemWitness> system;

  bool no_solution() const { return kind != Kind::Solution; }
};

namespace detail {

struct LinearSolveResult {
  bool consistent = false;
  std::vector<Rational> solution;  // free variables set to 0
  std::vector<Rational> lambda;    // inconsistency certificate otherwise
};

// Exact Gaussian elimination on [A | b | I]; the identity block tracks row
// operations so an inconsistent row directly yields its certificate.
inline LinearSolveResult solve_linear_system(const std::vector<std::vector<Rational>>& A,
                                             const std::vector<Rational>& b) {
  size_t m = A.size();
  size_t k = m == 0 ? 0 : A[0].size();
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(k + 1 + m, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) T[i][j] = A[i][j];
    T[i][k] = b[i];
    T[i][k + 1 + i] = 1;
  }
  std::vector<int> pivot_of_col(k, -1);
  size_t row = 0;
  for (size_t col = 0; col < k && row < m; ++col) {
    size_t p = row;
    while (p < m && T[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(T[p], T[row]);
    Rational inv = Rational(1) / T[row][col];
    for (auto& v : T[row]) v *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || T[i][col] == 0) continue;
      Rational f = T[i][col];
      for (size_t j = 0; j < T[i].size(); ++j) T[i][j] -= f * T[row][j];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  LinearSolveResult out;
  for (size_t i = 0; i < m; ++i) {
    bool zero_row = true;
    for (size_t j = 0; j < k; ++j) zero_row = zero_row && T[i][j] == 0;
    if (zero_row && T[i][k] != 0) {
      out.consistent = false;
      out.lambda.assign(T[i].begin() + k + 1, T[i].end());
      return out;
    }
  }
  out.consistent = true;
  out.solution.assign(k, 0);
  for (size_t col = 0; col < k; ++col)
    if (pivot_of_col[col] >= 0) out.solution[col] = T[pivot_of_col[col]][k];
  return out;
}

}  // namespace detail

inline RischOutcome risch_de_solve(const RischProblem& prob) {
  if (prob.gprime.is_zero())
    throw std::invalid_argument("risch_de_solve: g' must be a nonzero polynomial");
  RischOutcome out;

  if (prob.rhs.is_zero()) {
    out.kind = RischOutcome::Kind::Solution;
    out.solution = RatFun(Rational(0));
    return out;
  }

  // Pole orders: a pole of y of order k >= 1 appears in y' + g'y with order
  // exactly k + 1 >= 2. A simple pole of rhs is therefore unreachable.
  auto sqf = squarefree_factorization(prob.rhs.den());
  for (const auto& [f, mult] : sqf.factors) {
    if (f.degree() >= 1 && mult == 1) {
      out.kind = RischOutcome::Kind::NoSolutionPole;
      out.pole = SimplePoleWitness{f};
      return out;
    }
  }

  // Denominator of any solution is exactly D = prod f^(mult-1); clear it:
  // N'D - ND' + g'ND = num(rhs) * prod f^(mult-2) =: R.
  Poly D(Rational(1)), R = prob.rhs.num();
  for (const auto& [f, mult] : sqf.factors) {
    for (int i = 0; i < mult - 1; ++i) D = D * f;
    for (int i = 0; i < mult - 2; ++i) R = R * f;
  }
  Poly Dp = D.derivative();
  int dg = prob.gprime.degree();
  // deg of the cleared left side is exactly deg N + deg D + deg g' (the g'ND
  // term dominates since dg >= 0), so deg N is forced.
  int n = R.degree() - D.degree() - dg;
  if (n < 0) n = 0;

  size_t rows = static_cast<size_t>(std::max(R.degree(), n + D.degree() + dg)) + 1;
  std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(n + 1, 0));
  std::vector<Rational> b(rows, 0);
  for (int i = 0; i <= R.degree(); ++i) b[i] = R.coeff(i);
  for (int kk = 0; kk <= n; ++kk) {
    Poly xk = Poly::monomial(1, kk);
    Poly col = xk.derivative() * D - xk * Dp + prob.gprime * xk * D;
    for (int i = 0; i <= col.degree(); ++i) A[i][kk] = col.coeff(i);
  }

  auto lin = detail::solve_linear_system(A, b);
  if (!lin.consistent) {
    out.kind = RischOutcome::Kind::NoSolutionSystem;
    LinearSystemWitness w;
    w.denominator = D;
    w.numerator_bound = n;
    w.matrix = std::move(A);
    w.rhs_vector = std::move(b);
    w.lambda = std::move(lin.lambda);
    out.system = std::move(w);
    return out;
  }

  Poly N = Poly::from_coeffs(lin.solution);
  RatFun y(N, D);
  if (!(y.derivative() + RatFun(prob.gprime) * y == prob.rhs))
    throw std::logic_error("risch_de_solve: candidate failed substitution");
  out.kind = RischOutcome::Kind::Solution;
  out.solution = y;
  return out;
}

}  // namespace tamegrad
