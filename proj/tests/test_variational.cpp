// Invariant-line detection, normalization to {y=0}, and the variational
// coefficients beta1/beta2 with the triangular second variational system.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "tamegrad/expr.hpp"
#include "tamegrad/variational.hpp"

using namespace tamegrad;

namespace {

Poly2 quartic_potential() {
  return parse_polynomial("1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4");
}

bool has_line(const std::vector<InvariantLine>& lines, const InvariantLine& l) {
  return std::find(lines.begin(), lines.end(), l) != lines.end();
}

}  // namespace

TEST_CASE("gradient field of the quartic potential") {
  PlanarField f = gradient_field(quartic_potential());
  CHECK(f.P == parse_polynomial("x^2+x+2*(x+y)*y^2"));
  CHECK(f.Q == parse_polynomial("2*(x+y)*y^2+2*(x+y)^2*y+y^3"));
  PlanarField radial = gradient_field(parse_polynomial("(x^2+y^2)/2"));
  CHECK(radial.P == Poly2::x());
  CHECK(radial.Q == Poly2::y());
  CHECK_THROWS_AS(gradient_field(Poly2(Rational(7))), ConstantPotential);
}

TEST_CASE("invariant lines of the quartic field include y = 0") {
  auto found = invariant_lines(gradient_field(quartic_potential()));
  CHECK(!found.infinite_family);
  REQUIRE(has_line(found.lines, InvariantLine(0, 1, 0)));
  // The remaining slope condition 2b^2-2b-1 has irrational roots only.
  CHECK(found.unresolved >= 1);
  for (const auto& line : found.lines) CHECK(is_invariant(gradient_field(quartic_potential()), line));
}

TEST_CASE("radial fields have infinitely many invariant lines") {
  auto found = invariant_lines({Poly2::x(), Poly2::y()});
  CHECK(found.infinite_family);
  CHECK(!found.family_note.empty());
}

TEST_CASE("field (2xy, x^2) has a vertical but no horizontal invariant line") {
  PlanarField f{parse_polynomial("2*x*y"), parse_polynomial("x^2")};
  auto found = invariant_lines(f);
  CHECK(!found.infinite_family);
  CHECK(has_line(found.lines, InvariantLine(1, 0, 0)));  // x = 0
  for (const auto& line : found.lines) CHECK(line.a != 0);  // none horizontal
}

TEST_CASE("a field without rational invariant lines yields an empty list") {
  auto found = invariant_lines({Poly2(Rational(1)), parse_polynomial("y^2+1")});
  CHECK(found.lines.empty());
  CHECK(!found.infinite_family);
}

TEST_CASE("invariance is certified by exact division") {
  PlanarField f = gradient_field(quartic_potential());
  // a*P + b*Q must vanish identically on the line for every reported line.
  auto found = invariant_lines(f);
  for (const auto& line : found.lines) {
    Poly2 combo = f.P * line.a + f.Q * line.b;
    if (line.b != 0) {
      // substitute y = -(a x + c)/b and expect the zero polynomial
      CHECK(is_invariant(f, line));
      (void)combo;
    } else {
      CHECK(combo.substitute_x(-line.c / line.a).is_zero());
    }
  }
}

TEST_CASE("normalization to y = 0") {
  PlanarField f = gradient_field(quartic_potential());

  SECTION("the line y = 0 is a no-op") {
    PlanarField g = normalize_to_y0(f, InvariantLine(0, 1, 0));
    CHECK(g.P == f.P);
    CHECK(g.Q == f.Q);
  }

  SECTION("horizontal translation: y = 1 shifts the argument") {
    // Shift the quartic field so that its invariant line sits at y = 1.
    Poly2 down = Poly2::y() - Poly2(Rational(1));
    PlanarField shifted{f.P.compose(Poly2::x(), down), f.Q.compose(Poly2::x(), down)};
    REQUIRE(is_invariant(shifted, InvariantLine(0, 1, -1)));
    PlanarField g = normalize_to_y0(shifted, InvariantLine(0, 1, -1));
    CHECK(g.P == f.P);
    CHECK(g.Q == f.Q);
  }

  SECTION("vertical line x = 0 swaps coordinates and components") {
    PlanarField v{parse_polynomial("2*x*y"), parse_polynomial("x^2")};
    REQUIRE(is_invariant(v, InvariantLine(1, 0, 0)));
    PlanarField g = normalize_to_y0(v, InvariantLine(1, 0, 0));
    CHECK(g.P == parse_polynomial("y^2"));
    CHECK(g.Q == parse_polynomial("2*x*y"));
    CHECK(g.Q.substitute_y(0).is_zero());
  }

  SECTION("a non-invariant line is rejected") {
    CHECK_THROWS_AS(normalize_to_y0(f, InvariantLine(0, 1, -5)), NotInvariant);
  }

  SECTION("normalized fields always satisfy Q(x,0) = 0") {
    auto found = invariant_lines(f);
    for (const auto& line : found.lines)
      CHECK(normalize_to_y0(f, line).Q.substitute_y(0).is_zero());
  }
}

TEST_CASE("variational coefficients of the quartic field") {
  auto vs = variational_coefficients(gradient_field(quartic_potential()));
  CHECK(format_canonical(vs.beta1) == "2*x/(x+1)");
  CHECK(format_canonical(vs.beta2) == "12/(x+1)");
}

TEST_CASE("variational coefficients of the saddle potential") {
  auto vs = variational_coefficients(gradient_field(parse_polynomial("x^2/2-y^2/2")));
  CHECK(format_canonical(vs.beta1) == "-1/x");
  CHECK(vs.beta2.is_zero());
}

TEST_CASE("variational coefficients of the cubic potential") {
  // F = x^2/2 + x*y^2 + y^3/3, field (x + y^2, 2xy + y^2)
  auto vs = variational_coefficients(gradient_field(parse_polynomial("x^2/2+x*y^2+y^3/3")));
  CHECK(vs.beta1 == RatFun(Rational(2)));
  CHECK(format_canonical(vs.beta2) == "2/x");
}

TEST_CASE("variational preconditions are enforced") {
  CHECK_THROWS_AS(variational_coefficients({Poly2::x(), Poly2::x()}), NotInvariant);
  // P(x,0) = 0 while Q(x,0) = 0: a line of critical points
  CHECK_THROWS_AS(variational_coefficients({Poly2::y(), Poly2::y() * Poly2::y()}),
                  LineOfCriticalPoints);
}

TEST_CASE("beta1 satisfies the cleared derivative identity") {
  for (const char* src : {"1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4", "x^2/2-y^2/2",
                          "x^2/2+x*y^2+y^3/3"}) {
    PlanarField f = gradient_field(parse_polynomial(src));
    auto vs = variational_coefficients(f);
    Poly p0 = f.P.substitute_y(0);
    Poly qy0 = f.Q.derivative_y().substitute_y(0);
    CHECK(vs.beta1 * RatFun(p0) == RatFun(qy0));
  }
}

TEST_CASE("second variational system is triangular with doubled beta1") {
  auto vs = variational_coefficients(gradient_field(quartic_potential()));
  auto sys = lve2_system(vs);
  CHECK(sys.chi1_coeff == vs.beta1 * Rational(2));
  CHECK(format_canonical(sys.chi1_coeff) == "4*x/(x+1)");
  CHECK(sys.chi2_self == vs.beta1);
  CHECK(sys.chi2_source == vs.beta2);

  VariationalSystem zero{InvariantLine(0, 1, 0), RatFun(Rational(0)), RatFun(Rational(0))};
  auto zsys = lve2_system(zero);
  CHECK(zsys.chi1_coeff.is_zero());
  CHECK(zsys.chi2_self.is_zero());
  CHECK(zsys.chi2_source.is_zero());

  VariationalSystem lin{InvariantLine(0, 1, 0), RatFun(Rational(1)), RatFun(Poly::x())};
  auto lsys = lve2_system(lin);
  CHECK(lsys.chi1_coeff == RatFun(Rational(2)));
  CHECK(lsys.chi2_self == RatFun(Rational(1)));
  CHECK(lsys.chi2_source == RatFun(Poly::x()));
}

TEST_CASE("shifted copies of the quartic field reach the same coefficients") {
  PlanarField f = gradient_field(quartic_potential());
  Poly2 down = Poly2::y() - Poly2(Rational(1));
  PlanarField shifted{f.P.compose(Poly2::x(), down), f.Q.compose(Poly2::x(), down)};
  auto found = invariant_lines(shifted);
  REQUIRE(has_line(found.lines, InvariantLine(0, 1, -1)));
  auto vs = variational_coefficients(normalize_to_y0(shifted, InvariantLine(0, 1, -1)));
  CHECK(format_canonical(vs.beta1) == "2*x/(x+1)");
  CHECK(format_canonical(vs.beta2) == "12/(x+1)");
}
