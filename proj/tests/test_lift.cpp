// Cotangent lift: the momentum-linear Hamiltonian, its field, projection
// back to the base dynamics, and the exact conservation identity.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tamegrad/expr.hpp"
#include "tamegrad/lift.hpp"

using namespace tamegrad;

namespace {

Poly2 quartic_potential() {
  return parse_polynomial("1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4");
}

Poly2 random_poly2(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-6, 6);
  Poly2 p;
  for (int t = 0; t < 5; ++t) {
    int dx = deg(rng), dy = deg(rng);
    if (dx + dy > max_deg) continue;
    p = p + Poly2::monomial(Rational(coef(rng)), dx, dy);
  }
  return p;
}

}  // namespace

TEST_CASE("lift of the quartic field") {
  PlanarField f = gradient_field(quartic_potential());
  LiftedHamiltonian h = cotangent_lift(f);
  CHECK(h.f == Poly4::p1() * Poly4::from_poly2(f.P) + Poly4::p2() * Poly4::from_poly2(f.Q));
  CHECK(h.f.momentum_degree() == 1);
  LiftedField xf = hamiltonian_field(h);
  CHECK(xf.xdot == Poly4::from_poly2(f.P));
  CHECK(xf.ydot == Poly4::from_poly2(f.Q));
  CHECK(verify_projection(xf, f));
}

TEST_CASE("lift of trivial fields") {
  LiftedHamiltonian unit = cotangent_lift({Poly2(Rational(1)), Poly2()});
  CHECK(format_canonical(unit.f) == "p1");
  LiftedField xf = hamiltonian_field(unit);
  CHECK(format_canonical(xf.xdot) == "1");
  CHECK(xf.ydot.is_zero());
  CHECK(xf.p1dot.is_zero());
  CHECK(xf.p2dot.is_zero());
  CHECK(verify_projection(xf, {Poly2(Rational(1)), Poly2()}));
}

TEST_CASE("lift of the swap field differentiates correctly") {
  LiftedHamiltonian h = cotangent_lift({Poly2::y(), Poly2::x()});
  LiftedField xf = hamiltonian_field(h);
  CHECK(format_canonical(xf.xdot) == "y");
  CHECK(format_canonical(xf.ydot) == "x");
  CHECK(format_canonical(xf.p1dot) == "-p2");
  CHECK(format_canonical(xf.p2dot) == "-p1");
}

TEST_CASE("projection check is false for a mismatched base") {
  LiftedField lifted{Poly4::from_poly2(Poly2::y()), Poly4::from_poly2(Poly2::x()), Poly4(),
                     Poly4()};
  CHECK(!verify_projection(lifted, {Poly2::x(), Poly2::y()}));
}

TEST_CASE("momentum-nonlinear inputs are rejected") {
  CHECK_THROWS_AS(hamiltonian_field({Poly4::p1() * Poly4::p1()}), NotMomentumLinear);
  CHECK_THROWS_AS(hamiltonian_field({Poly4::from_poly2(Poly2::x())}), NotMomentumLinear);
}

TEST_CASE("conservation identity holds exactly on random fields") {
  std::mt19937_64 rng(8088);
  for (int iter = 0; iter < 100; ++iter) {
    PlanarField f{random_poly2(rng, 4), random_poly2(rng, 4)};
    if (f.P.is_zero() && f.Q.is_zero()) continue;
    LiftedHamiltonian h = cotangent_lift(f);
    LiftedField xf = hamiltonian_field(h);
    CHECK(conservation_defect(h, xf).is_zero());
    CHECK(verify_projection(xf, f));
  }
}

TEST_CASE("cotangent lift is additive in the field") {
  std::mt19937_64 rng(9099);
  for (int iter = 0; iter < 50; ++iter) {
    PlanarField f{random_poly2(rng, 3), random_poly2(rng, 3)};
    PlanarField g{random_poly2(rng, 3), random_poly2(rng, 3)};
    PlanarField sum{f.P + g.P, f.Q + g.Q};
    CHECK(cotangent_lift(sum).f == cotangent_lift(f).f + cotangent_lift(g).f);
  }
}

TEST_CASE("canonical four-variable formatting orders x, y, p1, p2") {
  Poly4 m = Poly4::p1() * Poly4::from_poly2(Poly2::y()) +
            Poly4::p2() * Poly4::from_poly2(Poly2::x());
  CHECK(format_canonical(m) == "x*p2+y*p1");
  CHECK(format_canonical(Poly4()) == "0");
}
