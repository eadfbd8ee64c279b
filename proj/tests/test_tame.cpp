// Empirical tame-topology harness: component counting, line intersections,
// Rolle tangency witnesses, and the seeded finiteness experiment.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tamegrad/expr.hpp"
#include "tamegrad/tame.hpp"

using namespace tamegrad;

namespace {

Poly2 quartic_potential() {
  return parse_polynomial("1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4");
}

Trajectory gamma_trajectory() {
  FlowOptions opts;
  opts.t_max = 6.0;
  return integrate_flow(quartic_potential(), {0.5, 0.0}, Direction::descent, opts);
}

}  // namespace

TEST_CASE("component counts against half-plane cuts") {
  Trajectory tr = gamma_trajectory();
  auto one = count_components(tr, {Poly2::x() - Poly2(Rational(1, 10)), Relation::greater});
  CHECK(one.count == 1);
  REQUIRE(one.intervals.size() == 1);
  CHECK(one.intervals[0].first == 0.0);

  auto none = count_components(
      tr, {Poly2::x() * Poly2::x() + Poly2(Rational(1)), Relation::less});
  CHECK(none.count == 0);

  auto whole = count_components(tr, {Poly2::x(), Relation::greater});
  CHECK(whole.count == 1);
  CHECK(whole.intervals[0].second == tr.t_end());
}

TEST_CASE("component counting needs a nonzero cut polynomial") {
  Trajectory tr = gamma_trajectory();
  CHECK_THROWS_AS(count_components(tr, {Poly2(), Relation::greater}),
                  std::invalid_argument);
}

TEST_CASE("equality cuts count crossings") {
  Trajectory tr = gamma_trajectory();
  auto hits = count_components(tr, {Poly2::x() - Poly2(Rational(1, 4)), Relation::equals});
  CHECK(hits.count == 1);
}

TEST_CASE("line intersections with refinement") {
  Trajectory tr = gamma_trajectory();
  auto one = line_intersections(tr, 1, 0, -0.25);
  REQUIRE(one.count == 1);
  CHECK(std::fabs(one.points[0].x - 0.25) < 1e-9);
  CHECK(std::fabs(1.0 * one.points[0].x + 0 * one.points[0].y - 0.25) < 1e-9);

  CHECK(line_intersections(tr, 0, 1, -1).count == 0);

  auto contained = line_intersections(tr, 0, 1, 0);
  CHECK(contained.degenerate_containment);

  CHECK_THROWS_AS(line_intersections(tr, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("monotone coordinate implies at most one vertical-line component") {
  // n_traj = 1 equivalent: a single trajectory on the invariant line against
  // a family of vertical lines.
  Trajectory tr = gamma_trajectory();
  DenseGrid grid = make_dense_grid(tr);
  for (double c : {0.45, 0.3, 0.2, 0.1, 0.05, 0.01}) {
    auto hits = line_intersections(tr, 1, 0, -c, &grid);
    CHECK(hits.count <= 1);
    auto comps = count_components(tr, {Poly2::x() - Poly2(Rational(int(c * 100), 100)),
                                       Relation::greater}, &grid);
    CHECK(comps.count <= 1);
  }
}

TEST_CASE("a potential constant in y yields horizontal trajectories") {
  Poly2 F = parse_polynomial("x^2/2");
  FlowOptions opts;
  opts.t_max = 4.0;
  Trajectory tr = integrate_flow(F, {1.5, 0.7}, Direction::descent, opts);
  for (const auto& s : tr.samples) CHECK(s.y == 0.7);
  for (double c : {1.0, 0.5, 0.25}) {
    auto hits = line_intersections(tr, 1, 0, -c);
    CHECK(hits.count <= 1);
  }
}

TEST_CASE("truncation never increases the component count") {
  Trajectory tr = gamma_trajectory();
  DenseGrid full = make_dense_grid(tr);
  SemialgebraicPredicate cuts[] = {
      {Poly2::x() - Poly2(Rational(1, 5)), Relation::greater},
      {Poly2::x() - Poly2(Rational(1, 10)), Relation::less},
      {Poly2::x() - Poly2(Rational(1, 4)), Relation::equals},
  };
  for (const auto& cut : cuts) {
    auto base = count_components(tr, cut, &full);
    for (double frac : {0.75, 0.5, 0.25, 0.1}) {
      DenseGrid part = make_dense_grid(tr, 8, tr.t_end() * frac);
      auto trunc = count_components(tr, cut, &part);
      CHECK(trunc.count <= base.count);
    }
  }
}

TEST_CASE("rolle witness on a chord of an off-line trajectory") {
  Poly2 F = quartic_potential();
  FlowOptions opts;
  opts.t_max = 6.0;
  Trajectory tr = integrate_flow(F, {0.4, 0.3}, Direction::descent, opts);
  auto a = tr.eval(0.05);
  auto b = tr.eval(0.8);
  auto rw = rolle_witness({a, b}, F);
  REQUIRE(rw.status == RolleResult::Status::ok);
  REQUIRE(!rw.witnesses.empty());
  for (const auto& w : rw.witnesses) CHECK(w.residual < 1e-8);
}

TEST_CASE("rolle witness degenerate when the path lies inside a leaf") {
  auto rw = rolle_witness({{0.5, 0.0}, {0.3, 0.0}}, quartic_potential());
  CHECK(rw.status == RolleResult::Status::degenerate);
}

TEST_CASE("rolle witness not applicable across different leaves") {
  auto rw = rolle_witness({{0.5, 0.0}, {0.4, 0.3}}, quartic_potential());
  CHECK(rw.status == RolleResult::Status::not_applicable);
}

TEST_CASE("rolle witness input validation") {
  CHECK_THROWS_AS(rolle_witness({{0.5, 0.0}}, quartic_potential()), std::invalid_argument);
}

TEST_CASE("finiteness experiment is deterministic and bounded") {
  Poly2 F = quartic_potential();
  auto rep = finiteness_experiment(F, 12, 8, 42);
  CHECK(rep.n_traj == 12);
  CHECK(rep.n_cuts == 8);
  CHECK(rep.seed == 42);
  REQUIRE(rep.counts.size() == 12);
  int maxcount = 0;
  for (const auto& row : rep.counts) {
    REQUIRE(row.size() == 8);
    for (int v : row) {
      CHECK(v >= 0);
      maxcount = std::max(maxcount, v);
    }
  }
  CHECK(rep.b0 == maxcount);
  CHECK(rep.stable_fraction >= 0.0);
  CHECK(rep.stable_fraction <= 1.0);
  CHECK(rep.cuts.size() == 8);

  auto rep2 = finiteness_experiment(F, 12, 8, 42);
  CHECK(rep.counts == rep2.counts);
  CHECK(rep.b0 == rep2.b0);
  CHECK(rep.stable_fraction == rep2.stable_fraction);

  auto other_seed = finiteness_experiment(F, 12, 8, 43);
  CHECK(other_seed.counts.size() == 12);  // different seed still completes
}

TEST_CASE("finiteness experiment validates its sample sizes") {
  CHECK_THROWS_AS(finiteness_experiment(quartic_potential(), 0, 5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(finiteness_experiment(quartic_potential(), 5, 0, 1),
                  std::invalid_argument);
}
