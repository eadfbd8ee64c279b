// Numeric-side walkthrough: integrate a gradient descent trajectory, then
// check the tame-topology heuristics (finite sign-condition components,
// Rolle witnesses between points on one leaf) on the same quartic potential
// the symbolic certifier refutes.

#include <cstdio>

#include <tamegrad/expr.hpp>
#include <tamegrad/flow.hpp>
#include <tamegrad/tame.hpp>

int main() {
  using namespace tamegrad;

  Poly2 F = parse_polynomial("1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4");
  FlowOptions opts;
  opts.t_max = 6.0;

  Trajectory traj = integrate_flow(F, {0.4, 0.3}, Direction::descent, opts);
  std::printf("trajectory: %ld accepted steps, stopped by %s at t = %.6f\n",
              traj.accepted, to_string(traj.termination), traj.t_end());

  // Count connected components of {x > 0} along the path: a trajectory of a
  // polynomial gradient flow should meet any algebraic hypersurface in
  // finitely many transversal crossings.
  SemialgebraicPredicate cut{parse_polynomial("x"), Relation::greater};
  DenseGrid grid = make_dense_grid(traj);
  ComponentCount cc = count_components(traj, cut, &grid);
  std::printf("components of {x > 0} along the path: %d (tangential contacts: %d)\n",
              cc.count, cc.tangential);

  // Rolle check on one chord: between two points of the same leaf there must
  // be a parameter where the chord direction is tangent to the foliation.
  RolleResult rolle = rolle_witness({traj.eval(0.5), traj.eval(2.5)}, F, 1e-6, opts);
  if (rolle.status == RolleResult::Status::ok && !rolle.witnesses.empty())
    std::printf("Rolle witness at (%.6f, %.6f), residual %.2e\n",
                rolle.witnesses.front().x, rolle.witnesses.front().y,
                rolle.witnesses.front().residual);
  return 0;
}
