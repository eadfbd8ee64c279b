// Library-use walkthrough: certify non-integrability of a planar gradient
// system from scratch, printing each object the pipeline constructs.
//
//   F = x^3/3 + x^2/2 + (x+y)^2 y^2 + y^4/4
//
// The gradient system xdot = F_x, ydot = F_y keeps the line {y = 0}
// invariant; the variational equations along it reduce to a scalar Risch
// differential equation whose unsolvability certifies that no meromorphic
// first integral exists (Morales-Ruiz & Ramis via Ayoul & Zung).

#include <cstdio>
#include <string>

#include <tamegrad/expr.hpp>
#include <tamegrad/galois.hpp>

int main() {
  using namespace tamegrad;

  Poly2 F = parse_polynomial("1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4");
  std::printf("potential F      = %s\n", format_canonical(F).c_str());

  for (const Certificate& cert : analyze_potential(F)) {
    std::printf("invariant line   : %s\n", cert.line.display().c_str());
    if (!cert.vs) continue;
    std::printf("beta1            = %s\n", format_canonical(cert.vs->beta1).c_str());
    std::printf("beta2            = %s\n", format_canonical(cert.vs->beta2).c_str());
    if (cert.omega.ok())
      std::printf("omega            = (%s) * exp(%s)\n",
                  format_canonical(cert.omega.omega->display).c_str(),
                  format_canonical(cert.omega.omega->g).c_str());
    if (cert.theta)
      std::printf("theta1 integrand = (%s) * exp(%s)\n",
                  format_canonical(cert.theta->display).c_str(),
                  format_canonical(cert.theta->g).c_str());
    if (cert.risch && cert.risch->no_solution() && cert.risch->system) {
      const auto& w = *cert.risch->system;
      std::printf("Risch equation   : no rational solution; inconsistency certificate lambda = [");
      for (size_t i = 0; i < w.lambda.size(); ++i)
        std::printf("%s%s", i ? ", " : "", format_canonical(w.lambda[i]).c_str());
      std::printf("]\n");
    }
    std::printf("verdict          : %s\n", to_string(cert.verdict));
    for (const std::string& c : cert.citations) std::printf("  see: %s\n", c.c_str());
  }
  return 0;
}
