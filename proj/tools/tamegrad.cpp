// Command-line front end: analyze (integrability certificates as JSON),
// flow (gradient trajectories as CSV), tame (empirical finiteness report as
// JSON), lift (cotangent lift in canonical text).
//
// Exit codes: 0 success (including INCONCLUSIVE verdicts), 2 parse or usage
// error, 3 unsupported or degenerate analysis, 4 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tamegrad/json_io.hpp"
#include "tamegrad/lift.hpp"

namespace {

using namespace tamegrad;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitNumeric = 4;

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "<P>;<Q>" with exactly one separator; offsets in diagnostics stay relative
// to each component.
PlanarField parse_field_arg(const std::string& arg) {
  auto sep = arg.find(';');
  if (sep == std::string::npos || arg.find(';', sep + 1) != std::string::npos)
    throw UsageFailure("--field expects \"<P>;<Q>\" with exactly one ';'");
  PlanarField f;
  try {
    f.P = parse_polynomial(arg.substr(0, sep));
  } catch (const std::runtime_error& e) {
    throw UsageFailure(std::string("in P: ") + e.what());
  }
  try {
    f.Q = parse_polynomial(arg.substr(sep + 1));
  } catch (const std::runtime_error& e) {
    throw UsageFailure(std::string("in Q: ") + e.what());
  }
  return f;
}

std::pair<double, double> parse_start_arg(const std::string& arg) {
  double x = 0, y = 0;
  char extra = 0;
  if (std::sscanf(arg.c_str(), " %lf , %lf %c", &x, &y, &extra) != 2)
    throw UsageFailure("--start expects \"x,y\" with numeric coordinates");
  return {x, y};
}

// Writes to --out when given, else stdout; text is emitted in one shot so
// reruns are byte-identical.
void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (!out_path) {
    std::cout << text;
    return;
  }
  std::ofstream os(*out_path, std::ios::binary);
  if (!os) throw UsageFailure("cannot open output file: " + *out_path);
  os << text;
  if (!os.flush()) throw std::runtime_error("write failed: " + *out_path);
}

int run_analyze(const std::optional<std::string>& potential,
                const std::optional<std::string>& field_arg,
                const std::optional<std::string>& out_path) {
  std::vector<Certificate> certs;
  if (potential) {
    Poly2 F;
    try {
      F = parse_polynomial(*potential);
    } catch (const std::runtime_error& e) {
      throw UsageFailure(std::string("in --potential: ") + e.what());
    }
    certs = analyze_potential(F);
  } else {
    certs = analyze_field(parse_field_arg(*field_arg));
  }
  emit(out_path, analysis_json(certs).dump(2) + "\n");
  for (const auto& c : certs)
    if (c.verdict != Verdict::UNSUPPORTED) return kExitOk;
  std::cerr << "analysis unsupported or degenerate for every invariant line\n";
  return kExitUnsupported;
}

int run_flow(const std::string& potential, const std::string& start_arg,
             const std::string& direction, double t_max, double rtol, double atol,
             const std::optional<std::string>& out_path) {
  Poly2 F;
  try {
    F = parse_polynomial(potential);
  } catch (const std::runtime_error& e) {
    throw UsageFailure(std::string("in --potential: ") + e.what());
  }
  FlowOptions opts;
  opts.t_max = t_max;
  opts.rtol = rtol;
  opts.atol = atol;
  Direction dir = direction == "ascent" ? Direction::ascent : Direction::descent;
  Trajectory traj = integrate_flow(F, parse_start_arg(start_arg), dir, opts);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  emit(out_path, os.str());
  std::cerr << "termination: " << to_string(traj.termination) << ", accepted "
            << traj.accepted << ", rejected " << traj.rejected << "\n";
  return kExitOk;
}

int run_tame(const std::string& potential, int n_traj, int n_cuts, uint64_t seed,
             const std::optional<std::string>& out_path) {
  Poly2 F;
  try {
    F = parse_polynomial(potential);
  } catch (const std::runtime_error& e) {
    throw UsageFailure(std::string("in --potential: ") + e.what());
  }
  if (n_traj < 1 || n_cuts < 1) throw UsageFailure("--n-traj and --n-cuts must be >= 1");
  TamenessReport rep = finiteness_experiment(F, n_traj, n_cuts, seed);
  emit(out_path, tameness_json(rep).dump(2) + "\n");
  return kExitOk;
}

int run_lift(const std::string& field_arg) {
  PlanarField field = parse_field_arg(field_arg);
  LiftedHamiltonian h = cotangent_lift(field);
  LiftedField xf = hamiltonian_field(h);
  std::cout << "f = " << format_canonical(h.f) << "\n";
  std::cout << "X_f = (" << format_canonical(xf.xdot) << ", " << format_canonical(xf.ydot)
            << ", " << format_canonical(xf.p1dot) << ", " << format_canonical(xf.p2dot)
            << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Galois-theoretic non-integrability certificates and tame-topology "
      "experiments for planar polynomial gradient systems"};
  app.require_subcommand(1);

  std::optional<std::string> an_potential, an_field, an_out;
  auto* analyze = app.add_subcommand(
      "analyze", "Decide non-integrability along rational invariant lines (JSON)");
  auto* an_p = analyze->add_option("--potential", an_potential, "Potential F(x,y)");
  auto* an_f = analyze->add_option("--field", an_field, "Field as \"<P>;<Q>\"");
  an_p->excludes(an_f);
  analyze->add_option("--out", an_out, "Write JSON here instead of stdout");

  std::string fl_potential, fl_start, fl_direction = "descent";
  double fl_tmax = 50.0, fl_rtol = 1e-9, fl_atol = 1e-12;
  std::optional<std::string> fl_out;
  auto* flow = app.add_subcommand("flow", "Integrate one gradient trajectory (CSV)");
  flow->add_option("--potential", fl_potential, "Potential F(x,y)")->required();
  flow->add_option("--start", fl_start, "Initial point \"x,y\"")->required();
  flow->add_option("--direction", fl_direction, "ascent or descent")
      ->check(CLI::IsMember({"ascent", "descent"}));
  flow->add_option("--t-max", fl_tmax, "Integration horizon")->check(CLI::PositiveNumber);
  flow->add_option("--rtol", fl_rtol, "Relative tolerance")->check(CLI::PositiveNumber);
  flow->add_option("--atol", fl_atol, "Absolute tolerance")->check(CLI::PositiveNumber);
  flow->add_option("--out", fl_out, "Write CSV here instead of stdout");

  std::string tm_potential;
  int tm_traj = 200, tm_cuts = 50;
  uint64_t tm_seed = 42;
  std::optional<std::string> tm_out;
  auto* tame = app.add_subcommand(
      "tame", "Empirical finiteness of trajectory/cut intersections (JSON)");
  tame->add_option("--potential", tm_potential, "Potential F(x,y)")->required();
  tame->add_option("--n-traj", tm_traj, "Number of seeded trajectories");
  tame->add_option("--n-cuts", tm_cuts, "Number of seeded semialgebraic cuts");
  tame->add_option("--seed", tm_seed, "Random seed");
  tame->add_option("--out", tm_out, "Write JSON here instead of stdout");

  std::string lf_field;
  auto* lift = app.add_subcommand("lift", "Cotangent lift f and Hamiltonian field X_f");
  lift->add_option("--field", lf_field, "Field as \"<P>;<Q>\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      if (!an_potential && !an_field)
        throw UsageFailure("analyze needs --potential or --field");
      return run_analyze(an_potential, an_field, an_out);
    }
    if (flow->parsed())
      return run_flow(fl_potential, fl_start, fl_direction, fl_tmax, fl_rtol, fl_atol,
                      fl_out);
    if (tame->parsed()) return run_tame(tm_potential, tm_traj, tm_cuts, tm_seed, tm_out);
    if (lift->parsed()) return run_lift(lf_field);
    return kExitUsage;
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotPolynomial& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstantPotential& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const InfiniteFamilyError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NoInvariantLineError& e) {
    std::cerr << "no rational invariant line: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const StepSizeUnderflow& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
