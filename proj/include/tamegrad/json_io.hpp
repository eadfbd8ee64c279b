#pragma once

// Serialization of analysis certificates, tameness reports, and trajectories
// into the formats the command-line tool emits: JSON documents (stable key
// order, schema_version "1") and CSV with full double round-trip precision.
// Requires the single-header nlohmann/json on the include path.

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "flow.hpp"
#include "galois.hpp"
#include "tame.hpp"

namespace tamegrad {

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

inline nlohmann::json rational_array_json(const std::vector<Rational>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& r : v) arr.push_back(format_canonical(r));
  return arr;
}

}  // namespace detail

inline nlohmann::json risch_json(const RischOutcome& out) {
  nlohmann::json j;
  if (out.kind == RischOutcome::Kind::Solution) {
    j["kind"] = "solution";
    j["y"] = format_canonical(out.solution);
    return j;
  }
  j["kind"] = "no_solution";
  nlohmann::json w;
  if (out.kind == RischOutcome::Kind::NoSolutionPole) {
    w["type"] = "simple_pole";
    w["factor"] = format_canonical(out.pole->factor);
  } else {
    const auto& sys = *out.system;
    w["type"] = "inconsistent_linear_system";
    w["denominator"] = format_canonical(sys.denominator);
    w["numerator_degree_bound"] = sys.numerator_bound;
    auto rows = nlohmann::json::array();
    for (const auto& row : sys.matrix) rows.push_back(detail::rational_array_json(row));
    w["matrix"] = rows;
    w["rhs"] = detail::rational_array_json(sys.rhs_vector);
    w["lambda"] = detail::rational_array_json(sys.lambda);
  }
  j["witness"] = w;
  return j;
}

inline nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json j;
  j["line"] = {{"a", format_canonical(cert.line.a)},
               {"b", format_canonical(cert.line.b)},
               {"c", format_canonical(cert.line.c)},
               {"display", cert.line.display()}};
  if (cert.degenerate) j["degenerate"] = true;
  if (!cert.note.empty()) j["note"] = cert.note;
  if (cert.vs) {
    j["beta1"] = format_canonical(cert.vs->beta1);
    j["beta2"] = format_canonical(cert.vs->beta2);
  }
  if (cert.omega.ok()) {
    j["omega"] = {{"A", format_canonical(cert.omega.omega->display)},
                  {"g", format_canonical(cert.omega.omega->g)}};
  } else if (cert.omega.reason) {
    j["unsupported_reason"] = {{"kind", to_string(*cert.omega.reason)},
                               {"detail", cert.omega.detail}};
  }
  if (cert.theta)
    j["theta_integrand"] = {{"A", format_canonical(cert.theta->display)},
                            {"g", format_canonical(cert.theta->g)}};
  if (cert.risch) j["risch"] = risch_json(*cert.risch);

  // The two hypotheses behind a NON_INTEGRABLE verdict, as decided facts:
  // omega transcendental over Q(x), and theta_1 elementary (null = undecided).
  nlohmann::json hyp;
  if (cert.omega.ok())
    hyp["omega_transcendental"] = cert.omega.omega->g.degree() >= 1;
  else
    hyp["omega_transcendental"] = nullptr;
  if (cert.risch)
    hyp["theta_elementary"] = cert.risch->kind == RischOutcome::Kind::Solution;
  else if (cert.vs && cert.omega.ok())
    // beta2 = 0 gives theta_1 constant; a rational integrand (constant
    // exponent) always integrates in elementary terms.
    hyp["theta_elementary"] = true;
  else
    hyp["theta_elementary"] = nullptr;
  j["hypotheses"] = hyp;

  j["verdict"] = to_string(cert.verdict);
  j["citations"] = cert.citations;
  return j;
}

inline nlohmann::json analysis_json(const std::vector<Certificate>& certs) {
  if (certs.empty()) throw std::invalid_argument("analysis_json: no certificates");
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::json input;
  if (certs.front().potential) input["potential"] = format_canonical(*certs.front().potential);
  input["P"] = format_canonical(certs.front().field.P);
  input["Q"] = format_canonical(certs.front().field.Q);
  j["input"] = input;
  auto arr = nlohmann::json::array();
  for (const auto& c : certs) arr.push_back(certificate_json(c));
  j["certificates"] = arr;
  return j;
}

inline nlohmann::json tameness_json(const TamenessReport& rep) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["potential"] = rep.potential;
  j["seed"] = rep.seed;
  j["n_traj"] = rep.n_traj;
  j["n_cuts"] = rep.n_cuts;
  auto cuts = nlohmann::json::array();
  for (const auto& c : rep.cuts)
    cuts.push_back({{"poly", format_canonical(c.poly)}, {"relation", to_string(c.rel)}});
  j["cuts"] = cuts;
  j["counts"] = rep.counts;
  j["b0"] = rep.b0;
  j["stable"] = rep.stable;
  j["stable_fraction"] = rep.stable_fraction;
  auto dis = nlohmann::json::array();
  for (const auto& d : rep.disagreements)
    dis.push_back({{"trajectory", d[0]}, {"cut", d[1]}, {"count", d[2]}, {"refined", d[3]}});
  j["disagreements"] = dis;
  auto fails = nlohmann::json::array();
  for (const auto& [idx, why] : rep.failures)
    fails.push_back({{"trajectory", idx}, {"reason", why}});
  j["failures"] = fails;
  j["tangential_contacts"] = rep.tangential_total;
  return j;
}

// CSV with %.17g columns: doubles survive a write/read round trip exactly.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,y\n";
  char buf[128];
  for (const auto& s : traj.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, s.x, s.y);
    os << buf;
  }
}

}  // namespace tamegrad
