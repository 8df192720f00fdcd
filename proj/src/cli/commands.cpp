#include <cmath>
#include <cstdio>
#include <sstream>

#include "idepca/cli.hpp"
#include "idepca/error.hpp"

namespace idepca::cli {
namespace {

using nlohmann::json;

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round10(x);
}

json optional_index(const std::optional<long>& n) {
  if (n) return *n;
  return nullptr;
}

json window(std::pair<long, long> w) { return json::array({w.first, w.second}); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.10g", x);
  return buf;
}

double round10(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return std::strtod(buf, nullptr);
}

std::string coeffs_csv(const DiscreteSystem& ds) {
  std::string out = "n,a_n,b_n,alpha_n,q_n\n";
  for (long n = ds.a_seq.first; n <= ds.a_seq.last(); ++n) {
    out += std::to_string(n);
    out += ',' + format_number(ds.a(n));
    out += ',' + format_number(ds.b(n));
    out += ',' + format_number(ds.alpha(n));
    out += ',';
    if (ds.q_seq.contains(n)) out += format_number(ds.q(n));
    out += '\n';
  }
  return out;
}

json analyze_report(const DiscreteSystem& ds, double tail_fraction) {
  const auto reports = applicable_criteria(ds, tail_fraction);
  json criteria = json::array();
  for (const auto& r : reports) {
    json violations = json::array();
    for (const auto& v : r.violations) violations.push_back({{"n", v.index}, {"condition", v.condition}});
    json c = {
        {"criterion_id", std::string(to_string(r.id))},
        {"kind", is_oscillation_criterion(r.id) ? "oscillation" : "nonoscillation"},
        {"threshold", number(r.threshold)},
        {"statistic", number(r.statistic.statistic)},
        {"statistic_kind", r.statistic.kind == TailKind::Liminf ? "liminf" : "limsup"},
        {"tail_window", json::array({r.statistic.window_start, r.statistic.window_end})},
        {"margin", number(r.margin)},
        {"convergence_flag", r.statistic.convergence_flag},
        {"preconditions_ok", r.preconditions_ok},
        {"precondition_violations", violations},
        {"verdict", std::string(to_string(r.verdict))},
    };
    if (!r.note.empty()) c["note"] = r.note;
    criteria.push_back(std::move(c));
  }
  json doc = {
      {"direction", std::string(to_string(ds.direction))},
      {"k", ds.k},
      {"n0", ds.n0},
      {"horizon", ds.horizon},
      {"tail_fraction", tail_fraction},
      {"criteria", criteria},
      {"overall_verdict", std::string(to_string(synthesize(reports)))},
  };
  if (reports.empty()) doc["note"] = "no criterion applies to advanced systems with l = 1";
  return doc;
}

Simulation simulate(const Problem& p, int samples_per_interval) {
  Simulation s;
  s.ds = build_discrete_system(p.spec, p.tol);
  s.sol = solve(s.ds, p.spec.initial_window);
  s.traj = reconstruct(p.spec, s.ds, s.sol, samples_per_interval, p.tol);
  s.discrete = discrete_oscillation_check(s.sol, p.tail_fraction);
  s.continuous = continuous_oscillation_check(s.traj, p.tail_fraction);
  return s;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,z\n";
  for (const auto& s : traj.samples) out += format_number(s.t) + ',' + format_number(s.z) + '\n';
  return out;
}

std::string nodes_csv(const Trajectory& traj) {
  std::string out = "n,z_left,z_right,jump_factor\n";
  for (const auto& node : traj.nodes) {
    out += std::to_string(node.n) + ',' + format_number(node.z_left) + ',' + format_number(node.z_right) + ',' +
           format_number(node.jump_factor) + '\n';
  }
  return out;
}

json verdict_json(const Simulation& s) {
  return {
      {"discrete",
       {{"verdict", std::string(to_string(s.discrete.verdict))},
        {"last_sign_change", optional_index(s.discrete.last_sign_change)},
        {"tail_window", window(s.discrete.tail_window)}}},
      {"continuous",
       {{"verdict", std::string(to_string(s.continuous.verdict))}, {"tail_window", window(s.continuous.tail_window)}}},
      {"solution_range", json::array({s.sol.n_lo(), s.sol.n_hi()})},
      {"trajectory_range", json::array({s.traj.first_interval, s.traj.last_node})},
      {"overflow_index", optional_index(s.sol.overflow_index)},
  };
}

std::vector<CheckRow> check(const Problem& p, int samples_per_interval) {
  std::vector<CheckRow> rows;
  auto logical = [&rows](std::string name, bool ok, std::string detail) {
    rows.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, ok, std::move(detail)});
  };
  auto bounded = [&rows](std::string name, double value, double limit, std::string detail = {}) {
    rows.push_back({std::move(name), value, limit, value <= limit, std::move(detail)});
  };

  DiscreteSystem ds;
  try {
    ds = build_discrete_system(p.spec, p.tol);
  } catch (const Error& e) {
    if (e.code() != Errc::DiagnosticMismatch) throw;
    rows.push_back({"dual_route_q", 1.0, kDualRouteTolerance, false, e.what()});
    return rows;
  }
  bounded("dual_route_q", dual_route_discrepancy(ds), kDualRouteTolerance);

  double tele = 0.0;
  double product = 1.0;
  for (long n = ds.n0; n <= std::min(ds.a_seq.last(), ds.n0 + 50); ++n) {
    product *= ds.a(n);
    tele = std::max(tele, std::fabs(ds.alpha(n + 1) * product - 1.0));
  }
  bounded("alpha_telescoping", tele, 1e-12);

  const DiscreteSolution sol = solve(ds, p.spec.initial_window);
  std::string overflow;
  if (sol.overflow_index) overflow = "solution overflows at n = " + std::to_string(*sol.overflow_index);
  bounded("recursion_residual", recursion_residual(ds, sol), 1e-9, overflow);
  bounded("reduced_residual", reduced_residual(ds, sol), 1e-8);

  const Trajectory traj = reconstruct(p.spec, ds, sol, samples_per_interval, p.tol);
  if (p.spec.impulse.is_none()) bounded("node_continuity", max_node_discontinuity(traj), 1e-8);
  bounded("node_consistency", node_consistency(ds, sol, traj), 1e-7);

  const auto discrete = discrete_oscillation_check(sol, p.tail_fraction);
  const auto same_range = discrete_oscillation_check(sol.slice(traj.first_interval, traj.last_node), p.tail_fraction);
  const auto continuous = continuous_oscillation_check(traj, p.tail_fraction);
  logical("discrete_to_continuous", same_range.verdict != Sign::Oscillatory || continuous.verdict == Sign::Oscillatory,
          "discrete " + std::string(to_string(same_range.verdict)) + ", continuous " +
              std::string(to_string(continuous.verdict)));

  const auto reports = applicable_criteria(ds, p.tail_fraction);
  int counterexamples = 0;
  std::string fired;
  for (const auto& r : reports) {
    if (!r.fires()) continue;
    fired += (fired.empty() ? "" : " ") + std::string(to_string(r.id));
    const bool agrees = is_oscillation_criterion(r.id)
                            ? discrete.verdict == Sign::Oscillatory
                            : discrete.verdict == Sign::EventuallyPositive || discrete.verdict == Sign::EventuallyNegative;
    if (!agrees) ++counterexamples;
  }
  rows.push_back({"criteria_vs_simulation", static_cast<double>(counterexamples), 0.0, counterexamples == 0,
                  "overall " + std::string(to_string(synthesize(reports))) + ", fired [" + fired + "], discrete " +
                      std::string(to_string(discrete.verdict))});
  return rows;
}

std::string check_table(std::span<const CheckRow> rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %-16s %-10s %s\n", "invariant", "value", "limit", "status");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-24s %-16.6g %-10.3g %s", r.name.c_str(), r.value, r.limit,
                  r.pass ? "pass" : "FAIL");
    out << line;
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace idepca::cli
