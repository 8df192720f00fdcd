#pragma once

// Problem files, subcommands and their machine-readable outputs.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "idepca/criteria.hpp"
#include "idepca/diffeq.hpp"
#include "idepca/problem.hpp"
#include "idepca/reduction.hpp"
#include "idepca/trajectory.hpp"

namespace idepca::cli {

enum ExitCode : int { kOk = 0, kInvariantFailed = 1, kInputError = 2, kNumericError = 3 };

struct Problem {
  ProblemSpec spec;
  double tol = kDefaultTol;
  double tail_fraction = kDefaultTailFraction;
};

// Throws Error(Schema) on missing, mistyped or unknown keys and
// Error(Parse) on bad expressions.
Problem load_problem(const nlohmann::json& doc);
Problem load_problem_file(const std::filesystem::path& path);

struct Overrides {
  std::optional<double> tol;
  std::optional<double> tail_fraction;
  std::optional<long> horizon;
};
void apply(Problem& p, const Overrides& o);

// printf "%#.10g" in the C locale; non-finite values print as nan / inf / -inf.
std::string format_number(double x);
// x rounded to 10 significant digits.
double round10(double x);

// Header n,a_n,b_n,alpha_n,q_n; one row per n in [n0, horizon - 1]. q_n is
// empty where it is undefined.
std::string coeffs_csv(const DiscreteSystem& ds);

nlohmann::json analyze_report(const DiscreteSystem& ds, double tail_fraction);

struct Simulation {
  DiscreteSystem ds;
  DiscreteSolution sol;
  Trajectory traj;
  OscillationVerdictDiscrete discrete;
  OscillationVerdictContinuous continuous;
};
Simulation simulate(const Problem& p, int samples_per_interval);

std::string trajectory_csv(const Trajectory& traj);
std::string nodes_csv(const Trajectory& traj);
nlohmann::json verdict_json(const Simulation& s);

struct CheckRow {
  std::string name;
  double value = 0.0;  // measured quantity (1 / 0 for logical checks)
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};
std::vector<CheckRow> check(const Problem& p, int samples_per_interval);
std::string check_table(std::span<const CheckRow> rows);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace idepca::cli
