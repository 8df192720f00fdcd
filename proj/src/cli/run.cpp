#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "idepca/cli.hpp"
#include "idepca/error.hpp"

namespace idepca::cli {
namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(Errc::InvalidArgument, "failed writing " + path.string());
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillation analysis for impulsive differential equations with piecewise constant argument", "idepca"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  Overrides overrides;
  int samples = kDefaultSamplesPerInterval;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--out", out_path, "output path (simulate: prefix)");
    sub->add_option("--tol", overrides.tol, "quadrature tolerance");
    sub->add_option("--tail", overrides.tail_fraction, "tail fraction in (0, 1]");
    sub->add_option("--horizon", overrides.horizon, "override the horizon");
  };
  auto* coeffs = app.add_subcommand("coeffs", "coefficient table as CSV");
  auto* analyze = app.add_subcommand("analyze", "criterion report as JSON");
  auto* sim = app.add_subcommand("simulate", "trajectory and node CSVs plus empirical verdicts");
  auto* chk = app.add_subcommand("check", "invariant table; exit 1 if any fails");
  for (auto* sub : {coeffs, analyze, sim, chk}) common(sub);
  for (auto* sub : {sim, chk}) sub->add_option("--samples", samples, "samples per unit interval")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Problem p = load_problem_file(file);
    apply(p, overrides);

    if (coeffs->parsed()) {
      emit(out_path, coeffs_csv(build_discrete_system(p.spec, p.tol)), out);
    } else if (analyze->parsed()) {
      const auto ds = build_discrete_system(p.spec, p.tol);
      emit(out_path, analyze_report(ds, p.tail_fraction).dump(2) + "\n", out);
    } else if (sim->parsed()) {
      const Simulation s = simulate(p, samples);
      const std::string prefix = out_path.empty() ? std::filesystem::path(file).stem().string() : out_path;
      write_file(prefix + ".trajectory.csv", trajectory_csv(s.traj));
      write_file(prefix + ".nodes.csv", nodes_csv(s.traj));
      const std::string verdict = verdict_json(s).dump(2) + "\n";
      write_file(prefix + ".verdict.json", verdict);
      out << verdict;
    } else {
      const auto rows = check(p, samples);
      const std::string table = check_table(rows);
      emit(out_path, table, out);
      if (!out_path.empty()) out << table;
      for (const auto& r : rows) {
        if (!r.pass) {
          err << "invariant failed: " << r.name << '\n';
          return kInvariantFailed;
        }
      }
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_input_error() ? kInputError : kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace idepca::cli
