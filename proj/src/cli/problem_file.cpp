#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "idepca/cli.hpp"
#include "idepca/error.hpp"

namespace idepca::cli {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw Error(Errc::Schema, what); }

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) schema("unknown key \"" + key + "\"" + where);
}

const json& required(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) schema(std::string("missing key \"") + key + "\"");
  return *it;
}

double real(const json& v, const std::string& key) {
  if (!v.is_number()) schema("\"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema("\"" + key + "\" must be finite");
  return x;
}

long integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) schema("\"" + key + "\" must be an integer");
  return v.get<long>();
}

// Expressions may also be written as bare numbers.
Expr expression(const json& v, const std::string& key, const char* variable) {
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return parse(buf, variable);
  }
  if (!v.is_string()) schema("\"" + key + "\" must be an expression string");
  try {
    return parse(v.get<std::string>(), variable);
  } catch (const ParseError& e) {
    throw ParseError(e.position(), "in \"" + key + "\": " + e.message());
  }
}

ImpulseSpec impulse(const json& v) {
  if (v.is_null() || (v.is_string() && v.get<std::string>() == "none")) return ImpulseSpec(NoImpulse{});
  if (!v.is_object()) schema("\"impulse\" must be \"none\" or an object");
  if (v.empty() || v.contains("none")) {
    only_keys(v, {"none"}, " in impulse");
    return ImpulseSpec(NoImpulse{});
  }
  if (v.contains("factor")) {
    only_keys(v, {"factor"}, " in impulse");
    return ImpulseSpec(ConstantFactor{real(v["factor"], "impulse.factor")});
  }
  if (v.contains("formula")) {
    only_keys(v, {"formula"}, " in impulse");
    return ImpulseSpec(FactorFormula{expression(v["formula"], "impulse.formula", "n")});
  }
  if (v.contains("table")) {
    only_keys(v, {"table", "default"}, " in impulse");
    const json& t = v["table"];
    if (!t.is_array()) schema("\"impulse.table\" must be an array");
    FactorTable table;
    for (const auto& x : t) table.table.push_back(real(x, "impulse.table"));
    if (v.contains("default")) table.fallback = real(v["default"], "impulse.default");
    return ImpulseSpec(std::move(table));
  }
  only_keys(v, {}, " in impulse");
  schema("empty impulse object");
}

}  // namespace

Problem load_problem(const json& doc) {
  if (!doc.is_object()) schema("problem file must hold a JSON object");
  only_keys(doc,
            {"a", "b", "direction", "k", "impulse", "initial_window", "n0", "horizon", "tol", "tail_fraction",
             "t_start"},
            "");

  Problem p;
  ProblemSpec& s = p.spec;
  s.a = expression(required(doc, "a"), "a", "t");
  s.b = expression(required(doc, "b"), "b", "t");

  const json& dir = required(doc, "direction");
  if (dir == "delayed") {
    s.direction = Direction::Delayed;
  } else if (dir == "advanced") {
    s.direction = Direction::Advanced;
  } else {
    schema("\"direction\" must be \"delayed\" or \"advanced\"");
  }

  const long k = integer(required(doc, "k"), "k");
  if (k < 1 || k > 1000) schema("\"k\" must lie in [1, 1000]");
  s.k = static_cast<int>(k);

  s.impulse = doc.contains("impulse") ? impulse(doc["impulse"]) : ImpulseSpec{};

  const json& window = required(doc, "initial_window");
  if (!window.is_array()) schema("\"initial_window\" must be an array");
  for (const auto& x : window) s.initial_window.push_back(real(x, "initial_window"));
  if (s.initial_window.size() != static_cast<std::size_t>(s.k) + 1)
    schema("\"initial_window\" must hold k + 1 = " + std::to_string(s.k + 1) + " values");

  s.n0 = doc.contains("n0") ? integer(doc["n0"], "n0") : 0;
  s.horizon = integer(required(doc, "horizon"), "horizon");
  if (doc.contains("t_start")) s.t_start = real(doc["t_start"], "t_start");
  if (doc.contains("tol")) p.tol = real(doc["tol"], "tol");
  if (doc.contains("tail_fraction")) p.tail_fraction = real(doc["tail_fraction"], "tail_fraction");

  if (!(p.tol > 0.0)) schema("\"tol\" must be positive");
  if (!(p.tail_fraction > 0.0 && p.tail_fraction <= 1.0)) schema("\"tail_fraction\" must lie in (0, 1]");
  s.validate();
  return p;
}

Problem load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Schema, path.string() + ": " + e.what());
  }
  return load_problem(doc);
}

void apply(Problem& p, const Overrides& o) {
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw Error(Errc::InvalidArgument, "--tol must be positive");
    p.tol = *o.tol;
  }
  if (o.tail_fraction) {
    if (!(*o.tail_fraction > 0.0 && *o.tail_fraction <= 1.0))
      throw Error(Errc::InvalidArgument, "--tail must lie in (0, 1]");
    p.tail_fraction = *o.tail_fraction;
  }
  if (o.horizon) p.spec.horizon = *o.horizon;
  p.spec.validate();
}

}  // namespace idepca::cli
