#include "support/battery.hpp"

#include <cstdio>
#include <cstdlib>
#include <random>

namespace idepca::testing {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", x);
  return buf;
}

// Coefficient functions on the scaled time u = t / 60.
std::string random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> family(0, 3);
  const std::string u = "(t/60)";
  switch (family(rng)) {
    case 0: return num(coef(rng));
    case 1: return num(coef(rng)) + " + " + num(coef(rng)) + "*" + u;
    case 2: return num(coef(rng)) + " + " + num(coef(rng)) + "*" + u + " + " + num(coef(rng)) + "*" + u + "^2";
    default: return num(coef(rng)) + " + " + num(coef(rng)) + "*exp(" + num(coef(rng)) + "*(" + u + " - 0.5))";
  }
}

}  // namespace

std::uint64_t battery_seed() {
  if (const char* s = std::getenv("OSC_SEED")) return std::strtoull(s, nullptr, 10);
  return kDefaultBatterySeed;
}

std::vector<Instance> battery(std::uint64_t seed, int count, long horizon) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k_dist(1, 5);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_real_distribution<double> factor(0.25, 2.0);
  std::uniform_real_distribution<double> init(-1.0, 1.0);

  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Instance inst;
    ProblemSpec& s = inst.spec;
    inst.a_text = random_function(rng);
    inst.b_text = random_function(rng);
    s.a = parse(inst.a_text, "t");
    s.b = parse(inst.b_text, "t");
    s.k = k_dist(rng);
    s.direction = (i % 2 == 0) ? Direction::Delayed : Direction::Advanced;
    double r = 1.0;
    if (coin(rng) == 0) {
      s.impulse = ImpulseSpec(NoImpulse{});
    } else {
      r = factor(rng);
      s.impulse = ImpulseSpec(ConstantFactor{r});
    }
    for (int j = 0; j <= s.k; ++j) s.initial_window.push_back(init(rng));
    s.n0 = 0;
    s.horizon = horizon;

    char head[96];
    std::snprintf(head, sizeof head, "#%d %s k=%d factor=%s ", i, std::string(to_string(s.direction)).c_str(), s.k,
                  s.impulse.is_none() ? "none" : num(r).c_str());
    inst.label = head + std::string("a=") + inst.a_text + " b=" + inst.b_text;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace idepca::testing
