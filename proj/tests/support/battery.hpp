#pragma once

// Randomized IDEPCA instances shared by the property tests and the acceptance
// suite. OSC_SEED selects the seed; the default keeps runs reproducible.

#include <cstdint>
#include <string>
#include <vector>

#include "idepca/problem.hpp"

namespace idepca::testing {

inline constexpr std::uint64_t kDefaultBatterySeed = 20261016;
inline constexpr int kBatterySize = 100;

struct Instance {
  ProblemSpec spec;
  std::string a_text;
  std::string b_text;
  std::string label;  // one line for failure messages
};

std::uint64_t battery_seed();
std::vector<Instance> battery(std::uint64_t seed, int count = kBatterySize, long horizon = 60);

}  // namespace idepca::testing
