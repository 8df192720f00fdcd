#pragma once

// Oscillation and nonoscillation criteria for the reduced equations
//
//   Delta y_n + Q*_n y_{n-k} = 0        (delayed, b_n < 0)
//   Delta y_n - Q_n  y_{n+l} = 0        (advanced)
//
// evaluated on finite tails. liminf / limsup are approximated by the minimum /
// maximum over the trailing part of the computed range, gated by a two-window
// convergence diagnostic.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idepca/reduction.hpp"
#include "idepca/sequence.hpp"

namespace idepca {

inline constexpr double kDefaultTailFraction = 0.5;
inline constexpr double kTailConvergenceTolerance = 1e-3;

enum class TailKind { Liminf, Limsup };

struct TailStats {
  double statistic = 0.0;
  TailKind kind = TailKind::Liminf;
  long window_start = 0;
  long window_end = 0;
  // The estimate over the tail and over its trailing half agree to
  // kTailConvergenceTolerance (relative).
  bool convergence_flag = false;
};

// Requires at least 8 values (Errc::TooShort).
TailStats tail_stats(const IndexedSeq& seq, TailKind kind, double tail_fraction = kDefaultTailFraction);

enum class CriterionId {
  ErbeZhang,
  LadasPhilosSficas,
  GyoriLadasA,
  GyoriLadasB,
  OcalanAkin,
  GyoriLadasNonOsc,
  OcalanAkinNonOsc,
};
std::string_view to_string(CriterionId id);
// Oscillation criteria conclude "every solution oscillates"; the rest
// conclude nonoscillation.
bool is_oscillation_criterion(CriterionId id);

enum class CriterionVerdict { Fires, DoesNotFire, PreconditionViolated };
std::string_view to_string(CriterionVerdict v);

struct PreconditionViolation {
  long index = 0;
  std::string condition;  // "a_n > 0", "b_n < 0", "b_n > 0"
};

struct CriterionReport {
  CriterionId id = CriterionId::ErbeZhang;
  double threshold = 0.0;  // the value the statistic is compared against
  TailStats statistic;
  double margin = 0.0;  // positive means the inequality holds
  bool preconditions_ok = true;
  std::vector<PreconditionViolation> violations;
  CriterionVerdict verdict = CriterionVerdict::DoesNotFire;
  std::string note;

  bool fires() const noexcept { return verdict == CriterionVerdict::Fires; }
};

// k^k / (k+1)^(k+1)
double erbe_zhang_threshold(int k);
// (k / (k+1))^(k+1)
double ladas_philos_sficas_threshold(int k);
// ((l-1) / l)^l
double gyori_ladas_threshold(int l);
// (l-1)^(l-1) / l^l
double ocalan_akin_threshold(int l);

// Delayed systems.
CriterionReport erbe_zhang(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);
CriterionReport ladas_philos_sficas(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);
CriterionReport gyori_ladas_nonosc(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);

// Advanced systems with l >= 2.
std::array<CriterionReport, 2> gyori_ladas(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);
CriterionReport ocalan_akin(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);
CriterionReport ocalan_akin_nonosc(const DiscreteSystem& ds, double tail_fraction = kDefaultTailFraction);

// Every criterion whose direction (and l >= 2 requirement) matches the system.
std::vector<CriterionReport> applicable_criteria(const DiscreteSystem& ds,
                                                 double tail_fraction = kDefaultTailFraction);

enum class OverallVerdict { Oscillatory, Nonoscillatory, Inconclusive, ConflictDetected };
std::string_view to_string(OverallVerdict v);

OverallVerdict synthesize(std::span<const CriterionReport> reports);

}  // namespace idepca
