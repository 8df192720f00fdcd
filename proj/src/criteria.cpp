#include "idepca/criteria.hpp"

#include <cmath>

#include "idepca/diffeq.hpp"
#include "idepca/error.hpp"
#include "idepca/kernels.hpp"

namespace idepca {
namespace {

// Exact for the small integer powers used by the thresholds.
double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

double extremum(std::span<const double> v, TailKind kind) {
  const auto mm = kernels::active().min_max(v.data(), v.size());
  return kind == TailKind::Liminf ? mm.min : mm.max;
}

void require_direction(const DiscreteSystem& ds, Direction want, std::string_view who) {
  if (ds.direction != want)
    throw Error(Errc::WrongDirection, std::string(who) + " applies to " + std::string(to_string(want)) + " systems");
}

void require_advance(const DiscreteSystem& ds, std::string_view who) {
  require_direction(ds, Direction::Advanced, who);
  if (ds.k < 2) throw Error(Errc::AdvanceTooSmall, std::string(who) + " needs l >= 2");
}

IndexedSeq negated(const IndexedSeq& s) {
  IndexedSeq out{s.first, s.values};
  kernels::active().neg(s.values.data(), out.values.data(), s.size());
  return out;
}

// Sums of `width` consecutive terms; entry i covers s[first + i .. first + i + width - 1]
// and is stored at index first + i + offset.
IndexedSeq moving_sums(const IndexedSeq& s, int width, long offset) {
  IndexedSeq out;
  out.first = s.first + offset;
  if (static_cast<std::size_t>(width) > s.size()) return out;
  out.values.resize(s.size() - static_cast<std::size_t>(width) + 1);
  kernels::active().window_sums(s.values.data(), s.size(), static_cast<std::size_t>(width), out.values.data());
  return out;
}

enum class BSign { Negative, Positive };

// Standing hypotheses a_n > 0 and the sign of b_n over [lo, hi].
void scan_preconditions(const DiscreteSystem& ds, long lo, long hi, BSign want, CriterionReport& report) {
  lo = std::max(lo, ds.a_seq.first);
  hi = std::min(hi, ds.a_seq.last());
  for (long n = lo; n <= hi; ++n) {
    if (!(ds.a(n) > 0.0)) report.violations.push_back({n, "a_n > 0"});
    const double b = ds.b(n);
    if (want == BSign::Negative && !(b < 0.0)) report.violations.push_back({n, "b_n < 0"});
    if (want == BSign::Positive && !(b > 0.0)) report.violations.push_back({n, "b_n > 0"});
  }
  report.preconditions_ok = report.violations.empty();
}

void decide(CriterionReport& r, bool inclusive) {
  if (!r.preconditions_ok) {
    r.verdict = CriterionVerdict::PreconditionViolated;
    return;
  }
  const bool holds = inclusive ? r.margin >= 0.0 : r.margin > 0.0;
  r.verdict = holds && r.statistic.convergence_flag ? CriterionVerdict::Fires : CriterionVerdict::DoesNotFire;
}

}  // namespace

TailStats tail_stats(const IndexedSeq& seq, TailKind kind, double tail_fraction) {
  if (seq.size() < 8) throw Error(Errc::TooShort, "tail statistics need at least 8 values");
  const long lo = seq.first;
  const long hi = seq.last();
  const long s = tail_start(lo, hi, tail_fraction);
  const long s_half = tail_start(lo, hi, tail_fraction / 2.0);

  TailStats t;
  t.kind = kind;
  t.window_start = s;
  t.window_end = hi;
  t.statistic = extremum(seq.view(s, hi), kind);
  const double inner = extremum(seq.view(s_half, hi), kind);
  const double scale = std::max(std::fabs(t.statistic), std::fabs(inner));
  t.convergence_flag = std::fabs(t.statistic - inner) <= kTailConvergenceTolerance * scale;
  return t;
}

std::string_view to_string(CriterionId id) {
  switch (id) {
    case CriterionId::ErbeZhang: return "ErbeZhang";
    case CriterionId::LadasPhilosSficas: return "LadasPhilosSficas";
    case CriterionId::GyoriLadasA: return "GyoriLadasA";
    case CriterionId::GyoriLadasB: return "GyoriLadasB";
    case CriterionId::OcalanAkin: return "OcalanAkin";
    case CriterionId::GyoriLadasNonOsc: return "GyoriLadasNonOsc";
    case CriterionId::OcalanAkinNonOsc: return "OcalanAkinNonOsc";
  }
  return "";
}

bool is_oscillation_criterion(CriterionId id) {
  return id != CriterionId::GyoriLadasNonOsc && id != CriterionId::OcalanAkinNonOsc;
}

std::string_view to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Fires: return "Fires";
    case CriterionVerdict::DoesNotFire: return "DoesNotFire";
    case CriterionVerdict::PreconditionViolated: return "PreconditionViolated";
  }
  return "";
}

std::string_view to_string(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::Oscillatory: return "Oscillatory";
    case OverallVerdict::Nonoscillatory: return "Nonoscillatory";
    case OverallVerdict::Inconclusive: return "Inconclusive";
    case OverallVerdict::ConflictDetected: return "ConflictDetected";
  }
  return "";
}

double erbe_zhang_threshold(int k) { return ipow(k, k) / ipow(k + 1, k + 1); }
double ladas_philos_sficas_threshold(int k) { return ipow(k, k + 1) / ipow(k + 1, k + 1); }
double gyori_ladas_threshold(int l) { return ipow(l - 1, l) / ipow(l, l); }
double ocalan_akin_threshold(int l) { return ipow(l - 1, l - 1) / ipow(l, l); }

CriterionReport erbe_zhang(const DiscreteSystem& ds, double tail_fraction) {
  require_direction(ds, Direction::Delayed, "ErbeZhang");
  CriterionReport r;
  r.id = CriterionId::ErbeZhang;
  r.threshold = erbe_zhang_threshold(ds.k);
  r.statistic = tail_stats(negated(ds.q_seq), TailKind::Liminf, tail_fraction);
  r.margin = r.statistic.statistic - r.threshold;
  scan_preconditions(ds, r.statistic.window_start, r.statistic.window_end, BSign::Negative, r);
  decide(r, false);
  return r;
}

CriterionReport ladas_philos_sficas(const DiscreteSystem& ds, double tail_fraction) {
  require_direction(ds, Direction::Delayed, "LadasPhilosSficas");
  CriterionReport r;
  r.id = CriterionId::LadasPhilosSficas;
  r.threshold = ladas_philos_sficas_threshold(ds.k);
  // S_n = sum_{j=n-k}^{n-1} Q*_j
  const IndexedSeq sums = moving_sums(negated(ds.q_seq), ds.k, ds.k);
  r.statistic = tail_stats(sums, TailKind::Liminf, tail_fraction);
  r.margin = r.statistic.statistic - r.threshold;
  scan_preconditions(ds, r.statistic.window_start - ds.k, r.statistic.window_end - 1, BSign::Negative, r);
  decide(r, false);
  return r;
}

CriterionReport gyori_ladas_nonosc(const DiscreteSystem& ds, double tail_fraction) {
  require_direction(ds, Direction::Delayed, "GyoriLadasNonOsc");
  CriterionReport r;
  r.id = CriterionId::GyoriLadasNonOsc;
  r.threshold = erbe_zhang_threshold(ds.k);
  // Pointwise bound: the largest Q*_n over the tail must not exceed the threshold.
  r.statistic = tail_stats(negated(ds.q_seq), TailKind::Limsup, tail_fraction);
  r.margin = r.threshold - r.statistic.statistic;
  r.note = "pointwise Q*_n <= threshold over the examined tail; boundary counts";
  scan_preconditions(ds, r.statistic.window_start, r.statistic.window_end, BSign::Negative, r);
  decide(r, true);
  return r;
}

std::array<CriterionReport, 2> gyori_ladas(const DiscreteSystem& ds, double tail_fraction) {
  require_advance(ds, "GyoriLadas");
  const int l = ds.k;

  CriterionReport a;
  a.id = CriterionId::GyoriLadasA;
  a.threshold = gyori_ladas_threshold(l);
  // sum_{s=n+1}^{n+l-1} Q_s
  a.statistic = tail_stats(moving_sums(ds.q_seq, l - 1, -1), TailKind::Liminf, tail_fraction);
  a.margin = a.statistic.statistic - a.threshold;
  scan_preconditions(ds, a.statistic.window_start + 1, a.statistic.window_end + l - 1, BSign::Positive, a);
  decide(a, false);

  CriterionReport b;
  b.id = CriterionId::GyoriLadasB;
  b.threshold = 1.0;
  // sum_{s=n}^{n+l-1} Q_s
  b.statistic = tail_stats(moving_sums(ds.q_seq, l, 0), TailKind::Limsup, tail_fraction);
  b.margin = b.statistic.statistic - b.threshold;
  scan_preconditions(ds, b.statistic.window_start, b.statistic.window_end + l - 1, BSign::Positive, b);
  decide(b, false);
  return {a, b};
}

CriterionReport ocalan_akin(const DiscreteSystem& ds, double tail_fraction) {
  require_advance(ds, "OcalanAkin");
  CriterionReport r;
  r.id = CriterionId::OcalanAkin;
  r.threshold = -ocalan_akin_threshold(ds.k);
  r.statistic = tail_stats(ds.q_seq, TailKind::Limsup, tail_fraction);
  r.margin = r.threshold - r.statistic.statistic;
  r.note = "evaluated on signed Q_n (limsup Q_n < threshold); the positive Q*_n = -Q_n can never satisfy it";
  scan_preconditions(ds, r.statistic.window_start, r.statistic.window_end, BSign::Negative, r);
  decide(r, false);
  return r;
}

CriterionReport ocalan_akin_nonosc(const DiscreteSystem& ds, double tail_fraction) {
  require_advance(ds, "OcalanAkinNonOsc");
  CriterionReport r;
  r.id = CriterionId::OcalanAkinNonOsc;
  r.threshold = -ocalan_akin_threshold(ds.k);
  r.statistic = tail_stats(ds.q_seq, TailKind::Liminf, tail_fraction);
  r.margin = r.statistic.statistic - r.threshold;
  r.note = "with b_n > 0 every Q_n is positive, so the inequality holds whenever the hypotheses do";
  scan_preconditions(ds, r.statistic.window_start, r.statistic.window_end, BSign::Positive, r);
  decide(r, false);
  return r;
}

std::vector<CriterionReport> applicable_criteria(const DiscreteSystem& ds, double tail_fraction) {
  std::vector<CriterionReport> out;
  if (ds.direction == Direction::Delayed) {
    out.push_back(erbe_zhang(ds, tail_fraction));
    out.push_back(ladas_philos_sficas(ds, tail_fraction));
    out.push_back(gyori_ladas_nonosc(ds, tail_fraction));
  } else if (ds.k >= 2) {
    for (auto& r : gyori_ladas(ds, tail_fraction)) out.push_back(std::move(r));
    out.push_back(ocalan_akin(ds, tail_fraction));
    out.push_back(ocalan_akin_nonosc(ds, tail_fraction));
  }
  return out;
}

OverallVerdict synthesize(std::span<const CriterionReport> reports) {
  bool osc = false;
  bool nonosc = false;
  for (const auto& r : reports) {
    if (!r.fires()) continue;
    (is_oscillation_criterion(r.id) ? osc : nonosc) = true;
  }
  if (osc && nonosc) return OverallVerdict::ConflictDetected;
  if (osc) return OverallVerdict::Oscillatory;
  if (nonosc) return OverallVerdict::Nonoscillatory;
  return OverallVerdict::Inconclusive;
}

}  // namespace idepca
