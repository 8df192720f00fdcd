#pragma once

// From the continuous problem to the difference equation
//
//   z_{n+1} = a_n z_n + b_n z_{n-k}    (Delayed)
//   z_{n+1} = a_n z_n + b_n z_{n+k}    (Advanced)
//
// and its reduced form y_n = alpha_n z_n, Delta y_n = Q_n y_{n-+k}.

#include <span>

#include "idepca/problem.hpp"
#include "idepca/quad.hpp"
#include "idepca/sequence.hpp"

namespace idepca {

inline constexpr double kDualRouteTolerance = 1e-8;

struct DiscreteSystem {
  long n0 = 0;
  long horizon = 0;
  Direction direction = Direction::Delayed;
  int k = 1;

  IndexedSeq a_seq;      // [n0, horizon - 1]
  IndexedSeq b_seq;      // [n0, horizon - 1]
  IndexedSeq alpha_seq;  // [n0, horizon]; alpha_{n0} = 1, alpha_{n+1} = alpha_n / a_n
  // Signed Q_n by the alpha ratio: [n0 + k, horizon - 1] (Delayed) or
  // [n0, horizon - k] (Advanced).
  IndexedSeq q_seq;
  // Same range as q_seq, by the direct impulse-product times nested-integral
  // formula. Empty when the system was assembled from raw coefficients.
  IndexedSeq q_closed_seq;
  // 1 + c_n on [n0 + 1, horizon]. Empty when assembled from raw coefficients.
  IndexedSeq factor_seq;

  double a(long n) const { return a_seq.at(n); }
  double b(long n) const { return b_seq.at(n); }
  double alpha(long n) const { return alpha_seq.at(n); }
  double q(long n) const { return q_seq.at(n); }
  // Q*_n = -Q_n; derived on demand, never stored.
  double q_star(long n) const { return -q_seq.at(n); }
  // 1 + c_n, or 1 when no impulse data is attached.
  double factor(long n) const { return factor_seq.empty() ? 1.0 : factor_seq.at(n); }
};

// a_n = (1 + c_{n+1}) exp(int_n^{n+1} a).
double compute_an(const ProblemSpec& spec, long n, double tol = kDefaultTol);
// b_n = (1 + c_{n+1}) int_n^{n+1} exp(int_s^{n+1} a) b(s) ds.
double compute_bn(const ProblemSpec& spec, long n, double tol = kDefaultTol);
// alpha_n = prod_{j=n0}^{n-1} 1 / a_j, with a_seq[0] = a_{n0}.
double compute_alpha(std::span<const double> a_seq, long n0, long n);
// alpha_{n+1} b_n / alpha_{n-k} (Delayed) or alpha_{n+1} b_n / alpha_{n+k} (Advanced).
double compute_qn(const DiscreteSystem& ds, long n);
// Q_n without the alpha products: the impulse product times
// int_n^{n+1} exp(int_s^{n-+k} a) b(s) ds.
double closed_form_qn(const ProblemSpec& spec, long n, double tol = kDefaultTol);

// Alpha and Q from given coefficient sequences over [n0, horizon - 1].
DiscreteSystem assemble_discrete_system(long n0, Direction direction, int k, std::span<const double> a_seq,
                                        std::span<const double> b_seq);

// Full pipeline including the dual-route Q audit. Where the routes disagree by
// more than kDualRouteTolerance (relative), b_n and both Q_n are recomputed
// with tol shrunk by factors of 1000 (down to tol * 1e-9); a remaining
// mismatch throws Error(DiagnosticMismatch). Errors carry their index.
DiscreteSystem build_discrete_system(const ProblemSpec& spec, double tol = kDefaultTol);

// max_n |q - q_closed| / max(|q|, |q_closed|) over the stored range.
double dual_route_discrepancy(const DiscreteSystem& ds);

}  // namespace idepca
