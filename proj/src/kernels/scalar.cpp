#include <cmath>

#include "idepca/kernels.hpp"
#include "kernels_impl.hpp"

namespace idepca::kernels {
namespace {

void add(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}
void sub(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}
void mul(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}
void div(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] / y[i];
}
void neg(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -x[i];
}
void abs(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(x[i]);
}
void sqrt(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(x[i]);
}

MinMax min_max(const double* x, std::size_t n) {
  MinMax r{x[0], x[0]};
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (std::isnan(v)) return v;
    if (v > m) m = v;
  }
  return m;
}

void window_sums(const double* x, std::size_t n, std::size_t width, double* out) {
  for (std::size_t i = 0; i + width <= n; ++i) {
    double s = x[i];
    for (std::size_t j = 1; j < width; ++j) s += x[i + j];
    out[i] = s;
  }
}

void sign_changes(const double* x, std::size_t n, std::uint8_t* out) {
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = (x[i] * x[i + 1] <= 0.0) ? 1 : 0;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

constexpr KernelTable kScalar{
    Backend::Scalar, "scalar", add,         sub,          mul,       div,       neg, abs, sqrt,
    min_max,         max_abs,  window_sums, sign_changes, all_finite,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace idepca::kernels
