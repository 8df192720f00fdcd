#include <cmath>
#include <cstdint>

#include "kernels_impl.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define IDEPCA_HAVE_AVX2_PATH 1
#include <immintrin.h>
#else
#define IDEPCA_HAVE_AVX2_PATH 0
#endif

namespace idepca::kernels {

#if IDEPCA_HAVE_AVX2_PATH

#define IDEPCA_AVX2 __attribute__((target("avx2")))

namespace {

#define IDEPCA_BINARY_KERNEL(name, intrinsic, expr)                                  \
  IDEPCA_AVX2 void name(const double* x, const double* y, double* out, std::size_t n) { \
    std::size_t i = 0;                                                               \
    for (; i + 4 <= n; i += 4)                                                       \
      _mm256_storeu_pd(out + i, intrinsic(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i))); \
    for (; i < n; ++i) out[i] = expr;                                                \
  }

IDEPCA_BINARY_KERNEL(add, _mm256_add_pd, x[i] + y[i])
IDEPCA_BINARY_KERNEL(sub, _mm256_sub_pd, x[i] - y[i])
IDEPCA_BINARY_KERNEL(mul, _mm256_mul_pd, x[i] * y[i])
IDEPCA_BINARY_KERNEL(div, _mm256_div_pd, x[i] / y[i])

#undef IDEPCA_BINARY_KERNEL

IDEPCA_AVX2 void neg(const double* x, double* out, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_xor_pd(_mm256_loadu_pd(x + i), sign));
  for (; i < n; ++i) out[i] = -x[i];
}

IDEPCA_AVX2 void abs(const double* x, double* out, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::fabs(x[i]);
}

IDEPCA_AVX2 void sqrt(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::sqrt(x[i]);
}

IDEPCA_AVX2 MinMax min_max(const double* x, std::size_t n) {
  MinMax r{x[0], x[0]};
  std::size_t i = 0;
  if (n >= 4) {
    __m256d lo = _mm256_loadu_pd(x);
    __m256d hi = lo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      lo = _mm256_min_pd(lo, v);
      hi = _mm256_max_pd(hi, v);
    }
    alignas(32) double l[4];
    alignas(32) double h[4];
    _mm256_store_pd(l, lo);
    _mm256_store_pd(h, hi);
    r = {l[0], h[0]};
    for (int j = 1; j < 4; ++j) {
      if (l[j] < r.min) r.min = l[j];
      if (h[j] > r.max) r.max = h[j];
    }
  }
  for (; i < n; ++i) {
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

IDEPCA_AVX2 double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, v);
  }
  if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = 0.0;
  for (double v : lanes)
    if (v > r) r = v;
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (std::isnan(v)) return v;
    if (v > r) r = v;
  }
  return r;
}

IDEPCA_AVX2 void window_sums(const double* x, std::size_t n, std::size_t width, double* out) {
  // Four windows per register; each lane accumulates its own window in the
  // same left-to-right order as the scalar loop.
  std::size_t i = 0;
  for (; i + width + 3 <= n; i += 4) {
    __m256d s = _mm256_loadu_pd(x + i);
    for (std::size_t j = 1; j < width; ++j) s = _mm256_add_pd(s, _mm256_loadu_pd(x + i + j));
    _mm256_storeu_pd(out + i, s);
  }
  for (; i + width <= n; ++i) {
    double s = x[i];
    for (std::size_t j = 1; j < width; ++j) s += x[i + j];
    out[i] = s;
  }
}

IDEPCA_AVX2 void sign_changes(const double* x, std::size_t n, std::uint8_t* out) {
  if (n < 2) return;
  const std::size_t pairs = n - 1;
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= pairs; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(x + i + 1));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(p, zero, _CMP_LE_OQ));
    for (int j = 0; j < 4; ++j) out[i + j] = static_cast<std::uint8_t>((mask >> j) & 1);
  }
  for (; i < pairs; ++i) out[i] = (x[i] * x[i + 1] <= 0.0) ? 1 : 0;
}

IDEPCA_AVX2 bool all_finite(const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d bad = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // v * 0 is 0 for finite v and NaN for inf or NaN.
    bad = _mm256_or_pd(bad, _mm256_cmp_pd(_mm256_mul_pd(v, zero), zero, _CMP_NEQ_UQ));
  }
  if (_mm256_movemask_pd(bad) != 0) return false;
  for (; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

constexpr KernelTable kAvx2{
    Backend::Avx2, "avx2",  add,         sub,          mul,       div,       neg, abs, sqrt,
    min_max,       max_abs, window_sums, sign_changes, all_finite,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
}  // namespace detail

#else

namespace detail {
const KernelTable* avx2_table() { return nullptr; }
bool cpu_has_avx2() { return false; }
}  // namespace detail

#endif

}  // namespace idepca::kernels
