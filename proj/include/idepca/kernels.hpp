#pragma once

// Data-parallel inner loops used by the expression evaluator, the quadrature
// batches and the sequence statistics. Every kernel has a scalar reference
// implementation; SIMD variants are selected at runtime and must produce
// bit-identical results (no reassociation, no FMA).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace idepca::kernels {

enum class Backend { Scalar, Avx2 };

struct MinMax {
  double min;
  double max;
};

struct KernelTable {
  Backend backend;
  std::string_view name;

  // out[i] = x[i] op y[i]; out may alias x or y.
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
  void (*mul)(const double* x, const double* y, double* out, std::size_t n);
  void (*div)(const double* x, const double* y, double* out, std::size_t n);

  void (*neg)(const double* x, double* out, std::size_t n);
  void (*abs)(const double* x, double* out, std::size_t n);
  void (*sqrt)(const double* x, double* out, std::size_t n);

  // n >= 1, finite input.
  MinMax (*min_max)(const double* x, std::size_t n);
  // Largest |x[i]|; 0 for n == 0. NaN inputs are reported as NaN.
  double (*max_abs)(const double* x, std::size_t n);
  // out[i] = x[i] + x[i+1] + ... + x[i+width-1], summed left to right,
  // for i in [0, n - width]. Requires 1 <= width <= n.
  void (*window_sums)(const double* x, std::size_t n, std::size_t width, double* out);
  // out[i] = (x[i] * x[i+1] <= 0) for i in [0, n-1).
  void (*sign_changes)(const double* x, std::size_t n, std::uint8_t* out);
  // True when every element is finite.
  bool (*all_finite)(const double* x, std::size_t n);
};

const KernelTable& scalar();
// nullptr when the CPU (or the build target) lacks AVX2.
const KernelTable* avx2();

// The table used by the library. Chosen once from CPU features; the
// IDEPCA_KERNELS environment variable ("scalar" or "avx2") overrides it.
const KernelTable& active();
// Test hook: force a backend. Returns false if it is unavailable.
bool select(Backend backend);

std::string_view to_string(Backend backend);

}  // namespace idepca::kernels
