#include <atomic>
#include <cstdlib>
#include <string_view>

#include "idepca/kernels.hpp"
#include "kernels_impl.hpp"

namespace idepca::kernels {
namespace {

const KernelTable* initial_table() {
  const KernelTable* simd = avx2();
  if (const char* env = std::getenv("IDEPCA_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar();
    if (want == "avx2" && simd != nullptr) return simd;
  }
  return simd != nullptr ? simd : &scalar();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2() {
  static const KernelTable* table = detail::cpu_has_avx2() ? detail::avx2_table() : nullptr;
  return table;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(Backend backend) {
  const KernelTable* table = backend == Backend::Scalar ? &scalar() : avx2();
  if (table == nullptr) return false;
  current().store(table, std::memory_order_relaxed);
  return true;
}

std::string_view to_string(Backend backend) {
  return backend == Backend::Scalar ? "scalar" : "avx2";
}

}  // namespace idepca::kernels
