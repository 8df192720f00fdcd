#pragma once

#include "idepca/kernels.hpp"

namespace idepca::kernels::detail {

// Defined in avx2.cpp; nullptr when the build target is not x86-64.
const KernelTable* avx2_table();
bool cpu_has_avx2();

}  // namespace idepca::kernels::detail
