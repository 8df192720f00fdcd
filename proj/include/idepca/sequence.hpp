#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "idepca/error.hpp"

namespace idepca {

// A real sequence over the consecutive integer indices [first, last()].
struct IndexedSeq {
  long first = 0;
  std::vector<double> values;

  long last() const noexcept { return first + static_cast<long>(values.size()) - 1; }
  bool empty() const noexcept { return values.empty(); }
  std::size_t size() const noexcept { return values.size(); }
  bool contains(long n) const noexcept { return n >= first && n <= last(); }

  double at(long n) const {
    if (!contains(n))
      throw Error(Errc::IndexOutOfRange, "sequence covers [" + std::to_string(first) + ", " +
                                             std::to_string(last()) + "]")
          .with_index(n);
    return values[static_cast<std::size_t>(n - first)];
  }

  // Values for indices [lo, hi], clipped to the stored range.
  std::span<const double> view(long lo, long hi) const {
    lo = std::max(lo, first);
    hi = std::min(hi, last());
    if (hi < lo) return {};
    return std::span<const double>(values).subspan(static_cast<std::size_t>(lo - first),
                                                   static_cast<std::size_t>(hi - lo + 1));
  }
};

}  // namespace idepca
