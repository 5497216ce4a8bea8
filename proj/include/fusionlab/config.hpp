#pragma once

#include <cstdint>
#include <cstdlib>

namespace fusionlab {

// Resource budgets. All computations that can blow up are gated by these and
// report a census instead of truncating silently.
struct Budget {
  // nonzero-entry budget for one coboundary matrix (FUSIONLAB_CELL_CAP)
  std::uint64_t cell_cap = 5'000'000;
  // element-list cap for group closure
  std::uint64_t order_cap = 1'000'000;
  // cap on the subgroup lattice of a p-group
  std::uint64_t subgroup_cap = 20'000;
  // cap on stored morphisms during generated-fusion closure
  std::uint64_t closure_cap = 2'000'000;
  // cap on stored pivot-row entries during elimination
  std::uint64_t pivot_entry_cap = 80'000'000;

  static Budget from_env() {
    Budget b;
    if (const char* s = std::getenv("FUSIONLAB_CELL_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && v > 0) b.cell_cap = v;
    }
    return b;
  }
};

}  // namespace fusionlab
