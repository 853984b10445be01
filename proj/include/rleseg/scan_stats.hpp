#pragma once

#include <cstddef>

namespace rleseg {

/// Optional read counter threaded through the scanning routines. Tests use it
/// to check the number of element reads an operation performs; production
/// callers pass nullptr.
struct ScanStats {
  std::size_t reads = 0;
};

inline void count_read(ScanStats* stats, std::size_t n = 1) noexcept {
  if (stats) stats->reads += n;
}

}  // namespace rleseg
