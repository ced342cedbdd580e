#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fkp/spec.hpp"

namespace fkp::test {

// All multisets of factors >= 2 with the given product, parts non-increasing.
// Independent of the library's class enumeration: plain divisor recursion.
inline void factor_multisets_into(std::uint64_t n, std::uint64_t max_part,
                                  std::vector<std::uint64_t>& current,
                                  std::vector<std::vector<std::uint64_t>>& out) {
  if (n == 1) {
    out.push_back(current);
    return;
  }
  for (std::uint64_t d = std::min(n, max_part); d >= 2; --d) {
    if (n % d != 0) continue;
    current.push_back(d);
    factor_multisets_into(n / d, d, current, out);
    current.pop_back();
  }
}

inline std::vector<std::vector<std::uint64_t>> factor_multisets(std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> current;
  factor_multisets_into(n, n, current, out);
  return out;
}

// All ordered sequences of factors >= 2 with the given product.
inline void ordered_factorizations_into(std::uint64_t n,
                                        std::vector<std::uint64_t>& current,
                                        std::vector<std::vector<std::uint64_t>>& out) {
  if (n == 1) {
    out.push_back(current);
    return;
  }
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    current.push_back(d);
    ordered_factorizations_into(n / d, current, out);
    current.pop_back();
  }
}

inline std::vector<std::vector<std::uint64_t>> ordered_factorizations(std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> current;
  ordered_factorizations_into(n, current, out);
  return out;
}

inline FkpSpec spec_of(const std::vector<std::uint64_t>& factors) {
  return FkpSpec(std::vector<std::uint64_t>(factors));
}

}  // namespace fkp::test
