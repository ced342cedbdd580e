#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fkp/core.hpp"

namespace fkp {

/// Ordered list of Kronecker factor sizes, e.g. [8, 6] for F8*F6.
/// Invariant: every factor is at least 2 (size-1 factors are dropped on
/// construction) and the list is never empty.
class FkpSpec {
 public:
  explicit FkpSpec(std::vector<std::uint64_t> factors);

  /// Accepts factors joined by '*', 'x', a UTF-8 tensor sign, or commas,
  /// each with an optional F prefix; whitespace is ignored.  "F8*F6",
  /// "8x6" and "8, 6" all parse to [8, 6].
  static FkpSpec parse(std::string_view text);

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }

  /// Product of the factors, i.e. the matrix size; overflow-checked.
  std::uint64_t product() const;

  /// Canonical spelling: "F8*F6".
  std::string str() const;

  friend bool operator==(const FkpSpec&, const FkpSpec&) = default;

 private:
  std::vector<std::uint64_t> factors_;
};

/// Kronecker product of Fourier matrices in spec order.
PhaseExpMatrix build(const FkpSpec& spec,
                     std::size_t max_entries = kDefaultMaxEntries);

}  // namespace fkp
