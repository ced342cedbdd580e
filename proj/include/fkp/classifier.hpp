#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fkp/core.hpp"
#include "fkp/spec.hpp"

namespace fkp {

/// Prime factorization as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

struct PrimePowerGroup {
  std::uint64_t prime;
  std::vector<std::uint32_t> exponents;  // non-increasing, non-empty

  friend bool operator==(const PrimePowerGroup&, const PrimePowerGroup&) = default;
};

/// Class representative: prime-power groups with primes strictly descending
/// and exponents non-increasing inside each group.  The empty form stands
/// for the trivial product of size 1.
class CanonicalForm {
 public:
  explicit CanonicalForm(std::vector<PrimePowerGroup> groups);

  const std::vector<PrimePowerGroup>& groups() const { return groups_; }
  std::uint64_t product() const;

  /// One factor per exponent in canonical order, e.g. [9, 8] for size 72.
  FkpSpec to_spec() const;

  /// Spec string of to_spec(); "F1" for the empty form.
  std::string str() const;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

 private:
  std::vector<PrimePowerGroup> groups_;
};

/// The unique class representative of a spec: every factor is cut into its
/// prime-power parts, which are then grouped per prime and sorted.
CanonicalForm canonicalize(const FkpSpec& spec);

/// Permutation equivalence of the built matrices.
bool p_equivalent(const FkpSpec& a, const FkpSpec& b);

/// Permutation-phasing equivalence; coincides with p_equivalent on these
/// matrices, so the decision procedure is shared.
bool pd_equivalent(const FkpSpec& a, const FkpSpec& b);

/// For a non-increasing exponent list [k_s, ..., k_1] over one prime
/// (factors counted 1..s from the right), entry t is the position of the
/// first factor, in construction order, whose rows reach order a^t.
/// Entries 0 and 1 are 1 by convention; the list is non-decreasing.
std::vector<std::uint32_t> introduction_indices(
    const std::vector<std::uint32_t>& exponents);

/// Row census of a product of Fourier matrices of sizes a^k over one prime,
/// exponents non-increasing, by closed formula:
///   count(a^m) = a^{m*s - sum_{l<=m}(idx_l - 1)} - a^{(m-1)*s - sum_{l<m}(idx_l - 1)}
/// with count(1) = 1 and idx = introduction_indices(exponents).
RowCensus census_formula_pure(std::uint64_t prime,
                              const std::vector<std::uint32_t>& exponents);

/// Row census of any spec: canonicalize, compute each prime group's census,
/// combine multiplicatively (orders of distinct primes multiply).
RowCensus census_formula(const FkpSpec& spec);

/// Number of partitions of n; p(0) = 1.
std::uint64_t partition_count(std::uint32_t n);

/// All partitions of n as non-increasing part lists, largest first
/// ([n] down to [1, ..., 1]).
std::vector<std::vector<std::uint32_t>> partitions_of(std::uint32_t n);

/// Number of equivalence classes of size-n products: the product of
/// partition_count over the exponents in the factorization of n.
std::uint64_t class_count(std::uint64_t n);

struct EquivalenceClass {
  CanonicalForm form;
  /// Every factor multiset in the class, each sorted descending; ordered by
  /// factor count descending, then lexicographically.
  std::vector<std::vector<std::uint64_t>> members;
};

/// All classes of size n, one per canonical form.  Forms are ordered with
/// larger primes varying slowest and exponent partitions largest-part-first.
std::vector<EquivalenceClass> enumerate_classes(std::uint64_t n);

}  // namespace fkp
