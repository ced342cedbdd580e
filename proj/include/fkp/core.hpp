#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fkp/errors.hpp"

namespace fkp {

using index_t = std::size_t;
using exp_t = std::uint64_t;

// Arithmetic helpers that throw capacity_error instead of wrapping around.
exp_t checked_add(exp_t a, exp_t b);
exp_t checked_mul(exp_t a, exp_t b);
exp_t checked_pow(exp_t base, exp_t exponent);
exp_t checked_lcm(exp_t a, exp_t b);

/// Permutation of {0, ..., n-1} stored as an image table: image()[k] is
/// where k is sent.  Composition is right-to-left, compose(f, g)(k) = f(g(k)).
class Permutation {
 public:
  explicit Permutation(std::vector<index_t> image);
  static Permutation identity(index_t n);

  index_t size() const { return image_.size(); }
  index_t operator()(index_t k) const { return image_[k]; }
  const std::vector<index_t>& image() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<index_t> image_;
};

Permutation compose(const Permutation& f, const Permutation& g);

inline constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 20;

/// Square matrix of unit-modulus entries over a common amplitude.  Entry
/// (i, j) stands for exp(2*pi*I * at(i, j) / modulus()) / sqrt(size()).
/// Only the integer exponents are stored, so every comparison is exact.
/// Invariant: 0 <= at(i, j) < modulus().
class PhaseExpMatrix {
 public:
  PhaseExpMatrix(index_t size, exp_t modulus,
                 std::size_t max_entries = kDefaultMaxEntries);

  index_t size() const { return n_; }
  exp_t modulus() const { return modulus_; }

  exp_t at(index_t i, index_t j) const { return exps_[i * n_ + j]; }
  void set(index_t i, index_t j, exp_t e) { exps_[i * n_ + j] = e % modulus_; }

  /// The same matrix presented over a finer modulus; modulus() must divide
  /// new_modulus.
  PhaseExpMatrix rescaled(exp_t new_modulus) const;

  /// The same matrix over the smallest modulus that can present it.
  PhaseExpMatrix reduced() const;

 private:
  index_t n_;
  exp_t modulus_;
  std::vector<exp_t> exps_;
};

/// Diagonal of unit-modulus phases, same exponent encoding as PhaseExpMatrix.
class DiagonalPhasing {
 public:
  DiagonalPhasing(index_t size, exp_t modulus);
  DiagonalPhasing(std::vector<exp_t> exps, exp_t modulus);

  index_t size() const { return exps_.size(); }
  exp_t modulus() const { return modulus_; }
  exp_t at(index_t k) const { return exps_[k]; }
  void set(index_t k, exp_t e) { exps_[k] = e % modulus_; }

 private:
  exp_t modulus_;
  std::vector<exp_t> exps_;
};

/// Unitary Fourier matrix of size n: exponent (i*j) mod n over modulus n.
PhaseExpMatrix fourier(index_t n, std::size_t max_entries = kDefaultMaxEntries);

/// Kronecker product, row-major: the left factor is most significant in
/// both indices.  Exponents are rescaled to lcm of the two moduli.
PhaseExpMatrix kron(const PhaseExpMatrix& a, const PhaseExpMatrix& b,
                    std::size_t max_entries = kDefaultMaxEntries);

/// Two-sided permutation action: result[rows(i)][j] = a[i][cols(j)].
/// Row side moves entries, column side pulls them, so
/// apply(r2, apply(r1, a, c1), c2) == apply(compose(r2, r1), a, compose(c1, c2)).
PhaseExpMatrix apply(const Permutation& rows, const PhaseExpMatrix& a,
                     const Permutation& cols);

/// Two-sided diagonal action: exponent(i, j) becomes
/// rows.at(i) + a.at(i, j) + cols.at(j) over the common lcm modulus.
PhaseExpMatrix phase(const DiagonalPhasing& rows, const PhaseExpMatrix& a,
                     const DiagonalPhasing& cols);

/// Exact equality as complex matrices (moduli are reduced before comparing).
bool equal(const PhaseExpMatrix& a, const PhaseExpMatrix& b);

/// Histogram of row phase orders: order -> number of rows with that order.
using RowCensus = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t census_total(const RowCensus& census);

/// Order of a phase multiset: n when the exponents cover exactly the n
/// residues k*(modulus/n) with uniform multiplicity, nullopt otherwise.
std::optional<std::uint64_t> phase_order(const std::vector<exp_t>& exps,
                                         exp_t modulus);

std::optional<std::uint64_t> row_phase_order(const PhaseExpMatrix& a,
                                             index_t row);

/// Row-order histogram; throws not_an_fkp_error if some row has no order.
RowCensus census_oracle(const PhaseExpMatrix& a);

/// Exhaustive search for a pair with apply(rows, a, cols) == b.  Intended
/// as an independent ground truth for small sizes; throws capacity_error
/// above the cap.  Any returned pair has been checked by exact comparison.
std::optional<std::pair<Permutation, Permutation>> brute_force_equiv(
    const PhaseExpMatrix& a, const PhaseExpMatrix& b, index_t cap = 12);

}  // namespace fkp
