#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fkp/classifier.hpp"
#include "fkp/core.hpp"
#include "fkp/spec.hpp"

namespace fkp {

// Thrown when a witness is requested between inequivalent specs; carries the
// two censuses as evidence.
class inequivalent_error : public error {
 public:
  inequivalent_error(const std::string& what, RowCensus lhs, RowCensus rhs)
      : error(what), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  const RowCensus& lhs_census() const { return lhs_; }
  const RowCensus& rhs_census() const { return rhs_; }

 private:
  RowCensus lhs_;
  RowCensus rhs_;
};

struct CrtCoefficients {
  std::uint64_t p;
  std::uint64_t q;
  // e*p + x*q == 1 and y*p + f*q == 1, with x and y the least positive
  // residues, so construction is deterministic.
  std::int64_t e;
  std::uint64_t x;
  std::uint64_t y;
  std::int64_t f;
};

CrtCoefficients crt_coefficients(std::uint64_t p, std::uint64_t q);

/// Explicit equivalence certificate: apply(rows, build(lhs), cols) equals
/// build(rhs) exactly.  `verified` reports whether that equality has been
/// checked by exact comparison; it is never assumed.  The two
/// phasing-elimination constructors below document their own target of
/// verification, since their action lands on a phased matrix rather than
/// on build(rhs).
struct WitnessPair {
  Permutation rows;
  Permutation cols;
  FkpSpec lhs;
  FkpSpec rhs;
  std::vector<std::string> steps;
  bool verified = false;
};

// Permutations are O(n) vectors, so witnesses tolerate sizes well beyond the
// matrix entry budget; this caps only pathological requests.
inline constexpr std::uint64_t kMaxWitnessSize = std::uint64_t{1} << 22;

WitnessPair identity_witness(const FkpSpec& spec);

/// Certificate for the reverse direction: permutation inverses are exact.
WitnessPair inverse_witness(const WitnessPair& w);

/// Chains first: a -> b with second: b -> c into a -> c.  The factor
/// sequence of first.rhs must equal second.lhs.
WitnessPair compose_witness(const WitnessPair& first, const WitnessPair& second);

/// Builds both sides and compares exactly; stores and returns the outcome.
bool verify_witness(WitnessPair& w, std::size_t max_entries = kDefaultMaxEntries);

/// Witness splitting one Fourier factor into coprime parts:
/// apply(rows, build([p*q]), cols) = build([p, q]).  Row index map is
/// i -> (i mod p)*q + (i mod q); the column map interleaves by the Bezout
/// inverses x, y and is returned inverted to fit the apply convention.
/// Self-verifies whenever (p*q)^2 fits max_entries.
WitnessPair split_permutations(std::uint64_t p, std::uint64_t q,
                               std::size_t max_entries = kDefaultMaxEntries);

/// Witness reordering the factors of a product: slot k of the result holds
/// factor sigma[k] of the input.  Not self-verified (use verify_witness).
WitnessPair reorder_permutations(const std::vector<std::uint64_t>& sizes,
                                 const std::vector<index_t>& sigma);

/// Lifts a witness acting on the factor at `position` to the full product,
/// leaving the other factors alone.  Not self-verified.
WitnessPair embed_witness(const WitnessPair& inner, std::size_t position,
                          const std::vector<std::uint64_t>& sizes);

/// Full certificate between equivalent specs, routed through the canonical
/// form: every factor is split into prime powers, then one reorder sorts
/// them; b's reduction is inverted and chained on.  Throws
/// inequivalent_error (censuses attached) when no witness exists.
WitnessPair witness_equivalence(const FkpSpec& a, const FkpSpec& b,
                                bool verify = true,
                                std::size_t max_entries = kDefaultMaxEntries);

/// The unique diagonals (rows, cols) with cols.at(0) == 0 making row i and
/// column j of phase(rows, a, cols) all zero-phase.  Forced entry by entry:
/// cols from row i, rows from column j.
std::pair<DiagonalPhasing, DiagonalPhasing> dephase_to_flat(
    const PhaseExpMatrix& a, index_t i, index_t j);

/// Permutation realization of the (i, j) dephasing of build(spec): per
/// factor, rows shift forward by that factor's digit of i and columns shift
/// back by the digit of j.  lhs = rhs = spec; `verified` here means
/// apply(rows, build(spec), cols) equals the dephased matrix exactly.
WitnessPair phasing_to_permutations(const FkpSpec& spec, index_t i, index_t j,
                                    std::size_t max_entries = kDefaultMaxEntries);

/// Collapses a phase-and-permute disguise of build(spec) to permutations
/// alone: locates the flat row/column of phase(row_phase, F, col_phase),
/// absorbs the phasing into shift permutations, and composes with the outer
/// permutations.  lhs = rhs = spec; `verified` here means the returned pair
/// reproduces apply(row_perm, phase(row_phase, F, col_phase), col_perm)
/// exactly.  Throws not_reducible_error when no flat row/column exists.
WitnessPair pd_to_p_witness(const Permutation& row_perm,
                            const DiagonalPhasing& row_phase,
                            const FkpSpec& spec,
                            const DiagonalPhasing& col_phase,
                            const Permutation& col_perm,
                            std::size_t max_entries = kDefaultMaxEntries);

}  // namespace fkp
