#include "fkp/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace fkp {

exp_t checked_add(exp_t a, exp_t b) {
  if (a > std::numeric_limits<exp_t>::max() - b)
    throw capacity_error("integer overflow in addition");
  return a + b;
}

exp_t checked_mul(exp_t a, exp_t b) {
  if (b != 0 && a > std::numeric_limits<exp_t>::max() / b)
    throw capacity_error("integer overflow in multiplication");
  return a * b;
}

exp_t checked_pow(exp_t base, exp_t exponent) {
  exp_t result = 1;
  for (exp_t k = 0; k < exponent; ++k) result = checked_mul(result, base);
  return result;
}

exp_t checked_lcm(exp_t a, exp_t b) {
  if (a == 0 || b == 0) throw dimension_error("lcm of zero is undefined here");
  return checked_mul(a / std::gcd(a, b), b);
}

Permutation::Permutation(std::vector<index_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (index_t v : image_) {
    if (v >= image_.size() || seen[v])
      throw std::invalid_argument("permutation image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(index_t n) {
  std::vector<index_t> image(n);
  std::iota(image.begin(), image.end(), index_t{0});
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<index_t> image(image_.size());
  for (index_t k = 0; k < image_.size(); ++k) image[image_[k]] = k;
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
  for (index_t k = 0; k < image_.size(); ++k)
    if (image_[k] != k) return false;
  return true;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size())
    throw dimension_error("composed permutations have different sizes");
  std::vector<index_t> image(f.size());
  for (index_t k = 0; k < f.size(); ++k) image[k] = f(g(k));
  return Permutation(std::move(image));
}

PhaseExpMatrix::PhaseExpMatrix(index_t size, exp_t modulus,
                               std::size_t max_entries)
    : n_(size), modulus_(modulus) {
  if (n_ == 0) throw dimension_error("matrix size must be positive");
  if (modulus_ == 0) throw dimension_error("modulus must be positive");
  if (n_ > max_entries / n_)
    throw capacity_error("matrix with " + std::to_string(n_) + "^2 entries exceeds the budget of " +
                         std::to_string(max_entries));
  exps_.assign(n_ * n_, 0);
}

PhaseExpMatrix PhaseExpMatrix::rescaled(exp_t new_modulus) const {
  if (new_modulus == 0 || new_modulus % modulus_ != 0)
    throw dimension_error("rescale target modulus must be a multiple of the current one");
  const exp_t scale = new_modulus / modulus_;
  PhaseExpMatrix out(n_, new_modulus, exps_.size());
  for (std::size_t k = 0; k < exps_.size(); ++k) out.exps_[k] = exps_[k] * scale;
  return out;
}

PhaseExpMatrix PhaseExpMatrix::reduced() const {
  exp_t g = modulus_;
  for (exp_t e : exps_) {
    g = std::gcd(g, e);
    if (g == 1) break;
  }
  if (g == 1) return *this;
  PhaseExpMatrix out(n_, modulus_ / g, exps_.size());
  for (std::size_t k = 0; k < exps_.size(); ++k) out.exps_[k] = exps_[k] / g;
  return out;
}

DiagonalPhasing::DiagonalPhasing(index_t size, exp_t modulus)
    : modulus_(modulus), exps_(size, 0) {
  if (size == 0) throw dimension_error("diagonal size must be positive");
  if (modulus_ == 0) throw dimension_error("modulus must be positive");
}

DiagonalPhasing::DiagonalPhasing(std::vector<exp_t> exps, exp_t modulus)
    : modulus_(modulus), exps_(std::move(exps)) {
  if (exps_.empty()) throw dimension_error("diagonal size must be positive");
  if (modulus_ == 0) throw dimension_error("modulus must be positive");
  for (exp_t& e : exps_) e %= modulus_;
}

PhaseExpMatrix fourier(index_t n, std::size_t max_entries) {
  if (n == 0) throw dimension_error("fourier size must be positive");
  PhaseExpMatrix out(n, n, max_entries);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j)
      out.set(i, j, (exp_t{i} * exp_t{j}) % n);
  return out;
}

PhaseExpMatrix kron(const PhaseExpMatrix& a, const PhaseExpMatrix& b,
                    std::size_t max_entries) {
  const exp_t l = checked_lcm(a.modulus(), b.modulus());
  const exp_t sa = l / a.modulus();
  const exp_t sb = l / b.modulus();
  const index_t na = a.size();
  const index_t nb = b.size();
  const index_t n = static_cast<index_t>(checked_mul(na, nb));
  PhaseExpMatrix out(n, l, max_entries);
  for (index_t ia = 0; ia < na; ++ia)
    for (index_t ib = 0; ib < nb; ++ib) {
      const index_t i = ia * nb + ib;
      for (index_t ja = 0; ja < na; ++ja) {
        const exp_t ea = a.at(ia, ja) * sa;
        for (index_t jb = 0; jb < nb; ++jb)
          out.set(i, ja * nb + jb, checked_add(ea, b.at(ib, jb) * sb) % l);
      }
    }
  return out;
}

PhaseExpMatrix apply(const Permutation& rows, const PhaseExpMatrix& a,
                     const Permutation& cols) {
  if (rows.size() != a.size() || cols.size() != a.size())
    throw dimension_error("permutation sizes do not match the matrix");
  PhaseExpMatrix out(a.size(), a.modulus(), a.size() * a.size());
  for (index_t i = 0; i < a.size(); ++i) {
    const index_t u = rows(i);
    for (index_t j = 0; j < a.size(); ++j) out.set(u, j, a.at(i, cols(j)));
  }
  return out;
}

PhaseExpMatrix phase(const DiagonalPhasing& rows, const PhaseExpMatrix& a,
                     const DiagonalPhasing& cols) {
  if (rows.size() != a.size() || cols.size() != a.size())
    throw dimension_error("diagonal sizes do not match the matrix");
  const exp_t l = checked_lcm(checked_lcm(rows.modulus(), a.modulus()), cols.modulus());
  const exp_t sr = l / rows.modulus();
  const exp_t sa = l / a.modulus();
  const exp_t sc = l / cols.modulus();
  PhaseExpMatrix out(a.size(), l, a.size() * a.size());
  for (index_t i = 0; i < a.size(); ++i) {
    const exp_t er = rows.at(i) * sr;
    for (index_t j = 0; j < a.size(); ++j)
      out.set(i, j, checked_add(checked_add(er, a.at(i, j) * sa), cols.at(j) * sc) % l);
  }
  return out;
}

bool equal(const PhaseExpMatrix& a, const PhaseExpMatrix& b) {
  if (a.size() != b.size()) return false;
  const PhaseExpMatrix ra = a.reduced();
  const PhaseExpMatrix rb = b.reduced();
  if (ra.modulus() != rb.modulus()) return false;
  for (index_t i = 0; i < ra.size(); ++i)
    for (index_t j = 0; j < ra.size(); ++j)
      if (ra.at(i, j) != rb.at(i, j)) return false;
  return true;
}

std::uint64_t census_total(const RowCensus& census) {
  std::uint64_t total = 0;
  for (const auto& [order, count] : census) total = checked_add(total, count);
  return total;
}

std::optional<std::uint64_t> phase_order(const std::vector<exp_t>& exps,
                                         exp_t modulus) {
  if (modulus == 0 || exps.empty()) return std::nullopt;
  exp_t d = modulus;
  for (exp_t e : exps) {
    d = std::gcd(d, e);
    if (d == 1) break;
  }
  const exp_t order = modulus / d;
  if (exps.size() % order != 0) return std::nullopt;
  const std::uint64_t expected = exps.size() / order;
  std::vector<std::uint64_t> counts(order, 0);
  for (exp_t e : exps) ++counts[e / d];
  for (std::uint64_t c : counts)
    if (c != expected) return std::nullopt;
  return order;
}

std::optional<std::uint64_t> row_phase_order(const PhaseExpMatrix& a,
                                             index_t row) {
  if (row >= a.size()) throw dimension_error("row index out of range");
  std::vector<exp_t> exps(a.size());
  for (index_t j = 0; j < a.size(); ++j) exps[j] = a.at(row, j);
  return phase_order(exps, a.modulus());
}

RowCensus census_oracle(const PhaseExpMatrix& a) {
  RowCensus census;
  for (index_t i = 0; i < a.size(); ++i) {
    const auto order = row_phase_order(a, i);
    if (!order)
      throw not_an_fkp_error("row " + std::to_string(i) + " has no phase order");
    ++census[*order];
  }
  return census;
}

namespace {

using Mask = std::uint64_t;

std::vector<exp_t> sorted_row(const PhaseExpMatrix& m, index_t i) {
  std::vector<exp_t> out(m.size());
  for (index_t j = 0; j < m.size(); ++j) out[j] = m.at(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<exp_t> sorted_col(const PhaseExpMatrix& m, index_t j) {
  std::vector<exp_t> out(m.size());
  for (index_t i = 0; i < m.size(); ++i) out[i] = m.at(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

// Kuhn augmenting-path matching: one left vertex per column of b, adjacency
// given as bitmasks over columns of a.  Fills match_out (a-column -> b-column)
// and returns true when the matching is perfect.
bool perfect_matching(const std::vector<Mask>& adjacency, index_t n,
                      std::vector<index_t>& match_out) {
  std::vector<index_t> owner(n, n);  // a-column -> b-column, n = free
  std::vector<bool> visited(n);
  // Recursive lambda needs an explicit functor.
  struct Augment {
    const std::vector<Mask>& adj;
    std::vector<index_t>& owner;
    std::vector<bool>& visited;
    index_t n;
    bool operator()(index_t w) {
      for (index_t j = 0; j < n; ++j) {
        if (!(adj[w] >> j & 1) || visited[j]) continue;
        visited[j] = true;
        if (owner[j] == n || (*this)(owner[j])) {
          owner[j] = w;
          return true;
        }
      }
      return false;
    }
  };
  Augment augment{adjacency, owner, visited, n};
  for (index_t w = 0; w < n; ++w) {
    std::fill(visited.begin(), visited.end(), false);
    if (!augment(w)) return false;
  }
  match_out.assign(n, n);
  for (index_t j = 0; j < n; ++j) match_out[owner[j]] = j;
  return true;
}

struct EquivSearch {
  const PhaseExpMatrix& a;
  const PhaseExpMatrix& b;
  index_t n;
  std::vector<std::vector<index_t>> row_cands;          // b-row -> a-rows
  std::vector<std::unordered_map<exp_t, Mask>> val_mask;  // a-row -> value -> cols
  std::vector<index_t> order;                           // b-row visit order
  std::vector<index_t> sigma;                           // b-row -> a-row
  std::vector<index_t> tau;                             // b-col -> a-col
  Mask used = 0;

  bool search(index_t depth, const std::vector<Mask>& col_masks) {
    if (depth == n) return perfect_matching(col_masks, n, tau);
    const index_t u = order[depth];
    for (index_t r : row_cands[u]) {
      if (used >> r & 1) continue;
      std::vector<Mask> next(n);
      bool feasible = true;
      for (index_t w = 0; w < n && feasible; ++w) {
        const auto it = val_mask[r].find(b.at(u, w));
        next[w] = (it == val_mask[r].end()) ? 0 : (col_masks[w] & it->second);
        feasible = next[w] != 0;
      }
      if (!feasible) continue;
      used |= Mask{1} << r;
      sigma[u] = r;
      if (search(depth + 1, next)) return true;
      used &= ~(Mask{1} << r);
    }
    return false;
  }
};

}  // namespace

std::optional<std::pair<Permutation, Permutation>> brute_force_equiv(
    const PhaseExpMatrix& a, const PhaseExpMatrix& b, index_t cap) {
  if (a.size() > cap || b.size() > cap)
    throw capacity_error("matrix size exceeds the search cap of " + std::to_string(cap));
  if (a.size() != b.size()) return std::nullopt;
  const index_t n = a.size();
  if (n > 64) throw capacity_error("exhaustive search is limited to size 64");

  const exp_t l = checked_lcm(a.modulus(), b.modulus());
  const PhaseExpMatrix ra = a.rescaled(l);
  const PhaseExpMatrix rb = b.rescaled(l);
  EquivSearch s{ra, rb, n, {}, {}, {}, {}, {}, 0};

  std::vector<std::vector<exp_t>> row_sig_a(n), row_sig_b(n);
  std::vector<std::vector<exp_t>> col_sig_a(n), col_sig_b(n);
  for (index_t k = 0; k < n; ++k) {
    row_sig_a[k] = sorted_row(s.a, k);
    row_sig_b[k] = sorted_row(s.b, k);
    col_sig_a[k] = sorted_col(s.a, k);
    col_sig_b[k] = sorted_col(s.b, k);
  }

  s.row_cands.resize(n);
  for (index_t u = 0; u < n; ++u) {
    for (index_t r = 0; r < n; ++r)
      if (row_sig_a[r] == row_sig_b[u]) s.row_cands[u].push_back(r);
    if (s.row_cands[u].empty()) return std::nullopt;
  }

  std::vector<Mask> col_masks(n, 0);
  for (index_t w = 0; w < n; ++w) {
    for (index_t j = 0; j < n; ++j)
      if (col_sig_a[j] == col_sig_b[w]) col_masks[w] |= Mask{1} << j;
    if (col_masks[w] == 0) return std::nullopt;
  }

  s.val_mask.resize(n);
  for (index_t r = 0; r < n; ++r)
    for (index_t j = 0; j < n; ++j) s.val_mask[r][s.a.at(r, j)] |= Mask{1} << j;

  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), index_t{0});
  std::stable_sort(s.order.begin(), s.order.end(), [&](index_t x, index_t y) {
    return s.row_cands[x].size() < s.row_cands[y].size();
  });
  s.sigma.assign(n, 0);

  if (!s.search(0, col_masks)) return std::nullopt;

  std::vector<index_t> rows_image(n), cols_image(n);
  for (index_t u = 0; u < n; ++u) rows_image[s.sigma[u]] = u;
  for (index_t w = 0; w < n; ++w) cols_image[w] = s.tau[w];
  Permutation rows(std::move(rows_image));
  Permutation cols(std::move(cols_image));
  if (!equal(apply(rows, a, cols), b))
    throw std::logic_error("exhaustive search produced a pair that does not act correctly");
  return std::make_pair(std::move(rows), std::move(cols));
}

}  // namespace fkp
