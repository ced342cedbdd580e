#include "fkp/witness.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fkp {

namespace {

// Least positive inverse of a modulo m (m >= 1); 1 when m == 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  a %= m;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  if (r != 1) throw not_coprime_error("value is not invertible for this modulus");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

CrtCoefficients crt_coefficients(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) throw dimension_error("factors must be positive");
  if (std::gcd(p, q) != 1)
    throw not_coprime_error(std::to_string(p) + " and " + std::to_string(q) +
                            " share a factor");
  const std::uint64_t x = mod_inverse(q, p);
  const std::uint64_t y = mod_inverse(p, q);
  const std::uint64_t xq = checked_mul(x, q);
  const std::uint64_t yp = checked_mul(y, p);
  if (xq > (std::uint64_t{1} << 62) || yp > (std::uint64_t{1} << 62))
    throw capacity_error("Bezout coefficients exceed the signed range");
  const std::int64_t e =
      (1 - static_cast<std::int64_t>(xq)) / static_cast<std::int64_t>(p);
  const std::int64_t f =
      (1 - static_cast<std::int64_t>(yp)) / static_cast<std::int64_t>(q);
  CrtCoefficients out{p, q, e, x, y, f};
  if (e * static_cast<std::int64_t>(p) + static_cast<std::int64_t>(xq) != 1 ||
      static_cast<std::int64_t>(yp) + f * static_cast<std::int64_t>(q) != 1)
    throw std::logic_error("Bezout identity failed");
  return out;
}

WitnessPair identity_witness(const FkpSpec& spec) {
  const std::uint64_t n = spec.product();
  if (n > kMaxWitnessSize) throw capacity_error("witness size exceeds the cap");
  return {Permutation::identity(static_cast<index_t>(n)),
          Permutation::identity(static_cast<index_t>(n)),
          spec,
          spec,
          {},
          false};
}

namespace {

// "divide F6 -> F2*F3" becomes "merge F2*F3 -> F6" and vice versa; permute
// steps swap sides.  Trailing annotations (everything after the right-hand
// side) are preserved.
std::string invert_step(const std::string& step) {
  const auto verb_end = step.find(' ');
  const auto arrow = step.find(" -> ");
  if (verb_end == std::string::npos || arrow == std::string::npos)
    return "invert: " + step;
  std::string verb = step.substr(0, verb_end);
  if (verb == "divide")
    verb = "merge";
  else if (verb == "merge")
    verb = "divide";
  else if (verb != "permute")
    return "invert: " + step;
  const std::string lhs = step.substr(verb_end + 1, arrow - verb_end - 1);
  std::string rest = step.substr(arrow + 4);
  const auto annotation = rest.find(" (");
  std::string rhs = rest;
  std::string tail;
  if (annotation != std::string::npos) {
    rhs = rest.substr(0, annotation);
    tail = rest.substr(annotation);
  }
  return verb + " " + rhs + " -> " + lhs + tail;
}

}  // namespace

WitnessPair inverse_witness(const WitnessPair& w) {
  std::vector<std::string> steps;
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
    steps.push_back(invert_step(*it));
  return {w.rows.inverse(), w.cols.inverse(), w.rhs, w.lhs, std::move(steps), false};
}

WitnessPair compose_witness(const WitnessPair& first, const WitnessPair& second) {
  if (first.rhs.factors() != second.lhs.factors())
    throw dimension_error("witnesses do not chain: " + first.rhs.str() +
                          " vs " + second.lhs.str());
  std::vector<std::string> steps = first.steps;
  steps.insert(steps.end(), second.steps.begin(), second.steps.end());
  return {compose(second.rows, first.rows), compose(first.cols, second.cols),
          first.lhs, second.rhs, std::move(steps), false};
}

bool verify_witness(WitnessPair& w, std::size_t max_entries) {
  const PhaseExpMatrix lhs = build(w.lhs, max_entries);
  const PhaseExpMatrix rhs = build(w.rhs, max_entries);
  w.verified = w.rows.size() == lhs.size() && w.cols.size() == lhs.size() &&
               equal(apply(w.rows, lhs, w.cols), rhs);
  return w.verified;
}

WitnessPair split_permutations(std::uint64_t p, std::uint64_t q,
                               std::size_t max_entries) {
  const CrtCoefficients crt = crt_coefficients(p, q);
  const std::uint64_t n = checked_mul(p, q);
  if (n > kMaxWitnessSize) throw capacity_error("witness size exceeds the cap");
  if (n < 2) throw dimension_error("split needs a product of at least 2");

  std::vector<index_t> rows_image(n), col_map(n);
  for (std::uint64_t i = 0; i < n; ++i)
    rows_image[i] = static_cast<index_t>((i % p) * q + (i % q));
  for (std::uint64_t j = 0; j < n; ++j)
    col_map[j] = static_cast<index_t>((crt.x * (j % p)) % p * q + (crt.y * (j % q)) % q);

  WitnessPair out{Permutation(std::move(rows_image)),
                  Permutation(std::move(col_map)).inverse(),
                  FkpSpec({n}),
                  FkpSpec({p, q}),
                  {},
                  false};
  out.steps.push_back("divide " + out.lhs.str() + " -> " + out.rhs.str());
  if (n <= max_entries / n) verify_witness(out, max_entries);
  return out;
}

namespace {

std::vector<std::uint64_t> index_strides(const std::vector<std::uint64_t>& sizes) {
  std::vector<std::uint64_t> strides(sizes.size());
  std::uint64_t acc = 1;
  for (std::size_t k = sizes.size(); k-- > 0;) {
    strides[k] = acc;
    acc = checked_mul(acc, sizes[k]);
  }
  return strides;
}

}  // namespace

WitnessPair reorder_permutations(const std::vector<std::uint64_t>& sizes,
                                 const std::vector<index_t>& sigma) {
  if (sizes.empty()) throw dimension_error("no factors to reorder");
  if (sigma.size() != sizes.size())
    throw dimension_error("sigma does not match the factor count");
  const Permutation sig{std::vector<index_t>(sigma)};  // validates bijection

  std::vector<std::uint64_t> new_sizes(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) new_sizes[k] = sizes[sig(k)];

  const std::vector<std::uint64_t> strides = index_strides(sizes);
  const std::vector<std::uint64_t> new_strides = index_strides(new_sizes);
  const std::uint64_t n = checked_mul(strides[0], sizes[0]);
  if (n > kMaxWitnessSize) throw capacity_error("witness size exceeds the cap");

  std::vector<index_t> rows_image(n);
  for (std::uint64_t flat = 0; flat < n; ++flat) {
    std::uint64_t moved = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const std::uint64_t digit = flat / strides[sig(k)] % sizes[sig(k)];
      moved += digit * new_strides[k];
    }
    rows_image[flat] = static_cast<index_t>(moved);
  }

  Permutation rows(std::move(rows_image));
  Permutation cols = rows.inverse();
  WitnessPair out{std::move(rows), std::move(cols), FkpSpec(sizes),
                  FkpSpec(new_sizes), {}, false};
  out.steps.push_back("permute " + out.lhs.str() + " -> " + out.rhs.str());
  return out;
}

WitnessPair embed_witness(const WitnessPair& inner, std::size_t position,
                          const std::vector<std::uint64_t>& sizes) {
  if (position >= sizes.size()) throw dimension_error("factor position out of range");
  const std::uint64_t inner_size = inner.lhs.product();
  if (sizes[position] != inner_size)
    throw dimension_error("embedded witness does not match the factor size");

  std::uint64_t before = 1, after = 1;
  for (std::size_t k = 0; k < position; ++k) before = checked_mul(before, sizes[k]);
  for (std::size_t k = position + 1; k < sizes.size(); ++k)
    after = checked_mul(after, sizes[k]);
  const std::uint64_t n = checked_mul(checked_mul(before, inner_size), after);
  if (n > kMaxWitnessSize) throw capacity_error("witness size exceeds the cap");

  const auto lift = [&](const Permutation& p) {
    std::vector<index_t> image(n);
    for (std::uint64_t a = 0; a < before; ++a)
      for (std::uint64_t m = 0; m < inner_size; ++m) {
        const std::uint64_t base = (a * inner_size + m) * after;
        const std::uint64_t moved = (a * inner_size + p(static_cast<index_t>(m))) * after;
        for (std::uint64_t b = 0; b < after; ++b)
          image[base + b] = static_cast<index_t>(moved + b);
      }
    return Permutation(std::move(image));
  };

  std::vector<std::uint64_t> new_sizes(sizes.begin(), sizes.begin() + position);
  new_sizes.insert(new_sizes.end(), inner.rhs.factors().begin(), inner.rhs.factors().end());
  new_sizes.insert(new_sizes.end(), sizes.begin() + position + 1, sizes.end());

  WitnessPair out{lift(inner.rows), lift(inner.cols), FkpSpec(sizes),
                  FkpSpec(new_sizes), {}, false};
  for (const std::string& step : inner.steps)
    out.steps.push_back(step + " (factor " + std::to_string(position) + " of " +
                        out.lhs.str() + ")");
  return out;
}

namespace {

// Split every composite factor into prime powers (smallest prime first),
// then sort the pieces into canonical order with one reorder.
WitnessPair reduce_to_canonical(const FkpSpec& spec, std::size_t max_entries) {
  WitnessPair w = identity_witness(spec);
  std::vector<std::uint64_t> current = spec.factors();
  for (std::size_t t = 0; t < current.size();) {
    const auto primes = factorize(current[t]);
    if (primes.size() == 1) {
      ++t;
      continue;
    }
    const std::uint64_t head = checked_pow(primes.front().first, primes.front().second);
    const WitnessPair inner = split_permutations(head, current[t] / head, max_entries);
    const WitnessPair lifted = embed_witness(inner, t, current);
    current = lifted.rhs.factors();
    w = compose_witness(w, lifted);
  }

  const std::vector<std::uint64_t> target = canonicalize(spec).to_spec().factors();
  if (current != target) {
    std::vector<index_t> sigma(target.size());
    std::vector<bool> used(current.size(), false);
    for (std::size_t k = 0; k < target.size(); ++k) {
      std::size_t pos = 0;
      while (used[pos] || current[pos] != target[k]) ++pos;
      used[pos] = true;
      sigma[k] = pos;
    }
    w = compose_witness(w, reorder_permutations(current, sigma));
  }
  return w;
}

}  // namespace

WitnessPair witness_equivalence(const FkpSpec& a, const FkpSpec& b, bool verify,
                                std::size_t max_entries) {
  if (a.factors() == b.factors()) {
    WitnessPair w = identity_witness(a);
    if (verify) verify_witness(w, max_entries);
    return w;
  }
  if (!p_equivalent(a, b))
    throw inequivalent_error(a.str() + " and " + b.str() + " are not permutation equivalent",
                             census_formula(a), census_formula(b));
  const WitnessPair down = reduce_to_canonical(a, max_entries);
  const WitnessPair up = inverse_witness(reduce_to_canonical(b, max_entries));
  WitnessPair w = compose_witness(down, up);
  if (verify && !verify_witness(w, max_entries))
    throw std::logic_error("composed witness failed exact verification");
  return w;
}

std::pair<DiagonalPhasing, DiagonalPhasing> dephase_to_flat(
    const PhaseExpMatrix& a, index_t i, index_t j) {
  if (i >= a.size() || j >= a.size())
    throw dimension_error("dephasing anchor out of range");
  const exp_t m = a.modulus();
  const index_t n = a.size();
  DiagonalPhasing rows(n, m), cols(n, m);
  // cols flattens row i (cols.at(0) stays 0); rows then flattens column j.
  for (index_t l = 0; l < n; ++l) cols.set(l, a.at(i, 0) + m - a.at(i, l));
  for (index_t k = 0; k < n; ++k)
    rows.set(k, (a.at(i, j) + m - a.at(k, j)) + (m - a.at(i, 0)));
  return {std::move(rows), std::move(cols)};
}

WitnessPair phasing_to_permutations(const FkpSpec& spec, index_t i, index_t j,
                                    std::size_t max_entries) {
  const std::uint64_t n = spec.product();
  if (n > kMaxWitnessSize) throw capacity_error("witness size exceeds the cap");
  if (i >= n || j >= n) throw dimension_error("anchor out of range");

  const std::vector<std::uint64_t>& sizes = spec.factors();
  const std::vector<std::uint64_t> strides = index_strides(sizes);

  std::vector<index_t> rows_image(n), cols_image(n);
  for (std::uint64_t flat = 0; flat < n; ++flat) {
    std::uint64_t forward = 0, backward = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const std::uint64_t digit = flat / strides[k] % sizes[k];
      const std::uint64_t row_anchor = i / strides[k] % sizes[k];
      const std::uint64_t col_anchor = j / strides[k] % sizes[k];
      forward += (digit + row_anchor) % sizes[k] * strides[k];
      backward += (digit + sizes[k] - col_anchor) % sizes[k] * strides[k];
    }
    rows_image[flat] = static_cast<index_t>(forward);
    cols_image[flat] = static_cast<index_t>(backward);
  }

  WitnessPair out{Permutation(std::move(rows_image)),
                  Permutation(std::move(cols_image)),
                  spec,
                  spec,
                  {"shift rows by " + std::to_string(i) + ", columns by -" +
                   std::to_string(j) + " (multiindex)"},
                  false};
  if (n <= max_entries / n) {
    const PhaseExpMatrix f = build(spec, max_entries);
    const auto diagonals = dephase_to_flat(f, i, j);
    out.verified = equal(apply(out.rows, f, out.cols),
                         phase(diagonals.first, f, diagonals.second));
  }
  return out;
}

WitnessPair pd_to_p_witness(const Permutation& row_perm,
                            const DiagonalPhasing& row_phase,
                            const FkpSpec& spec,
                            const DiagonalPhasing& col_phase,
                            const Permutation& col_perm,
                            std::size_t max_entries) {
  const PhaseExpMatrix f = build(spec, max_entries);
  const index_t n = f.size();
  if (row_perm.size() != n || col_perm.size() != n || row_phase.size() != n ||
      col_phase.size() != n)
    throw dimension_error("disguise pieces do not match the spec size");

  const PhaseExpMatrix phased = phase(row_phase, f, col_phase);

  index_t flat_row = n, flat_col = n;
  for (index_t k = 0; k < n && flat_row == n; ++k) {
    index_t l = 0;
    while (l < n && phased.at(k, l) == 0) ++l;
    if (l == n) flat_row = k;
  }
  for (index_t l = 0; l < n && flat_col == n; ++l) {
    index_t k = 0;
    while (k < n && phased.at(k, l) == 0) ++k;
    if (k == n) flat_col = l;
  }
  if (flat_row == n || flat_col == n)
    throw not_reducible_error("phased matrix has no flat row and column");

  WitnessPair shift = phasing_to_permutations(spec, flat_row, flat_col, max_entries);
  if (!equal(apply(shift.rows, f, shift.cols), phased))
    throw std::logic_error("flat anchor did not determine the phasing");

  WitnessPair out{compose(row_perm, shift.rows), compose(shift.cols, col_perm),
                  spec, spec, std::move(shift.steps), false};
  out.steps.push_back("absorb outer permutations");
  out.verified = equal(apply(out.rows, f, out.cols),
                       apply(row_perm, phased, col_perm));
  return out;
}

}  // namespace fkp
