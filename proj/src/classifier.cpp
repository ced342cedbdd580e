#include "fkp/classifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fkp {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  if (n == 0) throw dimension_error("cannot factorize zero");
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

CanonicalForm::CanonicalForm(std::vector<PrimePowerGroup> groups)
    : groups_(std::move(groups)) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].prime < 2)
      throw std::invalid_argument("canonical form prime must be at least 2");
    if (g > 0 && groups_[g - 1].prime <= groups_[g].prime)
      throw std::invalid_argument("canonical form primes must strictly descend");
    const auto& exps = groups_[g].exponents;
    if (exps.empty())
      throw std::invalid_argument("canonical form group must have exponents");
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0)
        throw std::invalid_argument("canonical form exponents must be positive");
      if (k > 0 && exps[k - 1] < exps[k])
        throw std::invalid_argument("canonical form exponents must not increase");
    }
  }
}

std::uint64_t CanonicalForm::product() const {
  std::uint64_t n = 1;
  for (const auto& group : groups_)
    for (std::uint32_t k : group.exponents)
      n = checked_mul(n, checked_pow(group.prime, k));
  return n;
}

FkpSpec CanonicalForm::to_spec() const {
  std::vector<std::uint64_t> factors;
  for (const auto& group : groups_)
    for (std::uint32_t k : group.exponents)
      factors.push_back(checked_pow(group.prime, k));
  return FkpSpec(std::move(factors));
}

std::string CanonicalForm::str() const {
  if (groups_.empty()) return "F1";
  return to_spec().str();
}

CanonicalForm canonicalize(const FkpSpec& spec) {
  std::map<std::uint64_t, std::vector<std::uint32_t>, std::greater<>> by_prime;
  for (std::uint64_t f : spec.factors())
    for (const auto& [p, e] : factorize(f)) by_prime[p].push_back(e);
  std::vector<PrimePowerGroup> groups;
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    groups.push_back({p, std::move(exps)});
  }
  return CanonicalForm(std::move(groups));
}

bool p_equivalent(const FkpSpec& a, const FkpSpec& b) {
  // Equal forms force equal products, so no separate size comparison.
  return canonicalize(a) == canonicalize(b);
}

bool pd_equivalent(const FkpSpec& a, const FkpSpec& b) {
  return p_equivalent(a, b);
}

std::vector<std::uint32_t> introduction_indices(
    const std::vector<std::uint32_t>& exponents) {
  if (exponents.empty()) throw dimension_error("empty exponent sequence");
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] == 0) throw ordering_error("exponents must be positive");
    if (k > 0 && exponents[k - 1] < exponents[k])
      throw ordering_error("exponents must be non-increasing");
  }
  const std::size_t s = exponents.size();
  const std::uint32_t k_max = exponents.front();
  std::vector<std::uint32_t> intro(k_max + 1, 1);
  for (std::uint32_t t = 2; t <= k_max; ++t) {
    // Factor m counted from the right is exponents[s - m].
    std::uint32_t m = 1;
    while (exponents[s - m] < t) ++m;
    intro[t] = m;
  }
  return intro;
}

RowCensus census_formula_pure(std::uint64_t prime,
                              const std::vector<std::uint32_t>& exponents) {
  if (prime < 2) throw std::invalid_argument("prime must be at least 2");
  const std::vector<std::uint32_t> intro = introduction_indices(exponents);
  const std::uint64_t s = exponents.size();
  const std::uint32_t k_max = exponents.front();
  RowCensus census;
  census[1] = 1;
  std::uint64_t skipped_prev = 0;  // sum of (intro[l] - 1) for l <= m-1
  for (std::uint32_t m = 1; m <= k_max; ++m) {
    const std::uint64_t skipped = skipped_prev + (intro[m] - 1);
    const std::uint64_t hi = std::uint64_t{m} * s - skipped;
    const std::uint64_t lo = std::uint64_t{m - 1} * s - skipped_prev;
    census[checked_pow(prime, m)] = checked_pow(prime, hi) - checked_pow(prime, lo);
    skipped_prev = skipped;
  }
  return census;
}

RowCensus census_formula(const FkpSpec& spec) {
  RowCensus acc;
  acc[1] = 1;
  const CanonicalForm form = canonicalize(spec);
  for (const auto& group : form.groups()) {
    const RowCensus pure = census_formula_pure(group.prime, group.exponents);
    RowCensus next;
    for (const auto& [oa, ca] : acc)
      for (const auto& [ob, cb] : pure)
        next[checked_mul(oa, ob)] += checked_mul(ca, cb);
    acc = std::move(next);
  }
  return acc;
}

std::uint64_t partition_count(std::uint32_t n) {
  std::vector<std::uint64_t> table(n + 1, 0);
  table[0] = 1;
  for (std::uint32_t part = 1; part <= n; ++part)
    for (std::uint32_t total = part; total <= n; ++total)
      table[total] = checked_add(table[total], table[total - part]);
  return table[n];
}

namespace {

void collect_partitions(std::uint32_t remaining, std::uint32_t max_part,
                        std::vector<std::uint32_t>& current,
                        std::vector<std::vector<std::uint32_t>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    collect_partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> partitions_of(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current;
  collect_partitions(n, n == 0 ? 1 : n, current, out);
  return out;
}

std::uint64_t class_count(std::uint64_t n) {
  std::uint64_t count = 1;
  for (const auto& [p, e] : factorize(n))
    count = checked_mul(count, partition_count(e));
  return count;
}

namespace {

struct MemberLess {
  bool operator()(const std::vector<std::uint64_t>& a,
                  const std::vector<std::uint64_t>& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

using MemberSet = std::set<std::vector<std::uint64_t>, MemberLess>;

// Grow set partitions of the prime-power list into blocks whose primes are
// pairwise distinct; each complete partition contributes the multiset of
// block products.
void collect_members(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& elements,
                     std::size_t next, std::vector<std::vector<std::uint64_t>>& block_primes,
                     std::vector<std::uint64_t>& block_products, MemberSet& out) {
  if (next == elements.size()) {
    std::vector<std::uint64_t> member = block_products;
    std::sort(member.begin(), member.end(), std::greater<>());
    out.insert(std::move(member));
    return;
  }
  const auto& [prime, power] = elements[next];
  for (std::size_t b = 0; b < block_primes.size(); ++b) {
    if (std::find(block_primes[b].begin(), block_primes[b].end(), prime) !=
        block_primes[b].end())
      continue;
    block_primes[b].push_back(prime);
    const std::uint64_t saved = block_products[b];
    block_products[b] = checked_mul(saved, power);
    collect_members(elements, next + 1, block_primes, block_products, out);
    block_products[b] = saved;
    block_primes[b].pop_back();
  }
  block_primes.push_back({prime});
  block_products.push_back(power);
  collect_members(elements, next + 1, block_primes, block_products, out);
  block_primes.pop_back();
  block_products.pop_back();
}

std::vector<std::vector<std::uint64_t>> class_members(const CanonicalForm& form) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> elements;
  for (const auto& group : form.groups())
    for (std::uint32_t k : group.exponents)
      elements.emplace_back(group.prime, checked_pow(group.prime, k));
  MemberSet members;
  std::vector<std::vector<std::uint64_t>> block_primes;
  std::vector<std::uint64_t> block_products;
  collect_members(elements, 0, block_primes, block_products, members);
  return {members.begin(), members.end()};
}

}  // namespace

std::vector<EquivalenceClass> enumerate_classes(std::uint64_t n) {
  auto primes = factorize(n);
  std::reverse(primes.begin(), primes.end());  // primes descending

  std::vector<std::vector<std::vector<std::uint32_t>>> choices;
  for (const auto& [p, e] : primes) choices.push_back(partitions_of(e));

  std::vector<EquivalenceClass> out;
  std::vector<std::size_t> pick(primes.size(), 0);
  while (true) {
    std::vector<PrimePowerGroup> groups;
    for (std::size_t g = 0; g < primes.size(); ++g)
      groups.push_back({primes[g].first, choices[g][pick[g]]});
    CanonicalForm form(std::move(groups));
    auto members = class_members(form);
    out.push_back({std::move(form), std::move(members)});

    std::size_t g = primes.size();
    while (g > 0 && ++pick[g - 1] == choices[g - 1].size()) pick[--g] = 0;
    if (g == 0) break;
  }
  return out;
}

}  // namespace fkp
