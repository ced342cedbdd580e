#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "fkp/core.hpp"

using namespace fkp;

namespace {

PhaseExpMatrix from_rows(exp_t modulus,
                         const std::vector<std::vector<exp_t>>& rows) {
  PhaseExpMatrix m(rows.size(), modulus);
  for (index_t i = 0; i < rows.size(); ++i)
    for (index_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("checked arithmetic guards against wraparound") {
  CHECK(checked_add(3, 4) == 7);
  CHECK(checked_mul(6, 7) == 42);
  CHECK(checked_pow(2, 10) == 1024);
  CHECK(checked_pow(7, 0) == 1);
  CHECK(checked_lcm(4, 6) == 12);
  CHECK(checked_lcm(1, 9) == 9);

  const exp_t big = ~exp_t{0};
  CHECK_THROWS_AS(checked_add(big, 1), capacity_error);
  CHECK_THROWS_AS(checked_mul(big / 2, 3), capacity_error);
  CHECK_THROWS_AS(checked_pow(2, 64), capacity_error);
}

TEST_CASE("permutations compose right to left") {
  const Permutation id = Permutation::identity(4);
  CHECK(id.is_identity());
  CHECK(id(2) == 2);

  Permutation f(std::vector<index_t>{1, 2, 0});   // k -> k+1 mod 3
  Permutation g(std::vector<index_t>{0, 2, 1});   // swap 1,2
  const Permutation fg = compose(f, g);
  for (index_t k = 0; k < 3; ++k) CHECK(fg(k) == f(g(k)));

  CHECK(compose(f, f.inverse()).is_identity());
  CHECK(compose(f.inverse(), f).is_identity());
  CHECK(f.inverse().image() == std::vector<index_t>{2, 0, 1});
}

TEST_CASE("invalid permutation tables are rejected") {
  CHECK_THROWS_AS(Permutation(std::vector<index_t>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<index_t>{0, 3, 1}), std::invalid_argument);
}

TEST_CASE("fourier matrices have exponent i*j mod n") {
  const PhaseExpMatrix f1 = fourier(1);
  CHECK(f1.size() == 1);
  CHECK(f1.at(0, 0) == 0);

  const PhaseExpMatrix f4 = fourier(4);
  CHECK(f4.modulus() == 4);
  for (index_t i = 0; i < 4; ++i)
    for (index_t j = 0; j < 4; ++j) CHECK(f4.at(i, j) == (i * j) % 4);
}

TEST_CASE("phase exponent matrices normalize entries into the modulus") {
  PhaseExpMatrix m(2, 5);
  m.set(0, 1, 12);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 1) == 0);

  CHECK_THROWS_AS(PhaseExpMatrix(0, 3), dimension_error);
  CHECK_THROWS_AS(PhaseExpMatrix(2, 0), dimension_error);
  CHECK_THROWS_AS(PhaseExpMatrix(2000, 3, 1 << 10), capacity_error);
}

TEST_CASE("rescaling and reduction preserve the complex matrix") {
  const PhaseExpMatrix f2 = fourier(2);
  const PhaseExpMatrix up = f2.rescaled(6);
  CHECK(up.modulus() == 6);
  CHECK(up.at(1, 1) == 3);
  CHECK(equal(up, f2));

  CHECK(up.reduced().modulus() == 2);
  CHECK_THROWS_AS(f2.rescaled(3), dimension_error);

  // An all-zero matrix reduces to modulus 1.
  PhaseExpMatrix flat(3, 12);
  CHECK(flat.reduced().modulus() == 1);
}

TEST_CASE("kron is row-major with the left factor most significant") {
  const PhaseExpMatrix k = kron(fourier(2), fourier(3));
  CHECK(k.size() == 6);
  CHECK(k.modulus() == 6);
  // Index (a, b) flattens to 3a + b; exponent is 3*(ac mod 2) + 2*(bd mod 3).
  for (index_t a = 0; a < 2; ++a)
    for (index_t b = 0; b < 3; ++b)
      for (index_t c = 0; c < 2; ++c)
        for (index_t d = 0; d < 3; ++d)
          CHECK(k.at(3 * a + b, 3 * c + d) ==
                (3 * ((a * c) % 2) + 2 * ((b * d) % 3)) % 6);

  CHECK(kron(fourier(4), fourier(6)).modulus() == 12);
  CHECK_THROWS_AS(kron(fourier(40), fourier(40), 1 << 10), capacity_error);
}

TEST_CASE("apply moves rows by the left map and pulls columns by the right") {
  const PhaseExpMatrix a = from_rows(7, {{1, 2}, {3, 4}});
  const Permutation swap2(std::vector<index_t>{1, 0});
  const Permutation id2 = Permutation::identity(2);

  const PhaseExpMatrix rows_moved = apply(swap2, a, id2);
  CHECK(rows_moved.at(0, 0) == 3);  // row 1 landed on row 0
  CHECK(rows_moved.at(1, 1) == 2);

  const PhaseExpMatrix cols_pulled = apply(id2, a, swap2);
  CHECK(cols_pulled.at(0, 0) == 2);  // column 0 now reads old column 1
  CHECK(cols_pulled.at(1, 1) == 3);

  CHECK_THROWS_AS(apply(Permutation::identity(3), a, id2), dimension_error);
}

TEST_CASE("apply composes with permutation composition") {
  const PhaseExpMatrix a = fourier(5);
  const Permutation r1(std::vector<index_t>{1, 2, 3, 4, 0});
  const Permutation r2(std::vector<index_t>{0, 2, 4, 1, 3});
  const Permutation c1(std::vector<index_t>{4, 3, 2, 1, 0});
  const Permutation c2(std::vector<index_t>{2, 0, 3, 1, 4});

  const PhaseExpMatrix two_steps = apply(r2, apply(r1, a, c1), c2);
  const PhaseExpMatrix one_step = apply(compose(r2, r1), a, compose(c1, c2));
  CHECK(equal(two_steps, one_step));
}

TEST_CASE("phase adds diagonal exponents over the lcm modulus") {
  const PhaseExpMatrix f4 = fourier(4);
  const DiagonalPhasing dr(std::vector<exp_t>{0, 1}, 2);
  const DiagonalPhasing dc(std::vector<exp_t>{0, 0}, 1);
  const PhaseExpMatrix p = phase(DiagonalPhasing(4, 1), f4, DiagonalPhasing(4, 1));
  CHECK(equal(p, f4));

  PhaseExpMatrix f2 = fourier(2);
  const DiagonalPhasing half(std::vector<exp_t>{0, 1}, 4);
  const PhaseExpMatrix q = phase(half, f2, half);
  CHECK(q.modulus() == 4);
  CHECK(q.at(0, 0) == 0);
  CHECK(q.at(0, 1) == 1);
  CHECK(q.at(1, 0) == 1);
  CHECK(q.at(1, 1) == 0);  // 2 + 1 + 1 mod 4

  CHECK_THROWS_AS(phase(DiagonalPhasing(3, 2), f4, DiagonalPhasing(4, 2)),
                  dimension_error);
}

TEST_CASE("equality is exact and modulus independent") {
  CHECK(equal(fourier(6), fourier(6).rescaled(12)));
  CHECK_FALSE(equal(fourier(4), kron(fourier(2), fourier(2))));
  CHECK_FALSE(equal(fourier(2), fourier(3)));
}

TEST_CASE("phase orders recognize uniform residue coverage") {
  CHECK(phase_order({0, 0, 0}, 6) == 1);
  CHECK(phase_order({0, 3, 2, 1}, 4) == 4);
  CHECK(phase_order({0, 2, 0, 2}, 4) == 2);
  CHECK(phase_order({0, 2, 4, 0, 2, 4}, 6) == 3);
  // Order 4 would need a multiple of 4 entries.
  CHECK(phase_order({0, 1}, 4) == std::nullopt);
  // Residues covered but not uniformly.
  CHECK(phase_order({0, 0, 1, 3}, 4) == std::nullopt);
}

TEST_CASE("row phase orders of small fourier matrices") {
  const PhaseExpMatrix f4 = fourier(4);
  const std::vector<std::uint64_t> want = {1, 4, 2, 4};
  for (index_t i = 0; i < 4; ++i) CHECK(row_phase_order(f4, i) == want[i]);
}

TEST_CASE("census oracle counts rows by phase order") {
  CHECK(census_oracle(fourier(4)) == RowCensus{{1, 1}, {2, 1}, {4, 2}});
  CHECK(census_oracle(kron(fourier(2), fourier(2))) == RowCensus{{1, 1}, {2, 3}});
  CHECK(census_oracle(fourier(5)) == RowCensus{{1, 1}, {5, 4}});
  CHECK(census_total(census_oracle(fourier(12))) == 12);

  // A non-product matrix with an orderless row is reported as such.
  PhaseExpMatrix bad = fourier(4);
  bad.set(1, 0, 1);
  bad.set(1, 1, 1);
  CHECK_THROWS_AS(census_oracle(bad), not_an_fkp_error);
}

TEST_CASE("kron rows multiply orders: same prime takes the max power") {
  for (index_t a : {2, 3}) {
    for (std::uint32_t k = 1; k <= 4; ++k) {
      for (std::uint32_t l = 1; l <= 4; ++l) {
        const std::uint64_t pk = checked_pow(a, k);
        const std::uint64_t pl = checked_pow(a, l);
        if (pk * pl > 256) continue;
        const PhaseExpMatrix left = fourier(pk);
        const PhaseExpMatrix right = fourier(pl);
        const PhaseExpMatrix k2 = kron(left, right);
        for (index_t u = 0; u < pk; ++u)
          for (index_t v = 0; v < pl; ++v) {
            const auto ou = row_phase_order(left, u);
            const auto ov = row_phase_order(right, v);
            REQUIRE(ou.has_value());
            REQUIRE(ov.has_value());
            CHECK(row_phase_order(k2, u * pl + v) == std::max(*ou, *ov));
          }
      }
    }
  }
}

TEST_CASE("kron rows multiply orders: coprime orders multiply") {
  for (const auto& [p, q] : std::vector<std::pair<index_t, index_t>>{
           {4, 3}, {8, 3}, {4, 9}, {5, 4}, {7, 2}}) {
    const PhaseExpMatrix left = fourier(p);
    const PhaseExpMatrix right = fourier(q);
    const PhaseExpMatrix k2 = kron(left, right);
    for (index_t u = 0; u < p; ++u)
      for (index_t v = 0; v < q; ++v)
        CHECK(row_phase_order(k2, u * q + v) ==
              *row_phase_order(left, u) * *row_phase_order(right, v));
  }
}

TEST_CASE("prime power fourier censuses follow the geometric closed form") {
  for (std::uint64_t a : {2, 3, 5}) {
    for (std::uint32_t m = 1; checked_pow(a, m) <= 125; ++m) {
      RowCensus want;
      want[1] = 1;
      for (std::uint32_t r = 1; r <= m; ++r)
        want[checked_pow(a, r)] = (a - 1) * checked_pow(a, r - 1);
      CHECK(census_oracle(fourier(checked_pow(a, m))) == want);
    }
  }
}

TEST_CASE("the census ignores factor order") {
  for (index_t p = 2; p <= 32; ++p)
    for (index_t q = p; p * q <= 64; ++q)
      CHECK(census_oracle(kron(fourier(p), fourier(q))) ==
            census_oracle(kron(fourier(q), fourier(p))));
}

TEST_CASE("brute force search finds witnesses exactly when classes agree") {
  const PhaseExpMatrix f6 = fourier(6);
  const PhaseExpMatrix k23 = kron(fourier(2), fourier(3));
  const auto found = brute_force_equiv(f6, k23);
  REQUIRE(found.has_value());
  CHECK(equal(apply(found->first, f6, found->second), k23));

  CHECK(brute_force_equiv(f6, f6).has_value());
  CHECK_FALSE(brute_force_equiv(fourier(4), kron(fourier(2), fourier(2))).has_value());
  CHECK_FALSE(brute_force_equiv(fourier(2), fourier(3)).has_value());

  CHECK_THROWS_AS(brute_force_equiv(fourier(16), fourier(16), 12), capacity_error);
}
