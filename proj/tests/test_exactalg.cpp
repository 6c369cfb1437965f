#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fatpoints/matrix.hpp"
#include "fatpoints/prime_field.hpp"
#include "fatpoints/rational.hpp"
#include "fatpoints/rng.hpp"

using namespace fatpoints;

namespace {

DenseMatrix<Rational> random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = Rational(rng.range(-99, 99), rng.range(1, 9));
  return m;
}

DenseMatrix<Rational> identity(std::size_t n) {
  DenseMatrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

bool is_zero_vector(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace

TEST_CASE("rational invariants") {
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational(3, 7).denominator() > 0);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(-5, 4).pow(0) == Rational(1));
  CHECK(Rational(7, 2) + Rational(-7, 2) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), InvalidInput);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational(1).reciprocal() / Rational(0), InvalidInput);
}

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime_u64(2147483647ULL));       // 2^31 - 1
  CHECK_FALSE(is_prime_u64(1073741825ULL)); // 2^30 + 1 = 5^2 * ...
  Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    const std::uint64_t p = random_prime(rng);
    CHECK(p > (1ULL << 30));
    CHECK(is_prime_u64(p));
    const Fp a(123456789, p);
    CHECK((a * a.inverse()).value() == 1);
    CHECK((a - a).is_zero());
  }
  const std::uint64_t p = 2147483647ULL;
  CHECK(Fp::from_rational(Rational(-1, 2), p).value() == (p - 1) * ((p + 1) / 2) % p);
  CHECK_THROWS_AS(Fp::from_rational(Rational(1, static_cast<long>(p)), p), BadPrime);
}

TEST_CASE("rank of trivial matrices") {
  CHECK(rank_exact(DenseMatrix<Rational>(0, 0)) == 0);
  CHECK(rank_exact(identity(3)) == 3);
  CHECK(rank_exact(DenseMatrix<Rational>(2, 7)) == 0);
  const std::uint64_t p = 2147483647ULL;
  CHECK(rank_mod_p(identity(4), p) == 4);
  CHECK(rank_mod_p(DenseMatrix<Rational>(2, 7), p) == 0);
  CHECK_THROWS_AS(rank_mod_p(identity(2), 1000003ULL), InvalidInput);  // prime too small
}

// Vanishing-to-order-2 conditions of one point against the five chart
// monomials {1, u, u^2, v, uv} at (u, v) = (2, 3). Elimination by hand:
// row 1 pivots in column 0, row 2 in column 3, row 3 in column 1 — rank 3.
TEST_CASE("hand-checked interpolation matrix has rank 3") {
  DenseMatrix<Rational> m(3, 5);
  const long rows[3][5] = {
      {1, 2, 4, 3, 6},  // values
      {0, 0, 0, 1, 2},  // d/dv
      {0, 1, 4, 0, 3},  // d/du
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = Rational(rows[i][j]);
  CHECK(rank_exact(m) == 3);
  const auto kernel = kernel_basis(m);
  REQUIRE(kernel.size() == 2);
  for (const auto& v : kernel) CHECK(is_zero_vector(m.apply(v)));
}

TEST_CASE("kernel of trivial matrices") {
  CHECK(kernel_basis(identity(3)).empty());
  const auto k = kernel_basis(DenseMatrix<Rational>(2, 3));
  REQUIRE(k.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(k[i][i] == Rational(1));
}

TEST_CASE("rank properties on random matrices") {
  Rng rng(20250101);
  for (int iter = 0; iter < 25; ++iter) {
    const std::size_t rows = 1 + rng.next() % 8;
    const std::size_t cols = 1 + rng.next() % 8;
    DenseMatrix<Rational> m = random_matrix(rows, cols, rng);

    const std::size_t r = rank_exact(m);
    CHECK(r == rank_exact(m.transpose()));
    CHECK(r <= std::min(rows, cols));

    // Row/column permutation invariance.
    DenseMatrix<Rational> perm = m;
    for (std::size_t i = 0; i + 1 < rows; ++i) perm.swap_rows(i, rows - 1 - (rng.next() % (rows - i)));
    CHECK(rank_exact(perm) == r);
    DenseMatrix<Rational> col_perm(rows, cols);
    const std::size_t shift = rng.next() % cols;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) col_perm(i, (j + shift) % cols) = m(i, j);
    CHECK(rank_exact(col_perm) == r);

    const auto kernel = kernel_basis(m);
    CHECK(kernel.size() == cols - r);
    for (const auto& v : kernel) CHECK(is_zero_vector(m.apply(v)));
  }
}

TEST_CASE("modular rank is a lower bound and usually exact") {
  Rng rng(424242);
  int agreements_checked = 0;
  for (int iter = 0; iter < 10; ++iter) {
    DenseMatrix<Rational> m = random_matrix(10, 10, rng);
    if (iter % 2 == 0) {
      // Force rank deficiency: replace the last rows by combinations.
      for (std::size_t j = 0; j < 10; ++j) {
        m(8, j) = m(0, j) + m(1, j);
        m(9, j) = m(2, j) - m(3, j) * Rational(5, 3);
      }
    }
    const std::size_t exact = rank_exact(m);
    int agree = 0;
    for (int t = 0; t < 3; ++t) {
      const std::size_t modular = rank_mod_p(m, random_prime(rng));
      CHECK(modular <= exact);
      if (modular == exact) ++agree;
    }
    CHECK(agree >= 2);
    ++agreements_checked;
  }
  CHECK(agreements_checked == 10);
}

TEST_CASE("modular-row kernel shortcut equals the plain kernel") {
  Rng rng(777);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t rows = 2 + rng.next() % 9;
    const std::size_t cols = 2 + rng.next() % 7;
    DenseMatrix<Rational> m = random_matrix(rows, cols, rng);
    if (rows >= 4) {
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * Rational(3, 2);
    }
    const std::uint64_t p = random_prime(rng);
    const auto elim = fp_eliminate(reduce_mod_p(m, p));
    const auto fast = kernel_via_modular_rows(m, elim.pivot_rows);
    const auto plain = kernel_basis(m);
    REQUIRE(fast.size() == plain.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == plain[i]);
  }
}

TEST_CASE("modular-row kernel survives a deliberately bad row choice") {
  // Simulates an unlucky prime: hand the shortcut a row set that is NOT
  // independent over Q, and a row set that misses rows entirely.
  Rng rng(31337);
  DenseMatrix<Rational> m = random_matrix(5, 4, rng);
  const auto plain = kernel_basis(m);
  const auto fast = kernel_via_modular_rows(m, {0, 1});
  REQUIRE(fast.size() == plain.size());
  for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == plain[i]);
  const auto none = kernel_via_modular_rows(m, {});
  REQUIRE(none.size() == plain.size());
  for (std::size_t i = 0; i < none.size(); ++i) CHECK(none[i] == plain[i]);
}
