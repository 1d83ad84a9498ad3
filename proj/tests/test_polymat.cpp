#include <gtest/gtest.h>

#include "oracles/oracles.hpp"

using namespace twalex;

namespace {

LaurentPoly P(std::string_view s) { return parse_laurent(s); }

PolyMatrix from_rows(std::initializer_list<std::initializer_list<const char*>> rows) {
  PolyMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const char* e : r) m(i, j++) = P(e);
    ++i;
  }
  return m;
}

}  // namespace

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(from_rows({{"t", "0"}, {"0", "t^-1"}})), LaurentPoly::constant(1));
  EXPECT_EQ(determinant(from_rows({{"1 + t"}})), P("1 + t"));
  EXPECT_EQ(determinant(PolyMatrix(0, 0)), LaurentPoly::constant(1));
  EXPECT_TRUE(determinant(from_rows({{"t", "1"}, {"t^2", "t"}})).is_zero());
  EXPECT_THROW(determinant(PolyMatrix(2, 3)), DomainError);
}

TEST(Determinant, MatchesCofactorExpansion) {
  oracle::Rng rng(31);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = oracle::random_matrix(rng, n, n);
      EXPECT_EQ(determinant(m), oracle::cofactor_determinant(m)) << "n = " << n;
    }
  }
}

TEST(Determinant, SingularAndSparseMatrices) {
  oracle::Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = oracle::random_matrix(rng, 4, 4, 1);
    // Zero out a random pattern, and sometimes duplicate a row.
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (oracle::uniform(rng, 0, 2) == 0) m(i, j) = LaurentPoly{};
      }
    }
    if (trial % 3 == 0) {
      for (std::size_t j = 0; j < 4; ++j) m(3, j) = m(0, j) * LaurentPoly::t(2);
    }
    EXPECT_EQ(determinant(m), oracle::cofactor_determinant(m));
  }
}

TEST(Determinant, Multiplicative) {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const auto a = oracle::random_matrix(rng, n, n, 1);
    const auto b = oracle::random_matrix(rng, n, n, 1);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(Determinant, PermutationMatricesAreUnits) {
  std::vector<std::size_t> perm{0, 1, 2, 3, 4};
  int count = 0;
  do {
    PolyMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i) m(perm[i], i) = LaurentPoly::constant(1);
    const auto d = determinant(m);
    EXPECT_TRUE(d == LaurentPoly::constant(1) || d == LaurentPoly::constant(-1));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 120);
}

TEST(DeleteBlockColumn, Examples) {
  const auto m = from_rows({{"1", "2", "3", "4"}, {"5", "6", "7", "8"}});
  EXPECT_EQ(delete_block_column(m, 0, 2), from_rows({{"3", "4"}, {"7", "8"}}));
  EXPECT_EQ(delete_block_column(m, 1, 2), from_rows({{"1", "2"}, {"5", "6"}}));
  const auto k = from_rows({{"1", "2", "3"}, {"4", "5", "6"}, {"7", "8", "9"}});
  EXPECT_EQ(delete_block_column(k, 2, 1), from_rows({{"1", "2"}, {"4", "5"}, {"7", "8"}}));
  EXPECT_THROW(delete_block_column(m, 2, 2), DomainError);
  EXPECT_THROW(delete_block_column(k, 0, 2), DomainError);
}

TEST(AllMaximalMinors, Examples) {
  const auto row = from_rows({{"t - 1", "t^2 - 1"}});
  EXPECT_EQ(all_maximal_minors(row, 1), (std::vector<LaurentPoly>{P("t - 1"), P("t^2 - 1")}));
  EXPECT_EQ(all_maximal_minors(PolyMatrix::identity(2), 2), (std::vector<LaurentPoly>{LaurentPoly::constant(1)}));
}

TEST(AllMaximalMinors, LexicographicAndMatchesDeterminants) {
  oracle::Rng rng(34);
  const auto m = oracle::random_matrix(rng, 2, 3);
  const auto minors = all_maximal_minors(m, 2);
  ASSERT_EQ(minors.size(), 3u);
  const std::vector<std::vector<std::size_t>> cols{{0, 1}, {0, 2}, {1, 2}};
  const std::vector<std::size_t> rows{0, 1};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(minors[i], oracle::cofactor_determinant(m.submatrix(rows, cols[i])));
  }
  // k smaller than both dimensions: row sets outermost.
  const auto big = oracle::random_matrix(rng, 3, 3);
  const auto ones = all_maximal_minors(big, 1);
  ASSERT_EQ(ones.size(), 9u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(ones[i], big(i / 3, i % 3));
}
