#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qvsp/gf.hpp"

using namespace qvsp;

namespace {

// Rank of a binary matrix given as row bitmasks, by plain xor elimination.
int rank_bits(std::vector<std::uint32_t> rows) {
  int r = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin() + r, rows.end(), [&](std::uint32_t x) { return (x >> bit) & 1u; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[static_cast<std::size_t>(r)]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (static_cast<int>(i) != r && ((rows[i] >> bit) & 1u)) rows[i] ^= rows[static_cast<std::size_t>(r)];
    ++r;
  }
  return r;
}

std::uint32_t row_bits(const Matrix& M, std::size_t r) {
  std::uint32_t x = 0;
  for (std::size_t c = 0; c < M.cols(); ++c) x |= static_cast<std::uint32_t>(M(r, c)) << c;
  return x;
}

Matrix random_matrix(std::mt19937& rng, const Field& F, std::size_t r, std::size_t c) {
  Matrix M(r, c);
  std::uniform_int_distribution<Elem> d(0, F.order() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = d(rng);
  return M;
}

}  // namespace

TEST(MakeField, PrimeFieldTwo) {
  auto F = make_field(2, 1);
  EXPECT_EQ(F->order(), 2u);
  EXPECT_TRUE(F->is_prime_field());
  EXPECT_EQ(F->add(1, 1), 0u);
  EXPECT_EQ(F->mul(1, 1), 1u);
}

TEST(MakeField, FourHasTheOnlyIrreducibleQuadratic) {
  // Over F_2 the monic quadratics are x^2, x^2+1, x^2+x, x^2+x+1; only the last
  // has no root.
  std::vector<std::vector<Elem>> irreducible;
  for (Elem c0 = 0; c0 < 2; ++c0)
    for (Elem c1 = 0; c1 < 2; ++c1) {
      bool root = false;
      for (Elem x = 0; x < 2; ++x) root |= ((x * x + c1 * x + c0) % 2) == 0;
      if (!root) irreducible.push_back({c0, c1, 1});
    }
  ASSERT_EQ(irreducible.size(), 1u);
  auto F = make_field(2, 2);
  EXPECT_EQ(F->order(), 4u);
  EXPECT_EQ(F->modulus(), irreducible.front());
}

TEST(MakeField, RejectsNonPrimeAndLargeOrders) {
  EXPECT_THROW(make_field(4, 1), DomainError);
  EXPECT_THROW(make_field(1, 1), DomainError);
  EXPECT_THROW(make_field(2, 5), DomainError);
  EXPECT_THROW(make_field(17, 1), DomainError);
  EXPECT_NO_THROW(make_field(2, 4));
  EXPECT_NO_THROW(make_field(13, 1));
}

TEST(MakeField, ModulusIsIrreducibleByRootAndFactorSearch) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    auto F = make_field(p, e);
    auto Fp = make_field(p, 1);
    EXPECT_TRUE(is_irreducible(*Fp, F->modulus())) << p << "^" << e;
  }
}

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, ExhaustiveTriples) {
  auto F = field_of_order(GetParam());
  const Elem n = F->order();
  for (Elem a = 0; a < n; ++a) {
    EXPECT_EQ(F->add(a, F->neg(a)), 0u);
    if (a != 0) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    for (Elem b = 0; b < n; ++b) {
      EXPECT_EQ(F->add(a, b), F->add(b, a));
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      if (a != 0 && b != 0) EXPECT_NE(F->mul(a, b), 0u);
      for (Elem c = 0; c < n; ++c) {
        ASSERT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
        ASSERT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
        ASSERT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllSmallOrders, FieldAxioms, ::testing::Values(2, 3, 4, 5, 7, 8, 9, 11, 13, 16));

TEST(MakeExtension, SixteenOverTwo) {
  auto F2 = make_field(2, 1);
  auto E = make_extension(F2, 4);
  EXPECT_EQ(E->order(), 16u);
  EXPECT_EQ(E->degree(), 4);
  std::set<std::vector<Elem>> seen;
  for (Elem x = 0; x < 16; ++x) {
    auto c = E->coordinates(x);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(E->from_coordinates(c), x);
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(MakeExtension, DegreeOneIsTheBaseField) {
  auto F2 = make_field(2, 1);
  auto E = make_extension(F2, 1);
  EXPECT_EQ(E->order(), 2u);
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) {
      EXPECT_EQ(E->add(a, b), F2->add(a, b));
      EXPECT_EQ(E->mul(a, b), F2->mul(a, b));
    }
}

TEST(MakeExtension, NineCoordinateMapIsLinearBijection) {
  auto F3 = make_field(3, 1);
  auto E = make_extension(F3, 2);
  std::set<std::vector<Elem>> seen;
  for (Elem x = 0; x < 9; ++x) {
    seen.insert(E->coordinates(x));
    for (Elem y = 0; y < 9; ++y) {
      auto cx = E->coordinates(x), cy = E->coordinates(y), cs = E->coordinates(E->add(x, y));
      for (int i = 0; i < 2; ++i) EXPECT_EQ(cs[i], F3->add(cx[i], cy[i]));
    }
    for (Elem s = 0; s < 3; ++s) {
      auto cx = E->coordinates(x), cm = E->coordinates(E->mul(s, x));
      for (int i = 0; i < 2; ++i) EXPECT_EQ(cm[i], F3->mul(s, cx[i]));
    }
  }
  EXPECT_EQ(seen.size(), 9u);
  // a*x + b has coordinates (b, a).
  const Elem x = E->from_coordinates(std::vector<Elem>{0, 1});
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) EXPECT_EQ(E->coordinates(E->add(E->mul(a, x), b)), (std::vector<Elem>{b, a}));
}

TEST(MakeExtension, RejectsOverflow) {
  auto F16 = make_field(2, 4);
  EXPECT_NO_THROW(make_extension(F16, 4));
  EXPECT_THROW(make_extension(F16, 5), DomainError);
}

TEST(MakeExtension, FrobeniusIsLinear) {
  auto F2 = make_field(2, 1);
  auto F4 = make_field(2, 2);
  for (const auto& E : {make_extension(F2, 8), make_extension(F4, 4), make_extension(F2, 3)}) {
    const Elem n = std::min<Elem>(E->order(), 256);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        ASSERT_EQ(E->add(E->frobenius(x), E->frobenius(y)), E->frobenius(E->add(x, y)));
  }
  std::mt19937 rng(7);
  auto big = make_extension(F2, 16);
  std::uniform_int_distribution<Elem> d(0, big->order() - 1);
  for (int i = 0; i < 5000; ++i) {
    Elem x = d(rng), y = d(rng);
    ASSERT_EQ(big->add(big->frobenius(x), big->frobenius(y)), big->frobenius(big->add(x, y)));
  }
}

TEST(Rref, IdentityIsFixed) {
  auto F = make_field(2, 1);
  auto r = rref(*F, Matrix::identity(3));
  EXPECT_EQ(r.matrix, Matrix::identity(3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, DependentRow) {
  auto F = make_field(2, 1);
  auto r = rref(*F, Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.matrix, Matrix::from_rows({{1, 0, 1}, {0, 1, 1}}));
}

TEST(Rref, ZeroMatrix) {
  auto F = make_field(3, 1);
  auto r = rref(*F, Matrix(2, 4));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.matrix.rows(), 0u);
  EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, IdempotentAndTransposeRank) {
  std::mt19937 rng(2024);
  for (int q : {2, 3, 4, 5, 9}) {
    auto F = field_of_order(q);
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 7);
      Matrix M = random_matrix(rng, *F, dim(rng), dim(rng));
      auto r = rref(*F, M);
      EXPECT_EQ(rref(*F, r.matrix).matrix, r.matrix);
      EXPECT_EQ(rank(*F, M.transpose()), r.rank);
      for (std::size_t i = 1; i < r.pivots.size(); ++i) EXPECT_LT(r.pivots[i - 1], r.pivots[i]);
    }
  }
}

TEST(Rref, AgreesWithBitEliminationOverTwo) {
  std::mt19937 rng(99);
  auto F = make_field(2, 1);
  for (int trial = 0; trial < 500; ++trial) {
    Matrix M = random_matrix(rng, *F, 6, 9);
    std::vector<std::uint32_t> bits;
    for (std::size_t i = 0; i < M.rows(); ++i) bits.push_back(row_bits(M, i));
    EXPECT_EQ(static_cast<int>(rank(*F, M)), rank_bits(bits));
  }
}

TEST(Gabidulin, IdentityMap) {
  auto E = make_extension(make_field(2, 1), 4);
  std::vector<Elem> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(E->pow(2, static_cast<std::uint64_t>(i)));
  std::vector<Elem> one{1};
  Matrix C = gabidulin_codeword(*E, pts, one);
  EXPECT_EQ(rank(*E->base(), C), 4u);
  std::vector<Elem> zero{0};
  EXPECT_EQ(rank(*E->base(), gabidulin_codeword(*E, pts, zero)), 0u);
}

TEST(Gabidulin, DependentPointsRejected) {
  auto E = make_extension(make_field(2, 1), 4);
  std::vector<Elem> pts{1, 1, 2, 4};
  std::vector<Elem> c{1};
  EXPECT_THROW(gabidulin_codeword(*E, pts, c), ValidationError);
}

// Exhaustive code size and minimum rank distance for q = 2, m <= 4.
TEST(Gabidulin, MinimumRankDistanceExhaustive) {
  auto F2 = make_field(2, 1);
  for (int m = 1; m <= 4; ++m) {
    auto E = make_extension(F2, m);
    std::vector<Elem> pts;
    for (int i = 0; i < m; ++i) pts.push_back(E->from_coordinates([&] {
      std::vector<Elem> c(static_cast<std::size_t>(m), 0);
      c[static_cast<std::size_t>(i)] = 1;
      return c;
    }()));
    for (int ell = 1; ell <= m; ++ell) {
      const std::uint32_t per = E->order();
      std::uint64_t total = 1;
      for (int i = 0; i < ell; ++i) total *= per;
      std::set<std::vector<std::uint32_t>> words;
      std::vector<std::vector<std::uint32_t>> list;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> coeff(static_cast<std::size_t>(ell));
        std::uint64_t x = idx;
        for (auto& c : coeff) {
          c = static_cast<Elem>(x % per);
          x /= per;
        }
        Matrix C = gabidulin_codeword(*E, pts, coeff);
        std::vector<std::uint32_t> bits;
        for (std::size_t r = 0; r < C.rows(); ++r) bits.push_back(row_bits(C, r));
        words.insert(bits);
        list.push_back(bits);
      }
      EXPECT_EQ(words.size(), total);
      int best = m + 1;
      // Pairwise for codes up to 4096 words; above that the code is linear in
      // the coefficients, so the least nonzero rank is the distance.
      const std::size_t firsts = list.size() <= 4096 ? list.size() : 1;
      for (std::size_t i = 0; i < firsts; ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          std::vector<std::uint32_t> diff(list[i].size());
          for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = list[i][r] ^ list[j][r];
          best = std::min(best, rank_bits(diff));
        }
      if (total > 1) EXPECT_EQ(best, m - ell + 1) << "m=" << m << " ell=" << ell;
    }
  }
}
