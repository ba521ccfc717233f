#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "qvsp/constructions.hpp"
#include "qvsp/divisibility.hpp"

using namespace qvsp;

namespace {

// Cover count of every line by direct containment tests, independent of the
// marking table used by verify_partition.
bool covers_every_line_once(const Field& F, int v, const std::vector<Subspace>& members) {
  for (const auto& L : enumerate_subspaces(F, v, 2)) {
    int c = 0;
    for (const auto& M : members) c += contains(F, M, L) ? 1 : 0;
    if (c != 1) return false;
  }
  return true;
}

}  // namespace

TEST(Coordinates, HyperplaneAndDrop) {
  auto F = make_field(2, 1);
  auto H = coordinate_hyperplane(5, 2);
  EXPECT_EQ(H.dim(), 4);
  EXPECT_EQ(dual(*F, H), Subspace::from_text(*F, 5, {"00100"}));
  auto S = Subspace::from_text(*F, 5, {"11010", "00001"});
  EXPECT_EQ(drop_coordinate(S, 2), Subspace::from_text(*F, 4, {"1110", "0001"}));
  EXPECT_THROW(drop_coordinate(S, 0), DomainError);
  EXPECT_EQ(embed(S, 1, 2), Subspace::from_text(*F, 8, {"01101000", "00000100"}));
}

TEST(LiftedMRD, SizesAndDistances) {
  auto F = make_field(2, 1);
  struct Case {
    int v, k, d;
    std::size_t size;
  };
  for (auto c : std::vector<Case>{{8, 4, 6, 256}, {7, 3, 4, 256}, {4, 2, 4, 4}, {6, 3, 4, 64}, {7, 4, 4, 256}, {6, 2, 2, 256}}) {
    auto code = lifted_mrd(F, c.v, c.k, c.d);
    EXPECT_EQ(code.codewords.size(), c.size) << c.v << " " << c.k << " " << c.d;
    EXPECT_EQ(BigInt(c.size), code.size);
    EXPECT_GE(min_distance(*F, code.codewords), c.d);
    EXPECT_TRUE(is_disjoint_from(*F, code.codewords, code.U));
    EXPECT_EQ(code.U.dim(), c.v - c.k);
    for (const auto& C : code.codewords) EXPECT_EQ(C.dim(), c.k);
  }
}

TEST(LiftedMRD, TernaryAndErrors) {
  auto F3 = make_field(3, 1);
  auto code = lifted_mrd(F3, 5, 2, 4);
  EXPECT_EQ(code.codewords.size(), 27u);
  EXPECT_EQ(min_distance(*F3, code.codewords), 4);
  auto F = make_field(2, 1);
  EXPECT_THROW(lifted_mrd(F, 8, 4, 5), DomainError);
  EXPECT_THROW(lifted_mrd(F, 8, 4, 10), DomainError);
  EXPECT_THROW(lifted_mrd(F, 4, 4, 2), DomainError);
  EXPECT_THROW(lifted_mrd(F, 8, 4, 2, true, 1000), BudgetExceeded);
}

TEST(MrdPartition, Types) {
  auto F = make_field(2, 1);
  auto P = mrd_partition(F, 7, 3, 1);
  EXPECT_EQ(P.type().render(true), "5^1 3^256 2^*");
  EXPECT_TRUE(covers_every_line_once(*F, 7, P.members()));
  auto Q = mrd_partition(F, 5, 3, 1);
  EXPECT_EQ(Q.type().render(true), "3^9 2^*");
  auto R = mrd_partition(F, 6, 3, 1);
  EXPECT_EQ(R.type().render(true), "4^1 3^64 2^*");
  EXPECT_THROW(mrd_partition(F, 7, 2, 1), DomainError);
  EXPECT_THROW(mrd_partition(F, 4, 3, 1), DomainError);
}

TEST(F27, VariantA) {
  auto F = make_field(2, 1);
  auto P = f27_construction(F, F27Variant::A);
  EXPECT_EQ(P.type().render(), "4^17 3^240 2^392");
  EXPECT_TRUE(covers_every_line_once(*F, 7, P.members()));
  std::vector<Subspace> solids;
  for (const auto& M : P.members())
    if (M.dim() == 4) solids.push_back(M);
  for (std::size_t i = 0; i < solids.size(); ++i)
    for (std::size_t j = i + 1; j < solids.size(); ++j) EXPECT_EQ(meet_dim(*F, solids[i], solids[j]), 1);
}

TEST(F27, VariantB) {
  auto F = make_field(2, 1);
  auto P = f27_construction(F, F27Variant::B);
  EXPECT_EQ(P.type().render(), "4^16 3^247 2^378");
  EXPECT_TRUE(covers_every_line_once(*F, 7, P.members()));
}

TEST(F27, TernaryVariantAType) {
  auto F = make_field(3, 1);
  auto P = f27_construction(F, F27Variant::A);
  EXPECT_EQ(P.type().count(4), 82u);
  EXPECT_EQ(P.type().count(3), 6561u - 81u);
  EXPECT_TRUE(packing_check(P.type(), 3));
}

TEST(Spread, Subfield) {
  auto F = make_field(2, 1);
  for (auto [t, a, size] : std::vector<std::tuple<int, int, std::size_t>>{{2, 2, 5}, {3, 2, 9}, {2, 3, 21}, {1, 4, 15}}) {
    auto S = subfield_spread(F, t, a);
    ASSERT_EQ(S.members.size(), size);
    std::multiset<Subspace> covered;
    for (const auto& M : S.members) {
      EXPECT_EQ(M.dim(), t);
      for (const auto& p : subspaces_of(*F, M, 1)) covered.insert(p);
    }
    auto pts = points(*F, a * t);
    EXPECT_EQ(covered.size(), pts.size());
    for (const auto& p : pts) EXPECT_EQ(covered.count(p), 1u);
  }
  auto F3 = make_field(3, 1);
  auto S3 = subfield_spread(F3, 2, 2);
  EXPECT_EQ(S3.members.size(), 10u);
  EXPECT_EQ(min_distance(*F3, S3.members), 4);
}

TEST(Spread, DisjointPair) {
  auto F = make_field(2, 1);
  auto one = disjoint_spreads(F, 2, 2, 1);
  ASSERT_EQ(one.spreads.size(), 1u);
  EXPECT_EQ(one.spreads[0].members, subfield_spread(F, 2, 2).members);
  auto two = disjoint_spreads(F, 2, 2, 2);
  ASSERT_EQ(two.status, DisjointSpreadsResult::Status::found);
  ASSERT_EQ(two.spreads.size(), 2u);
  std::set<Subspace> all;
  for (const auto& S : two.spreads) {
    EXPECT_EQ(S.members.size(), 5u);
    EXPECT_EQ(min_distance(*F, S.members), 4);
    all.insert(S.members.begin(), S.members.end());
  }
  EXPECT_EQ(all.size(), 10u);
}

TEST(Spread, BudgetExhaustionIsNotNonExistence) {
  auto F = make_field(2, 1);
  auto r = disjoint_spreads(F, 2, 2, 2, 1);
  EXPECT_EQ(r.status, DisjointSpreadsResult::Status::not_found_within_budget);
  EXPECT_EQ(r.spreads.size(), 1u);
}

TEST(ExactCover, SmallInstances) {
  // Knuth's example: items 0..6.
  ExactCover x(7);
  x.add_option({2, 4});
  x.add_option({0, 3, 6});
  x.add_option({1, 2, 5});
  x.add_option({0, 3, 5});
  x.add_option({1, 6});
  x.add_option({3, 4, 6});
  auto r = x.solve(1000);
  ASSERT_EQ(r.status, ExactCover::Status::found);
  std::set<std::size_t> chosen(r.options.begin(), r.options.end());
  EXPECT_EQ(chosen, (std::set<std::size_t>{0, 3, 4}));
  EXPECT_THROW(x.solve(10), DomainError);
  ExactCover impossible(3);
  impossible.add_option({0, 1});
  impossible.add_option({1, 2});
  EXPECT_EQ(impossible.solve(100).status, ExactCover::Status::exhausted);
}

TEST(Grid, AllSubspaces) {
  auto F = make_field(2, 1);
  EXPECT_EQ(all_t_subspaces(F, 3, 2).size(), 7u);
  EXPECT_EQ(all_t_subspaces(F, 4, 2).size(), 35u);
  auto F3 = make_field(3, 1);
  EXPECT_EQ(BigInt(all_t_subspaces(F3, 3, 2).size()), gaussian(3, 2, 3));
}

TEST(Lift, Embedding) {
  auto F = make_field(2, 1);
  auto A = affine_points(F, 3);
  ASSERT_EQ(A.size(), 4u);
  EXPECT_EQ(lift_set(A, 0).members(), A.members());
  auto L = lift_set(A, 1);
  EXPECT_EQ(L.v(), 4);
  EXPECT_EQ(L.t(), 2);
  EXPECT_EQ(L.size(), 4u);
  auto U = Subspace::from_text(*F, 4, {"0001"});
  for (const auto& M : L.members()) EXPECT_TRUE(contains(*F, M, U));
}

TEST(Concat, DirectSum) {
  auto F = make_field(2, 1);
  auto A = lift_set(affine_points(F, 3), 1);
  auto S = subfield_spread(F, 2, 2).to_set(F);
  auto C = concat_sets(A, S);
  EXPECT_EQ(C.v(), 8);
  EXPECT_EQ(C.size(), 9u);
  auto empty = SubspaceSet(F, 3, 2, {});
  auto same = concat_sets(A, empty);
  EXPECT_EQ(same.size(), A.size());
  EXPECT_EQ(same.v(), 7);
  EXPECT_THROW(concat_sets(A, affine_points(F, 3)), DomainError);
}
