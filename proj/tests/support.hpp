#ifndef QVSP_TESTS_SUPPORT_HPP
#define QVSP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <bitset>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "qvsp/constructions.hpp"
#include "qvsp/divisibility.hpp"

namespace qvsp::testing_support {

/// 2-divisible sets of n lines over F_2 for n = 4..7.
inline SubspaceSet base_line_set(const FieldPtr& F, int n) {
  switch (n) {
    case 4:
      return lift_set(affine_points(F, 3), 1);
    case 5:
      return subfield_spread(F, 2, 2).to_set(F);
    case 6: {
      auto a = Subspace::from_text(*F, 4, {"1000", "0100"});
      auto b = Subspace::from_text(*F, 4, {"0010", "0001"});
      std::vector<Subspace> pts = subspaces_of(*F, a, 1);
      for (const auto& p : subspaces_of(*F, b, 1)) pts.push_back(p);
      return lift_set(SubspaceSet(F, 4, 1, pts), 1);
    }
    case 7:
      return all_t_subspaces(F, 3, 2);
    default:
      throw DomainError("base_line_set: n must be in 4..7");
  }
}

/// A 2-divisible set of n >= 4 lines over F_2 built by concatenating base sets,
/// choosing the decomposition with the smallest ambient dimension.
inline std::optional<SubspaceSet> divisible_line_set(const FieldPtr& F, int n) {
  const std::map<int, int> dim{{4, 4}, {5, 4}, {6, 5}, {7, 3}};
  std::vector<int> best(static_cast<std::size_t>(n + 1), 1 << 20), last(static_cast<std::size_t>(n + 1), 0);
  best[0] = 0;
  for (int m = 1; m <= n; ++m)
    for (auto [piece, d] : dim)
      if (piece <= m && best[static_cast<std::size_t>(m - piece)] + d < best[static_cast<std::size_t>(m)]) {
        best[static_cast<std::size_t>(m)] = best[static_cast<std::size_t>(m - piece)] + d;
        last[static_cast<std::size_t>(m)] = piece;
      }
  if (best[static_cast<std::size_t>(n)] > kMaxAmbient) return std::nullopt;
  std::optional<SubspaceSet> out;
  for (int m = n; m > 0; m -= last[static_cast<std::size_t>(m)]) {
    SubspaceSet piece = base_line_set(F, last[static_cast<std::size_t>(m)]);
    out = out ? concat_sets(*out, piece) : piece;
  }
  return out;
}

inline Subspace random_subspace(std::mt19937& rng, const Field& F, int v, int k) {
  std::uniform_int_distribution<Elem> e(0, F.order() - 1);
  while (true) {
    Matrix M(static_cast<std::size_t>(k), static_cast<std::size_t>(v));
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = e(rng);
    if (static_cast<int>(rank(F, M)) == k) return Subspace::from_matrix(F, M);
  }
}

/// Random set of distinct t-subspaces of F_q^v with t and size drawn at random.
inline SubspaceSet random_set(std::mt19937& rng, const FieldPtr& F, int v) {
  std::uniform_int_distribution<int> td(1, v - 1), nd(0, 12);
  const int t = td(rng);
  const int n = nd(rng);
  std::set<Subspace> members;
  for (int i = 0; i < n; ++i) members.insert(random_subspace(rng, *F, v, t));
  return SubspaceSet(F, v, t, {members.begin(), members.end()});
}

/// Largest set of planes of F_q^v pairwise meeting in at most a point, by
/// branch-and-bound max clique with a greedy colouring bound.  Independent of
/// the LP machinery; practical for F_2^5.
inline int max_plane_packing(const Field& F, int v) {
  constexpr std::size_t kMax = 512;
  const auto planes = enumerate_subspaces(F, v, 3);
  const std::size_t n = planes.size();
  if (n > kMax) throw DomainError("max_plane_packing: too many planes");
  std::vector<std::bitset<kMax>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && meet_dim(F, planes[i], planes[j]) <= 1) adj[i].set(j);
  int best = 0;
  auto expand = [&](auto&& self, std::bitset<kMax> cand, int size) -> void {
    std::vector<std::size_t> order;
    std::vector<int> colour;
    std::bitset<kMax> uncoloured = cand;
    int k = 0;
    while (uncoloured.any()) {
      ++k;
      std::bitset<kMax> q = uncoloured;
      while (q.any()) {
        std::size_t x = 0;
        while (!q.test(x)) ++x;
        q.reset(x);
        q &= ~adj[x];
        uncoloured.reset(x);
        order.push_back(x);
        colour.push_back(k);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + colour[i] <= best) return;
      const std::size_t x = order[i];
      const std::bitset<kMax> next = cand & adj[x];
      if (next.none())
        best = std::max(best, size + 1);
      else
        self(self, next, size + 1);
      cand.reset(x);
    }
  };
  std::bitset<kMax> all;
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  expand(expand, all, 0);
  return best;
}

}  // namespace qvsp::testing_support

#endif  // QVSP_TESTS_SUPPORT_HPP
