#ifndef QVSP_CONSTRUCTIONS_HPP
#define QVSP_CONSTRUCTIONS_HPP

// Explicit constructions of partitions and divisible sets.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qvsp/error.hpp"
#include "qvsp/exact_cover.hpp"
#include "qvsp/gf.hpp"
#include "qvsp/partition.hpp"
#include "qvsp/subspace.hpp"
#include "qvsp/subspace_set.hpp"

namespace qvsp {

// ---------------------------------------------------------------------------
// Coordinate helpers

/// The hyperplane x_i = 0 of F_q^v.
inline Subspace coordinate_hyperplane(int v, int i) {
  if (i < 0 || i >= v) throw DomainError("coordinate index out of range");
  Matrix M(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(v));
  std::size_t r = 0;
  for (int c = 0; c < v; ++c)
    if (c != i) M(r++, static_cast<std::size_t>(c)) = 1;
  return Subspace::from_rref(M);
}

/// Deletes coordinate i from a subspace whose vectors all have x_i = 0.  The
/// canonical form survives because column i carries no pivot and only zeros.
inline Subspace drop_coordinate(const Subspace& S, int i) {
  const int v = S.ambient();
  if (i < 0 || i >= v) throw DomainError("coordinate index out of range");
  Matrix M(static_cast<std::size_t>(S.dim()), static_cast<std::size_t>(v - 1));
  for (int r = 0; r < S.dim(); ++r) {
    if (S.entry(r, i) != 0) throw DomainError("drop_coordinate: subspace is not inside x_i = 0");
    int out = 0;
    for (int c = 0; c < v; ++c)
      if (c != i) M(static_cast<std::size_t>(r), static_cast<std::size_t>(out++)) = S.entry(r, c);
  }
  return Subspace::from_rref(M);
}

/// Places S into F_q^{before + v + after} on the middle coordinates.
inline Subspace embed(const Subspace& S, int before, int after) {
  const int v = S.ambient();
  if (before < 0 || after < 0 || before + v + after > kMaxAmbient) throw DomainError("embedding exceeds the ambient limit");
  Matrix M(static_cast<std::size_t>(S.dim()), static_cast<std::size_t>(before + v + after));
  for (int r = 0; r < S.dim(); ++r)
    for (int c = 0; c < v; ++c) M(static_cast<std::size_t>(r), static_cast<std::size_t>(before + c)) = S.entry(r, c);
  return Subspace::from_rref(M);
}

// ---------------------------------------------------------------------------
// Lifted MRD codes

struct LiftedMRDCode {
  int q = 0, v = 0, k = 0, d = 0;
  std::vector<Subspace> codewords;  // sorted
  Subspace U;                       // row space of [0 | I_{v-k}]
  BigInt size;                      // M(q,k,v,d)
};

/// q^{max(k,v-k) * (min(k,v-k) - d/2 + 1)}.
inline BigInt lifted_mrd_size(int q, int v, int k, int d) {
  const int n = std::min(k, v - k), m = std::max(k, v - k);
  return ipow(q, m * (n - d / 2 + 1));
}

/// Row spaces of [I_k | A] with A running over a Gabidulin code of minimum
/// rank distance d/2.  The Gabidulin code lives on the longer side: for
/// k <= v-k the k x (v-k) matrices are codewords, otherwise their transposes.
/// `checked` recomputes the minimum distance over all pairs, disjointness from
/// U, and (for k <= v-k) the perfect cover of the (k-d/2+1)-subspaces
/// disjoint from U.
inline LiftedMRDCode lifted_mrd(const FieldPtr& F, int v, int k, int d, bool checked = true,
                                std::uint64_t budget = enumeration_budget()) {
  if (!F || !F->is_prime_field()) throw DomainError("lifted_mrd: base field must be a prime field");
  if (k < 1 || k >= v || v > kMaxAmbient) throw DomainError("lifted_mrd: need 1 <= k < v <= 16");
  const int n = std::min(k, v - k), m = std::max(k, v - k);
  if (d < 2 || d % 2 != 0 || d > 2 * n) throw DomainError("lifted_mrd: d must be even with 2 <= d <= 2 min(k, v-k)");
  const int q = static_cast<int>(F->order());
  const int ell = n - d / 2 + 1;
  LiftedMRDCode code{q, v, k, d, {}, {}, lifted_mrd_size(q, v, k, d)};
  check_budget(code.size, budget, "lifted MRD code");

  auto ext = make_extension(F, m);
  std::vector<Elem> pts;
  for (int i = 0; i < n; ++i) {
    std::vector<Elem> c(static_cast<std::size_t>(m), 0);
    c[static_cast<std::size_t>(i)] = 1;
    pts.push_back(ext->from_coordinates(c));
  }
  const auto total = static_cast<std::uint64_t>(code.size);
  code.codewords.reserve(total);
  std::vector<Elem> coeff(static_cast<std::size_t>(ell));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (auto& c : coeff) {
      c = static_cast<Elem>(x % ext->order());
      x /= ext->order();
    }
    const Matrix C = gabidulin_codeword(*ext, pts, coeff);  // n x m
    Matrix G(static_cast<std::size_t>(k), static_cast<std::size_t>(v));
    for (int r = 0; r < k; ++r) {
      G(static_cast<std::size_t>(r), static_cast<std::size_t>(r)) = 1;
      for (int c = 0; c < v - k; ++c)
        G(static_cast<std::size_t>(r), static_cast<std::size_t>(k + c)) =
            k <= v - k ? C(static_cast<std::size_t>(r), static_cast<std::size_t>(c))
                       : C(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
    }
    code.codewords.push_back(Subspace::from_rref(G));
  }
  std::sort(code.codewords.begin(), code.codewords.end());

  Matrix Ug(static_cast<std::size_t>(v - k), static_cast<std::size_t>(v));
  for (int r = 0; r < v - k; ++r) Ug(static_cast<std::size_t>(r), static_cast<std::size_t>(k + r)) = 1;
  code.U = Subspace::from_rref(Ug);

  if (checked) {
    if (std::adjacent_find(code.codewords.begin(), code.codewords.end()) != code.codewords.end())
      throw ValidationError("lifted_mrd: repeated codeword");
    if (code.codewords.size() >= 2 && min_distance(*F, code.codewords) < d)
      throw ValidationError("lifted_mrd: minimum distance below d");
    if (!is_disjoint_from(*F, code.codewords, code.U)) throw ValidationError("lifted_mrd: codeword meets U");
    if (k <= v - k) {
      const int s = k - d / 2 + 1;
      std::unordered_set<Subspace, SubspaceHash> covered;
      for (const auto& C : code.codewords)
        for (auto& W : subspaces_of(*F, C, s, budget))
          if (!covered.insert(std::move(W)).second) throw ValidationError("lifted_mrd: an s-subspace is covered twice");
      if (BigInt(covered.size()) != gaussian(k, s, q) * ipow(q, s * (v - k)))
        throw ValidationError("lifted_mrd: s-subspaces disjoint from U are not all covered");
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// Partitions

/// (t+1)-partition of F_q^v of type (v-k+t)^1 k^m (t+1)^*, with
/// log_q m = max(k,v-k) * (min(k,v-k) - k + t + 1).  For v = 2k-t the added
/// subspace is itself k-dimensional and the type reads k^{m+1} (t+1)^*.
inline TPartition mrd_partition(const FieldPtr& F, int v, int k, int t, std::uint64_t budget = enumeration_budget()) {
  if (t < 0 || k < t + 2) throw DomainError("mrd_partition: need k >= t + 2");
  if (v < 2 * k - t) throw DomainError("mrd_partition: need v >= 2k - t");
  LiftedMRDCode code = lifted_mrd(F, v, k, 2 * (k - t), false, budget);
  // W = U + <e_0, ..., e_{t-1}>; W meets every codeword in at most t dimensions.
  Matrix Wg(static_cast<std::size_t>(v - k + t), static_cast<std::size_t>(v));
  for (int r = 0; r < t; ++r) Wg(static_cast<std::size_t>(r), static_cast<std::size_t>(r)) = 1;
  for (int r = 0; r < v - k; ++r) Wg(static_cast<std::size_t>(t + r), static_cast<std::size_t>(k + r)) = 1;
  std::vector<Subspace> members = std::move(code.codewords);
  members.push_back(Subspace::from_rref(Wg));
  return complete_with_t_subspaces(F, v, members, t + 1, budget);
}

enum class F27Variant { A, B };

namespace detail {

/// Distinct subspaces span(base, p) for points p outside base, sorted.
inline std::vector<Subspace> extensions_by_point(const Field& F, const Subspace& base) {
  std::set<Subspace> out;
  for (const auto& p : *enumerate_subspaces_shared(F, base.ambient(), 1))
    if (!contains(F, base, p)) out.insert(span(F, base, p));
  return {out.begin(), out.end()};
}

/// Subspaces between `low` and `high` of dimension low.dim()+1, sorted.
inline std::vector<Subspace> extensions_inside(const Field& F, const Subspace& low, const Subspace& high) {
  std::set<Subspace> out;
  for (const auto& p : *enumerate_subspaces_shared(F, low.ambient(), 1))
    if (contains(F, high, p) && !contains(F, low, p)) out.insert(span(F, low, p));
  return {out.begin(), out.end()};
}

}  // namespace detail

/// 2-partitions of F_q^7 with q^4+1 solids and q^8-q^4 planes (A), or q^4
/// solids and q^8-q^4+q^2+q+1 planes (B), obtained by cutting the lifted MRD
/// code of q^8 solids in F_q^8 with a hyperplane H not containing U.
///
/// H is the first coordinate hyperplane x_i = 0 not containing U; dropping
/// coordinate i identifies H with F_q^7.  In A the extra solid is spanned by
/// U cap H and the least point outside it.  In B the first q^2+q+1 solids
/// through U cap H (canonical order) are paired in order with the lines of
/// U cap H, and each E_i is the least plane with L_i <= E_i <= S_i other than
/// U cap H.
inline TPartition f27_construction(const FieldPtr& F, F27Variant variant, std::uint64_t budget = enumeration_budget()) {
  const int q = static_cast<int>(F->order());
  LiftedMRDCode c8 = lifted_mrd(F, 8, 4, 6, false, budget);
  int hi = -1;
  for (int i = 0; i < 8 && hi < 0; ++i)
    if (!contains(*F, coordinate_hyperplane(8, i), c8.U)) hi = i;
  const Subspace H = coordinate_hyperplane(8, hi);

  std::vector<Subspace> members;
  members.reserve(c8.codewords.size() + 8);
  for (const auto& V : c8.codewords) members.push_back(drop_coordinate(meet(*F, V, H), hi));
  const Subspace UH = drop_coordinate(meet(*F, c8.U, H), hi);  // a plane of F_q^7

  if (variant == F27Variant::A) {
    for (const auto& p : *enumerate_subspaces_shared(*F, 7, 1))
      if (!contains(*F, UH, p)) {
        members.push_back(span(*F, UH, p));
        break;
      }
  } else {
    const auto solids = detail::extensions_by_point(*F, UH);
    const auto lines = enumerate_subspaces(*F, 3, 2);
    const std::size_t r = static_cast<std::size_t>(q * q + q + 1);
    if (solids.size() < r || lines.size() != r) throw ValidationError("f27_construction: unexpected counts");
    for (std::size_t i = 0; i < r; ++i) {
      const Subspace L = transport(*F, lines[i], UH);
      for (const auto& E : detail::extensions_inside(*F, L, solids[i]))
        if (E != UH) {
          members.push_back(E);
          break;
        }
    }
  }
  return complete_with_t_subspaces(F, 7, members, 2, budget);
}

// ---------------------------------------------------------------------------
// Spreads

struct Spread {
  int q = 0, t = 0, a = 0;
  int v() const noexcept { return a * t; }
  std::vector<Subspace> members;  // sorted

  SubspaceSet to_set(const FieldPtr& F) const { return SubspaceSet(F, v(), t, members); }
};

/// The t-spread of F_q^{at} obtained from the points of F_{q^t}^a, each point
/// read as an F_q-subspace through the coordinate map of F_{q^t} over F_q.
inline Spread subfield_spread(const FieldPtr& F, int t, int a, std::uint64_t budget = enumeration_budget()) {
  if (!F->is_prime_field()) throw DomainError("subfield_spread: base field must be a prime field");
  if (t < 1 || a < 1 || a * t > kMaxAmbient) throw DomainError("subfield_spread: need t, a >= 1 and a*t <= 16");
  const int q = static_cast<int>(F->order());
  const BigInt count = (ipow(q, a * t) - 1) / (ipow(q, t) - 1);
  check_budget(count, budget, "subfield spread");
  auto ext = make_extension(F, t);
  const Elem Q = ext->order();
  Spread S{q, t, a, {}};
  // Points of F_Q^a: vectors whose first nonzero entry is 1.
  std::vector<Elem> x(static_cast<std::size_t>(a), 0);
  for (int lead = 0; lead < a; ++lead) {
    const int free = a - lead - 1;
    std::uint64_t combos = 1;
    for (int i = 0; i < free; ++i) combos *= Q;
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
      std::fill(x.begin(), x.end(), 0);
      x[static_cast<std::size_t>(lead)] = 1;
      std::uint64_t rest = idx;
      for (int j = lead + 1; j < a; ++j) {
        x[static_cast<std::size_t>(j)] = static_cast<Elem>(rest % Q);
        rest /= Q;
      }
      Matrix M(static_cast<std::size_t>(t), static_cast<std::size_t>(a * t));
      for (int b = 0; b < t; ++b) {
        std::vector<Elem> e(static_cast<std::size_t>(t), 0);
        e[static_cast<std::size_t>(b)] = 1;
        const Elem beta = ext->from_coordinates(e);
        for (int j = 0; j < a; ++j) {
          const auto c = ext->coordinates(ext->mul(beta, x[static_cast<std::size_t>(j)]));
          for (int i = 0; i < t; ++i)
            M(static_cast<std::size_t>(b), static_cast<std::size_t>(j * t + i)) = c[static_cast<std::size_t>(i)];
        }
      }
      S.members.push_back(Subspace::from_matrix(*F, M));
    }
  }
  std::sort(S.members.begin(), S.members.end());
  return S;
}

struct DisjointSpreadsResult {
  enum class Status { found, not_found_within_budget };
  Status status = Status::found;
  std::vector<Spread> spreads;  // the spreads found, in search order
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchNodes = 10'000'000;

/// `count` pairwise disjoint t-spreads of F_q^{at}.  The first is the subfield
/// spread; each further spread is an exact cover of the points by t-subspaces
/// not used so far, found depth first with options in canonical order.  Earlier
/// spreads are kept fixed, so a failure only means none was found within the
/// node budget.
inline DisjointSpreadsResult disjoint_spreads(const FieldPtr& F, int t, int a, int count,
                                              std::uint64_t node_budget = kDefaultSearchNodes,
                                              std::uint64_t budget = enumeration_budget()) {
  if (count < 1) throw DomainError("disjoint_spreads: count must be positive");
  DisjointSpreadsResult out;
  out.spreads.push_back(subfield_spread(F, t, a, budget));
  if (count == 1) return out;
  const int v = a * t;
  auto pts = subspace_index(*F, v, 1, budget);
  auto subspaces = enumerate_subspaces_shared(*F, v, t, budget);
  std::vector<std::vector<std::size_t>> point_sets;
  point_sets.reserve(subspaces->size());
  for (const auto& W : *subspaces) {
    std::vector<std::size_t> ids;
    for (const auto& p : subspaces_of(*F, W, 1, budget)) ids.push_back(*pts->find(p));
    point_sets.push_back(std::move(ids));
  }
  std::set<Subspace> used(out.spreads.front().members.begin(), out.spreads.front().members.end());
  while (static_cast<int>(out.spreads.size()) < count) {
    ExactCover dlx(pts->size());
    std::vector<std::size_t> option_to_subspace;
    for (std::size_t i = 0; i < subspaces->size(); ++i)
      if (!used.count((*subspaces)[i])) {
        dlx.add_option(point_sets[i]);
        option_to_subspace.push_back(i);
      }
    const std::uint64_t left = node_budget > out.nodes ? node_budget - out.nodes : 0;
    auto res = dlx.solve(left);
    out.nodes += res.nodes;
    if (res.status != ExactCover::Status::found) {
      out.status = DisjointSpreadsResult::Status::not_found_within_budget;
      return out;
    }
    Spread S{static_cast<int>(F->order()), t, a, {}};
    for (std::size_t o : res.options) S.members.push_back((*subspaces)[option_to_subspace[o]]);
    std::sort(S.members.begin(), S.members.end());
    used.insert(S.members.begin(), S.members.end());
    out.spreads.push_back(std::move(S));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divisible sets

inline SubspaceSet all_t_subspaces(const FieldPtr& F, int v, int t, std::uint64_t budget = enumeration_budget()) {
  return SubspaceSet(F, v, t, enumerate_subspaces(*F, v, t, budget));
}

/// {N + U : N in N} in F_q^{v+s}, with F_q^v on the first v coordinates and U
/// spanned by the last s unit vectors.
inline SubspaceSet lift_set(const SubspaceSet& N, int s) {
  if (s < 0) throw DomainError("lift_set: s must be non-negative");
  if (s == 0) return N;
  if (N.v() + s > kMaxAmbient) throw DomainError("lift_set: ambient dimension exceeds 16");
  const int v = N.v();
  std::vector<Subspace> out;
  out.reserve(N.size());
  for (const auto& M : N.members()) {
    Matrix G = embed(M, 0, s).generator();
    for (int j = 0; j < s; ++j) {
      std::vector<Elem> e(static_cast<std::size_t>(v + s), 0);
      e[static_cast<std::size_t>(v + j)] = 1;
      G.append_row(e);
    }
    out.push_back(Subspace::from_matrix(*N.field(), G));
  }
  return SubspaceSet(N.field(), v + s, N.t() + s, std::move(out));
}

/// Direct sum: N1 on the first v1 coordinates, N2 on the last v2.
inline SubspaceSet concat_sets(const SubspaceSet& N1, const SubspaceSet& N2) {
  if (N1.q() != N2.q()) throw DomainError("concat_sets: field mismatch");
  if (N1.t() != N2.t()) throw DomainError("concat_sets: t mismatch");
  const int v = N1.v() + N2.v();
  if (v > kMaxAmbient) throw DomainError("concat_sets: ambient dimension exceeds 16");
  std::vector<Subspace> out;
  out.reserve(N1.size() + N2.size());
  for (const auto& M : N1.members()) out.push_back(embed(M, 0, N2.v()));
  for (const auto& M : N2.members()) out.push_back(embed(M, N1.v(), 0));
  return SubspaceSet(N1.field(), v, N1.t(), std::move(out));
}

/// Points of F_q^v outside the hyperplane x_0 = 0 (an affine space), as a set
/// of 1-subspaces.
inline SubspaceSet affine_points(const FieldPtr& F, int v) {
  std::vector<Subspace> out;
  for (const auto& p : *enumerate_subspaces_shared(*F, v, 1))
    if (p.entry(0, 0) != 0) out.push_back(p);
  return SubspaceSet(F, v, 1, std::move(out));
}

}  // namespace qvsp

#endif  // QVSP_CONSTRUCTIONS_HPP
