#ifndef QVSP_DIVISIBILITY_HPP
#define QVSP_DIVISIBILITY_HPP

// Hyperplane spectra and q^r-divisibility of sets of t-subspaces, together
// with the cardinality bounds for divisible sets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvsp/error.hpp"
#include "qvsp/gf.hpp"
#include "qvsp/subspace.hpp"
#include "qvsp/subspace_set.hpp"

namespace qvsp {

namespace detail {

inline void identity_holds(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("counting identity violated: ") + what);
}

/// Whether every row of M is orthogonal to p, i.e. M lies in the hyperplane p^perp.
inline bool inside_dual_of(const Field& F, const Subspace& M, const Subspace& p) {
  const Subspace::Row pv = p.packed_rows().front();
  if (F.order() == 2) {
    for (Subspace::Row r : M.packed_rows())
      if (std::popcount(r & pv) & 1) return false;
    return true;
  }
  const auto pr = p.row(0);
  for (int r = 0; r < M.dim(); ++r)
    if (detail::dot(F, M.row(r), pr) != 0) return false;
  return true;
}

/// Number of points of F_q^w; zero for w = 0.
inline BigInt point_count(int w, int q) { return w <= 0 ? BigInt(0) : gaussian(w, 1, q); }

/// Largest e with q^e | x, x > 0.
inline int valuation(std::uint64_t x, int q) {
  int e = 0;
  while (x % static_cast<std::uint64_t>(q) == 0) {
    x /= static_cast<std::uint64_t>(q);
    ++e;
  }
  return e;
}

}  // namespace detail

struct HyperplaneSpectrum {
  int q = 0, v = 0, t = 0;
  std::uint64_t n = 0;
  /// a[i] = number of hyperplanes containing exactly i members (zero entries omitted).
  std::map<std::uint64_t, std::uint64_t> a;
  /// Largest r with n = i (mod q^r) for every occupied i; empty when every
  /// hyperplane contains all members (the empty set), where any r works.
  std::optional<int> r_star;
};

/// Exact hyperplane spectrum; both identities
///   sum a_i = [v choose 1]_q  and  sum i a_i = n [v-t choose 1]_q
/// are checked before returning.
inline HyperplaneSpectrum spectrum(const SubspaceSet& N, std::uint64_t budget = enumeration_budget()) {
  const Field& F = *N.field();
  HyperplaneSpectrum S{N.q(), N.v(), N.t(), N.size(), {}, std::nullopt};
  auto pts = enumerate_subspaces_shared(F, N.v(), 1, budget);
  for (const auto& p : *pts) {
    std::uint64_t inside = 0;
    for (const auto& M : N.members()) inside += detail::inside_dual_of(F, M, p) ? 1 : 0;
    ++S.a[inside];
  }
  BigInt total = 0, incidences = 0;
  for (const auto& [i, ai] : S.a) {
    total += ai;
    incidences += BigInt(i) * ai;
  }
  detail::identity_holds(total == detail::point_count(N.v(), N.q()), "sum of a_i");
  detail::identity_holds(incidences == BigInt(S.n) * detail::point_count(N.v() - N.t(), N.q()), "sum of i a_i");
  for (const auto& [i, ai] : S.a) {
    if (i == S.n) continue;
    const int e = detail::valuation(S.n - i, S.q);
    S.r_star = S.r_star ? std::min(*S.r_star, e) : e;
  }
  return S;
}

inline bool is_divisible(const HyperplaneSpectrum& S, int r) {
  if (r < 0) throw DomainError("is_divisible: r must be non-negative");
  return !S.r_star || r <= *S.r_star;
}

inline bool is_divisible(const SubspaceSet& N, int r) { return is_divisible(spectrum(N), r); }

/// r*; 0 when no r >= 1 works, empty for the empty set.
inline std::optional<int> max_divisibility(const SubspaceSet& N) { return spectrum(N).r_star; }

struct PairSpanProfile {
  int t = 0;
  /// b[i] = ordered pairs of distinct members spanning an i-dimensional space.
  std::map<int, std::uint64_t> b;
};

/// Pair-span profile; checks sum b_i = n(n-1) and
/// sum i(i-1) a_i = sum b_i [v-i choose 1]_q against the spectrum.
inline PairSpanProfile pair_profile(const SubspaceSet& N, const HyperplaneSpectrum& S,
                                    std::uint64_t budget = enumeration_budget()) {
  const Field& F = *N.field();
  const std::uint64_t n = N.size();
  check_budget(BigInt(n) * (n > 0 ? n - 1 : 0), budget, "pair profile");
  PairSpanProfile P{N.t(), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) P.b[span_dim(F, N.members()[i], N.members()[j])] += 2;
  BigInt pairs = 0, lhs = 0, rhs = 0;
  for (const auto& [i, bi] : P.b) {
    pairs += bi;
    rhs += BigInt(bi) * detail::point_count(N.v() - i, N.q());
  }
  for (const auto& [i, ai] : S.a) lhs += BigInt(i) * (i > 0 ? i - 1 : 0) * ai;
  detail::identity_holds(pairs == BigInt(n) * (n > 0 ? n - 1 : 0), "sum of b_i");
  detail::identity_holds(lhs == rhs, "sum of i(i-1) a_i");
  return P;
}

inline PairSpanProfile pair_profile(const SubspaceSet& N, std::uint64_t budget = enumeration_budget()) {
  return pair_profile(N, spectrum(N, budget), budget);
}

struct AverageBoundCheck {
  std::uint64_t min_occupied = 0;
  std::uint64_t n = 0;
  BigInt q_pow_t;  // threshold is n / q^t
  bool satisfied = false;
};

/// Smallest occupied i and whether i < n / q^t.
inline AverageBoundCheck average_bound_check(const SubspaceSet& N) {
  if (N.empty()) throw DomainError("average_bound_check: empty set");
  const HyperplaneSpectrum S = spectrum(N);
  AverageBoundCheck out;
  out.min_occupied = S.a.begin()->first;
  out.n = S.n;
  out.q_pow_t = ipow(S.q, S.t);
  out.satisfied = BigInt(out.min_occupied) * out.q_pow_t < BigInt(out.n);
  return out;
}

struct MinCardBound {
  BigInt divisible;     // lower bound on #N when q^r | #N
  BigInt nondivisible;  // lower bound on #N otherwise
  int kappa = 0;
  bool kappa_applied = false;  // false when (kappa-1)t > r and only q^t+1 is used
};

/// Lower bounds on the size of a non-empty q^r-divisible set of t-subspaces.
/// The kappa term is used only when (kappa-1)t <= r.
inline MinCardBound min_card_bound(int q, int t, int r) {
  if (q < 2 || t < 2 || r < 1) throw DomainError("min_card_bound: need q >= 2, t >= 2, r >= 1");
  MinCardBound out;
  out.divisible = ipow(q, r + 1);
  const BigInt qt = ipow(q, t), qr = ipow(q, r);
  int kappa = 1;
  while ((ipow(q, kappa * t) - 1) / (qt - 1) < qr) ++kappa;
  out.kappa = kappa;
  out.nondivisible = qt + 1;
  if ((kappa - 1) * t <= r) {
    out.kappa_applied = true;
    const BigInt term = qr + (ipow(q, (kappa - 1) * t) - 1) / (qt - 1) * ipow(q, r - (kappa - 1) * t);
    out.nondivisible = std::max(out.nondivisible, term);
  }
  return out;
}

/// Lower bound on n = #N for a q^r-divisible set of k-subspaces, split by
/// whether q^r divides n.
inline BigInt tail_bound(int q, int k, int r, bool divisible) {
  if (q < 2 || k < 1 || r < 1) throw DomainError("tail_bound: need q >= 2, k >= 1, r >= 1");
  if (divisible) return r < k ? ipow(q, k + r) - ipow(q, k) + ipow(q, r) : ipow(q, k + r);
  if (r < k) return ipow(q, k) + 1;
  const BigInt den = ipow(q, k) - 1;
  if (r % k == 0) return (ipow(q, k + r) - 1) / den;
  const int a = r / k;
  return (ipow(q, (a + 2) * k) - 1) / den;
}

struct ExclusionResult {
  bool in_range = false;  // n <= r q^{r+1}
  bool excluded = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> representation;  // (a, b), smallest a
};

/// Cardinalities of q^r-divisible sets of points.  In range, n is excluded
/// iff it is not a [r+1 choose 1]_q + b q^{r+1} with a, b >= 0; the
/// excluded-interval form is evaluated as well and must agree.
inline ExclusionResult exclusion_check(int q, int r, std::uint64_t n) {
  if (q < 2 || r < 1) throw DomainError("exclusion_check: need q >= 2, r >= 1");
  const BigInt G = gaussian(r + 1, 1, q), Q = ipow(q, r + 1);
  ExclusionResult out;
  out.in_range = BigInt(n) <= BigInt(r) * Q;
  if (!out.in_range) return out;
  const auto g = static_cast<std::uint64_t>(G), qq = static_cast<std::uint64_t>(Q);
  for (std::uint64_t a = 0; a * g <= n; ++a)
    if ((n - a * g) % qq == 0) {
      out.representation = std::make_pair(a, (n - a * g) / qq);
      break;
    }
  out.excluded = !out.representation.has_value();
  bool in_interval = false;
  for (int a = 0; a <= r - 1; ++a)
    for (int b = 0; b <= q - 2; ++b) {
      const BigInt lo = (BigInt(a) * (q - 1) + b) * G + a + 1, hi = (BigInt(a) * (q - 1) + b + 1) * G - 1;
      if (lo <= n && BigInt(n) <= hi) in_interval = true;
    }
  detail::identity_holds(in_interval == out.excluded, "interval and representability forms disagree");
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

struct OracleResult {
  enum class Status { exists, does_not_exist, inconclusive };
  Status status = Status::inconclusive;
  std::optional<SubspaceSet> witness;
  int v_searched = 0;  // largest ambient dimension searched completely
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultOracleNodes = 200'000'000;

/// Searches n-subsets of t-subspaces of F_q^v, v = t..v_max, for a
/// q^r-divisible one.  The first member is fixed to the least t-subspace,
/// which loses nothing since the general linear group is transitive on
/// t-subspaces and preserves divisibility.  A set spanning w dimensions is
/// divisible in F_q^w iff it is in any larger ambient, so does_not_exist means
/// no example spans at most v_max dimensions; v_max = t n covers all of them.
inline OracleResult brute_force_divisible_exists(const FieldPtr& F, int t, int r, int n, int v_max,
                                                 std::uint64_t node_budget = kDefaultOracleNodes,
                                                 std::uint64_t budget = enumeration_budget()) {
  if (t < 1 || r < 0 || n < 0 || v_max < t || v_max > kMaxAmbient) throw DomainError("oracle: bad parameters");
  const int q = static_cast<int>(F->order());
  const std::uint64_t mod = static_cast<std::uint64_t>(ipow(q, r));
  OracleResult out;
  if (n == 0) {
    out.status = OracleResult::Status::exists;
    out.witness = SubspaceSet(F, t, t, {});
    return out;
  }
  for (int v = t; v <= v_max; ++v) {
    auto subs = enumerate_subspaces_shared(*F, v, t, budget);
    auto pts = enumerate_subspaces_shared(*F, v, 1, budget);
    const std::size_t H = pts->size(), L = subs->size();
    if (static_cast<std::size_t>(n) > L) {
      out.v_searched = v;
      continue;
    }
    // inc[j] = hyperplanes containing subspace j.
    std::vector<std::vector<std::uint32_t>> inc(L);
    for (std::size_t j = 0; j < L; ++j)
      for (std::size_t h = 0; h < H; ++h)
        if (detail::inside_dual_of(*F, (*subs)[j], (*pts)[h])) inc[j].push_back(static_cast<std::uint32_t>(h));
    std::vector<std::uint32_t> count(H, 0);
    std::vector<std::size_t> chosen;
    bool budget_hit = false, found = false;
    auto add = [&](std::size_t j, int d) {
      for (auto h : inc[j]) count[h] = static_cast<std::uint32_t>(static_cast<int>(count[h]) + d);
    };
    auto leaf_ok = [&] {
      for (auto c : count)
        if ((static_cast<std::uint64_t>(n) - c) % mod != 0) return false;
      return true;
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
      if (found || budget_hit) return;
      if (out.nodes >= node_budget) {
        budget_hit = true;
        return;
      }
      ++out.nodes;
      if (static_cast<int>(chosen.size()) == n) {
        found = leaf_ok();
        return;
      }
      const std::size_t need = static_cast<std::size_t>(n) - chosen.size();
      for (std::size_t j = start; j + need <= L && !found && !budget_hit; ++j) {
        chosen.push_back(j);
        add(j, +1);
        dfs(j + 1);
        if (found) return;
        add(j, -1);
        chosen.pop_back();
      }
    };
    chosen.push_back(0);
    add(0, +1);
    dfs(1);
    if (found) {
      std::vector<Subspace> members;
      for (auto j : chosen) members.push_back((*subs)[j]);
      out.status = OracleResult::Status::exists;
      out.witness = SubspaceSet(F, v, t, std::move(members));
      out.v_searched = v;
      return out;
    }
    if (budget_hit) {
      out.status = OracleResult::Status::inconclusive;
      return out;
    }
    out.v_searched = v;
  }
  out.status = OracleResult::Status::does_not_exist;
  return out;
}

}  // namespace qvsp

#endif  // QVSP_DIVISIBILITY_HPP
