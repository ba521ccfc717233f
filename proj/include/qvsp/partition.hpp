#ifndef QVSP_PARTITION_HPP
#define QVSP_PARTITION_HPP

// Vector space t-partitions: a set of subspaces of F_q^v, each of dimension at
// least t, such that every t-subspace lies in exactly one member.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qvsp/error.hpp"
#include "qvsp/gf.hpp"
#include "qvsp/subspace.hpp"

namespace qvsp {

/// Multiplicities m_d of member dimensions, t <= d <= v.
struct PartitionType {
  int v = 0;
  int t = 0;
  std::map<int, std::uint64_t, std::greater<>> m;  // dimension -> count, zero counts omitted

  std::uint64_t count(int d) const {
    auto it = m.find(d);
    return it == m.end() ? 0 : it->second;
  }
  void add(int d, std::uint64_t n = 1) {
    if (d < t || d > v) throw DomainError("dimension " + std::to_string(d) + " outside [t, v]");
    if (n > 0) m[d] += n;
  }

  /// "v^{m_v} ... t^{m_t}" with zero exponents omitted, e.g. "4^17 3^240 2^392".
  /// With `star_holes` the count of t-dimensional members renders as "*".
  std::string render(bool star_holes = false) const {
    std::string s;
    for (const auto& [d, n] : m) {
      if (!s.empty()) s += ' ';
      s += std::to_string(d) + '^' + (star_holes && d == t ? std::string("*") : std::to_string(n));
    }
    return s;
  }

  static PartitionType of(int v, int t, const std::vector<Subspace>& members) {
    PartitionType T{v, t, {}};
    for (const auto& U : members) T.add(U.dim());
    return T;
  }

  friend bool operator==(const PartitionType&, const PartitionType&) = default;
};

/// Counting condition: sum_i m_i [i choose t]_q = [v choose t]_q.
inline bool packing_check(const PartitionType& type, int q) {
  BigInt total = 0;
  for (const auto& [d, n] : type.m) total += gaussian(d, type.t, q) * n;
  return total == gaussian(type.v, type.t, q);
}

/// Dimension condition: m_i <= 1 if 2i > v+t-1, and m_i m_j = 0 if i+j > v+t-1,
/// for t <= i < j <= v.
inline bool dimension_check(const PartitionType& type) {
  const int bound = type.v + type.t - 1;
  for (const auto& [i, mi] : type.m) {
    if (mi > 1 && 2 * i > bound) return false;
    for (const auto& [j, mj] : type.m)
      if (i < j && mi > 0 && mj > 0 && i + j > bound) return false;
  }
  return true;
}

/// Validation failure carrying the offending t-subspace when there is one.
class PartitionError : public ValidationError {
 public:
  PartitionError(const std::string& what, std::optional<Subspace> witness = std::nullopt)
      : ValidationError(what), witness_(std::move(witness)) {}
  const std::optional<Subspace>& witness() const noexcept { return witness_; }

 private:
  std::optional<Subspace> witness_;
};

struct VerificationReport {
  bool valid = false;
  PartitionType type;
  /// On failure: the first doubly covered t-subspace in enumeration order, or
  /// the first uncovered one when nothing is covered twice.
  std::optional<Subspace> witness;
  std::uint64_t witness_cover_count = 0;
};

namespace detail {

inline void check_members(const std::vector<Subspace>& members, int v, int t) {
  for (const auto& U : members) {
    if (U.ambient() != v) throw DomainError("member " + U.to_string() + " has a different ambient dimension");
    if (U.dim() < t) throw DomainError("member " + U.to_string() + " has dimension below t");
  }
}

/// Cover counts over the indexed table of all t-subspaces of F_q^v.
class CoverTable {
 public:
  CoverTable(const Field& F, int v, int t, std::uint64_t budget)
      : F_(F), t_(t), index_(subspace_index(F, v, t, budget)), counts_(index_->size(), 0) {}

  void mark(const Subspace& U) {
    if (U.dim() == t_) {
      bump(U);
      return;
    }
    auto inner = enumerate_subspaces_shared(F_, U.dim(), t_);
    for (const auto& W : *inner) bump(transport(F_, W, U));
  }

  std::size_t size() const { return counts_.size(); }
  std::uint32_t count(std::size_t i) const { return counts_[i]; }
  const Subspace& subspace(std::size_t i) const { return index_->at(i); }

 private:
  void bump(const Subspace& W) {
    auto idx = index_->find(W);
    if (!idx) throw DomainError("t-subspace outside the ambient space");
    if (counts_[*idx] < 255) ++counts_[*idx];
  }

  const Field& F_;
  int t_;
  std::shared_ptr<const SubspaceIndex> index_;
  std::vector<std::uint8_t> counts_;
};

}  // namespace detail

/// Exact check that every t-subspace of the common ambient lies in exactly one
/// candidate.  `v` is the ambient dimension (needed when the list is empty).
inline VerificationReport verify_partition(const Field& F, int v, const std::vector<Subspace>& candidate, int t,
                                           std::uint64_t budget = enumeration_budget()) {
  if (t < 1 || t > v) throw DomainError("verify_partition: need 1 <= t <= v");
  detail::check_members(candidate, v, t);
  detail::CoverTable table(F, v, t, budget);
  for (const auto& U : candidate) table.mark(U);
  VerificationReport report;
  report.type = PartitionType::of(v, t, candidate);
  auto first = [&](auto pred) -> bool {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (pred(table.count(i))) {
        report.witness = table.subspace(i);
        report.witness_cover_count = table.count(i);
        return true;
      }
    return false;
  };
  report.valid = !first([](std::uint32_t c) { return c >= 2; }) && !first([](std::uint32_t c) { return c == 0; });
  return report;
}

inline VerificationReport verify_partition(const Field& F, const std::vector<Subspace>& candidate, int t,
                                           std::uint64_t budget = enumeration_budget()) {
  if (candidate.empty()) throw DomainError("verify_partition: empty candidate needs an explicit ambient dimension");
  return verify_partition(F, candidate.front().ambient(), candidate, t, budget);
}

/// A verified vector space t-partition.  Members are kept sorted and unique.
class TPartition {
 public:
  /// Validates and wraps; throws PartitionError on duplicates or a cover
  /// violation (with the witness t-subspace).
  static TPartition verified(FieldPtr field, int v, std::vector<Subspace> members, int t,
                             std::uint64_t budget = enumeration_budget()) {
    std::sort(members.begin(), members.end());
    if (auto dup = std::adjacent_find(members.begin(), members.end()); dup != members.end())
      throw PartitionError("member " + dup->to_string() + " listed twice");
    VerificationReport report = verify_partition(*field, v, members, t, budget);
    if (!report.valid)
      throw PartitionError("not a vector space " + std::to_string(t) + "-partition: " + report.witness->to_string() +
                               " is covered " + std::to_string(report.witness_cover_count) + " times",
                           report.witness);
    TPartition P;
    P.field_ = std::move(field);
    P.v_ = v;
    P.t_ = t;
    P.members_ = std::move(members);
    P.type_ = std::move(report.type);
    return P;
  }

  const FieldPtr& field() const noexcept { return field_; }
  int q() const noexcept { return static_cast<int>(field_->order()); }
  int v() const noexcept { return v_; }
  int t() const noexcept { return t_; }
  const std::vector<Subspace>& members() const noexcept { return members_; }
  const PartitionType& type() const noexcept { return type_; }

  bool contains_member(const Subspace& U) const { return std::binary_search(members_.begin(), members_.end(), U); }

  /// Members of dimension exactly t.
  std::vector<Subspace> holes() const {
    std::vector<Subspace> out;
    for (const auto& U : members_)
      if (U.dim() == t_) out.push_back(U);
    return out;
  }
  /// Members of dimension greater than t.
  std::vector<Subspace> non_holes() const {
    std::vector<Subspace> out;
    for (const auto& U : members_)
      if (U.dim() > t_) out.push_back(U);
    return out;
  }

  /// All members of dimension t, or all of dimension v.
  bool is_trivial() const {
    return std::all_of(members_.begin(), members_.end(), [&](const Subspace& U) { return U.dim() == t_; }) ||
           std::all_of(members_.begin(), members_.end(), [&](const Subspace& U) { return U.dim() == v_; });
  }

  /// Second smallest member dimension, i.e. the smallest above t; 0 if none.
  int second_smallest_dimension() const {
    int best = 0;
    for (const auto& [d, n] : type_.m)
      if (d > t_ && n > 0) best = d;
    return best;
  }

 private:
  FieldPtr field_;
  int v_ = 0;
  int t_ = 0;
  std::vector<Subspace> members_;
  PartitionType type_;
};

/// Adds every t-subspace not covered by `partial`.  Throws PartitionError with
/// the witness if some t-subspace is already covered twice.
inline TPartition complete_with_t_subspaces(const FieldPtr& field, int v, const std::vector<Subspace>& partial, int t,
                                            std::uint64_t budget = enumeration_budget()) {
  if (t < 1 || t > v) throw DomainError("complete_with_t_subspaces: need 1 <= t <= v");
  detail::check_members(partial, v, t);
  detail::CoverTable table(*field, v, t, budget);
  for (const auto& U : partial) table.mark(U);
  std::vector<Subspace> members = partial;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.count(i) >= 2)
      throw PartitionError("t-subspace " + table.subspace(i).to_string() + " is covered twice by the partial family",
                           table.subspace(i));
    if (table.count(i) == 0) members.push_back(table.subspace(i));
  }
  return TPartition::verified(field, v, std::move(members), t, budget);
}

/// Replaces member U by a t-partition of U.  `inner` lives in F_q^{dim U} and
/// is carried onto U through U's canonical rows.
inline TPartition derive(const TPartition& P, const Subspace& U, const std::vector<Subspace>& inner,
                         std::uint64_t budget = enumeration_budget()) {
  if (!P.contains_member(U)) throw DomainError("derive: " + U.to_string() + " is not a member");
  const Field& F = *P.field();
  VerificationReport inner_report = verify_partition(F, U.dim(), inner, P.t(), budget);
  if (!inner_report.valid)
    throw PartitionError("derive: replacement family is not a " + std::to_string(P.t()) + "-partition of the member",
                         inner_report.witness);
  std::vector<Subspace> members;
  members.reserve(P.members().size() + inner.size());
  for (const auto& W : P.members())
    if (W != U) members.push_back(W);
  for (const auto& W : inner) members.push_back(transport(F, W, U));
  return TPartition::verified(P.field(), P.v(), std::move(members), P.t(), budget);
}

inline TPartition derive(const TPartition& P, const Subspace& U, const TPartition& inner,
                         std::uint64_t budget = enumeration_budget()) {
  if (inner.v() != U.dim() || inner.t() != P.t() || inner.q() != P.q())
    throw DomainError("derive: inner partition must live in F_q^{dim U} with the same t");
  return derive(P, U, inner.members(), budget);
}

struct Restriction {
  /// images[i] = members[i] meet H, ambient coordinates kept.
  std::vector<Subspace> images;
  /// Pairs (i, j), i < j, of members with the same image.
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
};

/// Intersects every member with the hyperplane H.  Returns a multiset aligned
/// with the input and reports collisions; callers decide whether they matter.
inline Restriction restrict_to_hyperplane(const Field& F, const std::vector<Subspace>& members, const Subspace& H) {
  if (H.dim() != H.ambient() - 1) throw DomainError("restrict_to_hyperplane: H is not a hyperplane");
  Restriction out;
  out.images.reserve(members.size());
  std::unordered_map<Subspace, std::size_t, SubspaceHash> first_seen;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Subspace& U = members[i];
    detail::same_ambient(U, H);
    Subspace image = contains(F, H, U) ? U : meet(F, U, H);
    auto [it, inserted] = first_seen.emplace(image, i);
    if (!inserted) out.collisions.emplace_back(it->second, i);
    out.images.push_back(std::move(image));
  }
  return out;
}

}  // namespace qvsp

#endif  // QVSP_PARTITION_HPP
