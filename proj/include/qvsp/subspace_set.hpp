#ifndef QVSP_SUBSPACE_SET_HPP
#define QVSP_SUBSPACE_SET_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qvsp/error.hpp"
#include "qvsp/gf.hpp"
#include "qvsp/subspace.hpp"

namespace qvsp {

/// A set of t-subspaces of F_q^v.  Members are sorted; duplicates are rejected.
class SubspaceSet {
 public:
  SubspaceSet() = default;
  SubspaceSet(FieldPtr field, int v, int t, std::vector<Subspace> members)
      : field_(std::move(field)), v_(v), t_(t), members_(std::move(members)) {
    if (!field_) throw DomainError("SubspaceSet: missing field");
    if (t_ < 0 || t_ > v_ || v_ > kMaxAmbient) throw DomainError("SubspaceSet: need 0 <= t <= v <= 16");
    for (const auto& U : members_) {
      if (U.ambient() != v_) throw DomainError("SubspaceSet: member " + U.to_string() + " has the wrong ambient");
      if (U.dim() != t_) throw DomainError("SubspaceSet: member " + U.to_string() + " is not " + std::to_string(t_) + "-dimensional");
    }
    std::sort(members_.begin(), members_.end());
    if (auto dup = std::adjacent_find(members_.begin(), members_.end()); dup != members_.end())
      throw ValidationError("SubspaceSet: member " + dup->to_string() + " listed twice");
  }

  const FieldPtr& field() const noexcept { return field_; }
  int q() const noexcept { return static_cast<int>(field_->order()); }
  int v() const noexcept { return v_; }
  int t() const noexcept { return t_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Subspace>& members() const noexcept { return members_; }

 private:
  FieldPtr field_;
  int v_ = 0;
  int t_ = 0;
  std::vector<Subspace> members_;
};

}  // namespace qvsp

#endif  // QVSP_SUBSPACE_SET_HPP
