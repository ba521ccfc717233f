#ifndef QVSP_ILP_MODEL_HPP
#define QVSP_ILP_MODEL_HPP

// Integer models whose variables are the planes of F_q^v: x_E = 1 when the
// plane E is a member.  Two chosen planes may not share a line.

#include <cstdint>
#include <map>
#include <vector>

#include "qvsp/bounds.hpp"
#include "qvsp/error.hpp"
#include "qvsp/lp.hpp"
#include "qvsp/subspace.hpp"

namespace qvsp {

namespace detail {

/// For every t-subspace (index order), the indices of the planes containing it.
inline std::vector<std::vector<std::size_t>> planes_through(const Field& F, int v, int t, std::uint64_t budget) {
  const auto planes = enumerate_subspaces_shared(F, v, 3, budget);
  const auto index = subspace_index(F, v, t, budget);
  std::vector<std::vector<std::size_t>> through(index->size());
  for (std::size_t e = 0; e < planes->size(); ++e)
    for (const Subspace& L : subspaces_of(F, (*planes)[e], t, budget)) through[*index->find(L)].push_back(e);
  return through;
}

inline LPModel plane_variables(const Field& F, int v, std::uint64_t budget) {
  LPModel model;
  for (const Subspace& E : *enumerate_subspaces_shared(F, v, 3, budget)) {
    const std::size_t x = model.add_variable(VarKind::binary, E);
    model.set_objective(x, 1);
  }
  return model;
}

}  // namespace detail

/// Number of points of F_q^v lying on exactly i members of `solids`, by i.
inline std::map<int, std::int64_t> tau_profile(const Field& F, int v, const std::vector<Subspace>& solids,
                                               std::uint64_t budget = enumeration_budget()) {
  std::map<int, std::int64_t> profile;
  for (const Subspace& P : points(F, v, budget)) {
    int tau = 0;
    for (const Subspace& S : solids) tau += contains(F, S, P) ? 1 : 0;
    ++profile[tau];
  }
  return profile;
}

/// Checks that `solids` are distinct solids of F_2^7 pairwise meeting in a point.
inline void validate_solid_set(const Field& F, const std::vector<Subspace>& solids) {
  if (F.order() != 2) throw DomainError("build_ilp: only q = 2 is supported");
  for (std::size_t i = 0; i < solids.size(); ++i) {
    if (solids[i].ambient() != 7 || solids[i].dim() != 4)
      throw ValidationError("build_ilp: member " + solids[i].to_string() + " is not a solid of F_2^7");
    for (std::size_t j = 0; j < i; ++j)
      if (meet_dim(F, solids[i], solids[j]) != 1)
        throw ValidationError("build_ilp: solids " + solids[j].to_string() + " and " + solids[i].to_string() +
                              " do not meet in exactly a point");
  }
}

/// Planes completing the solids S to a 2-partition of F_2^7.  One binary per
/// plane (enumeration order), objective the number of planes; per line
/// (enumeration order) sum x_E = 0 if some solid of S contains it and <= 1
/// otherwise; per point P, sum x_E <= f(tau(P)), tau(P) the number of solids
/// through P.
inline LPModel build_ilp(const Field& F, const std::vector<Subspace>& solids,
                         std::uint64_t budget = enumeration_budget()) {
  validate_solid_set(F, solids);
  const int v = 7;
  LPModel model = detail::plane_variables(F, v, budget);
  const auto lines = subspace_index(F, v, 2, budget);
  std::vector<char> covered(lines->size(), 0);
  for (const Subspace& S : solids)
    for (const Subspace& L : subspaces_of(F, S, 2, budget)) covered[*lines->find(L)] = 1;
  const auto by_line = detail::planes_through(F, v, 2, budget);
  for (std::size_t l = 0; l < by_line.size(); ++l) {
    std::vector<LPTerm> terms;
    for (std::size_t e : by_line[l]) terms.push_back({e, 1});
    if (covered[l])
      model.add_constraint(terms, Relation::eq, 0);
    else
      model.add_constraint(terms, Relation::le, 1);
  }
  const auto pts = points(F, v, budget);
  const auto by_point = detail::planes_through(F, v, 1, budget);
  for (std::size_t p = 0; p < by_point.size(); ++p) {
    int tau = 0;
    for (const Subspace& S : solids) tau += contains(F, S, pts[p]) ? 1 : 0;
    std::vector<LPTerm> terms;
    for (std::size_t e : by_point[p]) terms.push_back({e, 1});
    model.add_constraint(terms, Relation::le, f_function(tau));
  }
  return model;
}

/// Planes of F_q^v pairwise sharing no line: one binary per plane and one
/// row sum x_E <= 1 per line.  The maximum is the largest such plane set.
inline LPModel build_plane_packing_ilp(const Field& F, int v, std::uint64_t budget = enumeration_budget()) {
  if (v < 3 || v > kMaxAmbient) throw DomainError("build_plane_packing_ilp: need 3 <= v <= 16");
  LPModel model = detail::plane_variables(F, v, budget);
  for (const auto& through : detail::planes_through(F, v, 2, budget)) {
    std::vector<LPTerm> terms;
    for (std::size_t e : through) terms.push_back({e, 1});
    model.add_constraint(terms, Relation::le, 1);
  }
  return model;
}

/// Fixes variables of a plane packing model without changing its optimum:
/// the least plane E0 is chosen, and for v = 5 also the least plane meeting
/// E0 in a point (any two planes of F_q^5 without a common line meet in
/// exactly a point, and GL(v,q) is transitive on such pairs).
inline std::vector<std::size_t> fix_plane_symmetry(LPModel& model, const Field& F, int v) {
  if (model.variable_count() == 0 || model.variable_count() != gaussian(v, 3, static_cast<int>(F.order())))
    throw DomainError("fix_plane_symmetry: model is not a plane model of F_q^v");
  std::vector<std::size_t> fixed{0};
  model.set_bounds(0, 1, Rational(1));
  if (v == 5) {
    const Subspace& e0 = *model.variable(0).tag;
    for (std::size_t i = 1; i < model.variable_count(); ++i)
      if (meet_dim(F, e0, *model.variable(i).tag) == 1) {
        model.set_bounds(i, 1, Rational(1));
        fixed.push_back(i);
        break;
      }
  }
  return fixed;
}

}  // namespace qvsp

#endif  // QVSP_ILP_MODEL_HPP
