#ifndef QVSP_LP_HPP
#define QVSP_LP_HPP

// Linear and integer programs over exact rationals: a model type, an LP text
// writer, a two-phase simplex with Bland's rule, and a depth-first
// branch-and-bound for small integer models.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qvsp/error.hpp"
#include "qvsp/rational.hpp"
#include "qvsp/subspace.hpp"

namespace qvsp {

enum class VarKind { continuous, integer, binary };
enum class Relation { le, eq, ge };

struct LPVariable {
  VarKind kind = VarKind::continuous;
  Rational lower = 0;
  std::optional<Rational> upper;
  std::optional<Subspace> tag;
};

struct LPTerm {
  std::size_t var = 0;
  Rational coef;
};

struct LPConstraint {
  std::vector<LPTerm> terms;  // sorted by variable, no zero coefficients
  Relation relation = Relation::le;
  Rational rhs;
};

/// A maximization problem.  Variables have a finite lower bound (default 0)
/// and an optional upper bound; binaries are integers in [0, 1].
class LPModel {
 public:
  std::size_t add_variable(VarKind kind = VarKind::continuous, std::optional<Subspace> tag = std::nullopt,
                           Rational lower = 0, std::optional<Rational> upper = std::nullopt) {
    LPVariable var;
    var.kind = kind;
    var.tag = std::move(tag);
    if (kind == VarKind::binary && !upper) upper = Rational(1);
    variables_.push_back(std::move(var));
    set_bounds(variables_.size() - 1, std::move(lower), std::move(upper));
    return variables_.size() - 1;
  }

  void set_bounds(std::size_t var, Rational lower, std::optional<Rational> upper) {
    check_var(var);
    const VarKind kind = variables_[var].kind;
    if (upper && *upper < lower) throw DomainError("LPModel: upper bound below lower bound");
    if (kind != VarKind::continuous && (!is_integral(lower) || (upper && !is_integral(*upper))))
      throw DomainError("LPModel: integer variable with fractional bound");
    if (kind == VarKind::binary && (lower < 0 || !upper || *upper > 1))
      throw DomainError("LPModel: binary variable bounds must lie in [0, 1]");
    variables_[var].lower = std::move(lower);
    variables_[var].upper = std::move(upper);
  }

  /// Sets the objective coefficient of `var`; zero removes it.
  void set_objective(std::size_t var, const Rational& coef) {
    check_var(var);
    if (coef == 0)
      objective_.erase(var);
    else
      objective_[var] = coef;
  }

  /// Adds sum terms (relation) rhs.  Repeated variables are merged.
  std::size_t add_constraint(const std::vector<LPTerm>& terms, Relation relation, Rational rhs) {
    std::map<std::size_t, Rational> merged;
    for (const auto& t : terms) {
      check_var(t.var);
      merged[t.var] += t.coef;
    }
    LPConstraint c;
    for (auto& [v, a] : merged)
      if (a != 0) c.terms.push_back({v, a});
    if (c.terms.empty()) throw DomainError("LPModel: constraint without non-zero coefficients");
    c.relation = relation;
    c.rhs = std::move(rhs);
    constraints_.push_back(std::move(c));
    return constraints_.size() - 1;
  }

  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t constraint_count() const noexcept { return constraints_.size(); }
  const std::vector<LPVariable>& variables() const noexcept { return variables_; }
  const LPVariable& variable(std::size_t i) const { return variables_.at(i); }
  const std::map<std::size_t, Rational>& objective() const noexcept { return objective_; }
  const std::vector<LPConstraint>& constraints() const noexcept { return constraints_; }

  static std::string variable_name(std::size_t i) { return "xE" + std::to_string(i); }

 private:
  void check_var(std::size_t var) const {
    if (var >= variables_.size()) throw DomainError("LPModel: undeclared variable " + std::to_string(var));
  }

  std::vector<LPVariable> variables_;
  std::map<std::size_t, Rational> objective_;
  std::vector<LPConstraint> constraints_;
};

// --- LP text format ---------------------------------------------------------

namespace detail {

using boost::multiprecision::cpp_int;

inline cpp_int denominator_lcm(const std::vector<const Rational*>& values) {
  cpp_int l = 1;
  for (const Rational* r : values) {
    const cpp_int d = boost::multiprecision::denominator(*r);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

inline constexpr std::size_t kTermsPerLine = 10;

/// Writes "a xE1 + b xE2 ..." scaled by `scale`, wrapping long expressions.
inline void write_linear(std::ostream& os, const std::vector<std::pair<std::size_t, const Rational*>>& terms,
                         const cpp_int& scale) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) os << "\n   ";
    const Rational scaled = *terms[i].second * scale;
    cpp_int c = boost::multiprecision::numerator(scaled);
    const bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0) {
      if (neg) os << "- ";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (c != 1) os << c << ' ';
    os << LPModel::variable_name(terms[i].first);
  }
}

inline void write_names(std::ostream& os, const std::vector<std::size_t>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    os << ' ' << LPModel::variable_name(vars[i]);
    if (i % kTermsPerLine == kTermsPerLine - 1 || i + 1 == vars.size()) os << '\n';
  }
}

inline std::string integer_text(const Rational& r, const char* what) {
  if (!is_integral(r)) throw DomainError(std::string("export_lp: fractional ") + what + " is not representable");
  return boost::multiprecision::numerator(r).str();
}

}  // namespace detail

/// Writes `model` in LP text format.  Each constraint row is scaled to
/// integer coefficients; a fractional objective is scaled likewise and the
/// factor recorded in a comment line.  Output depends only on the model.
inline void export_lp(const LPModel& model, std::ostream& os) {
  using detail::cpp_int;
  os << "Maximize\n";
  {
    std::vector<std::pair<std::size_t, const Rational*>> terms;
    std::vector<const Rational*> values;
    for (const auto& [v, a] : model.objective()) {
      terms.emplace_back(v, &a);
      values.push_back(&a);
    }
    const cpp_int scale = detail::denominator_lcm(values);
    if (scale != 1) os << "\\ objective scaled by " << scale << '\n';
    os << " obj:";
    if (!terms.empty()) {
      os << ' ';
      detail::write_linear(os, terms, scale);
    }
    os << '\n';
  }
  os << "Subject To\n";
  std::size_t row = 0;
  for (const auto& c : model.constraints()) {
    std::vector<std::pair<std::size_t, const Rational*>> terms;
    std::vector<const Rational*> values{&c.rhs};
    for (const auto& t : c.terms) {
      terms.emplace_back(t.var, &t.coef);
      values.push_back(&t.coef);
    }
    const cpp_int scale = detail::denominator_lcm(values);
    os << " c" << ++row << ": ";
    detail::write_linear(os, terms, scale);
    os << (c.relation == Relation::le ? " <= " : c.relation == Relation::ge ? " >= " : " = ")
       << boost::multiprecision::numerator(Rational(c.rhs * scale)) << '\n';
  }
  std::vector<std::size_t> bounded, generals, binaries;
  for (std::size_t i = 0; i < model.variable_count(); ++i) {
    const auto& v = model.variable(i);
    if (v.kind == VarKind::binary) {
      binaries.push_back(i);
      if (v.lower != 0 || *v.upper != 1) bounded.push_back(i);
    } else {
      if (v.kind == VarKind::integer) generals.push_back(i);
      if (v.lower != 0 || v.upper) bounded.push_back(i);
    }
  }
  if (!bounded.empty()) {
    os << "Bounds\n";
    for (std::size_t i : bounded) {
      const auto& v = model.variable(i);
      const std::string name = LPModel::variable_name(i);
      if (v.upper && *v.upper == v.lower)
        os << ' ' << name << " = " << detail::integer_text(v.lower, "bound") << '\n';
      else if (v.upper)
        os << ' ' << detail::integer_text(v.lower, "bound") << " <= " << name
           << " <= " << detail::integer_text(*v.upper, "bound") << '\n';
      else
        os << ' ' << name << " >= " << detail::integer_text(v.lower, "bound") << '\n';
    }
  }
  if (!generals.empty()) {
    os << "Generals\n";
    detail::write_names(os, generals);
  }
  if (!binaries.empty()) {
    os << "Binaries\n";
    detail::write_names(os, binaries);
  }
  os << "End\n";
}

inline std::string export_lp(const LPModel& model) {
  std::ostringstream os;
  export_lp(model, os);
  return os.str();
}

// --- simplex ----------------------------------------------------------------

enum class LPStatus { optimal, infeasible, unbounded, budget_exhausted };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
    case LPStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct LPOptions {
  /// Refuse models whose dense tableau would exceed this many entries.
  std::uint64_t max_tableau_entries = 25'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  Rational objective;          // meaningful when optimal
  std::vector<Rational> values;  // one per model variable when optimal
  std::uint64_t pivots = 0;      // of the pass that produced the result
  bool wide_arithmetic = false;  // the 64-bit pass overflowed and was redone wider
};

namespace detail {

/// The model with bounds substituted: x = lower + y, y >= 0, fixed variables
/// folded into right-hand sides, upper bounds as explicit rows unless a
/// non-negative <= row already implies them.
struct StandardForm {
  std::vector<std::size_t> var_of;  // column -> model variable
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> a;
    Relation rel = Relation::le;
    Rational b;
  };
  std::vector<Row> rows;
  std::vector<Rational> c;
  Rational c0;
  bool infeasible = false;
};

inline bool relation_holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  return rel == Relation::le ? lhs <= rhs : rel == Relation::ge ? lhs >= rhs : lhs == rhs;
}

inline StandardForm standardize(const LPModel& model, const std::vector<Rational>& lo,
                                const std::vector<std::optional<Rational>>& hi) {
  StandardForm sf;
  const std::size_t nv = model.variable_count();
  std::vector<std::size_t> col(nv, static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < nv; ++v) {
    if (hi[v] && *hi[v] < lo[v]) {
      sf.infeasible = true;
      return sf;
    }
    if (hi[v] && *hi[v] == lo[v]) continue;
    col[v] = sf.var_of.size();
    sf.var_of.push_back(v);
  }
  sf.c.assign(sf.var_of.size(), Rational(0));
  for (const auto& [v, a] : model.objective()) {
    sf.c0 += a * lo[v];
    if (col[v] != static_cast<std::size_t>(-1)) sf.c[col[v]] = a;
  }
  for (const auto& con : model.constraints()) {
    StandardForm::Row row;
    row.rel = con.relation;
    row.b = con.rhs;
    for (const auto& t : con.terms) {
      row.b -= t.coef * lo[t.var];
      if (col[t.var] != static_cast<std::size_t>(-1)) row.a.emplace_back(col[t.var], t.coef);
    }
    if (row.a.empty()) {
      if (!relation_holds(Rational(0), row.rel, row.b)) {
        sf.infeasible = true;
        return sf;
      }
      continue;
    }
    sf.rows.push_back(std::move(row));
  }
  std::vector<std::optional<Rational>> implied(sf.var_of.size());
  for (const auto& row : sf.rows) {
    if (row.rel != Relation::le) continue;
    bool nonneg = true;
    for (const auto& [j, a] : row.a) nonneg = nonneg && a > 0;
    if (!nonneg) continue;
    for (const auto& [j, a] : row.a) {
      const Rational cap = row.b / a;
      if (!implied[j] || cap < *implied[j]) implied[j] = cap;
    }
  }
  for (std::size_t j = 0; j < sf.var_of.size(); ++j) {
    const std::size_t v = sf.var_of[j];
    if (!hi[v]) continue;
    const Rational range = *hi[v] - lo[v];
    if (implied[j] && *implied[j] <= range) continue;
    StandardForm::Row row;
    row.a.emplace_back(j, Rational(1));
    row.rel = Relation::le;
    row.b = range;
    sf.rows.push_back(std::move(row));
  }
  return sf;
}

struct DeadlineHit {};

inline Rational to_rational(const CheckedRational& x) { return x.to_rational(); }
inline Rational to_rational(const WideRational& x) { return x.to_rational(); }
inline Rational to_rational(const Rational& x) { return x; }
inline bool is_zero(const CheckedRational& x) { return x.is_zero(); }
inline bool is_zero(const WideRational& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x == 0; }

/// Dense two-phase tableau simplex over T with Bland's rule.  Writes the
/// optimal column values and objective (without the constant) on success.
template <class T>
LPStatus tableau_simplex(const StandardForm& sf, const LPOptions& opt, std::vector<Rational>& y, Rational& z,
                         std::uint64_t& pivots) {
  const std::size_t m = sf.rows.size(), n = sf.var_of.size();
  std::vector<Relation> rel(m);
  std::vector<bool> flip(m, false);
  std::size_t ns = 0, na = 0;
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = sf.rows[i].rel;
    if (sf.rows[i].b < 0) {
      flip[i] = true;
      if (rel[i] == Relation::le)
        rel[i] = Relation::ge;
      else if (rel[i] == Relation::ge)
        rel[i] = Relation::le;
    }
    if (rel[i] != Relation::eq) ++ns;
    if (rel[i] != Relation::le) ++na;
  }
  const std::size_t N = n + ns + na, W = N + 1;
  const double entries = static_cast<double>(m + 1) * static_cast<double>(W);
  if (entries > static_cast<double>(opt.max_tableau_entries))
    throw BudgetExceeded("simplex tableau too large", static_cast<std::uint64_t>(entries), opt.max_tableau_entries);

  std::vector<T> tab((m + 1) * W);
  auto at = [&](std::size_t i, std::size_t j) -> T& { return tab[i * W + j]; };
  std::vector<std::size_t> basis(m);
  std::size_t si = n, ai = n + ns;
  for (std::size_t i = 0; i < m; ++i) {
    const T sign = flip[i] ? T(-1) : T(1);
    for (const auto& [j, a] : sf.rows[i].a) at(i, j) = sign * T(a);
    at(i, N) = sign * T(sf.rows[i].b);
    if (rel[i] == Relation::le) {
      at(i, si) = T(1);
      basis[i] = si++;
    } else {
      if (rel[i] == Relation::ge) at(i, si++) = T(-1);
      at(i, ai) = T(1);
      basis[i] = ai++;
    }
  }
  const std::size_t first_art = n + ns;
  std::vector<char> banned(N, 0);
  std::vector<std::size_t> nz;

  auto pivot = [&](std::size_t r, std::size_t c) {
    const T p = at(r, c);
    nz.clear();
    for (std::size_t j = 0; j < W; ++j) {
      T& e = at(r, j);
      if (is_zero(e)) continue;
      e = e / p;
      nz.push_back(j);
    }
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      const T f = at(i, c);
      if (is_zero(f)) continue;
      T* rowi = &tab[i * W];
      const T* rowr = &tab[r * W];
      for (std::size_t j : nz) rowi[j] -= f * rowr[j];
    }
    basis[r] = c;
    ++pivots;
    if (opt.deadline && (pivots & 15) == 0 && std::chrono::steady_clock::now() > *opt.deadline) throw DeadlineHit{};
  };

  // Returns false when the objective is unbounded.
  auto iterate = [&]() -> bool {
    for (;;) {
      std::size_t c = N;
      for (std::size_t j = 0; j < N; ++j)
        if (!banned[j] && at(m, j) > T(0)) {
          c = j;
          break;
        }
      if (c == N) return true;
      std::size_t r = m;
      T best;
      for (std::size_t i = 0; i < m; ++i) {
        const T& a = at(i, c);
        if (!(a > T(0))) continue;
        const T ratio = at(i, N) / a;
        if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m) return false;
      pivot(r, c);
    }
  };

  if (na > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (!is_zero(at(i, j))) at(m, j) += at(i, j);
      at(m, N) += at(i, N);
    }
    iterate();
    if (!is_zero(at(m, N))) return LPStatus::infeasible;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (!is_zero(at(i, j))) {
          pivot(i, j);
          break;
        }
      // A row left with its artificial basic is redundant and stays at zero.
    }
    for (std::size_t j = first_art; j < N; ++j) banned[j] = 1;
    for (std::size_t j = 0; j < W; ++j) at(m, j) = T(0);
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = T(sf.c[j]);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n || sf.c[basis[i]] == 0) continue;
    const T f = T(sf.c[basis[i]]);
    for (std::size_t j = 0; j < W; ++j)
      if (!is_zero(at(i, j))) at(m, j) -= f * at(i, j);
  }
  if (!iterate()) return LPStatus::unbounded;
  y.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) y[basis[i]] = to_rational(at(i, N));
  z = -to_rational(at(m, N));
  return LPStatus::optimal;
}

/// Solves the relaxation of `model` with the given bounds (integrality
/// ignored), first in 64-bit rationals and on overflow in arbitrary precision.
inline LPResult solve_with_bounds(const LPModel& model, const std::vector<Rational>& lo,
                                  const std::vector<std::optional<Rational>>& hi, const LPOptions& opt) {
  LPResult result;
  const StandardForm sf = standardize(model, lo, hi);
  if (sf.infeasible) {
    result.status = LPStatus::infeasible;
    return result;
  }
  std::vector<Rational> y;
  Rational z;
  try {
    try {
      result.status = tableau_simplex<CheckedRational>(sf, opt, y, z, result.pivots);
    } catch (const RationalOverflow&) {
      result.wide_arithmetic = true;
      result.pivots = 0;
      try {
        result.status = tableau_simplex<WideRational>(sf, opt, y, z, result.pivots);
      } catch (const RationalOverflow&) {
        result.pivots = 0;
        result.status = tableau_simplex<Rational>(sf, opt, y, z, result.pivots);
      }
    }
  } catch (const DeadlineHit&) {
    result.status = LPStatus::budget_exhausted;
    return result;
  }
  if (result.status != LPStatus::optimal) return result;
  result.objective = sf.c0 + z;
  result.values = lo;
  for (std::size_t j = 0; j < sf.var_of.size(); ++j) result.values[sf.var_of[j]] += y[j];
  return result;
}

}  // namespace detail

/// Exact optimum of the LP relaxation of `model`.  Throws BudgetExceeded when
/// the tableau would exceed `opt.max_tableau_entries`; a passed deadline
/// yields status budget_exhausted.
inline LPResult solve_lp(const LPModel& model, const LPOptions& opt = {}) {
  std::vector<Rational> lo;
  std::vector<std::optional<Rational>> hi;
  for (const auto& v : model.variables()) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  return detail::solve_with_bounds(model, lo, hi, opt);
}

// --- branch and bound -------------------------------------------------------

struct ILPResult {
  LPStatus status = LPStatus::infeasible;
  std::optional<Rational> incumbent;  // best integer objective found
  std::vector<Rational> solution;     // values of the incumbent
  std::optional<Rational> upper_bound;  // root relaxation bound, rounded down for integral objectives
  std::uint64_t nodes = 0;
};

namespace detail {

/// Tightens integer bounds from row activities until nothing changes.
/// Returns false when some row cannot be satisfied.
inline bool propagate_bounds(const LPModel& model, std::vector<Rational>& lo, std::vector<std::optional<Rational>>& hi) {
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (const auto& con : model.constraints()) {
      for (int s : {1, -1}) {
        if (s == 1 && con.relation == Relation::ge) continue;
        if (s == -1 && con.relation == Relation::le) continue;
        Rational minact = 0;
        bool finite = true;
        for (const auto& t : con.terms) {
          const Rational a = s * t.coef;
          if (a > 0) {
            minact += a * lo[t.var];
          } else if (hi[t.var]) {
            minact += a * *hi[t.var];
          } else {
            finite = false;
            break;
          }
        }
        if (!finite) continue;
        const Rational b = s * con.rhs;
        if (minact > b) return false;
        const Rational slack = b - minact;
        for (const auto& t : con.terms) {
          if (model.variable(t.var).kind == VarKind::continuous) continue;
          const Rational a = s * t.coef;
          if (a > 0) {
            const Rational cap = floor_rational(lo[t.var] + slack / a);
            if (!hi[t.var] || cap < *hi[t.var]) {
              if (cap < lo[t.var]) return false;
              hi[t.var] = cap;
              changed = true;
            }
          } else {
            const Rational cap = ceil_rational(*hi[t.var] + slack / a);
            if (cap > lo[t.var]) {
              if (hi[t.var] && cap > *hi[t.var]) return false;
              lo[t.var] = cap;
              changed = true;
            }
          }
        }
      }
    }
    if (!changed) return true;
  }
  return true;
}

}  // namespace detail

/// Depth-first branch-and-bound on the integer and binary variables of
/// `model`.  Branches on the most fractional variable (ties to the lowest
/// index), up-branch first, and prunes nodes whose relaxation bound does not
/// exceed the incumbent.  Stops after `node_budget` nodes with status
/// budget_exhausted; incumbent and root bound then bracket the optimum.
inline ILPResult solve_ilp_small(const LPModel& model, std::uint64_t node_budget, const LPOptions& opt = {}) {
  ILPResult result;
  bool integral_objective = true;
  for (const auto& [v, a] : model.objective())
    integral_objective = integral_objective && is_integral(a) && model.variable(v).kind != VarKind::continuous;

  bool exhausted = false, unbounded = false;
  const Rational half(1, 2);

  auto visit = [&](auto&& self, std::vector<Rational> lo, std::vector<std::optional<Rational>> hi) -> void {
    if (exhausted || unbounded) return;
    if (result.nodes >= node_budget) {
      exhausted = true;
      return;
    }
    const bool root = result.nodes == 0;
    ++result.nodes;
    if (!detail::propagate_bounds(model, lo, hi)) return;
    const LPResult lp = detail::solve_with_bounds(model, lo, hi, opt);
    if (lp.status == LPStatus::infeasible) return;
    if (lp.status == LPStatus::unbounded) {
      unbounded = true;
      return;
    }
    if (lp.status == LPStatus::budget_exhausted) {
      exhausted = true;
      return;
    }
    const Rational bound = integral_objective ? floor_rational(lp.objective) : lp.objective;
    if (root) result.upper_bound = bound;
    if (result.incumbent && bound <= *result.incumbent) return;

    std::size_t branch = model.variable_count();
    Rational best_gap;
    for (std::size_t v = 0; v < model.variable_count(); ++v) {
      if (model.variable(v).kind == VarKind::continuous || is_integral(lp.values[v])) continue;
      const Rational frac = lp.values[v] - floor_rational(lp.values[v]);
      const Rational gap = frac > half ? frac - half : half - frac;
      if (branch == model.variable_count() || gap < best_gap) {
        branch = v;
        best_gap = gap;
      }
    }
    if (branch == model.variable_count()) {
      if (!result.incumbent || lp.objective > *result.incumbent) {
        result.incumbent = lp.objective;
        result.solution = lp.values;
      }
      return;
    }
    {
      auto lo_up = lo;
      lo_up[branch] = ceil_rational(lp.values[branch]);
      self(self, std::move(lo_up), hi);
    }
    hi[branch] = floor_rational(lp.values[branch]);
    self(self, std::move(lo), std::move(hi));
  };

  std::vector<Rational> lo;
  std::vector<std::optional<Rational>> hi;
  for (const auto& v : model.variables()) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  visit(visit, std::move(lo), std::move(hi));

  if (unbounded)
    result.status = LPStatus::unbounded;
  else if (exhausted)
    result.status = LPStatus::budget_exhausted;
  else
    result.status = result.incumbent ? LPStatus::optimal : LPStatus::infeasible;
  return result;
}

}  // namespace qvsp

#endif  // QVSP_LP_HPP
