#ifndef QVSP_SUBSPACE_HPP
#define QVSP_SUBSPACE_HPP

// Canonical subspaces of F_q^v and the operations of the subspace lattice.
//
// A Subspace stores its reduced row echelon generator matrix, zero rows removed.
// Because that matrix is unique per row space, two Subspace values are equal iff
// they describe the same subspace; every container keys on it.  Rows are packed
// four bits per entry, most significant entry first, so comparing rows as
// integers is lexicographic comparison of the entries.

#include <algorithm>
#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qvsp/error.hpp"
#include "qvsp/gf.hpp"

namespace qvsp {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxAmbient = 16;

// ---------------------------------------------------------------------------
// Gaussian binomials

/// Number of k-subspaces of F_q^v.  q = 1 gives the ordinary binomial.
inline BigInt gaussian(int v, int k, int q) {
  if (v < 0 || k < 0 || k > v) throw DomainError("gaussian: need 0 <= k <= v");
  if (q < 1) throw DomainError("gaussian: need q >= 1");
  BigInt num = 1, den = 1;
  if (q == 1) {
    for (int i = 0; i < k; ++i) {
      num *= v - i;
      den *= i + 1;
    }
    return num / den;
  }
  const BigInt Q = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(Q, static_cast<unsigned>(v - i)) - 1;
    den *= boost::multiprecision::pow(Q, static_cast<unsigned>(k - i)) - 1;
  }
  return num / den;
}

inline std::uint64_t gaussian_u64(int v, int k, int q) {
  const BigInt g = gaussian(v, k, q);
  if (g > std::numeric_limits<std::uint64_t>::max()) throw DomainError("gaussian value exceeds 64 bits");
  return static_cast<std::uint64_t>(g);
}

inline BigInt ipow(int base, int exp) {
  if (exp < 0) throw DomainError("negative exponent");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// ---------------------------------------------------------------------------
// Enumeration budget

inline std::atomic<std::uint64_t>& enumeration_budget_storage() {
  static std::atomic<std::uint64_t> budget{10'000'000};
  return budget;
}
/// Maximum number of subspaces any single enumeration may produce.
inline std::uint64_t enumeration_budget() { return enumeration_budget_storage().load(); }
inline void set_enumeration_budget(std::uint64_t b) { enumeration_budget_storage().store(b); }

inline void check_budget(const BigInt& count, std::uint64_t budget, const std::string& what) {
  if (count > budget) {
    const std::uint64_t requested =
        count > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                          : static_cast<std::uint64_t>(count);
    throw BudgetExceeded(what + ": " + count.str() + " objects exceed the enumeration budget of " +
                             std::to_string(budget),
                         requested, budget);
  }
}

// ---------------------------------------------------------------------------

class Subspace {
 public:
  using Row = std::uint64_t;

  Subspace() = default;

  static Subspace zero(int v) {
    check_ambient(v);
    Subspace s;
    s.v_ = static_cast<std::uint8_t>(v);
    return s;
  }
  static Subspace full(int v) {
    check_ambient(v);
    Subspace s;
    s.v_ = static_cast<std::uint8_t>(v);
    for (int i = 0; i < v; ++i) s.rows_.push_back(unit_row(i));
    return s;
  }
  /// Row space of M, canonicalized.
  static Subspace from_matrix(const Field& F, const Matrix& M) {
    check_ambient(static_cast<int>(M.cols()));
    if (F.order() > 16) throw DomainError("subspaces are supported over fields with q <= 16");
    if (!M.valid_for(F)) throw DomainError("matrix entry outside the field");
    const RrefResult r = rref(F, M);
    return from_rref(r.matrix);
  }
  /// Builds from a matrix already in canonical form (not re-checked).
  static Subspace from_rref(const Matrix& R) {
    Subspace s;
    s.v_ = static_cast<std::uint8_t>(R.cols());
    s.rows_.reserve(R.rows());
    for (std::size_t i = 0; i < R.rows(); ++i) s.rows_.push_back(pack(R.row(i)));
    return s;
  }
  /// Parses the canonical text form: one string of v digits per row, digits
  /// 0-9 then a-f for field indices.  The row space is re-canonicalized.
  static Subspace from_text(const Field& F, int v, const std::vector<std::string>& rows) {
    check_ambient(v);
    Matrix M(rows.size(), static_cast<std::size_t>(v));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != static_cast<std::size_t>(v))
        throw DomainError("row '" + rows[i] + "' does not have " + std::to_string(v) + " digits");
      for (int j = 0; j < v; ++j) {
        const int d = digit_value(rows[i][static_cast<std::size_t>(j)]);
        if (d < 0 || static_cast<std::uint32_t>(d) >= F.order())
          throw DomainError("row '" + rows[i] + "' has an entry outside the field");
        M(i, static_cast<std::size_t>(j)) = static_cast<Elem>(d);
      }
    }
    return from_matrix(F, M);
  }

  int ambient() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& packed_rows() const noexcept { return rows_; }

  Elem entry(int r, int c) const {
    return static_cast<Elem>((rows_[static_cast<std::size_t>(r)] >> shift(c)) & 0xF);
  }
  std::vector<Elem> row(int r) const {
    std::vector<Elem> out(v_);
    for (int c = 0; c < v_; ++c) out[static_cast<std::size_t>(c)] = entry(r, c);
    return out;
  }
  int pivot(int r) const {
    for (int c = 0; c < v_; ++c)
      if (entry(r, c) != 0) return c;
    return -1;
  }
  Matrix generator() const {
    Matrix M(rows_.size(), v_);
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < v_; ++c) M(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = entry(r, c);
    return M;
  }
  std::vector<std::string> text() const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (int r = 0; r < dim(); ++r) {
      std::string s(v_, '0');
      for (int c = 0; c < v_; ++c) s[static_cast<std::size_t>(c)] = "0123456789abcdef"[entry(r, c)];
      out.push_back(std::move(s));
    }
    return out;
  }
  std::string to_string() const {
    std::string s = "<";
    for (const auto& r : text()) s += (s.size() > 1 ? "," : "") + r;
    return s + ">";
  }

  /// Ambient first, then rows compared lexicographically (a proper prefix is
  /// smaller).  Matches lexicographic order of the text form.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.v_ <=> b.v_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.rows_.begin(), a.rows_.end(), b.rows_.begin(), b.rows_.end());
  }
  friend bool operator==(const Subspace& a, const Subspace& b) = default;

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ v_;
    for (Row r : rows_) {
      h ^= r + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  static int shift(int c) { return 60 - 4 * c; }
  static Row unit_row(int c) { return Row{1} << shift(c); }
  static Row pack(std::span<const Elem> entries) {
    Row r = 0;
    for (std::size_t c = 0; c < entries.size(); ++c) r |= static_cast<Row>(entries[c]) << shift(static_cast<int>(c));
    return r;
  }

 private:
  static void check_ambient(int v) {
    if (v < 0 || v > kMaxAmbient) throw DomainError("ambient dimension must be in [0, 16]");
  }
  static int digit_value(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    return -1;
  }

  std::uint8_t v_ = 0;
  std::vector<Row> rows_;
};

inline std::ostream& operator<<(std::ostream& os, const Subspace& s) { return os << s.to_string(); }

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline std::vector<Subspace> enumerate_uncached(int q, int v, int k) {
  std::vector<Subspace> out;
  std::vector<int> pivots(static_cast<std::size_t>(k));
  // All k-subsets of columns as pivot sets.
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == k) {
      // Free positions: (row i, column c) with c > pivot_i and c not a pivot.
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < k; ++i)
        for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < v; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(i, c);
      std::vector<int> digits(free.size(), 0);
      while (true) {
        std::vector<Subspace::Row> rows(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = Subspace::unit_row(pivots[static_cast<std::size_t>(i)]);
        for (std::size_t f = 0; f < free.size(); ++f)
          rows[static_cast<std::size_t>(free[f].first)] |= static_cast<Subspace::Row>(digits[f])
                                                           << Subspace::shift(free[f].second);
        Matrix R(static_cast<std::size_t>(k), static_cast<std::size_t>(v));
        for (int i = 0; i < k; ++i)
          for (int c = 0; c < v; ++c)
            R(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) =
                static_cast<Elem>((rows[static_cast<std::size_t>(i)] >> Subspace::shift(c)) & 0xF);
        out.push_back(Subspace::from_rref(R));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
      return;
    }
    for (int c = start; c <= v - (k - idx); ++c) {
      pivots[static_cast<std::size_t>(idx)] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Process-wide cache of enumerations keyed by (q, v, k).  The set of canonical
/// matrices depends only on q, not on the multiplication of the field.
class EnumerationCache {
 public:
  static EnumerationCache& instance() {
    static EnumerationCache cache;
    return cache;
  }
  std::shared_ptr<const std::vector<Subspace>> get(int q, int v, int k) {
    const auto key = std::make_tuple(q, v, k);
    {
      std::shared_lock lock(mutex_);
      if (auto it = lists_.find(key); it != lists_.end()) return it->second;
    }
    auto list = std::make_shared<const std::vector<Subspace>>(enumerate_uncached(q, v, k));
    std::unique_lock lock(mutex_);
    return lists_.try_emplace(key, std::move(list)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<Subspace>>> lists_;
};

}  // namespace detail

/// All k-subspaces of F_q^v in lexicographic order of their canonical
/// matrices.  Refuses with BudgetExceeded when gaussian(v,k,q) > budget.
inline std::shared_ptr<const std::vector<Subspace>> enumerate_subspaces_shared(const Field& F, int v, int k,
                                                                               std::uint64_t budget = enumeration_budget()) {
  if (v < 0 || v > kMaxAmbient || k < 0 || k > v) throw DomainError("enumerate_subspaces: need 0 <= k <= v <= 16");
  if (F.order() > 16) throw DomainError("subspaces are supported over fields with q <= 16");
  check_budget(gaussian(v, k, static_cast<int>(F.order())), budget,
               "enumerating " + std::to_string(k) + "-subspaces of F_" + std::to_string(F.order()) + "^" +
                   std::to_string(v));
  return detail::EnumerationCache::instance().get(static_cast<int>(F.order()), v, k);
}

inline std::vector<Subspace> enumerate_subspaces(const Field& F, int v, int k, std::uint64_t budget = enumeration_budget()) {
  return *enumerate_subspaces_shared(F, v, k, budget);
}

/// Position of each subspace in an enumeration list.
class SubspaceIndex {
 public:
  SubspaceIndex() = default;
  explicit SubspaceIndex(std::shared_ptr<const std::vector<Subspace>> list) : list_(std::move(list)) {
    map_.reserve(list_->size());
    for (std::size_t i = 0; i < list_->size(); ++i) map_.emplace((*list_)[i], i);
  }
  std::size_t size() const { return list_ ? list_->size() : 0; }
  const Subspace& at(std::size_t i) const { return (*list_)[i]; }
  const std::vector<Subspace>& list() const { return *list_; }
  std::optional<std::size_t> find(const Subspace& s) const {
    auto it = map_.find(s);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::shared_ptr<const std::vector<Subspace>> list_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> map_;
};

/// Cached index over all k-subspaces of F_q^v.
inline std::shared_ptr<const SubspaceIndex> subspace_index(const Field& F, int v, int k,
                                                           std::uint64_t budget = enumeration_budget()) {
  static std::shared_mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const SubspaceIndex>> cache;
  auto list = enumerate_subspaces_shared(F, v, k, budget);
  const auto key = std::make_tuple(static_cast<int>(F.order()), v, k);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto index = std::make_shared<const SubspaceIndex>(std::move(list));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(index)).first->second;
}

// ---------------------------------------------------------------------------
// Lattice operations

namespace detail {

inline void same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DomainError("ambient dimension mismatch");
}

inline Elem dot(const Field& F, std::span<const Elem> x, std::span<const Elem> y) {
  Elem s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && y[i] != 0) s = F.add(s, F.mul(x[i], y[i]));
  return s;
}

}  // namespace detail

/// True iff vector x lies in A (reduction against the canonical rows).
inline bool contains_vector(const Field& F, const Subspace& A, std::vector<Elem> x) {
  if (static_cast<int>(x.size()) != A.ambient()) throw DomainError("vector length mismatch");
  for (int r = 0; r < A.dim(); ++r) {
    const int p = A.pivot(r);
    const Elem f = x[static_cast<std::size_t>(p)];
    if (f == 0) continue;
    for (int c = p; c < A.ambient(); ++c) {
      const Elem e = A.entry(r, c);
      if (e != 0) x[static_cast<std::size_t>(c)] = F.sub(x[static_cast<std::size_t>(c)], F.mul(f, e));
    }
  }
  return std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; });
}

/// A contains B.
inline bool contains(const Field& F, const Subspace& A, const Subspace& B) {
  detail::same_ambient(A, B);
  if (B.dim() > A.dim()) return false;
  if (F.order() == 2) {
    // Over F_2 reduction is XOR on the packed rows.
    for (auto x : B.packed_rows()) {
      for (int r = 0; r < A.dim(); ++r)
        if ((x >> Subspace::shift(A.pivot(r))) & 1u) x ^= A.packed_rows()[static_cast<std::size_t>(r)];
      if (x != 0) return false;
    }
    return true;
  }
  for (int r = 0; r < B.dim(); ++r)
    if (!contains_vector(F, A, B.row(r))) return false;
  return true;
}

inline Subspace span(const Field& F, const Subspace& A, const Subspace& B) {
  detail::same_ambient(A, B);
  Matrix M = A.generator();
  M.append_rows(B.generator());
  if (M.rows() == 0) return Subspace::zero(A.ambient());
  return Subspace::from_matrix(F, M);
}

/// Orthogonal complement under the standard dot product.
inline Subspace dual(const Field& F, const Subspace& A) {
  const int v = A.ambient();
  const int k = A.dim();
  std::vector<int> pivots(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) pivots[static_cast<std::size_t>(r)] = A.pivot(r);
  Matrix K(static_cast<std::size_t>(v - k), static_cast<std::size_t>(v));
  std::size_t row = 0;
  for (int j = 0; j < v; ++j) {
    if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
    K(row, static_cast<std::size_t>(j)) = 1;
    for (int r = 0; r < k; ++r)
      K(row, static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])) = F.neg(A.entry(r, j));
    ++row;
  }
  if (K.rows() == 0) return Subspace::zero(v);
  return Subspace::from_matrix(F, K);
}

/// Intersection, computed as dual(span(dual A, dual B)).
inline Subspace meet(const Field& F, const Subspace& A, const Subspace& B) {
  detail::same_ambient(A, B);
  return dual(F, span(F, dual(F, A), dual(F, B)));
}

inline int span_dim(const Field& F, const Subspace& A, const Subspace& B) {
  detail::same_ambient(A, B);
  Matrix M = A.generator();
  M.append_rows(B.generator());
  return M.rows() == 0 ? 0 : static_cast<int>(rank(F, M));
}

inline int meet_dim(const Field& F, const Subspace& A, const Subspace& B) {
  return A.dim() + B.dim() - span_dim(F, A, B);
}

/// d_S(U,W) = dim(U+W) - dim(U meet W).
inline int subspace_distance(const Field& F, const Subspace& U, const Subspace& W) {
  return 2 * span_dim(F, U, W) - U.dim() - W.dim();
}

inline std::vector<Subspace> points(const Field& F, int v, std::uint64_t budget = enumeration_budget()) {
  return enumerate_subspaces(F, v, 1, budget);
}

/// All hyperplanes of F_q^v as duals of points, listed in point order.
inline std::vector<Subspace> hyperplanes(const Field& F, int v, std::uint64_t budget = enumeration_budget()) {
  auto pts = enumerate_subspaces_shared(F, v, 1, budget);
  std::vector<Subspace> out;
  out.reserve(pts->size());
  for (const auto& p : *pts) out.push_back(dual(F, p));
  return out;
}

/// Minimum pairwise subspace distance; needs at least two codewords.
inline int min_distance(const Field& F, const std::vector<Subspace>& code) {
  if (code.size() < 2) throw DomainError("min_distance needs at least two codewords");
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) best = std::min(best, subspace_distance(F, code[i], code[j]));
  return best;
}

/// Every codeword meets U in the zero space.
inline bool is_disjoint_from(const Field& F, const std::vector<Subspace>& code, const Subspace& U) {
  return std::all_of(code.begin(), code.end(), [&](const Subspace& c) { return span_dim(F, c, U) == c.dim() + U.dim(); });
}

/// Image of a subspace of F_q^d under the embedding given by the d rows of
/// `basis` (a subspace of dimension d in a larger ambient space).
inline Subspace transport(const Field& F, const Subspace& inner, const Subspace& basis) {
  if (inner.ambient() != basis.dim()) throw DomainError("transport: inner ambient must equal basis dimension");
  const int v = basis.ambient();
  if (inner.dim() == 0) return Subspace::zero(v);
  Matrix M(static_cast<std::size_t>(inner.dim()), static_cast<std::size_t>(v));
  for (int r = 0; r < inner.dim(); ++r)
    for (int i = 0; i < basis.dim(); ++i) {
      const Elem a = inner.entry(r, i);
      if (a == 0) continue;
      for (int c = 0; c < v; ++c) {
        const Elem b = basis.entry(i, c);
        if (b != 0)
          M(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
              F.add(M(static_cast<std::size_t>(r), static_cast<std::size_t>(c)), F.mul(a, b));
      }
    }
  return Subspace::from_matrix(F, M);
}

/// All t-subspaces contained in U.
inline std::vector<Subspace> subspaces_of(const Field& F, const Subspace& U, int t, std::uint64_t budget = enumeration_budget()) {
  auto inner = enumerate_subspaces_shared(F, U.dim(), t, budget);
  std::vector<Subspace> out;
  out.reserve(inner->size());
  for (const auto& W : *inner) out.push_back(transport(F, W, U));
  return out;
}

}  // namespace qvsp

template <>
struct std::hash<qvsp::Subspace> {
  std::size_t operator()(const qvsp::Subspace& s) const noexcept { return s.hash(); }
};

#endif  // QVSP_SUBSPACE_HPP
