#ifndef QVSP_GF_HPP
#define QVSP_GF_HPP

// Exact arithmetic in small finite fields F_q (q = p^e <= 16) and in extension
// fields F_{q^m} (q^m <= 2^16), plus dense matrices and reduced row echelon form.
//
// Elements are represented by their index in [0, order).  For a field built as
// an extension of a base field B with modulus f(x) of degree m, the index of
// c_0 + c_1 x + ... + c_{m-1} x^{m-1} is sum_i c_i * |B|^i, where each c_i is a
// B-index.  Prime field elements are the integers 0..p-1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvsp/error.hpp"

namespace qvsp {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Immutable arithmetic context.  Safe to share between threads.
class Field {
 public:
  static constexpr std::uint32_t kMaxBaseOrder = 16;
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  int characteristic() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return order_; }
  /// Degree over the prime field.
  int prime_degree() const noexcept { return prime_degree_; }
  /// Base field this one was built over; null for a prime field.
  const FieldPtr& base() const noexcept { return base_; }
  /// Degree over base(); 1 for a prime field.
  int degree() const noexcept { return degree_; }
  /// Monic modulus over base(), coefficients low-to-high (size degree()+1).
  /// For a prime field this is the polynomial x.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }
  bool is_prime_field() const noexcept { return base_ == nullptr; }

  Elem add(Elem a, Elem b) const {
    if (!add_table_.empty()) return add_table_[a * order_ + b];
    Elem out = 0, scale = 1;
    const Field& B = *base_;
    for (int i = 0; i < degree_; ++i) {
      out += B.add(a % B.order_, b % B.order_) * scale;
      a /= B.order_;
      b /= B.order_;
      scale *= B.order_;
    }
    return out;
  }
  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    if (!neg_table_.empty()) return neg_table_[a];
    Elem out = 0, scale = 1;
    const Field& B = *base_;
    for (int i = 0; i < degree_; ++i) {
      out += B.neg(a % B.order_) * scale;
      a /= B.order_;
      scale *= B.order_;
    }
    return out;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_table_.empty()) return mul_table_[a * order_ + b];
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= order_ - 1) s -= order_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero");
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (order_ - 1))) % (order_ - 1)];
  }
  /// x -> x^{|base|}; the identity on a prime field.
  Elem frobenius(Elem x) const { return is_prime_field() ? x : pow(x, base_->order_); }

  /// Coordinates over base() in the polynomial basis 1, x, ..., x^{m-1}.
  std::vector<Elem> coordinates(Elem x) const {
    if (is_prime_field()) return {x};
    std::vector<Elem> c(static_cast<std::size_t>(degree_));
    for (auto& ci : c) {
      ci = x % base_->order_;
      x /= base_->order_;
    }
    return c;
  }
  Elem from_coordinates(std::span<const Elem> c) const {
    if (is_prime_field()) {
      if (c.size() != 1) throw DomainError("prime field has one coordinate");
      return c[0];
    }
    if (c.size() != static_cast<std::size_t>(degree_)) throw DomainError("coordinate length mismatch");
    Elem x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * base_->order_ + c[i];
    return x;
  }

  std::string describe() const {
    std::string s = "F_" + std::to_string(order_);
    if (!is_prime_field()) s += " over F_" + std::to_string(base_->order_);
    return s;
  }

 private:
  friend FieldPtr make_prime_field(int p);
  friend FieldPtr make_extension(const FieldPtr& base, int m);

  Field() = default;

  void build_log_tables(Elem generator);
  void materialize_tables();

  int p_ = 0;
  int prime_degree_ = 1;
  std::uint32_t order_ = 0;
  FieldPtr base_;
  int degree_ = 1;
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> neg_table_;
};

// ---------------------------------------------------------------------------
// Polynomials over a field, coefficient vectors low-to-high.  Used for the
// modulus search and by tests.

using Poly = std::vector<Elem>;

namespace poly {

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo b (b non-zero).
inline Poly mod(const Field& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw DomainError("polynomial division by zero");
  const Elem lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem factor = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  trim(out);
  return out;
}

}  // namespace poly

/// Irreducibility over F by trial division against every monic polynomial of
/// degree 1..deg(f)/2.
inline bool is_irreducible(const Field& F, const Poly& f) {
  Poly g = f;
  poly::trim(g);
  if (g.size() < 2) return false;
  const int deg = static_cast<int>(g.size()) - 1;
  const std::uint32_t q = F.order();
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    Poly h(static_cast<std::size_t>(d) + 1, 0);
    h[static_cast<std::size_t>(d)] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t x = idx;
      for (int i = 0; i < d; ++i) {
        h[static_cast<std::size_t>(i)] = static_cast<Elem>(x % q);
        x /= q;
      }
      if (poly::mod(F, g, h).empty()) return false;
    }
  }
  return true;
}

/// Lexicographically least irreducible monic polynomial of degree m over F,
/// comparing the coefficient sequence (c_0, c_1, ..., c_{m-1}) left to right.
inline Poly least_irreducible(const Field& F, int m) {
  const std::uint32_t q = F.order();
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= q;
  Poly f(static_cast<std::size_t>(m) + 1, 0);
  f[static_cast<std::size_t>(m)] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit of idx.
    std::uint64_t x = idx;
    for (int i = m - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = static_cast<Elem>(x % q);
      x /= q;
    }
    if (is_irreducible(F, f)) return f;
  }
  throw ValidationError("no irreducible polynomial found");  // unreachable for a field
}

inline void Field::build_log_tables(Elem generator) {
  exp_.assign(order_ - 1, 0);
  log_.assign(order_, 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i + 1 < order_; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = mul(x, generator);
  }
}

inline void Field::materialize_tables() {
  if (order_ > 256) return;
  const std::uint32_t n = order_;
  std::vector<Elem> add_t(static_cast<std::size_t>(n) * n), mul_t(static_cast<std::size_t>(n) * n);
  std::vector<Elem> neg_t(n);
  for (Elem a = 0; a < n; ++a) {
    neg_t[a] = neg(a);
    for (Elem b = 0; b < n; ++b) {
      add_t[a * n + b] = add(a, b);
      mul_t[a * n + b] = mul(a, b);
    }
  }
  add_table_ = std::move(add_t);
  mul_table_ = std::move(mul_t);
  neg_table_ = std::move(neg_t);
}

inline FieldPtr make_prime_field(int p) {
  if (!detail::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (static_cast<std::uint32_t>(p) > Field::kMaxBaseOrder) throw DomainError("field order out of supported range");
  std::shared_ptr<Field> F(new Field());
  F->p_ = p;
  F->order_ = static_cast<std::uint32_t>(p);
  F->modulus_ = {0, 1};
  const auto n = static_cast<std::uint32_t>(p);
  F->add_table_.resize(n * n);
  F->mul_table_.resize(n * n);
  F->neg_table_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    F->neg_table_[a] = (n - a) % n;
    for (Elem b = 0; b < n; ++b) {
      F->add_table_[a * n + b] = (a + b) % n;
      F->mul_table_[a * n + b] = (a * b) % n;
    }
  }
  for (Elem g = 1; g < n; ++g) {
    std::uint32_t ord = 1;
    for (Elem x = g; x != 1; x = (x * g) % n) ++ord;
    if (ord == n - 1) {
      F->build_log_tables(g);
      break;
    }
  }
  return F;
}

/// Extension F_{q^m} of `base` with the lexicographically least irreducible
/// monic modulus of degree m.  m = 1 yields a copy of the base field.
inline FieldPtr make_extension(const FieldPtr& base, int m) {
  if (!base) throw DomainError("null base field");
  if (m < 1) throw DomainError("extension degree must be positive");
  std::uint64_t order = 1;
  for (int i = 0; i < m; ++i) {
    order *= base->order();
    if (order > Field::kMaxOrder) throw DomainError("extension order exceeds 2^16");
  }
  std::shared_ptr<Field> F(new Field());
  F->p_ = base->characteristic();
  F->prime_degree_ = base->prime_degree() * m;
  F->order_ = static_cast<std::uint32_t>(order);
  F->base_ = base;
  F->degree_ = m;
  F->modulus_ = least_irreducible(*base, m);

  // Multiplication by polynomial reduction; used only while building tables.
  const Field& B = *base;
  auto poly_mul = [&](Elem a, Elem b) {
    std::vector<Elem> ca = F->coordinates(a), cb = F->coordinates(b);
    std::vector<Elem> prod(static_cast<std::size_t>(2 * m - 1), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            B.add(prod[static_cast<std::size_t>(i + j)], B.mul(ca[static_cast<std::size_t>(i)], cb[static_cast<std::size_t>(j)]));
    for (int d = 2 * m - 2; d >= m; --d) {
      const Elem c = prod[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      prod[static_cast<std::size_t>(d)] = 0;
      for (int i = 0; i < m; ++i) {
        const auto at = static_cast<std::size_t>(d - m + i);
        prod[at] = B.sub(prod[at], B.mul(c, F->modulus_[static_cast<std::size_t>(i)]));
      }
    }
    prod.resize(static_cast<std::size_t>(m));
    return F->from_coordinates(prod);
  };

  const std::uint32_t n = F->order_;
  if (n == 2) {
    F->exp_ = {1};
    F->log_ = {0, 0};
  } else {
    for (Elem g = 2; g < n; ++g) {
      std::uint32_t ord = 1;
      for (Elem x = g; x != 1; x = poly_mul(x, g)) ++ord;
      if (ord == n - 1) {
        F->exp_.assign(n - 1, 0);
        F->log_.assign(n, 0);
        Elem x = 1;
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
          F->exp_[i] = x;
          F->log_[x] = i;
          x = poly_mul(x, g);
        }
        break;
      }
    }
  }
  F->materialize_tables();
  return F;
}

/// F_{p^e} with p prime and p^e <= 16.
inline FieldPtr make_field(int p, int e) {
  if (!detail::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (e < 1) throw DomainError("extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > Field::kMaxBaseOrder) throw DomainError("field order out of supported range (q <= 16)");
  }
  FieldPtr prime = make_prime_field(p);
  return e == 1 ? prime : make_extension(prime, e);
}

/// Field of the given prime-power order q <= 16.
inline FieldPtr field_of_order(int q) {
  if (q < 2) throw DomainError("field order must be at least 2");
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  return make_field(p, e);
}

// ---------------------------------------------------------------------------
// Dense matrices of field indices.

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DomainError("matrix data size mismatch");
  }
  static Matrix from_rows(const std::vector<std::vector<Elem>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix M(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DomainError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), M.row(i).begin());
    }
    return M;
  }
  static Matrix identity(std::size_t n) {
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) M(i, i) = 1;
    return M;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const {
    Matrix T(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) T(c, r) = (*this)(r, c);
    return T;
  }

  /// Appends the rows of `other`; column counts must agree unless this is empty.
  void append_rows(const Matrix& other) {
    if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
    if (other.cols_ != cols_) throw DomainError("column count mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }
  void append_row(std::span<const Elem> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw DomainError("column count mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool valid_for(const Field& F) const {
    return std::all_of(data_.begin(), data_.end(), [&](Elem x) { return x < F.order(); });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix matrix;  ///< zero rows removed
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with unit pivots and entries above and below every
/// pivot eliminated.  Unique per row space.
inline RrefResult rref(const Field& F, Matrix M) {
  const std::size_t rows = M.rows(), cols = M.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && M(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(M(sel, j), M(r, j));
    const Elem inv = F.inv(M(r, c));
    if (inv != 1)
      for (std::size_t j = c; j < cols; ++j) M(r, j) = F.mul(M(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      const Elem f = M(i, c);
      for (std::size_t j = c; j < cols; ++j) M(i, j) = F.sub(M(i, j), F.mul(f, M(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) std::copy(M.row(i).begin(), M.row(i).end(), out.row(i).begin());
  return {std::move(out), r, std::move(pivots)};
}

inline std::size_t rank(const Field& F, const Matrix& M) { return rref(F, M).rank; }

/// Evaluates the linearized polynomial sum_i c_i x^{q^i} (q = |ext.base()|) at
/// each evaluation point and returns the coordinate matrix over the base field:
/// one row per point, ext.degree() columns.
inline Matrix gabidulin_codeword(const Field& ext, std::span<const Elem> points, std::span<const Elem> coefficients) {
  if (ext.is_prime_field()) throw DomainError("gabidulin_codeword needs an extension field");
  const auto m = static_cast<std::size_t>(ext.degree());
  if (points.size() > m) throw DomainError("more evaluation points than the extension degree");
  const Field& B = *ext.base();
  Matrix P(points.size(), m);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto c = ext.coordinates(points[i]);
    std::copy(c.begin(), c.end(), P.row(i).begin());
  }
  if (rank(B, P) != points.size()) throw ValidationError("evaluation points are linearly dependent over the base field");
  Matrix out(points.size(), m);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Elem value = 0;
    Elem power = points[i];  // g^{q^j}
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      value = ext.add(value, ext.mul(coefficients[j], power));
      power = ext.frobenius(power);
    }
    auto c = ext.coordinates(value);
    std::copy(c.begin(), c.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace qvsp

#endif  // QVSP_GF_HPP
