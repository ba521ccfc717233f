#ifndef QVSP_RATIONAL_HPP
#define QVSP_RATIONAL_HPP

// Exact rationals.  `Rational` is the arbitrary-precision type used at API
// boundaries; `CheckedRational` is a 64-bit fraction for inner loops that
// throws RationalOverflow instead of wrapping, so callers can retry with
// `WideRational` and then `Rational`.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qvsp {

using Rational = boost::multiprecision::cpp_rational;

class RationalOverflow : public std::overflow_error {
 public:
  RationalOverflow() : std::overflow_error("64-bit rational overflow") {}
};

class CheckedRational {
 public:
  CheckedRational() = default;
  CheckedRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  CheckedRational(std::int64_t n, std::int64_t d) { assign(n, d); }

  explicit CheckedRational(const Rational& r) {
    using boost::multiprecision::cpp_int;
    const cpp_int n = boost::multiprecision::numerator(r);
    const cpp_int d = boost::multiprecision::denominator(r);
    if (n > kMax || n < -kMax || d > kMax) throw RationalOverflow();
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  bool is_integer() const noexcept { return den_ == 1; }

  Rational to_rational() const { return Rational(num_, den_); }

  CheckedRational operator-() const { return from_wide(-static_cast<Wide>(num_), den_); }

  friend CheckedRational operator+(const CheckedRational& a, const CheckedRational& b) {
    if (a.den_ == b.den_) return from_wide(static_cast<Wide>(a.num_) + b.num_, a.den_);
    const std::int64_t g = gcd64(a.den_, b.den_);
    const Wide n = static_cast<Wide>(a.num_) * (b.den_ / g) + static_cast<Wide>(b.num_) * (a.den_ / g);
    return from_wide(n, static_cast<Wide>(a.den_) * (b.den_ / g));
  }
  friend CheckedRational operator-(const CheckedRational& a, const CheckedRational& b) { return a + (-b); }
  friend CheckedRational operator*(const CheckedRational& a, const CheckedRational& b) {
    if (a.num_ == 0 || b.num_ == 0) return {};
    const std::int64_t g1 = gcd64(a.num_, b.den_), g2 = gcd64(b.num_, a.den_);
    return from_wide(static_cast<Wide>(a.num_ / g1) * (b.num_ / g2), static_cast<Wide>(a.den_ / g2) * (b.den_ / g1));
  }
  friend CheckedRational operator/(const CheckedRational& a, const CheckedRational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * CheckedRational::reciprocal(b);
  }
  CheckedRational& operator+=(const CheckedRational& b) { return *this = *this + b; }
  CheckedRational& operator-=(const CheckedRational& b) { return *this = *this - b; }
  CheckedRational& operator*=(const CheckedRational& b) { return *this = *this * b; }
  CheckedRational& operator/=(const CheckedRational& b) { return *this = *this / b; }

  friend bool operator==(const CheckedRational& a, const CheckedRational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const CheckedRational& a, const CheckedRational& b) noexcept {
    return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
  }
  friend bool operator>(const CheckedRational& a, const CheckedRational& b) noexcept { return b < a; }
  friend bool operator<=(const CheckedRational& a, const CheckedRational& b) noexcept { return !(b < a); }
  friend bool operator>=(const CheckedRational& a, const CheckedRational& b) noexcept { return !(a < b); }

  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  using Wide = __int128;
  static constexpr std::int64_t kMax = INT64_MAX;

  static std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept {
    std::uint64_t x = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    std::uint64_t y = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    while (y != 0) {
      const std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return static_cast<std::int64_t>(x);
  }

  static CheckedRational reciprocal(const CheckedRational& b) {
    CheckedRational r;
    r.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    r.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return r;
  }

  static CheckedRational from_wide(Wide n, Wide d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return {};
    if (n >= -kMax && n <= kMax && d <= kMax) {
      const std::int64_t g = gcd64(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
      CheckedRational r;
      r.num_ = static_cast<std::int64_t>(n) / g;
      r.den_ = static_cast<std::int64_t>(d) / g;
      return r;
    }
    Wide x = n < 0 ? -n : n, y = d;
    while (y != 0) {
      const Wide t = x % y;
      x = y;
      y = t;
    }
    n /= x;
    d /= x;
    if (n > kMax || n < -kMax || d > kMax) throw RationalOverflow();
    CheckedRational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// 128-bit fraction with the same contract as CheckedRational, used when the
/// 64-bit pass overflows.
class WideRational {
 public:
  using Int = __int128;

  WideRational() = default;
  WideRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  WideRational(const CheckedRational& r) : num_(r.num()), den_(r.den()) {}  // NOLINT(google-explicit-constructor)

  explicit WideRational(const Rational& r) {
    using boost::multiprecision::cpp_int;
    const cpp_int n = boost::multiprecision::numerator(r);
    const cpp_int d = boost::multiprecision::denominator(r);
    static const cpp_int max = (cpp_int(1) << 126);
    if (n > max || n < -max || d > max) throw RationalOverflow();
    num_ = from_cpp(n);
    den_ = from_cpp(d);
  }

  bool is_zero() const noexcept { return num_ == 0; }

  Rational to_rational() const { return Rational(to_cpp(num_), to_cpp(den_)); }

  WideRational operator-() const {
    WideRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend WideRational operator+(const WideRational& a, const WideRational& b) {
    if (a.den_ == b.den_) return make(checked_add(a.num_, b.num_), a.den_);
    const Int g = gcd(a.den_, b.den_);
    const Int bd = b.den_ / g, ad = a.den_ / g;
    return make(checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, ad)), checked_mul(a.den_, bd));
  }
  friend WideRational operator-(const WideRational& a, const WideRational& b) { return a + (-b); }
  friend WideRational operator*(const WideRational& a, const WideRational& b) {
    if (a.num_ == 0 || b.num_ == 0) return {};
    const Int g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return make(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend WideRational operator/(const WideRational& a, const WideRational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    WideRational r;
    r.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    r.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * r;
  }
  WideRational& operator+=(const WideRational& b) { return *this = *this + b; }
  WideRational& operator-=(const WideRational& b) { return *this = *this - b; }

  friend bool operator==(const WideRational& a, const WideRational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const WideRational& a, const WideRational& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return (a - b).num_ < 0;
  }
  friend bool operator>(const WideRational& a, const WideRational& b) { return b < a; }

 private:
  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw RationalOverflow();
    return r;
  }
  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw RationalOverflow();
    return r;
  }
  static Int gcd(Int a, Int b) noexcept {
    unsigned __int128 x = a < 0 ? -static_cast<unsigned __int128>(a) : static_cast<unsigned __int128>(a);
    unsigned __int128 y = b < 0 ? -static_cast<unsigned __int128>(b) : static_cast<unsigned __int128>(b);
    while (y != 0) {
      if ((x >> 64) == 0 && (y >> 64) == 0) {
        std::uint64_t u = static_cast<std::uint64_t>(x), w = static_cast<std::uint64_t>(y);
        while (w != 0) {
          const std::uint64_t t = u % w;
          u = w;
          w = t;
        }
        return static_cast<Int>(u);
      }
      const unsigned __int128 t = x % y;
      x = y;
      y = t;
    }
    return static_cast<Int>(x);
  }
  static WideRational make(Int n, Int d) {
    WideRational r;
    if (n == 0) return r;
    const Int g = gcd(n, d);
    r.num_ = n / g;
    r.den_ = d / g;
    return r;
  }
  static Int from_cpp(const boost::multiprecision::cpp_int& x) {
    const bool neg = x < 0;
    const boost::multiprecision::cpp_int m = neg ? -x : x;
    const auto hi = static_cast<std::uint64_t>(m >> 64);
    const auto lo = static_cast<std::uint64_t>(m & boost::multiprecision::cpp_int(UINT64_MAX));
    const Int v = static_cast<Int>((static_cast<unsigned __int128>(hi) << 64) | lo);
    return neg ? -v : v;
  }
  static boost::multiprecision::cpp_int to_cpp(Int x) {
    const bool neg = x < 0;
    const unsigned __int128 m = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    boost::multiprecision::cpp_int r = static_cast<std::uint64_t>(m >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(m);
    return neg ? -r : r;
  }

  Int num_ = 0;
  Int den_ = 1;
};

/// floor and ceil of an exact rational.
inline Rational floor_rational(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
  cpp_int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

inline Rational ceil_rational(const Rational& r) { return -floor_rational(-r); }

inline bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qvsp

#endif  // QVSP_RATIONAL_HPP
