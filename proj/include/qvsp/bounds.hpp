#ifndef QVSP_BOUNDS_HPP
#define QVSP_BOUNDS_HPP

// Upper bounds for 2-partitions of F_2^7 with solids, planes and lines, the
// line-count bound for planes avoiding a fixed subspace, and the literature
// fixture table.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvsp/error.hpp"
#include "qvsp/subspace.hpp"
#include "qvsp/known_values_data.hpp"

namespace qvsp {

/// Upper bound on the number of planes of a 2-partition of F_2^6 given the
/// number m of solids in it: with m = 3j + r, 0 <= r < 3, returns
/// 21 - 5r + r^2 - 7j.  Negative values mean no such partition exists.
inline int f_function(int m) {
  if (m < 0) throw DomainError("f_function: argument must be non-negative");
  const int j = m / 3, r = m % 3;
  return 21 - 5 * r + r * r - 7 * j;
}

/// Maximum number of k-subspaces of F_q^v that pairwise meet in at most a
/// point and avoid a fixed (v-k)-subspace U entirely: q^{2(v-k)}.  In checked
/// mode both line counts behind the bound are recomputed and compared.
inline BigInt mrd_like_bound(int q, int v, int k, bool checked = true) {
  if (k < 3 || v < 2 * k) throw DomainError("mrd_like_bound: requires k >= 3 and v >= 2k");
  field_of_order(q);  // validates q
  const BigInt result = ipow(q, 2 * (v - k));
  if (checked) {
    // Lines of F_q^v meeting U trivially, counted directly ...
    const BigInt meeting = gaussian(v - k + 1, 1, q) * (gaussian(v, 1, q) - gaussian(v - k + 1, 1, q));
    if (meeting % q != 0) throw std::logic_error("mrd_like_bound: line count not integral");
    const BigInt total = gaussian(v, 2, q) - gaussian(v - k + 1, 2, q) - meeting / q;
    // ... and per k-subspace avoiding U: lines in it minus those through its
    // intersection point with a hyperplane through U.
    const BigInt per = gaussian(k, 2, q) - gaussian(k - 1, 1, q);
    if (total != result * per) throw std::logic_error("mrd_like_bound: line counts disagree");
    const BigInt num = ipow(q, 2 * k - 1) - ipow(q, k + 1) - ipow(q, k) + BigInt(q) * q;
    const BigInt den = BigInt(q * q - 1) * (q - 1);
    if (num % den != 0 || num / den != per) throw std::logic_error("mrd_like_bound: closed line count disagrees");
  }
  return result;
}

inline int m3_fixture_upper(int m4);

/// m3 <= 381 - ceil(m4 (61 - m4) / 7) for 2-partitions of F_2^7 of type
/// 4^m4 3^m3 2^*.  For m4 = 17 the closed form does not apply and the exact
/// ILP value from the fixture table is returned.
inline int closed_form_m3_bound(int m4) {
  if (m4 < 0 || m4 > 17) throw DomainError("closed_form_m3_bound: m4 must lie in [0, 17]");
  if (m4 == 17) return m3_fixture_upper(17);
  const int p = m4 * (61 - m4);
  return 381 - (p + 6) / 7;
}

/// Point-degree profile (a_i = points on exactly i solids) maximizing
/// sum f(i) a_i, together with that objective.
struct PointCountResult {
  int m4 = 0;
  std::map<int, std::int64_t> a;
  std::int64_t objective = 0;
  int bound() const noexcept { return static_cast<int>(objective / 7); }
};

namespace detail {

inline void point_count_search(int i, std::int64_t s0, std::int64_t s1, std::int64_t s2, std::int64_t m4,
                               std::vector<std::int64_t>& a, std::optional<PointCountResult>& best) {
  const std::int64_t pairs = m4 * (m4 - 1);
  if (i == 2) {
    const std::int64_t rest2 = pairs - s2;
    if (rest2 < 0 || rest2 % 2 != 0) return;
    const std::int64_t a2 = rest2 / 2;
    const std::int64_t a1 = 15 * m4 - s1 - 2 * a2;
    const std::int64_t a0 = 127 - s0 - a2 - a1;
    if (a1 < 0 || a0 < 0) return;
    a[2] = a2;
    a[1] = a1;
    a[0] = a0;
    std::int64_t obj = 0;
    for (std::size_t j = 0; j < a.size(); ++j) obj += f_function(static_cast<int>(j)) * a[j];
    // Strictly better only, so the first optimum in search order is kept.
    if (!best || obj > best->objective) {
      PointCountResult r;
      r.m4 = static_cast<int>(m4);
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0) r.a[static_cast<int>(j)] = a[j];
      r.objective = obj;
      best = r;
    }
    return;
  }
  const std::int64_t w2 = static_cast<std::int64_t>(i) * (i - 1);
  for (std::int64_t n = 0; s2 + n * w2 <= pairs && s1 + n * i <= 15 * m4 && s0 + n <= 127; ++n) {
    a[i] = n;
    point_count_search(i - 1, s0 + n, s1 + n * i, s2 + n * w2, m4, a, best);
  }
  a[i] = 0;
}

}  // namespace detail

/// Exhaustive search over the point-degree profiles compatible with m4
/// solids pairwise meeting in a point: sum a_i = 127, sum i a_i = 15 m4,
/// sum i(i-1) a_i = m4(m4-1).  Degrees run up to 9, the size of a plane
/// spread of F_2^6.  The result is checked against closed_form_m3_bound.
inline PointCountResult point_count_optimize(int m4) {
  if (m4 < 0 || m4 > 16) throw DomainError("point_count_optimize: m4 must lie in [0, 16]");
  std::vector<std::int64_t> a(10, 0);
  std::optional<PointCountResult> best;
  detail::point_count_search(9, 0, 0, 0, m4, a, best);
  if (!best) throw DomainError("point_count_optimize: no feasible profile");
  if (best->bound() != closed_form_m3_bound(m4))
    throw std::logic_error("point_count_optimize: optimum disagrees with the closed form");
  return *best;
}

/// floor(sum f(i) a_i / 7) for a given point-degree profile.
inline std::int64_t profile_m3_bound(const std::map<int, std::int64_t>& a) {
  std::int64_t total = 0, pts = 0;
  for (const auto& [i, n] : a) {
    if (n < 0) throw DomainError("profile_m3_bound: negative count");
    total += static_cast<std::int64_t>(f_function(i)) * n;
    pts += n;
  }
  if (pts != 127) throw DomainError("profile_m3_bound: profile must cover the 127 points of F_2^7");
  return total >= 0 ? total / 7 : -((-total + 6) / 7);
}

// --- literature fixtures ----------------------------------------------------

struct KnownValue {
  int q = 0, v = 0, d = 0, k = 0;
  std::int64_t lower = 0, upper = 0;
  std::string citation;
  std::string note;
  bool exact() const noexcept { return lower == upper; }
};

struct M3Row {
  int m4 = 0;
  int lower = 0, upper = 0;
  std::string upper_method;
  std::string lower_method;
  std::string citation;
};

struct KnownValueTable {
  int version = 0;
  std::vector<KnownValue> codes;
  std::vector<M3Row> m3_rows;
};

inline const KnownValueTable& known_value_table() {
  static const KnownValueTable table = [] {
    const auto j = nlohmann::json::parse(data::kKnownValuesJson);
    KnownValueTable t;
    t.version = j.at("version").get<int>();
    for (const auto& e : j.at("subspace_codes")) {
      KnownValue kv;
      kv.q = e.at("q").get<int>();
      kv.v = e.at("v").get<int>();
      kv.d = e.at("d").get<int>();
      kv.k = e.at("k").get<int>();
      kv.lower = e.at("lower").get<std::int64_t>();
      kv.upper = e.at("upper").get<std::int64_t>();
      kv.citation = e.at("citation").get<std::string>();
      kv.note = e.value("note", "");
      t.codes.push_back(kv);
    }
    for (const auto& e : j.at("m3_bounds").at("rows")) {
      M3Row r;
      r.m4 = e.at("m4").get<int>();
      r.lower = e.at("lower").get<int>();
      r.upper = e.at("upper").get<int>();
      r.upper_method = e.at("upper_method").get<std::string>();
      r.lower_method = e.value("lower_method", "construction");
      r.citation = e.value("citation", "");
      t.m3_rows.push_back(r);
    }
    std::sort(t.m3_rows.begin(), t.m3_rows.end(), [](const M3Row& x, const M3Row& y) { return x.m4 < y.m4; });
    return t;
  }();
  return table;
}

/// Literature value of A_q(v,d;k); never computed.
inline const KnownValue& known_values(int q, int v, int d, int k) {
  for (const auto& kv : known_value_table().codes)
    if (kv.q == q && kv.v == v && kv.d == d && kv.k == k) return kv;
  throw DomainError("known_values: no entry for (" + std::to_string(q) + "," + std::to_string(v) + "," +
                    std::to_string(d) + "," + std::to_string(k) + ")");
}

inline const M3Row& m3_row(int m4) {
  for (const auto& r : known_value_table().m3_rows)
    if (r.m4 == m4) return r;
  throw DomainError("m3_row: no entry for m4 = " + std::to_string(m4));
}

inline int m3_fixture_upper(int m4) {
  const M3Row& r = m3_row(m4);
  if (r.upper_method != "ilp" || r.citation.empty())
    throw std::logic_error("m3 fixture row lacks an ILP citation");
  return r.upper;
}

// --- reports ----------------------------------------------------------------

enum class BoundMethod { closed_form, lp, ilp, fixture };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::closed_form: return "closed-form";
    case BoundMethod::lp: return "lp";
    case BoundMethod::ilp: return "ilp";
    case BoundMethod::fixture: return "fixture";
  }
  return "?";
}

inline nlohmann::ordered_json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

struct BoundReport {
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json value;
  BoundMethod method = BoundMethod::closed_form;
  std::string citation;
  std::optional<std::string> certificate;

  nlohmann::ordered_json to_json() const {
    if (method == BoundMethod::fixture && citation.empty())
      throw std::logic_error("fixture bound report without citation");
    nlohmann::ordered_json j;
    j["parameters"] = parameters;
    j["value"] = value;
    j["method"] = to_string(method);
    if (!citation.empty()) j["citation"] = citation;
    if (certificate) j["certificate"] = *certificate;
    return j;
  }
};

inline BoundReport fixture_report(int q, int v, int d, int k) {
  const KnownValue& kv = known_values(q, v, d, k);
  BoundReport r;
  r.parameters = {{"q", q}, {"v", v}, {"d", d}, {"k", k}};
  if (kv.exact())
    r.value = kv.lower;
  else
    r.value = {{"lower", kv.lower}, {"upper", kv.upper}};
  r.method = BoundMethod::fixture;
  r.citation = kv.citation;
  if (!kv.note.empty()) r.certificate = kv.note;
  return r;
}

/// Upper bound on m3 for the given m4 (closed form, or the ILP fixture for
/// m4 = 17); the certificate names the optimal point-degree profile.
inline BoundReport m3_report(int m4) {
  BoundReport r;
  r.parameters = {{"q", 2}, {"v", 7}, {"t", 2}, {"m4", m4}};
  r.value = closed_form_m3_bound(m4);
  if (m4 == 17) {
    r.method = BoundMethod::fixture;
    r.citation = m3_row(17).citation;
    return r;
  }
  r.method = BoundMethod::closed_form;
  const PointCountResult opt = point_count_optimize(m4);
  std::string cert = "profile";
  for (const auto& [i, n] : opt.a) cert += " a" + std::to_string(i) + "=" + std::to_string(n);
  cert += " objective=" + std::to_string(opt.objective);
  r.certificate = cert;
  return r;
}

}  // namespace qvsp

#endif  // QVSP_BOUNDS_HPP
