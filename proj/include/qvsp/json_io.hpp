#ifndef QVSP_JSON_IO_HPP
#define QVSP_JSON_IO_HPP

// JSON forms of subspace collections and reports.  A collection file is
//   {"q": 2, "v": 4, "t": 2, "members": [["1000","0100"], ...]}
// with keys in this order, each member in canonical text form, members
// sorted, compact, one trailing newline.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvsp/divisibility.hpp"
#include "qvsp/error.hpp"
#include "qvsp/partition.hpp"
#include "qvsp/subspace.hpp"
#include "qvsp/subspace_set.hpp"

namespace qvsp {

using Json = nlohmann::ordered_json;

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubspaceFile {
  int q = 0, v = 0, t = 0;
  std::vector<Subspace> members;  // sorted
};

inline Json subspace_json(const Subspace& U) { return U.text(); }

inline Json subspace_file_json(int q, int v, int t, std::vector<Subspace> members) {
  std::sort(members.begin(), members.end());
  Json j;
  j["q"] = q;
  j["v"] = v;
  j["t"] = t;
  j["members"] = Json::array();
  for (const auto& U : members) j["members"].push_back(subspace_json(U));
  return j;
}

inline std::string dump_subspace_file(int q, int v, int t, std::vector<Subspace> members) {
  return subspace_file_json(q, v, t, std::move(members)).dump() + "\n";
}

inline std::string dump_subspace_file(const TPartition& P) { return dump_subspace_file(P.q(), P.v(), P.t(), P.members()); }

inline std::string dump_subspace_file(const SubspaceSet& N) { return dump_subspace_file(N.q(), N.v(), N.t(), N.members()); }

inline SubspaceFile parse_subspace_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  auto need_int = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
      throw ParseError(std::string("missing integer field \"") + key + "\"");
    return j[key].get<int>();
  };
  SubspaceFile f;
  f.q = need_int("q");
  f.v = need_int("v");
  f.t = need_int("t");
  if (!j.contains("members") || !j["members"].is_array()) throw ParseError("missing array field \"members\"");
  if (f.v < 1 || f.v > kMaxAmbient || f.t < 0 || f.t > f.v) throw ParseError("v or t out of range");
  FieldPtr F;
  try {
    F = field_of_order(f.q);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  for (const auto& m : j["members"]) {
    if (!m.is_array()) throw ParseError("member is not an array of row strings");
    std::vector<std::string> rows;
    for (const auto& r : m) {
      if (!r.is_string()) throw ParseError("member row is not a string");
      rows.push_back(r.get<std::string>());
    }
    try {
      f.members.push_back(Subspace::from_text(*F, f.v, rows));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
    if (f.members.back().dim() != static_cast<int>(rows.size()))
      throw ParseError("member rows are linearly dependent: " + f.members.back().to_string());
  }
  std::sort(f.members.begin(), f.members.end());
  return f;
}

inline Json spectrum_json(const HyperplaneSpectrum& S) {
  Json j;
  j["n"] = S.n;
  j["a"] = Json::object();
  for (const auto& [i, ai] : S.a) j["a"][std::to_string(i)] = ai;
  j["r_star"] = S.r_star ? Json(*S.r_star) : Json(nullptr);
  return j;
}

inline Json pair_profile_json(const PairSpanProfile& P) {
  Json j;
  j["t"] = P.t;
  j["b"] = Json::object();
  for (const auto& [i, bi] : P.b) j["b"][std::to_string(i)] = bi;
  return j;
}

inline Json verification_json(const VerificationReport& R, int t) {
  Json j;
  j["valid"] = R.valid;
  j["t"] = t;
  j["type"] = R.type.render();
  if (R.witness) {
    j["witness"] = subspace_json(*R.witness);
    j["witness_cover_count"] = R.witness_cover_count;
  }
  return j;
}

}  // namespace qvsp

#endif  // QVSP_JSON_IO_HPP
