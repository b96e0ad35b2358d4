#ifndef NHOM_IO_HPP
#define NHOM_IO_HPP

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nhom/algebra.hpp"
#include "nhom/derivations.hpp"
#include "nhom/extension.hpp"
#include "nhom/theorems.hpp"

namespace nhom::io {

using json = nlohmann::json;

inline constexpr std::string_view kToolName = "nhom";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Malformed or unreadable input; maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// AlgebraFile

namespace detail {

inline Scalar scalar_field(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a rational string or integer");
}

inline std::size_t index_field(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing key \"" + key + "\"");
  return obj.at(key);
}

}  // namespace detail

/// Parses an algebra document. Rejects tuples that are not weakly increasing,
/// out-of-range indices, malformed rationals and degree-law violations.
inline NHomAlgebra parse_algebra_text(std::string_view text, const std::string& source = "<input>") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(source + ": top level must be an object");

  const auto arity_j = detail::member(doc, "arity", source);
  const std::size_t arity = detail::index_field(arity_j, source + ": field \"arity\"");
  if (arity < 2) throw InputError(source + ": field \"arity\": must be at least 2");
  const std::size_t d = detail::index_field(detail::member(doc, "dim", source), source + ": field \"dim\"");

  const auto& par = detail::member(doc, "parity", source);
  if (!par.is_array() || par.size() != d) throw InputError(source + ": field \"parity\": expected an array of length dim");
  std::vector<int> parity;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& p = par[i];
    if (!p.is_number_integer() || (p.get<int>() != 0 && p.get<int>() != 1))
      throw InputError(source + ": field \"parity[" + std::to_string(i) + "]\": expected 0 or 1");
    parity.push_back(p.get<int>());
  }

  const auto& al = detail::member(doc, "alpha", source);
  if (!al.is_array() || al.size() != d) throw InputError(source + ": field \"alpha\": expected dim rows");
  Mat alpha(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!al[r].is_array() || al[r].size() != d)
      throw InputError(source + ": field \"alpha[" + std::to_string(r) + "]\": expected dim entries");
    for (std::size_t c = 0; c < d; ++c)
      alpha(r, c) = detail::scalar_field(al[r][c], source + ": field \"alpha[" + std::to_string(r) + "][" +
                                                        std::to_string(c) + "]\"");
  }

  const auto& br = detail::member(doc, "brackets", source);
  if (!br.is_array()) throw InputError(source + ": field \"brackets\": expected an array");
  BracketTable table;
  for (std::size_t b = 0; b < br.size(); ++b) {
    const std::string where = source + ": field \"brackets[" + std::to_string(b) + "]";
    const auto& args = detail::member(br[b], "args", where + "\"");
    if (!args.is_array() || args.size() != arity) throw InputError(where + ".args\": expected arity indices");
    Tuple key;
    for (std::size_t j = 0; j < args.size(); ++j) {
      const std::size_t idx = detail::index_field(args[j], where + ".args\"");
      if (idx >= d) throw InputError(where + ".args\": index " + std::to_string(idx) + " out of range");
      if (!key.empty() && key.back() > idx) throw InputError(where + ".args\": not weakly increasing");
      key.push_back(idx);
    }
    if (table.count(key)) throw InputError(where + ".args\": duplicate tuple");
    const auto& val = detail::member(br[b], "value", where + "\"");
    if (!val.is_array()) throw InputError(where + ".value\": expected an array");
    Vec v(d);
    for (std::size_t e = 0; e < val.size(); ++e) {
      const std::string ew = where + ".value[" + std::to_string(e) + "]";
      const std::size_t idx = detail::index_field(detail::member(val[e], "index", ew + "\""), ew + ".index\"");
      if (idx >= d) throw InputError(ew + ".index\": index " + std::to_string(idx) + " out of range");
      v[idx] += detail::scalar_field(detail::member(val[e], "coeff", ew + "\""), ew + ".coeff\"");
    }
    int deg = 0;
    for (auto i : key) deg ^= parity[i];
    for (std::size_t l = 0; l < d; ++l)
      if (sgn(v[l]) != 0 && parity[l] != deg)
        throw InputError(where + "\": degree law violated: component e" + std::to_string(l) + " has parity " +
                         std::to_string(parity[l]) + ", bracket degree is " + std::to_string(deg));
    table.emplace(std::move(key), std::move(v));
  }
  try {
    return NHomAlgebra(arity, std::move(parity), std::move(table), std::move(alpha));
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline NHomAlgebra parse_algebra(const std::string& path) { return parse_algebra_text(read_file(path), path); }

inline json matrix_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json algebra_json(const NHomAlgebra& alg) {
  json doc;
  doc["arity"] = alg.arity();
  doc["dim"] = alg.dim();
  doc["parity"] = alg.parity();
  doc["alpha"] = matrix_json(alg.alpha());
  json brackets = json::array();
  for (const auto& [key, value] : alg.table()) {
    json entries = json::array();
    for (std::size_t l = 0; l < value.size(); ++l)
      if (sgn(value[l]) != 0) entries.push_back({{"coeff", to_string(value[l])}, {"index", l}});
    brackets.push_back({{"args", key}, {"value", std::move(entries)}});
  }
  doc["brackets"] = std::move(brackets);
  return doc;
}

/// Canonical serialization: sorted keys, no whitespace, lowest-term rationals.
inline std::string serialize_algebra(const NHomAlgebra& alg) { return algebra_json(alg).dump() + "\n"; }

// ---------------------------------------------------------------------------
// ReportFile pieces

inline json graded_subspace_json(const GradedSubspace& g) {
  json out;
  out["even"] = {{"dim", g.even.dim()}, {"basis", json::array()}};
  out["odd"] = {{"dim", g.odd.dim()}, {"basis", json::array()}};
  for (const auto& v : g.even.vectors()) out["even"]["basis"].push_back(vector_json(v));
  for (const auto& v : g.odd.vectors()) out["odd"]["basis"].push_back(vector_json(v));
  return out;
}

inline json validation_json(const ValidationReport& r) {
  json out;
  out["skew_ok"] = r.skew_ok;
  out["jacobi_ok"] = r.jacobi_ok;
  out["multiplicative_ok"] = r.multiplicative_ok;
  out["even_alpha_ok"] = r.even_alpha_ok;
  out["degree_ok"] = r.degree_ok;
  out["ok"] = r.ok();
  out["failures"] = json::array();
  for (const auto& f : r.failures)
    out["failures"].push_back({{"axiom", f.axiom}, {"witness", f.witness}, {"residual", vector_json(f.residual)}});
  return out;
}

inline json space_json(const EndoSubspace& s) {
  json out;
  out["kind"] = std::string(to_string(s.kind));
  out["k"] = s.k;
  out["xi"] = s.xi;
  out["dim"] = s.dim();
  out["basis"] = json::array();
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    json entry;
    entry["matrix"] = matrix_json(s.basis[i].mat);
    if (i < s.witnesses.size()) {
      entry["witnesses"] = json::array();
      for (const auto& w : s.witnesses[i]) entry["witnesses"].push_back(matrix_json(w));
    }
    out["basis"].push_back(std::move(entry));
  }
  return out;
}

inline json dims_json(const DimTable& dims) {
  json out = json::array();
  for (const auto& [key, dim] : dims)
    out.push_back({{"space", std::get<0>(key)}, {"k", std::get<1>(key)}, {"xi", std::get<2>(key)}, {"dim", dim}});
  return out;
}

inline json report_json(const PropReport& rep) {
  json out;
  out["proposition"] = rep.id;
  out["passed"] = rep.passed();
  if (rep.seed) out["seed"] = *rep.seed;
  out["dims"] = dims_json(rep.dims);
  out["claims"] = json::array();
  for (const auto& c : rep.claims) {
    json cj;
    cj["id"] = c.id;
    cj["status"] = std::string(to_string(c.status));
    cj["instances"] = c.instances;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cj["witnesses"] = json::array();
    for (const auto& w : c.witnesses) {
      json wj;
      wj["note"] = w.note;
      wj["maps"] = json::array();
      for (const auto& m : w.maps) wj["maps"].push_back({{"xi", m.xi}, {"matrix", matrix_json(m.mat)}});
      cj["witnesses"].push_back(std::move(wj));
    }
    out["claims"].push_back(std::move(cj));
  }
  return out;
}

/// Wraps a command result with tool metadata and the input digest.
inline std::string report_document(const std::string& command, const std::string& input_bytes, json result) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["command"] = command;
  doc["input_digest"] = "sha256:" + sha256_hex(input_bytes);
  doc["result"] = std::move(result);
  return doc.dump() + "\n";
}

}  // namespace nhom::io

#endif  // NHOM_IO_HPP
