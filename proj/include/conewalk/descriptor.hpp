#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace conewalk {

using Json = nlohmann::json;

/// File form of a lattice with optional marking and canonical class:
/// {"gram": [[..]], "labels": [..]?, "marking": [..]?, "canonical": [..]?}
struct LatticeDescriptor {
  LatticeSpace space;
  std::optional<LatticeVector> marking;
  std::optional<LatticeVector> canonical;

  MarkedLattice marked() const {
    if (!marking) throw InputError("descriptor has no \"marking\"; this command needs one");
    return MarkedLattice(space, *marking);
  }

  friend bool operator==(const LatticeDescriptor&, const LatticeDescriptor&) = default;
};

/// Decimal integer with optional sign, nothing else.
inline Integer parse_integer(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = text.size();
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  const std::string s = text.substr(i, j - i);
  std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (k == s.size()) throw InputError("expected an integer, got '" + text + "'");
  for (std::size_t p = k; p < s.size(); ++p)
    if (!std::isdigit(static_cast<unsigned char>(s[p]))) throw InputError("expected an integer, got '" + text + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

namespace detail {

inline const Integer& json_safe_limit() {
  static const Integer limit = Integer(1) << 53;
  return limit;
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const InputError&) {
      throw InputError(where + " must be an integer, got the string " + j.dump());
    }
  }
  throw InputError(where + " must be an integer (large values as decimal strings), got " + j.dump());
}

inline Json integer_to_json(const Integer& v) {
  if (abs(v) <= json_safe_limit()) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline LatticeVector vector_from_json(const Json& j, std::size_t rank, const std::string& key) {
  if (!j.is_array()) throw InputError("\"" + key + "\" must be an array of integers");
  if (j.size() != rank)
    throw InputError("\"" + key + "\" has length " + std::to_string(j.size()) + " but the rank is " +
                     std::to_string(rank));
  std::vector<Integer> c;
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(integer_from_json(j[i], "\"" + key + "\"[" + std::to_string(i) + "]"));
  return LatticeVector(std::move(c));
}

}  // namespace detail

inline Json vector_to_json(const LatticeVector& v) {
  Json a = Json::array();
  for (const auto& c : v.coords()) a.push_back(detail::integer_to_json(c));
  return a;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::integer_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline LatticeDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("descriptor must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "gram" && key != "labels" && key != "marking" && key != "canonical")
      throw InputError("unknown descriptor field \"" + key + "\"");
  if (!j.contains("gram")) throw InputError("descriptor is missing \"gram\"");
  const Json& g = j["gram"];
  if (!g.is_array() || g.empty()) throw InputError("\"gram\" must be a non-empty array of rows");
  const std::size_t n = g.size();
  IntMatrix gram(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!g[r].is_array() || g[r].size() != n)
      throw InputError("\"gram\" must be square: row " + std::to_string(r) + " does not have " + std::to_string(n) +
                       " entries");
    for (std::size_t c = 0; c < n; ++c)
      gram(r, c) = detail::integer_from_json(g[r][c], "\"gram\"[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_array()) throw InputError("\"labels\" must be an array of strings");
    for (const auto& s : l) {
      if (!s.is_string()) throw InputError("\"labels\" must be an array of strings");
      labels.push_back(s.get<std::string>());
    }
    if (labels.size() != n)
      throw InputError("\"labels\" has " + std::to_string(labels.size()) + " entries but the rank is " +
                       std::to_string(n));
  }
  LatticeDescriptor d{LatticeSpace(std::move(gram), std::move(labels)), std::nullopt, std::nullopt};
  if (j.contains("marking")) {
    d.marking = detail::vector_from_json(j["marking"], n, "marking");
    const Integer h2 = norm(d.space, *d.marking);
    if (h2 <= 0) throw InputError("\"marking\" must have positive norm, has norm " + h2.str());
  }
  if (j.contains("canonical")) d.canonical = detail::vector_from_json(j["canonical"], n, "canonical");
  return d;
}

inline Json descriptor_to_json(const LatticeDescriptor& d) {
  Json j;
  j["gram"] = matrix_to_json(d.space.gram());
  if (!d.space.labels().empty()) j["labels"] = d.space.labels();
  if (d.marking) j["marking"] = vector_to_json(*d.marking);
  if (d.canonical) j["canonical"] = vector_to_json(*d.canonical);
  return j;
}

inline LatticeDescriptor parse_descriptor(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return descriptor_from_json(j);
}

inline std::string write_descriptor(const LatticeDescriptor& d) { return descriptor_to_json(d).dump(2) + "\n"; }

inline LatticeDescriptor read_descriptor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_descriptor(ss.str());
}

/// "1,0,-1", "(1,0,-1)" or "[1, 0, -1]".
inline LatticeVector parse_vector(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != '[' && c != ']' && !std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty vector '" + text + "'");
  std::vector<Integer> c;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    c.push_back(parse_integer(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return LatticeVector(std::move(c));
}

/// Vectors separated by ';', or written as parenthesised groups
/// "(1,0),(1,-1)".
inline std::vector<LatticeVector> parse_vector_list(const std::string& text) {
  std::vector<LatticeVector> out;
  if (text.find('(') != std::string::npos) {
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
      const std::size_t close = text.find(')', pos);
      if (close == std::string::npos) throw InputError("unbalanced parenthesis in '" + text + "'");
      out.push_back(parse_vector(text.substr(pos + 1, close - pos - 1)));
      pos = close + 1;
    }
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    const std::string part = text.substr(start, semi - start);
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_vector(part));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (out.empty()) throw InputError("no vectors in '" + text + "'");
  return out;
}

/// Rows separated by ';', entries by ','.
inline IntMatrix parse_matrix(const std::string& text) {
  const auto rows = parse_vector_list(text);
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw InputError("matrix rows have different lengths");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace conewalk
