#include "mvlab/cli/document.hpp"

#include "mvlab/error.hpp"
#include "mvlab/rational.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace mvlab::cli {

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::ParseError, where + ": " + msg);
}

}  // namespace

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json rational_to_json(const Rational& q) { return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(rational_to_json(c));
  return out;
}

Json normal_to_json(const PrimitiveNormal& z) {
  Json out = Json::array();
  for (const auto& c : z.coords()) out.push_back(integer_to_json(c));
  return out;
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      parse_error(where, "not an integer string: '" + s + "'");
    }
    return Integer(s);
  }
  parse_error(where, "expected an integer, got " + std::string(j.type_name()));
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_error(where, "expected a [numerator, denominator] pair");
  const Integer num = integer_from_json(j[0], where + "[0]");
  const Integer den = integer_from_json(j[1], where + "[1]");
  if (den <= 0) parse_error(where + "[1]", "denominator must be positive");
  return make_rational(num, den);
}

Json serialize_polytope(const Polytope& p, const std::optional<std::string>& name) {
  Json doc;
  doc["dim"] = p.ambient_dim();
  if (name) doc["name"] = *name;
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json(v));  // already sorted
  doc["vertices"] = std::move(verts);
  return doc;
}

Polytope parse_polytope(const Json& doc) {
  if (!doc.is_object()) parse_error("document", "expected a JSON object");
  if (!doc.contains("dim")) parse_error("dim", "missing");
  if (!doc.contains("vertices")) parse_error("vertices", "missing");
  const Json& dj = doc["dim"];
  if (!dj.is_number_integer() || dj.get<std::int64_t>() < 1) parse_error("dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dj.get<std::int64_t>());
  if (doc.contains("name") && !doc["name"].is_string()) parse_error("name", "expected a string");
  const Json& vj = doc["vertices"];
  if (!vj.is_array() || vj.empty()) parse_error("vertices", "expected a nonempty array");
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    if (!vj[i].is_array() || vj[i].size() != dim) parse_error(where, "expected " + std::to_string(dim) + " coordinates");
    Vector v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = rational_from_json(vj[i][k], where + "[" + std::to_string(k) + "]");
    pts.push_back(std::move(v));
  }
  return Polytope::from_points(std::move(pts), dim);
}

Polytope parse_polytope_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    parse_error("line " + std::to_string(line), "malformed JSON (" + std::string(e.what()) + ")");
  }
  return parse_polytope(doc);
}

Polytope load_polytope(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_polytope_text(ss.str());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    parse_error(path, e.what());
  }
}

Json canonicalize(const Json& doc) {
  std::optional<std::string> name;
  if (doc.is_object() && doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
  return serialize_polytope(parse_polytope(doc), name);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace mvlab::cli
