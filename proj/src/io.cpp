#include "jtower/io.hpp"

#include <fstream>
#include <sstream>

namespace jtower {

namespace {

const nlohmann::json& field_at(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t index_value(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(what + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

Scalar scalar_value(const Field& f, const nlohmann::json& j, const std::string& what) {
  try {
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
  } catch (const std::exception& e) {
    throw InputError(what + ": " + e.what());
  }
  throw InputError(what + ": scalars are integers or strings \"p/q\"");
}

Vec vector_value(const Field& f, const nlohmann::json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw InputError(what + ": expected an array of " + std::to_string(n) + " scalars");
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar_value(f, j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

Field field_value(const nlohmann::json& j) {
  const auto& fj = field_at(j, "field", "input");
  if (!fj.is_string()) throw InputError("field: expected a string such as \"Q\" or \"F_7\"");
  try {
    return parse_field(fj.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(std::string("field: ") + e.what());
  }
}

}  // namespace

nlohmann::json algebra_to_json(const Algebra& a) {
  nlohmann::json sc = nlohmann::json::array();
  for (const auto& c : a.structure_constants()) sc.push_back({c.i, c.j, c.k, c.c.to_string()});
  return {{"dim", a.dim()}, {"unit", to_json(a.unit())}, {"structure", std::move(sc)}};
}

Algebra algebra_from_json(const Field& f, const nlohmann::json& j) {
  const std::size_t n = index_value(field_at(j, "dim", "algebra"), "algebra.dim");
  if (n == 0) throw InputError("algebra.dim must be positive");
  Vec unit = vector_value(f, field_at(j, "unit", "algebra"), n, "algebra.unit");
  const auto& sj = field_at(j, "structure", "algebra");
  if (!sj.is_array()) throw InputError("algebra.structure: expected an array of [i, j, k, c]");
  std::vector<StructureConstant> sc;
  for (std::size_t e = 0; e < sj.size(); ++e) {
    const auto& t = sj[e];
    const std::string what = "algebra.structure[" + std::to_string(e) + "]";
    if (!t.is_array() || t.size() != 4) throw InputError(what + ": expected [i, j, k, c]");
    StructureConstant c{index_value(t[0], what), index_value(t[1], what), index_value(t[2], what),
                        scalar_value(f, t[3], what)};
    if (c.i >= n || c.j >= n || c.k >= n) throw InputError(what + ": index out of range for dim " + std::to_string(n));
    sc.push_back(std::move(c));
  }
  return Algebra(f, n, std::move(unit), sc);
}

nlohmann::json matrix_to_json(const Matrix& m) { return to_json(m); }

Matrix matrix_from_json(const Field& f, const nlohmann::json& j, std::size_t rows, std::size_t cols,
                        const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw InputError(what + ": expected " + std::to_string(rows) + " rows of " + std::to_string(cols));
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.set_row(r, vector_value(f, j[r], cols, what + " row " + std::to_string(r)));
  return m;
}

nlohmann::json extension_to_json(const ExtensionInput& ext) {
  nlohmann::json j;
  j["format"] = "jtower-extension/1";
  j["name"] = ext.name;
  j["field"] = ext.M.field().describe();
  j["M"] = algebra_to_json(ext.M);
  j["N"] = {{"dim", ext.N.dim()}, {"embedding", to_json(ext.N.embedding())}};
  if (ext.E) j["E"] = to_json(*ext.E);
  if (ext.dual_bases) j["dual_bases"] = to_json(*ext.dual_bases);
  return j;
}

ExtensionInput extension_from_json(const nlohmann::json& j) {
  const auto& format = field_at(j, "format", "input");
  if (format != "jtower-extension/1") throw InputError("input: unsupported format " + format.dump());
  Field f = field_value(j);
  ExtensionInput ext;
  ext.name = j.value("name", "");
  ext.M = algebra_from_json(f, field_at(j, "M", "input"));
  const std::size_t n = ext.M.dim();
  const auto& nj = field_at(j, "N", "input");
  const std::size_t dn = index_value(field_at(nj, "dim", "N"), "N.dim");
  Matrix emb = matrix_from_json(f, field_at(nj, "embedding", "N"), n, dn, "N.embedding");
  if (rank(emb) != dn) throw InputError("N.embedding: columns are linearly dependent");
  ext.N = Subspace::from_columns(emb);
  if (j.contains("E")) ext.E = matrix_from_json(f, j["E"], dn, n, "E");
  if (j.contains("dual_bases")) ext.dual_bases = matrix_from_json(f, j["dual_bases"], n, n, "dual_bases");
  return ext;
}

nlohmann::json pairing_to_json(const PairingInput& p) {
  nlohmann::json j;
  j["format"] = "jtower-pairing/1";
  j["name"] = p.name;
  j["field"] = p.A.field().describe();
  j["A"] = algebra_to_json(p.A);
  j["B"] = algebra_to_json(p.B);
  j["P"] = to_json(p.P);
  switch (p.mode) {
    case AntipodeMode::derive:
      j["antipode"] = "derive";
      break;
    case AntipodeMode::skip:
      j["antipode"] = "skip";
      break;
    case AntipodeMode::supplied:
      j["antipode"] = to_json(*p.S);
      break;
  }
  return j;
}

PairingInput pairing_from_json(const nlohmann::json& j) {
  const auto& format = field_at(j, "format", "input");
  if (format != "jtower-pairing/1") throw InputError("input: unsupported format " + format.dump());
  Field f = field_value(j);
  PairingInput p;
  p.name = j.value("name", "");
  p.A = algebra_from_json(f, field_at(j, "A", "input"));
  p.B = algebra_from_json(f, field_at(j, "B", "input"));
  if (p.A.dim() != p.B.dim()) throw InputError("A and B must have the same dimension");
  p.P = matrix_from_json(f, field_at(j, "P", "input"), p.A.dim(), p.B.dim(), "P");
  const auto s = j.value("antipode", nlohmann::json("derive"));
  if (s == "derive") {
    p.mode = AntipodeMode::derive;
  } else if (s == "skip") {
    p.mode = AntipodeMode::skip;
  } else {
    p.mode = AntipodeMode::supplied;
    p.S = matrix_from_json(f, s, p.B.dim(), p.B.dim(), "antipode");
  }
  return p;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace jtower
