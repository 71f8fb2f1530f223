#include "jtower/examples.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "jtower/frobenius.hpp"

namespace jtower {

std::size_t Group::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("group has no element named '" + name + "'");
}

Group make_group(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("group: empty table");
  if (names.size() != n) throw std::invalid_argument("group: name count differs from order");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("group: table is not square");
    for (auto x : row)
      if (x >= n) throw std::invalid_argument("group: table entry out of range");
  }
  Group g;
  g.table = std::move(table);
  g.names = std::move(names);
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = g.table[e][x] == x && g.table[x][e] == x;
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("group: no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          throw std::invalid_argument("group: table is not associative");
  g.inverse.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.table[a][b] == g.identity && g.table[b][a] == g.identity) g.inverse[a] = b;
  for (auto inv : g.inverse)
    if (inv == n) throw std::invalid_argument("group: element without inverse");
  return g;
}

Group cyclic_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return make_group(std::move(t), std::move(names));
}

Group symmetric_group3() {
  using Perm = std::array<std::size_t, 3>;
  const std::vector<Perm> perms = {Perm{0, 1, 2}, Perm{1, 2, 0}, Perm{2, 0, 1},
                                   Perm{1, 0, 2}, Perm{2, 1, 0}, Perm{0, 2, 1}};
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      const Perm &p = perms[a], &q = perms[b];
      Perm pq{p[q[0]], p[q[1]], p[q[2]]};
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), pq) - perms.begin());
    }
  return make_group(std::move(t), {"e", "(123)", "(132)", "(12)", "(13)", "(23)"});
}

Group group_by_name(const std::string& name) {
  if (name == "S3") return symmetric_group3();
  std::string digits;
  if (name.rfind("Z/", 0) == 0) digits = name.substr(2);
  else if (name.rfind("Z", 0) == 0) digits = name.substr(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return cyclic_group(std::stoul(digits));
  throw std::invalid_argument("unknown group '" + name + "' (expected S3 or Z/n)");
}

Algebra group_algebra(const Field& f, const Group& g) {
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) sc.push_back({a, b, g.mul(a, b), f.one()});
  return Algebra(f, g.order(), unit_vector(f, g.order(), g.identity), sc);
}

Algebra function_algebra(const Field& f, const Group& g) {
  std::vector<StructureConstant> sc;
  Vec unit(g.order(), f.one());
  for (std::size_t a = 0; a < g.order(); ++a) sc.push_back({a, a, a, f.one()});
  return Algebra(f, g.order(), unit, sc);
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rational();
  std::string digits;
  if (text.rfind("F_", 0) == 0) digits = text.substr(2);
  else if (text.rfind("GF(", 0) == 0 && text.back() == ')') digits = text.substr(3, text.size() - 4);
  else if (text.rfind("F", 0) == 0) digits = text.substr(1);
  if (digits.empty() || digits.size() > 18 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("unknown field '" + text + "' (expected Q or F_p)");
  return Field::prime(std::stoull(digits));
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"trivial",     "group-pair",   "quadratic-field",
                                                 "footnote-m2f2", "skew-path",  "function-algebra",
                                                 "matrix-trace", "biquadratic"};
  return names;
}

Algebra quadratic_algebra(const Field& f, const Scalar& d) {
  return Algebra(f, 2, unit_vector(f, 2, 0), {{0, 0, 0, f.one()}, {0, 1, 1, f.one()}, {1, 0, 1, f.one()}, {1, 1, 0, d}});
}

namespace {

Field field_param(const nlohmann::json& params, const char* fallback) {
  return parse_field(params.value("field", std::string(fallback)));
}

Subspace scalars(const Algebra& a) { return Subspace::from_basis(a.field(), a.dim(), {a.unit()}); }

void require_invertible(const Field& f, long long n, const std::string& what) {
  if (f.from_int(n).is_zero())
    throw std::invalid_argument(what + ": characteristic " + std::to_string(f.characteristic()) + " divides " +
                                std::to_string(n));
}

nlohmann::json dims(std::size_t m, std::size_t n, std::size_t m1, std::size_t m2) {
  return {{"M", m}, {"N", n}, {"M1", m1}, {"M2", m2}};
}

nlohmann::json tower_statuses() {
  return {{"tower.braid.e1e2e1", "pass"},       {"tower.braid.e2e1e2", "pass"},
          {"tower.pimsner_popa.l1", "pass"},    {"tower.pimsner_popa.l2", "pass"},
          {"tower.l1.expectation_of_e", "pass"}, {"tower.l2.expectation_of_e", "pass"},
          {"tower.l1.endomorphism_ring", "pass"}, {"tower.l2.endomorphism_ring", "pass"}};
}

Example trivial(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  Algebra k(f, 1, unit_vector(f, 1, 0), {{0, 0, 0, f.one()}});
  Example ex{{"trivial", k, Subspace::whole(f, 1), Matrix::identity(f, 1), Matrix::identity(f, 1)}, {}};
  ex.expected = {{"dims", dims(1, 1, 1, 1)},
                 {"lambda_inverse", "1"},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", true},
                   {"normalized", true}}},
                 {"depth_two", true},
                 {"hopf_dims", {{"A", 1}, {"B", 1}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

std::vector<std::size_t> subgroup_param(const Group& g, const std::string& group_name, const nlohmann::json& sub) {
  std::vector<std::size_t> out;
  if (sub.is_string()) {
    std::string s = sub.get<std::string>();
    if (group_name == "S3" && s == "A3") return {0, 1, 2};
    if (group_name == "S3" && s == "C2") return {0, 3};
    throw std::invalid_argument("unknown subgroup name '" + s + "' (use A3, C2 or a list of element names)");
  }
  if (!sub.is_array()) throw std::invalid_argument("subgroup must be a name or a list of element names");
  for (const auto& x : sub) out.push_back(x.is_number() ? x.get<std::size_t>() : g.find(x.get<std::string>()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (auto x : out)
    if (x >= g.order()) throw std::invalid_argument("subgroup element out of range");
  std::set<std::size_t> members(out.begin(), out.end());
  if (!members.count(g.identity)) throw std::invalid_argument("subgroup must contain the identity");
  for (auto a : out)
    for (auto b : out)
      if (!members.count(g.mul(a, b))) throw std::invalid_argument("subgroup is not closed under multiplication");
  return out;
}

Example group_pair(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  std::string gname = params.value("group", std::string("S3"));
  Group g = group_by_name(gname);
  nlohmann::json sub = params.contains("subgroup") ? params["subgroup"] : nlohmann::json("A3");
  if (gname != "S3" && !params.contains("subgroup")) sub = nlohmann::json::array({g.identity});
  std::vector<std::size_t> h = subgroup_param(g, gname, sub);
  const std::size_t n = g.order(), m = h.size();

  Algebra kg = group_algebra(f, g);
  std::vector<Vec> nb;
  for (auto x : h) nb.push_back(kg.basis(x));
  Subspace N = Subspace::from_basis(f, n, nb);
  Matrix E(f, m, n);
  for (std::size_t i = 0; i < m; ++i) E(i, h[i]) = f.one();

  // Left coset representatives g_i; dual bases {g_i}, {g_i^{-1}}.
  std::set<std::size_t> hset(h.begin(), h.end()), covered;
  Matrix t(f, n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (covered.count(x)) continue;
    for (auto y : h) covered.insert(g.mul(x, y));
    t(x, g.inverse[x]) = f.one();
  }
  const std::size_t index = n / m;
  std::string name = "group-pair";
  Example ex{{name, kg, N, E, t}, {}};
  bool normal = true;
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : h)
      if (!hset.count(g.mul(g.mul(x, y), g.inverse[x]))) normal = false;
  ex.expected = {{"dims", dims(n, m, n * index, n * index * index)},
                 {"lambda_inverse", std::to_string(index)},
                 {"group", gname},
                 {"subgroup_order", m},
                 {"normal", normal},
                 {"depth_two", normal},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", m == n},
                   {"normalized", true}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

Example quadratic_field(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  long long dv = params.value("d", 2LL);
  Scalar d = f.from_int(dv);
  if (d.is_zero()) throw std::invalid_argument("quadratic-field: d must be nonzero");
  require_invertible(f, 2, "quadratic-field");
  Algebra m = quadratic_algebra(f, d);
  Matrix E(f, 1, 2);
  E(0, 0) = f.one();
  Matrix t(f, 2, 2);  // 1 (x) 1 + r (x) r/d
  t(0, 0) = f.one();
  t(1, 1) = d.inverse();
  Example ex{{"quadratic-field", m, scalars(m), E, t}, {}};
  ex.expected = {{"dims", dims(2, 1, 4, 8)},
                 {"lambda_inverse", "2"},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", false},
                   {"normalized", true}}},
                 {"depth_two", true},
                 {"statuses", tower_statuses()}};
  return ex;
}

// 2x2 matrix units e11, e12, e21, e22.
Algebra matrix_units(const Field& f) {
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t d = 0; d < 2; ++d) sc.push_back({2 * a + b, 2 * b + d, 2 * a + d, f.one()});
  Vec unit = zero_vector(f, 4);
  unit[0] = unit[3] = f.one();
  return Algebra(f, 4, unit, sc);
}

Example footnote_m2f2(const nlohmann::json&) {
  Field f = Field::prime(2);
  Algebra m = matrix_units(f);
  Matrix E(f, 1, 4);
  E(0, 0) = E(0, 1) = E(0, 2) = f.one();
  Matrix t(f, 4, 4);
  // e11(x)e21 + e12(x)e11 + e12(x)e21 + e22(x)e12 + e22(x)e22 + e21(x)e22
  t(0, 2) = t(1, 0) = t(1, 2) = t(3, 1) = t(3, 3) = t(2, 3) = f.one();
  Example ex{{"footnote-m2f2", m, scalars(m), E, t}, {}};
  ex.expected = {{"dims", dims(4, 1, 16, 64)},
                 {"lambda_inverse", "1"},
                 {"index", to_json(m.unit())},
                 {"E(1)", "1"},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", false},
                   {"normalized", true}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

// Path algebra of 1 -> 2 <- 3 on e1, e2, e3, a (1 -> 2), b (3 -> 2), smashed
// with Z/2 swapping 1 and 3. Basis index h * 5 + p for p # g^h.
Example skew_path(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  require_invertible(f, 2, "skew-path");
  struct Path {
    int s, t;
  };
  const std::array<Path, 5> paths = {Path{1, 1}, Path{2, 2}, Path{3, 3}, Path{1, 2}, Path{3, 2}};
  auto is_vertex = [](std::size_t p) { return p < 3; };
  // p q = "q then p": nonzero iff s(p) = t(q)
  auto path_mul = [&](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    if (paths[p].s != paths[q].t) return std::nullopt;
    if (is_vertex(p)) return q;
    if (is_vertex(q)) return p;
    return std::nullopt;
  };
  const std::array<std::size_t, 5> swap = {2, 1, 0, 4, 3};
  std::vector<StructureConstant> sc;
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t p = 0; p < 5; ++p)
      for (std::size_t h2 = 0; h2 < 2; ++h2)
        for (std::size_t q = 0; q < 5; ++q) {
          std::size_t q_moved = h ? swap[q] : q;
          if (auto r = path_mul(p, q_moved)) sc.push_back({h * 5 + p, h2 * 5 + q, ((h + h2) % 2) * 5 + *r, f.one()});
        }
  Vec unit = zero_vector(f, 10);
  unit[0] = unit[1] = unit[2] = f.one();
  Algebra m(f, 10, unit, sc);
  std::vector<Vec> nb;
  for (std::size_t p = 0; p < 5; ++p) nb.push_back(m.basis(p));
  Subspace N = Subspace::from_basis(f, 10, nb);
  Matrix E(f, 5, 10);
  for (std::size_t p = 0; p < 5; ++p) E(p, p) = f.one();
  Vec g = zero_vector(f, 10);
  g[5] = g[6] = g[7] = f.one();
  Matrix t = pairs_to_tensor(f, 10, {{unit, unit}, {g, g}});
  Example ex{{"skew-path", m, N, E, t}, {}};
  ex.expected = {{"dims", dims(10, 5, 20, 40)},
                 {"lambda_inverse", "2"},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", true},
                   {"normalized", true}}},
                 {"depth_two", true},
                 {"hopf_dims", {{"A", 2}, {"B", 2}, {"C", 4}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

Example function_algebra_example(const nlohmann::json& params) {
  Field f = field_param(params, "F_7");
  Group g = group_by_name(params.value("group", std::string("Z/3")));
  const std::size_t n = g.order();
  require_invertible(f, static_cast<long long>(n), "function-algebra");
  Algebra m = function_algebra(f, g);
  Scalar inv = f.from_int(static_cast<long long>(n)).inverse();
  Matrix E(f, 1, n);
  for (std::size_t i = 0; i < n; ++i) E(0, i) = inv;
  Matrix t(f, n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = f.from_int(static_cast<long long>(n));
  Example ex{{"function-algebra", m, scalars(m), E, t}, {}};
  ex.expected = {{"dims", dims(n, 1, n * n, n * n * n)},
                 {"lambda_inverse", f.from_int(static_cast<long long>(n)).to_string()},
                 {"flags",
                  {{"split", true}, {"separable", true}, {"strongly_separable", true}, {"irreducible", n == 1},
                   {"normalized", true}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

Example matrix_trace(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  Algebra m = matrix_units(f);
  Matrix E(f, 1, 4);  // tr(a diag(1, 2))
  E(0, 0) = f.one();
  E(0, 3) = f.from_int(2);
  Example ex{{"matrix-trace", m, scalars(m), E, std::nullopt}, {}};
  Scalar three = f.from_int(3);
  ex.expected = {{"dims", dims(4, 1, 16, 64)},
                 {"E(1)", three.to_string()},
                 {"nakayama", "q(c) = u^{-1} c u, u = diag(1, 2)"},
                 {"flags", {{"normalized", false}, {"irreducible", false}}}};
  return ex;
}

// Q(sqrt2, i) over Q(sqrt2) on 1, s, i, s i with E(a + b i) = a.
Example biquadratic(const nlohmann::json& params) {
  Field f = field_param(params, "Q");
  require_invertible(f, 2, "biquadratic");
  Algebra r = Algebra::from_products(f, 4, unit_vector(f, 4, 0), [&](std::size_t x, std::size_t y) {
    std::size_t a = (x & 1) + (y & 1), b = (x >> 1) + (y >> 1);
    Scalar c = f.one();
    if (a == 2) {
      c *= f.from_int(2);
      a = 0;
    }
    if (b == 2) {
      c = -c;
      b = 0;
    }
    Vec v = zero_vector(f, 4);
    v[a + 2 * b] = c;
    return v;
  });
  Subspace N = Subspace::from_basis(f, 4, {r.basis(0), r.basis(1)});
  Matrix E(f, 2, 4);
  E(0, 0) = E(1, 1) = f.one();
  Vec i = r.basis(2);
  Matrix t = pairs_to_tensor(f, 4, {{r.unit(), r.unit()}, {i, -f.one() * i}});
  Example ex{{"biquadratic", r, N, E, t}, {}};
  ex.expected = {{"dims", dims(4, 2, 8, 16)},
                 {"lambda_inverse", "2"},
                 {"composite_index_over_Q", "4"},
                 {"flags", {{"normalized", true}, {"irreducible", false}, {"strongly_separable", true}}},
                 {"statuses", tower_statuses()}};
  return ex;
}

}  // namespace

Example generate_example(const std::string& name, const nlohmann::json& params) {
  if (!params.is_object()) throw std::invalid_argument("example parameters must be a JSON object");
  Example ex;
  if (name == "trivial") ex = trivial(params);
  else if (name == "group-pair") ex = group_pair(params);
  else if (name == "quadratic-field") ex = quadratic_field(params);
  else if (name == "footnote-m2f2") ex = footnote_m2f2(params);
  else if (name == "skew-path") ex = skew_path(params);
  else if (name == "function-algebra") ex = function_algebra_example(params);
  else if (name == "matrix-trace") ex = matrix_trace(params);
  else if (name == "biquadratic") ex = biquadratic(params);
  else {
    std::string list;
    for (const auto& n : example_names()) list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown example '" + name + "'; catalog: " + list);
  }
  ex.expected["example"] = name;
  ex.expected["params"] = params;
  ex.expected["field"] = ex.ext.M.field().describe();
  return ex;
}

}  // namespace jtower
