#include "jtower/tower.hpp"

namespace jtower {

namespace {

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

nlohmann::json vec_witness(const char* name_l, const Vec& l, const char* name_r, const Vec& r) {
  return {{name_l, to_json(l)}, {name_r, to_json(r)}};
}

}  // namespace

TowerLevel basic_construction(const FrobeniusSystem& sys, const std::string& prefix) {
  if (!sys.flags.normalized) throw FrobeniusError("basic construction needs E(1) = 1; normalize first");
  Scalar lam_inv = sys.lambda_inverse.value_or(sys.M.field().zero());
  if (sys.index_kind != IndexKind::scalar) throw FrobeniusError("basic construction needs a nonzero scalar index");
  const Scalar lam = lam_inv.inverse();
  const Algebra& M = sys.M;
  const Field& f = M.field();
  const std::size_t n = M.dim();

  TowerLevel L;
  L.lambda_inverse = lam_inv;
  L.quotient = TensorQuotient::over_subalgebra(M, sys.N);
  const TensorQuotient& Q = L.quotient;
  const std::size_t d = Q.dim();

  // E(e_j e_k) for all j, k.
  std::vector<Vec> e_of(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) e_of[j * n + k] = sys.expect(M.basis_product(j, k));

  Vec unit = Q.project(flatten(sys.tensor));
  L.algebra = Algebra::from_products(f, d, unit, [&](std::size_t q, std::size_t r) {
    auto [i, j] = Q.basis_pair(q);
    auto [k, l] = Q.basis_pair(r);
    Vec x = M.multiply(M.basis(i), e_of[j * n + k]);
    Vec out = zero_vector(f, d);
    for (std::size_t a = 0; a < n; ++a)
      if (!x[a].is_zero()) axpy(out, x[a], Q.project_basis(a, l));
    return out;
  });
  const Algebra& A = L.algebra;

  L.inclusion = Matrix(f, d, n);
  for (std::size_t m = 0; m < n; ++m) {
    Vec img = zero_vector(f, d);
    for (const auto& [x, y] : sys.pairs) img = img + Q.project_pure(M.multiply(M.basis(m), x), y);
    L.inclusion.set_column(m, img);
  }
  L.e = Q.project_pure(M.unit(), M.unit());
  L.expectation = Matrix(f, n, d);
  for (std::size_t q = 0; q < d; ++q) {
    auto [i, j] = Q.basis_pair(q);
    L.expectation.set_column(q, lam * M.basis_product(i, j));
  }

  Report& r = L.report;
  auto alg = verify_algebra(A);
  r.check(prefix + ".algebra", alg.ok, alg.failure + " fails for the E-multiplication",
          alg.ok ? nlohmann::json(nullptr) : nlohmann::json{{"basis", alg.witness}});
  bool unit_ok = true;
  for (std::size_t q = 0; q < d && unit_ok; ++q) {
    Vec b = A.basis(q);
    unit_ok = A.multiply(unit, b) == b && A.multiply(b, unit) == b;
  }
  r.check(prefix + ".unit", unit_ok, "sum x_i (x) y_i is not a two-sided unit");
  r.check(prefix + ".idempotent", A.multiply(L.e, L.e) == L.e, "e * e != e");
  auto mor = check_morphism(L.inclusion, M, A);
  r.check(prefix + ".inclusion", mor.is_homomorphism() && mor.injective, "m -> m 1 is not a unital monomorphism",
          {{"multiplicative", mor.multiplicative}, {"unital", mor.unital}, {"injective", mor.injective}});
  if (!mor.injective) throw FrobeniusError("basic construction: inclusion is not injective");

  Subspace image = Subspace::from_columns(L.inclusion);
  r.append(verify_conditional_expectation(A, image, L.expectation, prefix + ".conditional_expectation"));

  Pairs pairs;
  for (const auto& [x, y] : sys.pairs)
    pairs.emplace_back(lam_inv * Q.project_pure(x, M.unit()), Q.project_pure(M.unit(), y));
  auto chk = check_dual_bases(A, ambient_expectation(image, L.expectation), pairs);
  r.check(prefix + ".dual_bases", chk.ok, "dual-basis equation fails",
          chk.ok ? nlohmann::json(nullptr) : nlohmann::json{{"equation", chk.equation}, {"basis", chk.witness}});
  if (!chk.ok) throw FrobeniusError("basic construction: E_M has no dual bases {lambda^-1 x_i (x) 1}, {1 (x) y_i}");

  L.system = make_system_from_pairs(A, image, L.expectation, std::move(pairs));
  bool index_ok = L.system.lambda_inverse && *L.system.lambda_inverse == lam_inv;
  r.check(prefix + ".index", index_ok, "index of the new level is not lambda^{-1} 1",
          {{"index", to_json(L.system.index)}});
  r.check(prefix + ".expectation_of_e", L.expect(L.e) == lam * M.unit(), "E(e) != lambda 1",
          vec_witness("E(e)", L.expect(L.e), "lambda", lam * M.unit()));

  std::vector<Vec> spans;
  for (std::size_t a = 0; a < n; ++a) {
    Vec xa = A.multiply(L.include(M.basis(a)), L.e);
    for (std::size_t b = 0; b < n; ++b) spans.push_back(A.multiply(xa, L.include(M.basis(b))));
  }
  std::size_t span_dim = Subspace::span(f, d, spans).dim();
  r.check(prefix + ".cyclic", span_dim == d, "x e y does not span the new level",
          {{"span", span_dim}, {"dim", d}});
  return L;
}

Report endo_ring_iso(const FrobeniusSystem& sys, const TowerLevel& level, const std::string& prefix) {
  Report r;
  const Algebra& M = sys.M;
  const Field& f = M.field();
  std::vector<Matrix> right;
  for (const auto& g : algebra_generators(M, sys.N)) right.push_back(M.right_multiplication(g));
  EndomorphismAlgebra end = endomorphism_algebra(f, M.dim(), right);
  const std::size_t d = level.dim(), e = end.algebra.dim();

  Matrix phi(f, d, e);
  for (std::size_t k = 0; k < e; ++k) {
    Vec img = zero_vector(f, d);
    for (const auto& [x, y] : sys.pairs) img = img + level.quotient.project_pure(end.basis[k].apply(x), y);
    phi.set_column(k, img);
  }
  auto mor = check_morphism(phi, end.algebra, level.algebra);
  r.check(prefix + ".endomorphism_ring", mor.is_isomorphism(), "f -> sum f(x_i) (x) y_i is not an isomorphism",
          {{"dim_end", e},
           {"dim_level", d},
           {"multiplicative", mor.multiplicative},
           {"unital", mor.unital},
           {"injective", mor.injective},
           {"surjective", mor.surjective}});

  bool inverse_ok = d == e;
  Matrix psi(f, e, d);
  for (std::size_t q = 0; q < d && inverse_ok; ++q) {
    auto [i, j] = level.quotient.basis_pair(q);
    Matrix g = M.left_multiplication(M.basis(i)) * sys.E_ambient * M.left_multiplication(M.basis(j));
    auto coords = end.coordinates(g);
    if (!coords) {
      inverse_ok = false;
      break;
    }
    psi.set_column(q, *coords);
  }
  if (inverse_ok) inverse_ok = psi * phi == Matrix::identity(f, e) && phi * psi == Matrix::identity(f, d);
  r.check(prefix + ".endomorphism_inverse", inverse_ok, "m (x) n -> lambda_m E lambda_n does not invert the map");
  return r;
}

namespace {

// M (x)_N M (x)_N M -> M_2, (a (x) b) (x) c -> (a (x) b) (x)_M (1 (x) c).
void check_triple_tensor(const TowerData& t, Report& r) {
  const Algebra& M = t.M();
  const Field& f = M.field();
  const std::size_t n = M.dim(), d1 = t.l1.dim(), d2 = t.l2.dim();
  const TensorQuotient& q1 = t.l1.quotient;
  const TensorQuotient& q2 = t.l2.quotient;

  std::vector<Matrix> right, left;
  for (const auto& g : algebra_generators(M, t.base.N)) {
    Matrix rx(f, d1, d1);
    for (std::size_t q = 0; q < d1; ++q) {
      auto [i, j] = q1.basis_pair(q);
      rx.set_column(q, q1.project_pure(M.basis(i), M.multiply(M.basis(j), g)));
    }
    right.push_back(std::move(rx));
    left.push_back(M.left_multiplication(g));
  }
  TensorQuotient triple(f, d1, n, right, left);

  auto image = [&](std::size_t q, std::size_t c) {
    return q2.project_pure(t.M1().basis(q), q1.project_pure(M.unit(), M.basis(c)));
  };
  bool relations_killed = true;
  for (const auto& rel : triple.relations()) {
    Vec acc = zero_vector(f, d2);
    for (const auto& [flat, coef] : rel) axpy(acc, coef, image(flat / n, flat % n));
    if (!is_zero(acc)) {
      relations_killed = false;
      break;
    }
  }
  Matrix phi(f, d2, triple.dim());
  for (std::size_t b = 0; b < triple.dim(); ++b) {
    auto [q, c] = triple.basis_pair(b);
    phi.set_column(b, image(q, c));
  }
  bool bijective = triple.dim() == d2 && relations_killed && invert(phi).has_value();

  bool expectation_ok = bijective;
  const Scalar lam = t.lambda();
  for (std::size_t b = 0; b < triple.dim() && expectation_ok; ++b) {
    auto [q, c] = triple.basis_pair(b);
    auto [i, j] = q1.basis_pair(q);
    Vec expected = lam * q1.project_pure(M.multiply(M.basis(i), t.base.expect(M.basis(j))), M.basis(c));
    expectation_ok = t.E_M1(phi.column(b)) == expected;
  }
  r.check("tower.l2.triple_tensor", bijective && expectation_ok,
          "M (x)_N M (x)_N M -> M_2 is not an isomorphism compatible with E_{M_1}",
          {{"dim_triple", triple.dim()},
           {"dim_M2", d2},
           {"relations_killed", relations_killed},
           {"bijective", bijective},
           {"expectation", expectation_ok}});
}

void check_pimsner_popa(const Algebra& X, const Vec& e, const Matrix& expect_in_x, const Scalar& lam_inv,
                        const std::string& id, Report& r) {
  bool direct = true, opposite = true;
  std::size_t bad_d = 0, bad_o = 0;
  for (std::size_t k = 0; k < X.dim(); ++k) {
    Vec x = X.basis(k);
    Vec ex = X.multiply(e, x);
    if (direct && lam_inv * X.multiply(e, expect_in_x.apply(ex)) != ex) {
      direct = false;
      bad_d = k;
    }
    Vec xe = X.multiply(x, e);
    if (opposite && lam_inv * X.multiply(expect_in_x.apply(xe), e) != xe) {
      opposite = false;
      bad_o = k;
    }
  }
  r.check(id, direct, "lambda^{-1} e E(e x) != e x", {{"basis", bad_d}});
  r.check(id + "_opposite", opposite, "lambda^{-1} E(x e) e != x e", {{"basis", bad_o}});
}

}  // namespace

TowerData build_tower(const FrobeniusSystem& sys, const TowerOptions& options) {
  TowerData t;
  t.base = sys;
  t.l1 = basic_construction(sys, "tower.l1");
  Report& r = t.report;
  r.append(t.l1.report);
  if (options.endomorphism_ring) r.append(endo_ring_iso(sys, t.l1, "tower.l1"));
  else r.skip("tower.l1.endomorphism_ring", "disabled by option");

  t.l2 = basic_construction(t.l1.system, "tower.l2");
  r.append(t.l2.report);
  if (options.endomorphism_ring) r.append(endo_ring_iso(t.l1.system, t.l2, "tower.l2"));
  else r.skip("tower.l2.endomorphism_ring", "disabled by option");

  const Algebra& M2 = t.M2();
  const Scalar lam = t.lambda();
  t.m1_to_m2 = t.l2.inclusion;
  t.m_to_m2 = t.l2.inclusion * t.l1.inclusion;
  t.F = t.l1.expectation * t.l2.expectation;
  t.e1 = t.l2.include(t.l1.e);
  t.e2 = t.l2.e;

  Vec e1e2e1 = M2.product({t.e1, t.e2, t.e1});
  Vec e2e1e2 = M2.product({t.e2, t.e1, t.e2});
  r.check("tower.braid.e1e2e1", e1e2e1 == lam * t.e1, "e_1 e_2 e_1 != lambda e_1",
          vec_witness("lhs", e1e2e1, "rhs", lam * t.e1));
  r.check("tower.braid.e2e1e2", e2e1e2 == lam * t.e2, "e_2 e_1 e_2 != lambda e_2",
          vec_witness("lhs", e2e1e2, "rhs", lam * t.e2));

  Vec f_e2 = t.F.apply(t.e2);
  Vec f_e2e1 = t.F.apply(M2.multiply(t.e2, t.e1));
  const Vec& one = t.M().unit();
  r.check("tower.markov", f_e2 == lam * one && f_e2e1 == (lam * lam) * one, "F(e_2) != lambda or F(e_2 e_1) != lambda^2",
          vec_witness("F(e2)", f_e2, "F(e2 e1)", f_e2e1));

  const Scalar lam_inv = t.lambda_inverse();
  check_pimsner_popa(t.M1(), t.l1.e, t.l1.inclusion * t.l1.expectation, lam_inv, "tower.pimsner_popa.l1", r);
  check_pimsner_popa(M2, t.e2, t.l2.inclusion * t.l2.expectation, lam_inv, "tower.pimsner_popa.l2", r);

  if (options.triple_tensor) check_triple_tensor(t, r);
  else r.skip("tower.l2.triple_tensor", "disabled by option");
  return t;
}

nlohmann::json tower_dump(const TowerData& t) {
  auto level = [](const Algebra& a, const Vec* e, const Matrix* expectation, const Matrix* inclusion) {
    nlohmann::json j;
    j["dim"] = a.dim();
    j["unit"] = to_json(a.unit());
    nlohmann::json sc = nlohmann::json::array();
    for (const auto& c : a.structure_constants()) sc.push_back({c.i, c.j, c.k, c.c.to_string()});
    j["structure"] = std::move(sc);
    if (e) j["jones_idempotent"] = to_json(*e);
    if (expectation) j["conditional_expectation"] = to_json(*expectation);
    if (inclusion) j["inclusion"] = to_json(*inclusion);
    return j;
  };
  nlohmann::json out;
  out["format"] = "jtower-tower/1";
  out["field"] = t.M().field().describe();
  out["lambda_inverse"] = t.lambda_inverse().to_string();
  out["levels"] = nlohmann::json::array({level(t.M(), nullptr, nullptr, nullptr),
                                         level(t.M1(), &t.l1.e, &t.l1.expectation, &t.l1.inclusion),
                                         level(t.M2(), &t.l2.e, &t.l2.expectation, &t.l2.inclusion)});
  return out;
}

}  // namespace jtower
