#include "jtower/galois.hpp"

namespace jtower {

Vec ModuleAlgebraAction::apply(const Vec& h, const Vec& x) const {
  Vec out = X.zero();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) axpy(out, h[i], act[i].apply(x));
  return out;
}

namespace {

nlohmann::json where(const std::string& what, std::initializer_list<std::size_t> idx) {
  return {{"failure", what}, {"basis", std::vector<std::size_t>(idx)}};
}

nlohmann::json morphism_witness(const MorphismCheck& m) {
  return {{"multiplicative", m.multiplicative}, {"unital", m.unital}, {"injective", m.injective},
          {"surjective", m.surjective}, {"witness", m.witness}};
}

Vec in_basis(const Subspace& s, const Vec& coords) { return s.combine(coords); }

}  // namespace

Report verify_module_algebra(const ModuleAlgebraAction& a, const std::string& id) {
  Report r;
  const Algebra& H = a.H.algebra;
  const Algebra& X = a.X;
  const std::size_t nh = H.dim(), nx = X.dim();
  const Field& f = X.field();
  nlohmann::json w;
  bool ok = a.act.size() == nh;
  if (!ok) w = {{"failure", "one matrix per basis element of H expected"}};

  if (ok) {
    Matrix unit_action(f, nx, nx);
    for (std::size_t i = 0; i < nh; ++i)
      if (!H.unit()[i].is_zero()) unit_action = unit_action + H.unit()[i] * a.act[i];
    if (unit_action != Matrix::identity(f, nx)) {
      ok = false;
      w = {{"failure", "1 |> x != x"}};
    }
  }
  for (std::size_t i = 0; i < nh && ok; ++i)
    for (std::size_t j = 0; j < nh && ok; ++j) {
      Vec hh = H.basis_product(i, j);
      Matrix composite(f, nx, nx);
      for (std::size_t k = 0; k < nh; ++k)
        if (!hh[k].is_zero()) composite = composite + hh[k] * a.act[k];
      if (a.act[i] * a.act[j] != composite) {
        ok = false;
        w = where("h |> (h' |> x) != (h h') |> x", {i, j});
      }
    }
  for (std::size_t i = 0; i < nh && ok; ++i) {
    if (a.act[i].apply(X.unit()) != a.H.epsilon[i] * X.unit()) {
      ok = false;
      w = where("h |> 1 != epsilon(h) 1", {i});
      break;
    }
    Vec d = a.H.delta.column(i);
    for (std::size_t x = 0; x < nx && ok; ++x)
      for (std::size_t y = 0; y < nx && ok; ++y) {
        Vec rhs = X.zero();
        for (std::size_t p = 0; p < nh; ++p)
          for (std::size_t q = 0; q < nh; ++q)
            if (!d[p * nh + q].is_zero())
              rhs = rhs + d[p * nh + q] * X.multiply(a.act[p].column(x), a.act[q].column(y));
        if (a.act[i].apply(X.basis_product(x, y)) != rhs) {
          ok = false;
          w = where("h |> (x y) != (h_(1) |> x)(h_(2) |> y)", {i, x, y});
        }
      }
  }
  r.check(id, ok, "module-algebra axioms fail", w);
  return r;
}

ModuleAlgebraAction trivial_action(const HopfStructure& H, const Algebra& X) {
  ModuleAlgebraAction a{H, X, {}};
  for (std::size_t i = 0; i < H.dim(); ++i) a.act.push_back(H.epsilon[i] * Matrix::identity(X.field(), X.dim()));
  return a;
}

Subspace invariants(const ModuleAlgebraAction& a) {
  const std::size_t nx = a.X.dim();
  const Field& f = a.X.field();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < a.act.size(); ++i) {
    Matrix m = a.act[i] - a.H.epsilon[i] * Matrix::identity(f, nx);
    for (std::size_t r = 0; r < nx; ++r) rows.push_back(m.row(r));
  }
  if (rows.empty()) return Subspace::whole(f, nx);
  return Subspace::span(f, nx, kernel(Matrix::from_rows(f, nx, rows)));
}

Algebra smash_product(const ModuleAlgebraAction& a) {
  const Algebra& H = a.H.algebra;
  const Algebra& X = a.X;
  const std::size_t nh = H.dim();
  return Algebra::from_products(X.field(), X.dim() * nh, tensor_flat(X.unit(), H.unit()),
                                [&](std::size_t i, std::size_t j) {
                                  const std::size_t x = i / nh, ha = i % nh, y = j / nh, hb = j % nh;
                                  Vec d = a.H.delta.column(ha);
                                  Vec out = zero_vector(X.field(), X.dim() * nh);
                                  for (std::size_t p = 0; p < nh; ++p)
                                    for (std::size_t q = 0; q < nh; ++q) {
                                      if (d[p * nh + q].is_zero()) continue;
                                      Vec left = X.multiply(X.basis(x), a.act[p].column(y));
                                      out = out + d[p * nh + q] * tensor_flat(left, H.basis_product(q, hb));
                                    }
                                  return out;
                                });
}

Report verify_smash_product(const Algebra& smash, const std::string& id) {
  Report r;
  auto c = verify_algebra(smash);
  r.check(id, c.ok, "smash product fails " + c.failure, {{"witness", c.witness}});
  return r;
}

Report verify_smash_iso_theta(const TowerData& t, const DepthTwoData& d, const PairingData& p,
                              const ModuleAlgebraAction& b_on_m1) {
  Report r;
  const Algebra& M2 = t.M2();
  const Field& f = M2.field();
  const std::size_t nb = p.B_basis.dim(), n1 = t.M1().dim();
  Algebra smash = smash_product(b_on_m1);
  Matrix theta(f, M2.dim(), n1 * nb);
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t b = 0; b < nb; ++b)
      theta.set_column(x * nb + b, M2.multiply(t.m1_to_m2.apply(t.M1().basis(x)), p.B_basis.vector(b)));
  auto m = check_morphism(theta, smash, M2);
  r.check("galois.smash_theta", m.is_isomorphism(), "theta: M_1 # B -> M_2 is not an algebra isomorphism",
          morphism_witness(m));

  // Restriction to A # B -> C.
  const std::size_t na = p.A_basis.dim();
  ModuleAlgebraAction on_a{b_on_m1.H, p.A, {}};
  bool stable = true;
  for (const auto& mat : b_on_m1.act) {
    Matrix restricted(f, na, na);
    for (std::size_t c = 0; c < na && stable; ++c) {
      auto img = p.A_basis.coordinates(mat.apply(p.A_basis.vector(c)));
      if (!img) stable = false;
      else restricted.set_column(c, *img);
    }
    on_a.act.push_back(std::move(restricted));
  }
  if (!stable) {
    r.fail("galois.smash_AB", "B |> A is not contained in A");
    return r;
  }
  Matrix to_c(f, d.C.dim(), na * nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      to_c.set_column(a * nb + b, d.C.coordinates_or_throw(M2.multiply(p.A_in_M2.vector(a), p.B_basis.vector(b)),
                                                          "a b not in C"));
  auto mc = check_morphism(to_c, smash_product(on_a), induced_algebra(M2, d.C));
  r.check("galois.smash_AB", mc.is_isomorphism(), "A # B -> C is not an algebra isomorphism", morphism_witness(mc));
  return r;
}

Report galois_map(const ModuleAlgebraAction& a, const Subspace& N, const std::string& id) {
  Report r;
  const Algebra& X = a.X;
  const std::size_t nx = X.dim(), nh = a.H.dim();
  const Field& f = X.field();
  auto beta_flat = [&](std::size_t i, std::size_t j) {
    Vec out = zero_vector(f, nx * nh);
    for (std::size_t k = 0; k < nh; ++k) out = out + tensor_flat(X.multiply(X.basis(i), a.act[k].column(j)), unit_vector(f, nh, k));
    return out;
  };
  std::vector<Vec> flat;
  flat.reserve(nx * nx);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) flat.push_back(beta_flat(i, j));

  auto q = TensorQuotient::over_subalgebra(X, N);
  bool balanced = true;
  for (const auto& rel : q.relations()) {
    Vec img = zero_vector(f, nx * nh);
    for (const auto& [idx, c] : rel) axpy(img, c, flat[idx]);
    if (!is_zero(img)) {
      balanced = false;
      break;
    }
  }
  Matrix beta(f, nx * nh, q.dim());
  for (std::size_t c = 0; c < q.dim(); ++c) {
    auto [i, j] = q.basis_pair(c);
    beta.set_column(c, flat[i * nx + j]);
  }
  std::size_t rk = rank(beta);
  bool bijective = balanced && q.dim() == nx * nh && rk == q.dim();
  r.check(id, bijective, balanced ? "Galois map is not bijective" : "Galois map is not N-balanced",
          {{"domain", q.dim()}, {"codomain", nx * nh}, {"rank", rk}, {"balanced", balanced}});
  return r;
}

Report psi_map(const Algebra& smash, const ModuleAlgebraAction& a, const Subspace& N,
               const std::optional<PsiInverseData>& inverse) {
  Report r;
  const Algebra& X = a.X;
  const std::size_t nx = X.dim(), nh = a.H.dim();
  const Field& f = X.field();
  std::vector<Matrix> right;
  for (const auto& n : N.basis()) right.push_back(X.right_multiplication(n));
  auto end = endomorphism_algebra(f, nx, right);
  Matrix psi(f, end.algebra.dim(), smash.dim());
  bool lands = true;
  for (std::size_t x = 0; x < nx && lands; ++x)
    for (std::size_t h = 0; h < nh && lands; ++h) {
      auto c = end.coordinates(X.left_multiplication(X.basis(x)) * a.act[h]);
      if (!c) lands = false;
      else psi.set_column(x * nh + h, *c);
    }
  if (!lands) {
    r.fail("galois.psi", "Psi(x # h) is not right N-linear");
    if (inverse) r.skip("galois.psi.inverse", "Psi does not land in End(X_N)");
    return r;
  }
  auto m = check_morphism(psi, smash, end.algebra);
  nlohmann::json w = morphism_witness(m);
  w["dim_smash"] = smash.dim();
  w["dim_end"] = end.algebra.dim();
  r.check("galois.psi", m.is_isomorphism(), "Psi: X # H -> End(X_N) is not an algebra isomorphism", w);
  if (!inverse) return r;

  Matrix inv(f, smash.dim(), end.algebra.dim());
  Vec one_h = a.H.algebra.unit();
  for (std::size_t g = 0; g < end.algebra.dim(); ++g) {
    Vec acc = zero_vector(f, smash.dim());
    for (const auto& [xi, yi] : inverse->pairs) {
      Vec gx = end.basis[g].apply(xi);
      acc = acc + smash.multiply(tensor_flat(gx, inverse->t), tensor_flat(yi, one_h));
    }
    inv.set_column(g, acc);
  }
  bool two_sided = psi * inv == Matrix::identity(f, end.algebra.dim()) &&
                   inv * psi == Matrix::identity(f, smash.dim());
  r.check("galois.psi.inverse", two_sided, "g -> sum_i g(x_i) t y_i is not a two-sided inverse of Psi");
  return r;
}

ModuleAlgebraAction action_B_on_M1(const TowerData& t, const Reconstruction& rec) {
  const Algebra& M1 = t.M1();
  const Algebra& M2 = t.M2();
  const Subspace& B = rec.pairing.B_basis;
  ModuleAlgebraAction a{rec.B, M1, {}};
  const Scalar lam_inv = t.lambda_inverse();
  for (std::size_t k = 0; k < B.dim(); ++k) {
    Matrix m(M1.field(), M1.dim(), M1.dim());
    for (std::size_t x = 0; x < M1.dim(); ++x) {
      Vec px = t.m1_to_m2.apply(M1.basis(x));
      m.set_column(x, lam_inv * t.E_M1(M2.product({B.vector(k), px, t.e2})));
    }
    a.act.push_back(std::move(m));
  }
  return a;
}

ModuleAlgebraAction action_A_on_M(const TowerData& t, const Reconstruction& rec) {
  const Algebra& M = t.M();
  const Algebra& M1 = t.M1();
  const Subspace& A = rec.pairing.A_basis;
  const HopfStructure& ha = rec.A;
  if (!ha.S) throw GaloisError("antipode of A unavailable");
  const std::size_t n = ha.dim();
  Subspace m_in_m1 = Subspace::from_columns(t.l1.inclusion);
  ModuleAlgebraAction a{ha, M, {}};
  for (std::size_t k = 0; k < n; ++k) {
    Vec d = ha.delta.column(k);
    Matrix mat(M.field(), M.dim(), M.dim());
    for (std::size_t x = 0; x < M.dim(); ++x) {
      Vec im = t.l1.include(M.basis(x));
      Vec v = M1.zero();
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (!d[p * n + q].is_zero()) {
            Vec sq = in_basis(A, ha.S->column(q));
            v = v + d[p * n + q] * M1.product({A.vector(p), im, sq});
          }
      auto c = m_in_m1.coordinates(v);
      if (!c) throw GaloisError("a |> m leaves M for a = a_" + std::to_string(k) + ", m = m_" + std::to_string(x));
      mat.set_column(x, *c);
    }
    a.act.push_back(std::move(mat));
  }
  return a;
}

Report cleft_data(const TowerData& t, const Reconstruction& rec, const ModuleAlgebraAction& b_on_m1,
                  const ModuleAlgebraAction& a_on_m) {
  Report r;
  const Algebra& M1 = t.M1();
  const Field& f = M1.field();
  const Subspace& A = rec.pairing.A_basis;
  const HopfStructure& ha = rec.A;
  const std::size_t n = ha.dim();
  // a^j with <a^j, b_i> = delta_ij: coordinates P^{-T}.
  Matrix dual_a = rec.pairing.P_inv.transpose();

  bool comodule = true;
  for (std::size_t k = 0; k < n && comodule; ++k) {
    Vec lhs = zero_vector(f, M1.dim() * n), rhs = zero_vector(f, M1.dim() * n);
    for (std::size_t j = 0; j < n; ++j) lhs = lhs + tensor_flat(b_on_m1.act[j].apply(A.vector(k)), dual_a.column(j));
    Vec d = ha.delta.column(k);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (!d[p * n + q].is_zero()) rhs = rhs + d[p * n + q] * tensor_flat(A.vector(p), unit_vector(f, n, q));
    comodule = lhs == rhs;
  }
  r.check("galois.cleft.comodule", comodule, "inclusion A -> M_1 is not a comodule map");

  bool conv = ha.S.has_value();
  for (std::size_t k = 0; k < n && conv; ++k) {
    Vec d = ha.delta.column(k);
    Vec left = M1.zero(), right = M1.zero();
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (d[p * n + q].is_zero()) continue;
        left = left + d[p * n + q] * M1.multiply(A.vector(p), in_basis(A, ha.S->column(q)));
        right = right + d[p * n + q] * M1.multiply(in_basis(A, ha.S->column(p)), A.vector(q));
      }
    conv = left == ha.epsilon[k] * M1.unit() && right == ha.epsilon[k] * M1.unit();
  }
  r.check("galois.cleft.convolution_inverse", conv, "inclusion composed with S_A is not a convolution inverse");

  // sigma(a, a') = a_(1) a'_(1) S(a_(2) a'_(2)) in M_1.
  bool cocycle = ha.S.has_value();
  nlohmann::json w;
  for (std::size_t i = 0; i < n && cocycle; ++i)
    for (std::size_t j = 0; j < n && cocycle; ++j) {
      Vec di = ha.delta.column(i), dj = ha.delta.column(j);
      Vec sigma = M1.zero();
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          if (di[p * n + q].is_zero()) continue;
          for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
              if (dj[u * n + v].is_zero()) continue;
              Vec first = M1.multiply(A.vector(p), A.vector(u));
              Vec second = in_basis(A, ha.S->apply(rec.pairing.A.basis_product(q, v)));
              sigma = sigma + (di[p * n + q] * dj[u * n + v]) * M1.multiply(first, second);
            }
        }
      if (sigma != (ha.epsilon[i] * ha.epsilon[j]) * M1.unit()) {
        cocycle = false;
        w = {{"basis", {i, j}}};
      }
    }
  r.check("galois.cleft.cocycle", cocycle, "cocycle is not epsilon (x) epsilon 1", w);

  Algebra smash = smash_product(a_on_m);
  Matrix mu(f, M1.dim(), smash.dim());
  for (std::size_t m = 0; m < t.M().dim(); ++m)
    for (std::size_t a = 0; a < n; ++a)
      mu.set_column(m * n + a, M1.multiply(t.l1.include(t.M().basis(m)), A.vector(a)));
  auto mc = check_morphism(mu, smash, M1);
  r.check("galois.smash_MA", mc.is_isomorphism(), "m # a -> m a is not an algebra isomorphism M # A -> M_1",
          morphism_witness(mc));
  return r;
}

GaloisData analyze_galois(const TowerData& t, const DepthTwoData& d, const Reconstruction& rec) {
  GaloisData g;
  Report& r = g.report;
  const Algebra& M = t.M();
  const Algebra& M1 = t.M1();

  auto b_act = action_B_on_M1(t, rec);
  r.append(verify_module_algebra(b_act, "galois.action_B"));
  bool outer = rec.B.S.has_value();
  const Subspace& B = rec.pairing.B_basis;
  const std::size_t n = rec.B.dim();
  for (std::size_t k = 0; k < n && outer; ++k) {
    Vec dk = rec.B.delta.column(k);
    for (std::size_t x = 0; x < M1.dim() && outer; ++x) {
      Vec px = t.m1_to_m2.apply(M1.basis(x));
      Vec v = t.M2().zero();
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (!dk[p * n + q].is_zero()) {
            Vec sq = B.combine(rec.B.S->column(q));
            v = v + dk[p * n + q] * t.M2().product({B.vector(p), px, sq});
          }
      outer = v == t.m1_to_m2.apply(b_act.act[k].column(x));
    }
  }
  r.check("galois.action_B.outer", outer, "lambda^{-1} E_{M_1}(b x e_2) != b_(1) x S(b_(2))");
  Vec e2 = B.coordinates_or_throw(t.e2, "e_2 not in B");
  bool e2_ok = true;
  for (std::size_t x = 0; x < M1.dim() && e2_ok; ++x)
    e2_ok = b_act.apply(e2, M1.basis(x)) == t.l1.include(t.E_M(M1.basis(x)));
  r.check("galois.action_B.e2", e2_ok, "e_2 |> x != E_M(x)");
  Subspace inv_b = invariants(b_act);
  r.check("galois.invariants_B", inv_b.same_space(t.l1.system.N), "M_1^B != M",
          {{"dim_invariants", inv_b.dim()}, {"dim_M", M.dim()}});
  r.append(verify_smash_product(smash_product(b_act)));
  r.append(verify_smash_iso_theta(t, d, rec.pairing, b_act));
  g.action_B = b_act;

  try {
    auto a_act = action_A_on_M(t, rec);
    r.append(verify_module_algebra(a_act, "galois.action_A"));
    Vec e1 = rec.pairing.A_basis.coordinates_or_throw(t.l1.e, "e_1 not in A");
    bool e1_ok = true;
    for (std::size_t x = 0; x < M.dim() && e1_ok; ++x)
      e1_ok = a_act.apply(e1, M.basis(x)) == t.base.expect(M.basis(x));
    r.check("galois.action_A.e1", e1_ok, "e_1 |> x != E(x)");
    Subspace inv_a = invariants(a_act);
    r.check("galois.invariants_A", inv_a.same_space(t.base.N), "M^A != N",
            {{"dim_invariants", inv_a.dim()}, {"dim_N", t.base.N.dim()}});
    r.append(cleft_data(t, rec, b_act, a_act));
    r.append(galois_map(a_act, t.base.N));
    r.append(psi_map(smash_product(a_act), a_act, t.base.N, PsiInverseData{t.base.pairs, e1}));
    g.action_A = std::move(a_act);
  } catch (const GaloisError& e) {
    for (const char* id : {"galois.action_A", "galois.action_A.e1", "galois.invariants_A", "galois.cleft.comodule",
                           "galois.cleft.convolution_inverse", "galois.cleft.cocycle", "galois.smash_MA",
                           "galois.galois_map", "galois.psi", "galois.psi.inverse"})
      r.fail(id, e.what());
  }
  return g;
}

}  // namespace jtower
