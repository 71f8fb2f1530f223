#include "jtower/depth_two.hpp"

#include <random>

namespace jtower {

std::string to_string(DepthFailure f) {
  switch (f) {
    case DepthFailure::none:
      return "none";
    case DepthFailure::dimension_obstruction:
      return "dimension obstruction";
    case DepthFailure::gram_singular:
      return "Gram singular";
    case DepthFailure::system_inconsistent:
      return "system inconsistent";
  }
  return "unknown";
}

namespace {

std::optional<Scalar> scalar_of(const Vec& v, const Vec& unit) {
  std::size_t k = 0;
  while (k < unit.size() && unit[k].is_zero()) ++k;
  if (k == unit.size()) return std::nullopt;
  Scalar s = v[k] / unit[k];
  if (s * unit != v) return std::nullopt;
  return s;
}

OrthogonalDualBases failure(DepthFailure kind, std::string reason, std::string method) {
  OrthogonalDualBases d;
  d.failure = kind;
  d.reason = std::move(reason);
  d.method = std::move(method);
  return d;
}

// Trials for the randomized searches; small prime fields need more.
std::size_t trial_budget(const Field& f, std::size_t over_q) {
  return f.kind() == Field::Kind::rational ? over_q : 64;
}

Scalar random_scalar(const Field& f, std::mt19937_64& rng) {
  if (f.kind() == Field::Kind::rational) return f.from_int(static_cast<long long>(rng() % 2001) - 1000);
  return f.from_int(static_cast<long long>(rng() % f.modulus()));
}

Vec random_element(const Subspace& s, std::mt19937_64& rng) {
  Vec coords(s.dim());
  for (auto& c : coords) c = random_scalar(s.field(), rng);
  return s.combine(coords);
}

// r = dim X / dim Y, or a dimension-obstruction failure.
std::optional<OrthogonalDualBases> dimension_check(const LevelProblem& p, std::size_t& r, const std::string& method) {
  const std::size_t dx = p.X->dim(), dy = p.Y->dim();
  if (dy == 0 || dx % dy != 0)
    return failure(DepthFailure::dimension_obstruction,
                   "dim X = " + std::to_string(dx) + " is not a multiple of dim Y = " + std::to_string(dy), method);
  r = dx / dy;
  if (p.S->dim() < r)
    return failure(DepthFailure::dimension_obstruction,
                   "candidate subspace has dimension " + std::to_string(p.S->dim()) + " < " + std::to_string(r), method);
  if (p.irreducible && p.S->dim() != r)
    return failure(DepthFailure::dimension_obstruction,
                   "irreducible base needs dim S = " + std::to_string(r) + ", got " + std::to_string(p.S->dim()),
                   method);
  return std::nullopt;
}

// z from w when (m_j) -> sum m_j w_j is bijective; std::nullopt otherwise.
std::optional<std::vector<Vec>> z_from_w(const LevelProblem& p, const std::vector<Vec>& w) {
  const Algebra& X = *p.X;
  const Subspace& Y = *p.Y;
  const std::size_t dx = X.dim(), dy = Y.dim(), r = w.size();
  Matrix phi(X.field(), dx, r * dy);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < dy; ++k) phi.set_column(j * dy + k, X.multiply(Y.vector(k), w[j]));
  auto inv = invert(phi);
  if (!inv) return std::nullopt;
  // pi_j(e_a) = sum_k inv(j dy + k, a) y_k; find z_j in S with E(e_a z_j) = pi_j(e_a).
  const Subspace& S = *p.S;
  Matrix K(X.field(), dx * dx, S.dim());
  for (std::size_t l = 0; l < S.dim(); ++l)
    for (std::size_t a = 0; a < dx; ++a) {
      Vec v = p.E->apply(X.multiply(X.basis(a), S.vector(l)));
      for (std::size_t c = 0; c < dx; ++c) K(a * dx + c, l) = v[c];
    }
  Matrix rhs(X.field(), dx * dx, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t a = 0; a < dx; ++a) {
      Vec pi = X.zero();
      for (std::size_t k = 0; k < dy; ++k)
        if (!(*inv)(j * dy + k, a).is_zero()) axpy(pi, (*inv)(j * dy + k, a), Y.vector(k));
      for (std::size_t c = 0; c < dx; ++c) rhs(a * dx + c, j) = pi[c];
    }
  auto zc = solve_columns(K, rhs);
  if (!zc || K * *zc != rhs) return std::nullopt;
  std::vector<Vec> z;
  for (std::size_t j = 0; j < r; ++j) z.push_back(S.combine(zc->column(j)));
  return z;
}

}  // namespace

bool verify_orthogonal_dual_bases(const LevelProblem& p, const OrthogonalDualBases& d, std::string* why) {
  const Algebra& X = *p.X;
  auto fail = [&](std::string s) {
    if (why) *why = std::move(s);
    return false;
  };
  if (d.z.size() != d.w.size()) return fail("z and w differ in length");
  for (std::size_t i = 0; i < d.z.size(); ++i)
    if (!p.S->contains(d.z[i]) || !p.S->contains(d.w[i])) return fail("z or w not in the centralizer");
  for (std::size_t i = 0; i < d.w.size(); ++i)
    for (std::size_t j = 0; j < d.z.size(); ++j) {
      Vec v = p.E->apply(X.multiply(d.w[i], d.z[j]));
      if (v != (i == j ? X.unit() : X.zero()))
        return fail("E(w_" + std::to_string(i) + " z_" + std::to_string(j) + ") != delta");
    }
  for (std::size_t a = 0; a < X.dim(); ++a) {
    Vec x = X.basis(a);
    Vec first = X.zero(), second = X.zero();
    for (std::size_t j = 0; j < d.z.size(); ++j) {
      first = first + X.multiply(p.E->apply(X.multiply(x, d.z[j])), d.w[j]);
      second = second + X.multiply(d.z[j], p.E->apply(X.multiply(d.w[j], x)));
    }
    if (first != x) return fail("sum E(x z_j) w_j != x at basis " + std::to_string(a));
    if (second != x) return fail("sum z_j E(w_j x) != x at basis " + std::to_string(a));
  }
  return true;
}

OrthogonalDualBases find_orthogonal_dual_bases(const LevelProblem& p, std::uint64_t seed) {
  const std::string method = p.irreducible ? "gram" : "search";
  std::size_t r = 0;
  if (auto f = dimension_check(p, r, method)) return *f;
  const Algebra& X = *p.X;
  const Subspace& S = *p.S;
  const Field& f = X.field();

  if (p.irreducible) {
    Matrix gram(f, r, r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < r; ++j) {
        auto s = scalar_of(p.E->apply(X.multiply(S.vector(k), S.vector(j))), X.unit());
        if (!s) return failure(DepthFailure::system_inconsistent, "E is not scalar-valued on the centralizer", method);
        gram(k, j) = *s;
      }
    auto ginv = invert(gram);
    if (!ginv) return failure(DepthFailure::gram_singular, "Gram matrix E(s_k s_j) is singular", method);
    OrthogonalDualBases d;
    d.method = method;
    d.trials = 1;
    for (std::size_t i = 0; i < r; ++i) {
      d.z.push_back(S.vector(i));
      Vec w = X.zero();
      for (std::size_t k = 0; k < r; ++k) axpy(w, (*ginv)(i, k), S.vector(k));
      d.w.push_back(std::move(w));
    }
    std::string why;
    if (!verify_orthogonal_dual_bases(p, d, &why))
      return failure(DepthFailure::system_inconsistent, "Gram solution fails: " + why, method);
    d.found = true;
    return d;
  }

  std::mt19937_64 rng(seed);
  const std::size_t budget = trial_budget(f, 16);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::vector<Vec> w;
    for (std::size_t j = 0; j < r; ++j) w.push_back(trial == 0 ? S.vector(j) : random_element(S, rng));
    auto z = z_from_w(p, w);
    if (!z) continue;
    OrthogonalDualBases d;
    d.method = method;
    d.trials = trial + 1;
    d.z = std::move(*z);
    d.w = std::move(w);
    if (!verify_orthogonal_dual_bases(p, d)) continue;
    d.found = true;
    return d;
  }
  auto d = failure(DepthFailure::system_inconsistent,
                   "no w in the centralizer makes M^r -> X bijective after " + std::to_string(budget) + " trials",
                   method);
  d.trials = budget;
  return d;
}

OrthogonalDualBases resolve_orthogonal_dual_bases(const LevelProblem& p, std::uint64_t seed) {
  const std::string method = "resolve";
  std::size_t r = 0;
  if (auto f = dimension_check(p, r, method)) return *f;
  const Algebra& X = *p.X;
  const Subspace& Y = *p.Y;
  const Field& f = X.field();
  const std::size_t dx = X.dim(), dy = Y.dim();
  Vec one_y = Y.coordinates_or_throw(X.unit(), "resolve: 1 not in the lower algebra");

  std::mt19937_64 rng(seed);
  const std::size_t budget = trial_budget(f, 8);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::vector<Vec> z;
    for (std::size_t j = 0; j < r; ++j) z.push_back(random_element(*p.S, rng));
    // L(w) = (E(w z_k))_k in Y coordinates; solve L(w_j) = (delta_jk 1)_k for w_j in X.
    Matrix L(f, r * dy, dx);
    for (std::size_t a = 0; a < dx; ++a)
      for (std::size_t k = 0; k < r; ++k) {
        Vec v = Y.coordinates_or_throw(p.E->apply(X.multiply(X.basis(a), z[k])), "resolve: E leaves Y");
        for (std::size_t c = 0; c < dy; ++c) L(k * dy + c, a) = v[c];
      }
    Matrix rhs(f, r * dy, r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < dy; ++c) rhs(j * dy + c, j) = one_y[c];
    auto sol = solve_columns(L, rhs);
    if (!sol || L * *sol != rhs) continue;
    OrthogonalDualBases d;
    d.method = method;
    d.trials = trial + 1;
    d.z = std::move(z);
    for (std::size_t j = 0; j < r; ++j) d.w.push_back(sol->column(j));
    if (!verify_orthogonal_dual_bases(p, d)) continue;
    d.found = true;
    return d;
  }
  auto d = failure(DepthFailure::system_inconsistent,
                   "orthogonality system has no verified solution after " + std::to_string(budget) + " random z",
                   method);
  d.trials = budget;
  return d;
}

namespace {

nlohmann::json witness_of(const OrthogonalDualBases& d) {
  nlohmann::json j = {{"found", d.found}, {"method", d.method}, {"trials", d.trials}};
  if (!d.found) j["failure"] = to_string(d.failure);
  return j;
}

std::size_t span_dim(const Field& f, std::size_t n, const std::vector<Vec>& vs) { return Subspace::span(f, n, vs).dim(); }

// Algebra of n x n matrices on matrix units E_rc (index r n + c).
Algebra full_matrix_algebra(const Field& f, std::size_t n) {
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) sc.push_back({a * n + b, b * n + d, a * n + d, f.one()});
  Vec unit = zero_vector(f, n * n);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = f.one();
  return Algebra(f, n * n, unit, sc);
}

bool separability_element(const Algebra& X, const Subspace& S, const std::vector<Vec>& z, const std::vector<Vec>& w,
                          const Scalar& lam) {
  Vec mu = X.zero();
  for (std::size_t i = 0; i < z.size(); ++i) mu = mu + X.multiply(z[i], w[i]);
  if (lam * mu != X.unit()) return false;
  const std::size_t s = S.dim();
  for (std::size_t k = 0; k < s; ++k) {
    const Vec& a = S.vector(k);
    Vec left = zero_vector(X.field(), s * s), right = zero_vector(X.field(), s * s);
    for (std::size_t i = 0; i < z.size(); ++i) {
      left = left + tensor_flat(*S.coordinates(X.multiply(a, z[i])), *S.coordinates(w[i]));
      right = right + tensor_flat(*S.coordinates(z[i]), *S.coordinates(X.multiply(w[i], a)));
    }
    if (left != right) return false;
  }
  return true;
}

void check_free(const Algebra& X, const Subspace& lower, const Subspace& S, const std::string& id, Report& r) {
  std::vector<Vec> prods;
  for (const auto& m : lower.basis())
    for (const auto& s : S.basis()) prods.push_back(X.multiply(m, s));
  std::size_t rk = span_dim(X.field(), X.dim(), prods);
  bool ok = rk == X.dim() && prods.size() == X.dim();
  r.check(id, ok, "multiplication map is not a bijection", {{"rank", rk}, {"domain", prods.size()}, {"dim", X.dim()}});
}

void check_C_structure(const TowerData& t, DepthTwoData& d) {
  Report& r = d.report;
  const Algebra& M2 = t.M2();
  const Field& f = M2.field();
  const std::size_t d2 = M2.dim();
  const Subspace& A = d.A_in_M2;
  const Subspace& B = d.B;
  const Subspace& C = d.C;

  auto product_check = [&](const Subspace& P, const Subspace& Q, const std::string& id) {
    std::vector<Vec> prods;
    bool inside = true;
    for (const auto& p : P.basis())
      for (const auto& q : Q.basis()) {
        prods.push_back(M2.multiply(p, q));
        if (!C.contains(prods.back())) inside = false;
      }
    std::size_t rk = span_dim(f, d2, prods);
    r.check(id, inside && rk == prods.size() && rk == C.dim(), "multiplication into C is not bijective",
            {{"rank", rk}, {"domain", prods.size()}, {"dim_C", C.dim()}, {"inside_C", inside}});
  };
  product_check(A, B, "depth2.C.AB");
  product_check(B, A, "depth2.C.BA");

  std::vector<Vec> e2a, e2c, ae2, ce2;
  for (const auto& a : A.basis()) {
    e2a.push_back(M2.multiply(t.e2, a));
    ae2.push_back(M2.multiply(a, t.e2));
  }
  for (const auto& c : C.basis()) {
    e2c.push_back(M2.multiply(t.e2, c));
    ce2.push_back(M2.multiply(c, t.e2));
  }
  bool e2_ok = Subspace::span(f, d2, e2a).same_space(Subspace::span(f, d2, e2c)) &&
               Subspace::span(f, d2, ae2).same_space(Subspace::span(f, d2, ce2));
  r.check("depth2.C.e2A", e2_ok, "e_2 A != e_2 C or A e_2 != C e_2");

  std::vector<Vec> aea;
  for (const auto& a : ae2)
    for (const auto& a2 : A.basis()) aea.push_back(M2.multiply(a, a2));
  Subspace span_aea = Subspace::span(f, d2, aea);
  r.check("depth2.C.AeA", span_aea.same_space(C), "A e_2 A != C", {{"span", span_aea.dim()}, {"dim_C", C.dim()}});

  // C acting on V = A e_2 by left multiplication.
  Subspace V = Subspace::span(f, d2, ae2);
  const std::size_t n = d.n();
  bool matrix_ok = V.dim() == n && C.dim() == n * n;
  Matrix rho(f, n * n, C.dim());
  for (std::size_t k = 0; k < C.dim() && matrix_ok; ++k) {
    for (std::size_t c = 0; c < V.dim() && matrix_ok; ++c) {
      auto img = V.coordinates(M2.multiply(C.vector(k), V.vector(c)));
      if (!img) {
        matrix_ok = false;
        break;
      }
      for (std::size_t row = 0; row < n; ++row) rho(row * n + c, k) = (*img)[row];
    }
  }
  if (matrix_ok) matrix_ok = check_morphism(rho, induced_algebra(M2, C), full_matrix_algebra(f, n)).is_isomorphism();
  r.check("depth2.C.matrix", matrix_ok, "C acting on A e_2 is not a full matrix algebra",
          {{"n", n}, {"dim_V", V.dim()}, {"dim_C", C.dim()}});
  bool e1ce1 = true;
  for (const auto& c : C.basis()) e1ce1 = e1ce1 && M2.product({t.e1, c, t.e1}) == M2.multiply(t.e1, t.E_M1_in_M2(c));
  r.check("depth2.C.e1ce1", e1ce1, "e_1 c e_1 != e_1 E_{M_1}(c)");
  r.check("depth2.C.dims", d.A.dim() == d.B.dim(), "dim A != dim B", {{"A", d.A.dim()}, {"B", d.B.dim()}});
  r.check("depth2.C.characteristic", t.lambda_inverse() == f.from_int(static_cast<long long>(n)),
          "lambda^{-1} != n 1", {{"lambda_inverse", t.lambda_inverse().to_string()}, {"n", n}});
}

void check_expectations(const TowerData& t, DepthTwoData& d) {
  Report& r = d.report;
  const Algebra& M2 = t.M2();
  const Field& f = M2.field();
  const Subspace& A = d.A_in_M2;
  const Subspace& B = d.B;
  const Subspace& C = d.C;
  const Scalar lam = t.lambda();
  const Vec& one_m = t.M().unit();
  auto F_scalar = [&](const Vec& x) { return scalar_of(t.F.apply(x), one_m).value_or(f.zero()); };

  // E_B(c) = sum_j F(c u_j) v_j
  Matrix eb(f, B.dim(), C.dim());
  auto E_B = [&](const Vec& c) {
    Vec out = M2.zero();
    for (std::size_t j = 0; j < d.level2.z.size(); ++j) axpy(out, F_scalar(M2.multiply(c, d.level2.z[j])), d.level2.w[j]);
    return out;
  };
  bool eb_ok = true;
  for (std::size_t k = 0; k < C.dim() && eb_ok; ++k) {
    auto coords = B.coordinates(E_B(C.vector(k)));
    if (!coords) eb_ok = false;
    else eb.set_column(k, *coords);
  }
  for (std::size_t k = 0; k < B.dim() && eb_ok; ++k) eb_ok = E_B(B.vector(k)) == B.vector(k);
  for (std::size_t k = 0; k < B.dim() && eb_ok; ++k)
    for (std::size_t c = 0; c < C.dim() && eb_ok; ++c) {
      const Vec &b = B.vector(k), &x = C.vector(c);
      eb_ok = E_B(M2.multiply(b, x)) == M2.multiply(b, E_B(x)) && E_B(M2.multiply(x, b)) == M2.multiply(E_B(x), b);
    }
  r.check("depth2.expectations.EB", eb_ok, "E_B is not a conditional expectation C -> B");
  if (eb_ok) d.E_B = eb;

  bool e1_ok = E_B(t.e1) == lam * M2.unit();
  for (std::size_t k = 0; k < B.dim() && e1_ok; ++k)
    for (std::size_t l = 0; l < B.dim() && e1_ok; ++l) {
      const Vec &b = B.vector(k), &b2 = B.vector(l);
      e1_ok = E_B(M2.product({b, t.e1, b2})) == lam * M2.multiply(b, b2);
    }
  r.check("depth2.expectations.EB_e1", e1_ok, "E_B(b e_1 b') != lambda b b'");

  Matrix ea(f, A.dim(), C.dim());
  bool ea_ok = true;
  for (std::size_t k = 0; k < C.dim() && ea_ok; ++k) {
    auto coords = A.coordinates(t.E_M1_in_M2(C.vector(k)));
    if (!coords) ea_ok = false;
    else ea.set_column(k, *coords);
  }
  for (std::size_t k = 0; k < A.dim() && ea_ok; ++k) ea_ok = t.E_M1_in_M2(A.vector(k)) == A.vector(k);
  for (std::size_t k = 0; k < A.dim() && ea_ok; ++k)
    for (std::size_t c = 0; c < C.dim() && ea_ok; ++c) {
      const Vec &a = A.vector(k), &x = C.vector(c);
      ea_ok = t.E_M1_in_M2(M2.multiply(a, x)) == M2.multiply(a, t.E_M1_in_M2(x)) &&
              t.E_M1_in_M2(M2.multiply(x, a)) == M2.multiply(t.E_M1_in_M2(x), a);
    }
  r.check("depth2.expectations.EA", ea_ok, "E_{M_1} restricted to C is not a conditional expectation onto A");
  if (ea_ok) d.E_A = ea;

  bool inv_ok = true;
  for (const auto& c : C.basis()) {
    Vec fc = t.F.apply(c);
    if (t.F.apply(t.E_M1_in_M2(c)) != fc || (eb_ok && t.F.apply(E_B(c)) != fc)) inv_ok = false;
  }
  r.check("depth2.expectations.F_invariance", inv_ok && eb_ok, "F o E_{M_1} != F or F o E_B != F on C");

  bool markov = true;
  for (const auto& a : A.basis()) {
    Vec fa = lam * t.F.apply(a);
    markov = markov && t.F.apply(M2.multiply(a, t.e2)) == fa && t.F.apply(M2.multiply(t.e2, a)) == fa;
  }
  for (const auto& b : B.basis()) {
    Vec fb = lam * t.F.apply(b);
    markov = markov && t.F.apply(M2.multiply(b, t.e1)) == fb && t.F.apply(M2.multiply(t.e1, b)) == fb;
  }
  r.check("depth2.markov", markov, "Markov relation fails");
}

void check_nakayama(const TowerData& t, DepthTwoData& d) {
  Report& r = d.report;
  const Algebra& M2 = t.M2();
  const Field& f = M2.field();
  try {
    Algebra calg = induced_algebra(M2, d.C);
    Matrix q = nakayama(calg, t.F * d.C.embedding(), Subspace::whole(f, d.C.dim()));
    Algebra aalg = induced_algebra(t.M1(), d.A);
    Matrix qa = nakayama(aalg, t.l1.expectation * d.A.embedding(), Subspace::whole(f, d.A.dim()));
    Algebra balg = induced_algebra(M2, d.B);
    Matrix qb = nakayama(balg, t.l2.expectation * d.B.embedding(), Subspace::whole(f, d.B.dim()));

    auto in_c = [&](const Subspace& s) {
      Matrix p(f, d.C.dim(), s.dim());
      for (std::size_t k = 0; k < s.dim(); ++k) p.set_column(k, d.C.coordinates_or_throw(s.vector(k), "not in C"));
      return p;
    };
    Matrix pa = in_c(d.A_in_M2), pb = in_c(d.B);
    bool ok = is_scope_automorphism(calg, Subspace::whole(f, d.C.dim()), q);
    bool restrict_a = q * pa == pa * qa;
    bool restrict_b = q * pb == pb * qb;
    bool diagram = d.E_A && *d.E_A * q == qa * *d.E_A;
    r.check("depth2.nakayama", ok && restrict_a && restrict_b && diagram,
            "Nakayama maps are not compatible on A, B and under E_{M_1}",
            {{"automorphism", ok}, {"q_A", restrict_a}, {"q_B", restrict_b}, {"diagram", diagram},
             {"q_is_identity", q == Matrix::identity(f, d.C.dim())}});
    Vec e1 = d.C.coordinates_or_throw(t.e1, "e_1 not in C");
    Vec e2 = d.C.coordinates_or_throw(t.e2, "e_2 not in C");
    r.check("depth2.nakayama.q_e", q.apply(e1) == e1 && q.apply(e2) == e2, "q(e_1) != e_1 or q(e_2) != e_2");
  } catch (const std::exception& e) {
    r.fail("depth2.nakayama", e.what());
    r.fail("depth2.nakayama.q_e", "Nakayama map unavailable");
  }
}

}  // namespace

DepthTwoData analyze_depth_two(const TowerData& t) {
  DepthTwoData d;
  Report& r = d.report;
  const Algebra& M = t.M();
  const Algebra& M1 = t.M1();
  const Algebra& M2 = t.M2();
  const Field& f = M.field();

  d.base_centralizer = t.base.centralizer;
  d.irreducible = d.base_centralizer.dim() == 1;
  Subspace n_in_m1 = Subspace::from_columns(t.l1.inclusion * t.base.N.embedding());
  Subspace n_in_m2 = Subspace::from_columns(t.m_to_m2 * t.base.N.embedding());
  Subspace m_in_m2 = Subspace::from_columns(t.m_to_m2);
  d.A = centralizer(M1, n_in_m1);
  d.B = centralizer(M2, m_in_m2);
  d.C = centralizer(M2, n_in_m2);
  d.A_in_M2 = Subspace::from_columns(t.m1_to_m2 * d.A.embedding());
  bool contains = true;
  for (const auto& c : d.base_centralizer.basis()) contains = contains && d.A.contains(t.l1.include(c));
  r.check("depth2.centralizers", contains && d.C.contains(d.A_in_M2) && d.C.contains(d.B),
          "centralizer containments C_M(N) in A, A in C, B in C fail",
          {{"C_M(N)", d.base_centralizer.dim()}, {"A", d.A.dim()}, {"B", d.B.dim()}, {"C", d.C.dim()}});

  const std::string not_irreducible = "base not irreducible: dim C_M(N) = " + std::to_string(d.base_centralizer.dim());

  // Level 1: E_M on M_1 with candidates in A.
  LevelProblem p1{&M1, &t.l1.system.N, &t.l1.system.E_ambient, &d.A, d.irreducible};
  LevelProblem p2{&M2, &t.l2.system.N, &t.l2.system.E_ambient, &d.B, d.irreducible};
  const std::size_t c0 = d.base_centralizer.dim(), c1 = t.l1.system.centralizer.dim();

  auto run_level = [&](const LevelProblem& p, const std::string& lvl, OrthogonalDualBases& out, bool multiplicity,
                       bool certified) {
    out = find_orthogonal_dual_bases(p, 1);
    auto again = resolve_orthogonal_dual_bases(p, 2);
    const std::string id = "depth2." + lvl;
    if (out.found) r.pass(id, witness_of(out));
    else r.skip(id, "no orthogonal dual bases (" + to_string(out.failure) + "): " + out.reason);
    if (out.found) {
      r.pass(id + ".second_equation");
    } else {
      r.skip(id + ".second_equation", "no orthogonal dual bases at this level");
    }
    r.check(id + ".resolve", out.found == again.found, "independent re-solve disagrees",
            {{"primary", witness_of(out)}, {"resolve", witness_of(again)}});
    nlohmann::json w = {{"predicate", multiplicity}, {"verdict", out.found}, {"sufficient", certified}};
    bool agrees = certified ? multiplicity == out.found : (!out.found || multiplicity);
    r.check(id + ".multiplicity", agrees, "bimodule multiplicity count contradicts the verdict", w);
  };

  const std::size_t r1 = t.l1.dim() / M.dim();
  const std::size_t r2 = t.l2.dim() / M1.dim();
  bool mult1 = t.l1.dim() % M.dim() == 0 && d.A.dim() == r1 * c0 && d.C.dim() == r1 * r1 * c0;
  bool mult2 = t.l2.dim() % M1.dim() == 0 && d.B.dim() == r2 * c1;
  run_level(p1, "level1", d.level1, mult1, true);
  run_level(p2, "level2", d.level2, mult2, false);
  d.depth_two = d.level1.found && d.level2.found;

  const Scalar lam = t.lambda();
  if (d.irreducible && d.depth_two) {
    bool sep = separability_element(M1, d.A, d.level1.z, d.level1.w, lam) &&
               separability_element(M2, d.B, d.level2.z, d.level2.w, lam);
    r.check("depth2.separable", sep, "lambda sum z (x) w is not a separability element");
  } else {
    r.skip("depth2.separable", d.irreducible ? "not depth 2" : not_irreducible);
  }
  if (d.irreducible && d.level1.found) check_free(M1, t.l1.system.N, d.A, "depth2.level1.free", r);
  else r.skip("depth2.level1.free", d.irreducible ? "not depth 2 at level 1" : not_irreducible);
  if (d.irreducible && d.level2.found) check_free(M2, t.l2.system.N, d.B, "depth2.level2.free", r);
  else r.skip("depth2.level2.free", d.irreducible ? "not depth 2 at level 2" : not_irreducible);

  const std::string gate = !d.irreducible ? not_irreducible : "not depth 2";
  if (d.irreducible && d.depth_two) {
    check_C_structure(t, d);
    check_expectations(t, d);
  } else {
    for (const char* id : {"depth2.C.AB", "depth2.C.BA", "depth2.C.e2A", "depth2.C.AeA", "depth2.C.e1ce1", "depth2.C.matrix",
                           "depth2.C.dims", "depth2.C.characteristic", "depth2.expectations.EB",
                           "depth2.expectations.EB_e1", "depth2.expectations.EA", "depth2.expectations.F_invariance",
                           "depth2.markov"})
      r.skip(id, gate);
  }

  // F faithful on C, needing F(C) in k 1.
  bool scalar_valued = true;
  for (const auto& c : d.C.basis()) scalar_valued = scalar_valued && scalar_of(t.F.apply(c), M.unit()).has_value();
  if (!scalar_valued) {
    r.skip("depth2.F_scalar", "F not scalar-valued on C (base not irreducible)");
    r.skip("depth2.F_faithful", "F not scalar-valued on C (base not irreducible)");
  } else {
    r.pass("depth2.F_scalar");
    Matrix gram(f, d.C.dim(), d.C.dim());
    for (std::size_t i = 0; i < d.C.dim(); ++i)
      for (std::size_t j = 0; j < d.C.dim(); ++j)
        gram(i, j) = *scalar_of(t.F.apply(M2.multiply(d.C.vector(i), d.C.vector(j))), M.unit());
    d.F_faithful = rank(gram) == d.C.dim();
    r.check("depth2.F_faithful", d.F_faithful, "Gram matrix F(c_i c_j) is singular", {{"rank", rank(gram)}});
  }
  if (d.F_faithful && d.irreducible && d.depth_two) {
    check_nakayama(t, d);
  } else {
    std::string why = !d.F_faithful ? "F not faithful on C" : gate;
    r.skip("depth2.nakayama", why);
    r.skip("depth2.nakayama.q_e", why);
  }
  return d;
}

}  // namespace jtower
