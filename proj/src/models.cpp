#include "jtower/models.hpp"

namespace jtower {

GroupHopf group_hopf(const Group& g, const Field& f) {
  const std::size_t n = g.order();
  if (f.characteristic() != 0 && n % f.characteristic() == 0)
    throw ModelError("characteristic " + std::to_string(f.characteristic()) + " divides |G| = " + std::to_string(n));
  GroupHopf h;
  h.group = g;

  h.kG.algebra = group_algebra(f, g);
  h.kG.delta = Matrix(f, n * n, n);
  h.kG.epsilon = Vec(n, f.one());
  h.kG.S = Matrix(f, n, n);
  for (std::size_t x = 0; x < n; ++x) {
    h.kG.delta(x * n + x, x) = f.one();
    (*h.kG.S)(g.inverse[x], x) = f.one();
  }

  h.kG_dual.algebra = function_algebra(f, g);
  h.kG_dual.delta = Matrix(f, n * n, n);
  h.kG_dual.epsilon = zero_vector(f, n);
  h.kG_dual.epsilon[g.identity] = f.one();
  h.kG_dual.S = Matrix(f, n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) h.kG_dual.delta(y * n + z, g.mul(y, z)) = f.one();
  for (std::size_t x = 0; x < n; ++x) (*h.kG_dual.S)(g.inverse[x], x) = f.one();

  const Scalar order = f.from_int(static_cast<long long>(n));
  h.t = Vec(n, order.inverse());
  h.f = zero_vector(f, n);
  h.f[g.identity] = order;

  h.report.append(verify_hopf_axioms(h.kG, "models.group.kG"));
  h.report.append(verify_hopf_axioms(h.kG_dual, "models.group.dual"));
  Scalar f_t = dot(h.f, h.t);
  Scalar f_st = dot(h.f, h.kG.S->apply(h.t));
  Scalar eps_t = h.kG.counit(h.t);
  Scalar f_one = dot(h.f, h.kG.algebra.unit());
  bool ok = f_t == f.one() && f_st == f.one() && eps_t == f.one() && !f_one.is_zero();
  h.report.check("models.group", ok, "integral normalization fails",
                 {{"f(t)", f_t.to_string()}, {"f(S(t))", f_st.to_string()}, {"epsilon(t)", eps_t.to_string()},
                  {"f(1)", f_one.to_string()}});
  return h;
}

ModuleAlgebraAction conjugation_action(const GroupHopf& h, const Scalar& d) {
  if (h.group.order() != 2) throw ModelError("conjugation action needs |G| = 2");
  const Field& f = h.kG.algebra.field();
  ModuleAlgebraAction a{h.kG, quadratic_algebra(f, d), {}};
  for (std::size_t x = 0; x < 2; ++x) {
    Matrix m = Matrix::identity(f, 2);
    if (x != h.group.identity) m(1, 1) = -f.one();
    a.act.push_back(std::move(m));
  }
  return a;
}

ModuleAlgebraAction translation_action(const GroupHopf& h) {
  const Group& g = h.group;
  const std::size_t n = g.order();
  const Field& f = h.kG.algebra.field();
  ModuleAlgebraAction a{h.kG, function_algebra(f, g), {}};
  for (std::size_t x = 0; x < n; ++x) {
    Matrix m(f, n, n);
    for (std::size_t y = 0; y < n; ++y) m(g.mul(y, g.inverse[x]), y) = f.one();
    a.act.push_back(std::move(m));
  }
  return a;
}

ModelBundle galois_frobenius_system(const GroupHopf& h, const ModuleAlgebraAction& act,
                                    const std::optional<Subspace>& expected_N) {
  ModelBundle b;
  b.hopf = h;
  b.action = act;
  b.report.append(h.report);
  b.report.append(verify_module_algebra(act));
  const Algebra& X = act.X;
  const Field& f = X.field();

  b.N = invariants(act);
  if (expected_N) {
    bool same = b.N.same_space(*expected_N);
    b.report.check("models.invariants", same, "invariants differ from the expected subalgebra",
                   {{"dim_invariants", b.N.dim()}, {"dim_expected", expected_N->dim()}});
    if (!same)
      throw ModelError("invariants of dimension " + std::to_string(b.N.dim()) +
                       " differ from the expected subalgebra of dimension " + std::to_string(expected_N->dim()));
  }

  Matrix E(f, b.N.dim(), X.dim());
  for (std::size_t x = 0; x < X.dim(); ++x)
    E.set_column(x, b.N.coordinates_or_throw(act.apply(h.t, X.basis(x)), "t |> x is not invariant"));
  b.report.append(verify_conditional_expectation(X, b.N, E, "models.galois_system"));
  auto dual = solve_dual_bases(X, b.N, E);
  if (!dual) throw ModelError("no dual bases for E = t |> (-): X is not Galois over its invariants");
  b.system = make_system(X, b.N, E, dual->tensor);

  Scalar f_one = dot(h.f, h.kG.algebra.unit());
  Vec sum = X.zero();
  for (const auto& [x, y] : b.system.pairs) sum = sum + X.multiply(x, y);
  b.report.check("models.galois_system.index", sum == f_one * X.unit(), "sum x_i y_i != f(1) 1",
                 {{"f(1)", f_one.to_string()}, {"index", to_json(sum)}});

  b.smash = smash_product(act);
  b.report.append(verify_smash_product(b.smash));
  b.report.append(psi_map(b.smash, act, b.N, PsiInverseData{b.system.pairs, h.t}));
  return b;
}

}  // namespace jtower
