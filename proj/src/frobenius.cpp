#include "jtower/frobenius.hpp"

namespace jtower {

std::string to_string(IndexKind k) {
  switch (k) {
    case IndexKind::scalar:
      return "scalar";
    case IndexKind::non_scalar:
      return "index non-scalar";
    case IndexKind::zero:
      return "index zero";
  }
  return "unknown";
}

Scalar FrobeniusSystem::lambda() const {
  if (!lambda_inverse || lambda_inverse->is_zero())
    throw FrobeniusError("index is not a nonzero scalar multiple of 1 (" + to_string(index_kind) + ")");
  return lambda_inverse->inverse();
}

namespace {

// s with v = s * unit, if any.
std::optional<Scalar> scalar_multiple(const Vec& v, const Vec& unit) {
  std::size_t k = 0;
  while (k < unit.size() && unit[k].is_zero()) ++k;
  if (k == unit.size()) return std::nullopt;
  Scalar s = v[k] / unit[k];
  if (s * unit != v) return std::nullopt;
  return s;
}

bool solvable(const Matrix& a, const Vec& b) { return solve(a, b).has_value(); }

}  // namespace

Report validate_extension(const Algebra& M, const Subspace& N) {
  Report r;
  auto alg = verify_algebra(M);
  nlohmann::json w = nullptr;
  if (!alg.ok) w = {{"basis", alg.witness}, {"lhs", to_json(alg.lhs)}, {"rhs", to_json(alg.rhs)}};
  r.check("input.algebra", alg.ok, alg.failure + " fails on a basis triple", w);
  bool sub = N.ambient_dim() == M.dim() && is_unital_subalgebra(M, N);
  r.check("input.subalgebra", sub, "N is not a unital subalgebra of M");
  return r;
}

Matrix ambient_expectation(const Subspace& N, const Matrix& E) { return N.embedding() * E; }

Report verify_conditional_expectation(const Algebra& M, const Subspace& N, const Matrix& E, const std::string& prefix,
                                      bool require_unit) {
  Report r;
  if (E.rows() != N.dim() || E.cols() != M.dim()) {
    r.fail(prefix + ".bimodule", "E has shape " + std::to_string(E.rows()) + "x" + std::to_string(E.cols()) +
                                     ", expected " + std::to_string(N.dim()) + "x" + std::to_string(M.dim()));
    return r;
  }
  Matrix amb = ambient_expectation(N, E);
  bool ok = true;
  nlohmann::json witness;
  for (std::size_t a = 0; a < N.dim() && ok; ++a) {
    const Vec& n = N.vector(a);
    for (std::size_t i = 0; i < M.dim() && ok; ++i) {
      Vec m = M.basis(i);
      Vec em = amb.apply(m);
      if (amb.apply(M.multiply(n, m)) != M.multiply(n, em)) {
        ok = false;
        witness = {{"side", "left"}, {"n", a}, {"m", i}};
      } else if (amb.apply(M.multiply(m, n)) != M.multiply(em, n)) {
        ok = false;
        witness = {{"side", "right"}, {"n", a}, {"m", i}};
      }
    }
  }
  r.check(prefix + ".bimodule", ok, "E is not an N-bimodule map", witness);
  if (require_unit) {
    Vec e1 = amb.apply(M.unit());
    r.check(prefix + ".normalized", e1 == M.unit(), "E(1) != 1", {{"E(1)", to_json(e1)}});
  }
  return r;
}

Matrix pairs_to_tensor(const Field& f, std::size_t dim, const Pairs& pairs) {
  Matrix t(f, dim, dim);
  for (const auto& [x, y] : pairs)
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!y[j].is_zero()) t(i, j).addmul(x[i], y[j]);
    }
  return t;
}

Pairs tensor_to_pairs(const Matrix& tensor) {
  Pairs out;
  for (std::size_t i = 0; i < tensor.rows(); ++i) {
    Vec y = tensor.row(i);
    if (is_zero(y)) continue;
    out.emplace_back(unit_vector(tensor.field(), tensor.rows(), i), std::move(y));
  }
  return out;
}

std::optional<DualBasesSolution> solve_dual_bases(const Algebra& M, const Subspace& N, const Matrix& E) {
  const std::size_t n = M.dim();
  const Field& f = M.field();
  Matrix amb = ambient_expectation(N, E);
  Matrix sys(f, 2 * n * n, n * n);
  Vec rhs = zero_vector(f, 2 * n * n);
  for (std::size_t a = 0; a < n; ++a) {
    Vec m = M.basis(a);
    rhs[a * n + a] = f.one();
    rhs[n * n + a * n + a] = f.one();
    for (std::size_t i = 0; i < n; ++i) {
      Vec left = amb.apply(M.multiply(m, M.basis(i)));   // E(m e_i)
      Vec right = amb.apply(M.multiply(M.basis(i), m));  // E(e_i m)
      for (std::size_t j = 0; j < n; ++j) {
        // sum T_ij E(m e_i) e_j   and   sum T_ji e_j E(e_i m)
        Vec l = M.multiply(left, M.basis(j));
        Vec r = M.multiply(M.basis(j), right);
        for (std::size_t k = 0; k < n; ++k) {
          if (!l[k].is_zero()) sys(a * n + k, i * n + j) += l[k];
          if (!r[k].is_zero()) sys(n * n + a * n + k, j * n + i) += r[k];
        }
      }
    }
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  auto quotient = TensorQuotient::over_subalgebra(M, N);
  DualBasesSolution out;
  out.kernel_dim = sol->kernel.size();
  out.unique_in_quotient = true;
  for (const auto& k : sol->kernel)
    if (!is_zero(quotient.project(k))) out.unique_in_quotient = false;
  Vec flat = quotient.section(quotient.project(sol->particular));
  out.tensor = Matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.tensor(i, j) = flat[i * n + j];
  return out;
}

DualBasisCheck check_dual_bases(const Algebra& X, const Matrix& expectation, const Pairs& pairs) {
  DualBasisCheck out;
  for (std::size_t a = 0; a < X.dim(); ++a) {
    Vec m = X.basis(a);
    Vec left = X.zero(), right = X.zero();
    for (const auto& [x, y] : pairs) {
      left = left + X.multiply(expectation.apply(X.multiply(m, x)), y);
      right = right + X.multiply(x, expectation.apply(X.multiply(y, m)));
    }
    if (left != m) return {false, "left", a, left, m};
    if (right != m) return {false, "right", a, right, m};
  }
  return out;
}

Flags classify(const FrobeniusSystem& sys) {
  Flags fl;
  const Algebra& M = sys.M;
  const Subspace& C = sys.centralizer;
  Vec one_n = sys.N.coordinates_or_throw(M.unit(), "classify: 1 not in N");
  Matrix e_on_c(M.field(), sys.N.dim(), C.dim());
  Matrix sep_on_c(M.field(), M.dim(), C.dim());
  for (std::size_t k = 0; k < C.dim(); ++k) {
    const Vec& d = C.vector(k);
    e_on_c.set_column(k, sys.E.apply(d));
    Vec s = M.zero();
    for (const auto& [x, y] : sys.pairs) s = s + M.product({x, d, y});
    sep_on_c.set_column(k, s);
  }
  fl.split = solvable(e_on_c, one_n);
  fl.separable = solvable(sep_on_c, M.unit());
  Vec e1 = sys.E.apply(M.unit());
  fl.normalized = e1 == one_n;
  fl.strongly_separable = !is_zero(e1) && sys.index_kind == IndexKind::scalar;
  fl.irreducible = C.dim() == 1;
  return fl;
}

namespace {

FrobeniusSystem finish(Algebra M, Subspace N, Matrix E, Matrix tensor, Pairs pairs) {
  FrobeniusSystem s;
  s.E_ambient = ambient_expectation(N, E);
  s.index = M.zero();
  for (const auto& [x, y] : pairs) s.index = s.index + M.multiply(x, y);
  auto mult = scalar_multiple(s.index, M.unit());
  if (!mult)
    s.index_kind = IndexKind::non_scalar;
  else if (mult->is_zero())
    s.index_kind = IndexKind::zero;
  else
    s.index_kind = IndexKind::scalar;
  if (mult) s.lambda_inverse = *mult;
  s.centralizer = centralizer(M, N);
  s.M = std::move(M);
  s.N = std::move(N);
  s.E = std::move(E);
  s.tensor = std::move(tensor);
  s.pairs = std::move(pairs);
  s.flags = classify(s);
  return s;
}

void require_shape(const Algebra& M, const Subspace& N, const Matrix& E) {
  if (N.ambient_dim() != M.dim() || E.rows() != N.dim() || E.cols() != M.dim())
    throw std::invalid_argument("Frobenius system: E must be dim N x dim M");
}

}  // namespace

FrobeniusSystem make_system(Algebra M, Subspace N, Matrix E, std::optional<Matrix> tensor) {
  require_shape(M, N, E);
  Matrix t;
  if (tensor) {
    if (tensor->rows() != M.dim() || tensor->cols() != M.dim())
      throw std::invalid_argument("dual-bases tensor must be dim M x dim M");
    t = *tensor;
    auto chk = check_dual_bases(M, ambient_expectation(N, E), tensor_to_pairs(t));
    if (!chk.ok)
      throw FrobeniusError("supplied dual bases fail the " + chk.equation + " equation at basis element " +
                           std::to_string(chk.witness));
  } else {
    auto sol = solve_dual_bases(M, N, E);
    if (!sol) throw FrobeniusError("no dual bases exist: E is not a Frobenius homomorphism");
    t = sol->tensor;
  }
  Pairs pairs = tensor_to_pairs(t);
  return finish(std::move(M), std::move(N), std::move(E), std::move(t), std::move(pairs));
}

FrobeniusSystem make_system_from_pairs(Algebra M, Subspace N, Matrix E, Pairs pairs) {
  require_shape(M, N, E);
  auto chk = check_dual_bases(M, ambient_expectation(N, E), pairs);
  if (!chk.ok)
    throw FrobeniusError("dual bases fail the " + chk.equation + " equation at basis element " +
                         std::to_string(chk.witness));
  Matrix t = pairs_to_tensor(M.field(), M.dim(), pairs);
  return finish(std::move(M), std::move(N), std::move(E), std::move(t), std::move(pairs));
}

Report verify_frobenius_system(const FrobeniusSystem& sys, const std::string& prefix) {
  Report r = verify_conditional_expectation(sys.M, sys.N, sys.E, prefix + ".conditional_expectation", false);
  const Algebra& M = sys.M;
  auto chk = check_dual_bases(M, sys.E_ambient, sys.pairs);
  nlohmann::json w = nullptr;
  if (!chk.ok) w = {{"equation", chk.equation}, {"m", chk.witness}, {"lhs", to_json(chk.lhs)}, {"rhs", to_json(chk.rhs)}};
  r.check(prefix + ".dual_bases", chk.ok, "dual-basis equation fails", w);

  bool central = true;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < M.dim() && central; ++i)
    if (M.multiply(sys.index, M.basis(i)) != M.multiply(M.basis(i), sys.index)) {
      central = false;
      bad = i;
    }
  r.check(prefix + ".index", central, "index is not central", {{"basis", bad}});

  Vec e1 = sys.expect(M.unit());
  bool commutes = true;
  for (const auto& n : sys.N.basis())
    if (M.multiply(e1, n) != M.multiply(n, e1)) commutes = false;
  r.check(prefix + ".e1_commutes", commutes, "E(1) does not commute with N");
  return r;
}

FrobeniusSystem normalize(const FrobeniusSystem& sys) {
  Vec e1 = sys.expect(sys.M.unit());
  auto mu = scalar_multiple(e1, sys.M.unit());
  if (!mu) throw FrobeniusError("normalize: E(1) is not a scalar multiple of 1");
  if (mu->is_zero()) throw FrobeniusError("normalize: E(1) = 0");
  if (mu->is_one()) return sys;
  Scalar inv = mu->inverse();
  Pairs pairs;
  for (const auto& [x, y] : sys.pairs) pairs.emplace_back(*mu * x, y);
  return make_system_from_pairs(sys.M, sys.N, inv * sys.E, std::move(pairs));
}

Matrix nakayama(const Algebra& X, const Matrix& phi, const Subspace& scope) {
  const Field& f = X.field();
  const std::size_t s = scope.dim(), rows = phi.rows();
  Matrix a(f, X.dim() * rows, s);
  Matrix b(f, X.dim() * rows, s);
  for (std::size_t i = 0; i < X.dim(); ++i) {
    Vec m = X.basis(i);
    for (std::size_t k = 0; k < s; ++k) {
      Vec lhs = phi.apply(X.multiply(scope.vector(k), m));  // phi(c_k m)
      Vec rhs = phi.apply(X.multiply(m, scope.vector(k)));  // phi(m c_k)
      for (std::size_t r = 0; r < rows; ++r) {
        a(i * rows + r, k) = lhs[r];
        b(i * rows + r, k) = rhs[r];
      }
    }
  }
  if (rank(a) != s) throw FrobeniusError("Nakayama map is not unique: the pairing does not separate the scope");
  auto q = solve_columns(a, b);
  if (!q || a * *q != b) throw FrobeniusError("no Nakayama map exists on the given scope");
  return *q;
}

Matrix nakayama(const FrobeniusSystem& sys) { return nakayama(sys.M, sys.E_ambient, sys.centralizer); }

bool is_scope_automorphism(const Algebra& X, const Subspace& scope, const Matrix& q) {
  if (!invert(q)) return false;
  auto unit = scope.coordinates(X.unit());
  if (!unit || q.apply(*unit) != *unit) return false;
  std::vector<Vec> images;
  for (std::size_t k = 0; k < scope.dim(); ++k) images.push_back(scope.combine(q.column(k)));
  for (std::size_t k = 0; k < scope.dim(); ++k)
    for (std::size_t l = 0; l < scope.dim(); ++l) {
      auto prod = scope.coordinates(X.multiply(scope.vector(k), scope.vector(l)));
      if (!prod) return false;
      if (scope.combine(q.apply(*prod)) != X.multiply(images[k], images[l])) return false;
    }
  return true;
}

Composite compose(const FrobeniusSystem& outer, const FrobeniusSystem& inner) {
  const Algebra& R = outer.M;
  Matrix j = outer.N.embedding();
  if (j.cols() != inner.M.dim() || !check_morphism(j, inner.M, R).is_homomorphism())
    throw std::invalid_argument("compose: inner algebra does not match the outer subalgebra basis");
  Subspace n = Subspace::from_columns(j * inner.N.embedding());
  Matrix e = inner.E * outer.E;
  Pairs pairs;
  for (const auto& [z, w] : outer.pairs)
    for (const auto& [x, y] : inner.pairs) pairs.emplace_back(R.multiply(z, j.apply(x)), R.multiply(j.apply(y), w));

  Composite out{make_system_from_pairs(R, std::move(n), std::move(e), std::move(pairs)), Report{}};
  out.report.pass("frobenius.compose", {{"pairs", out.system.pairs.size()}});
  if (outer.lambda_inverse && inner.lambda_inverse && out.system.lambda_inverse) {
    Scalar expected = *outer.lambda_inverse * *inner.lambda_inverse;
    out.report.check("frobenius.compose.lagrange", *out.system.lambda_inverse == expected,
                     "index of the composite differs from the product of indices",
                     {{"composite", out.system.lambda_inverse->to_string()}, {"product", expected.to_string()}});
  } else {
    out.report.skip("frobenius.compose.lagrange", "an index is not a scalar multiple of 1");
  }
  return out;
}

SeparabilityElement separability_element_field(const Field& f, const std::vector<Scalar>& c) {
  const std::size_t n = c.size();
  if (n == 0) throw std::invalid_argument("separability element: polynomial of degree 0");
  // Powers a^0 .. a^{2n-2} reduced modulo p.
  std::vector<Vec> pow;
  for (std::size_t k = 0; k < 2 * n - 1; ++k) {
    if (k < n) {
      pow.push_back(unit_vector(f, n, k));
      continue;
    }
    const Vec& prev = pow.back();
    Vec next = zero_vector(f, n);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] += prev[i];
    for (std::size_t i = 0; i < n; ++i) next[i].addmul(prev[n - 1], c[i]);
    pow.push_back(std::move(next));
  }
  Algebra ext = Algebra::from_products(f, n, unit_vector(f, n, 0),
                                       [&](std::size_t i, std::size_t j) { return pow[i + j]; });

  Vec dp = zero_vector(f, n);  // p'(a)
  dp[n - 1] += f.from_int(static_cast<long long>(n));
  for (std::size_t i = 1; i < n; ++i) dp[i - 1] -= f.from_int(static_cast<long long>(i)) * c[i];
  auto dp_inv = solve(ext.left_multiplication(dp), ext.unit());
  if (!dp_inv) throw FrobeniusError("p'(a) is not invertible: the polynomial is inseparable");
  const Vec& dpi = dp_inv->particular;

  Matrix t(f, n, n);
  if (!c[0].is_zero()) {
    // a^{-1} = (a^{n-1} - sum_{i>=1} c_i a^{i-1}) / c_0
    Vec a_inv = pow[n - 1];
    for (std::size_t i = 1; i < n; ++i) a_inv[i - 1] -= c[i];
    a_inv = c[0].inverse() * a_inv;
    Vec partial = zero_vector(f, n);                     // sum_{j<=i} c_j a^j
    Vec inv_pow = ext.multiply(dpi, a_inv);              // p'(a)^{-1} a^{-(i+1)}
    for (std::size_t i = 0; i < n; ++i) {
      axpy(partial, c[i], pow[i]);
      t.set_row(i, ext.multiply(partial, inv_pow));
      inv_pow = ext.multiply(inv_pow, a_inv);
    }
  } else {
    // p(x) = (x - a) sum b_i x^i; e = sum a^i (x) b_i p'(a)^{-1}
    Vec b = ext.unit();
    for (std::size_t i = n; i-- > 0;) {
      t.set_row(i, ext.multiply(b, dpi));
      if (i > 0) {
        b = ext.multiply(pow[1], b);
        b[0] -= c[i];
      }
    }
  }

  SeparabilityElement out{ext, t};
  Vec mu = zero_vector(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!t(i, j).is_zero()) axpy(mu, t(i, j), pow[i + j]);
  out.multiplies_to_one = mu == ext.unit();
  out.commutes = true;
  for (std::size_t m = 0; m < n && out.commutes; ++m) {
    Vec left = zero_vector(f, n * n), right = zero_vector(f, n * n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec y = t.row(i);
      left = left + tensor_flat(ext.multiply(ext.basis(m), ext.basis(i)), y);
      right = right + tensor_flat(ext.basis(i), ext.multiply(y, ext.basis(m)));
    }
    out.commutes = left == right;
  }
  return out;
}

}  // namespace jtower
