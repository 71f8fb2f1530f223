#include <doctest.h>

#include <array>

#include "jtower/frobenius.hpp"

using namespace jtower;

namespace {

Matrix mat(const Field& f, std::vector<std::vector<long long>> rows) {
  Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = f.from_int(rows[r][c]);
  return m;
}

Subspace scalars(const Algebra& a) { return Subspace::from_basis(a.field(), a.dim(), {a.unit()}); }

// Q(sqrt2) on 1, sqrt2 with E(a + b sqrt2) = a.
Algebra sqrt2(const Field& f) {
  return Algebra(f, 2, unit_vector(f, 2, 0),
                 {{0, 0, 0, f.one()}, {0, 1, 1, f.one()}, {1, 0, 1, f.one()}, {1, 1, 0, f.from_int(2)}});
}

// 2x2 matrix units, basis e11, e12, e21, e22.
Algebra matrix_units(const Field& f) {
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t d = 0; d < 2; ++d) sc.push_back({2 * a + b, 2 * b + d, 2 * a + d, f.one()});
  Vec unit = zero_vector(f, 4);
  unit[0] = unit[3] = f.one();
  return Algebra(f, 4, unit, sc);
}

using Perm = std::array<int, 3>;
// e, (123), (132), (12), (13), (23)
const std::vector<Perm> kS3 = {Perm{0, 1, 2}, Perm{1, 2, 0}, Perm{2, 0, 1},
                               Perm{1, 0, 2}, Perm{2, 1, 0}, Perm{0, 2, 1}};

Algebra s3(const Field& f) {
  auto index = [](const Perm& p) {
    for (std::size_t i = 0; i < kS3.size(); ++i)
      if (kS3[i] == p) return i;
    return std::size_t{0};
  };
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const Perm &a = kS3[i], &b = kS3[j];
      sc.push_back({i, j, index(Perm{a[b[0]], a[b[1]], a[b[2]]}), f.one()});
    }
  return Algebra(f, 6, unit_vector(f, 6, 0), sc);
}

// Q(sqrt2) (x) Q(i) on 1, s, i, s i.
Algebra biquadratic(const Field& f) {
  return Algebra::from_products(f, 4, unit_vector(f, 4, 0), [&](std::size_t x, std::size_t y) {
    std::size_t a = (x & 1) + (y & 1), b = (x >> 1) + (y >> 1);
    long long coef = 1;
    if (a == 2) {
      coef *= 2;
      a = 0;
    }
    if (b == 2) {
      coef *= -1;
      b = 0;
    }
    Vec v = zero_vector(f, 4);
    v[a + 2 * b] = f.from_int(coef);
    return v;
  });
}

}  // namespace

TEST_CASE("conditional expectation checks") {
  Field q = Field::rational();
  Algebra g = s3(q);
  Subspace a3 = Subspace::from_basis(q, 6, {g.basis(0), g.basis(1), g.basis(2)});
  Matrix restrict = mat(q, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
  CHECK(verify_conditional_expectation(g, a3, restrict).ok());

  Algebra s = sqrt2(q);
  Matrix e = mat(q, {{1, 0}});
  CHECK(verify_conditional_expectation(s, scalars(s), e).ok());

  Report zero = verify_conditional_expectation(s, scalars(s), Matrix(q, 1, 2));
  CHECK(zero.status("frobenius.conditional_expectation.normalized") == Status::fail);
  CHECK(zero.passed("frobenius.conditional_expectation.bimodule"));

  // Projection onto (12) coefficients is not A3-linear.
  Matrix bad = mat(q, {{1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
  CHECK(verify_conditional_expectation(g, a3, bad).status("frobenius.conditional_expectation.bimodule") ==
        Status::fail);
}

TEST_CASE("dual bases of the trivial extension and Q(sqrt2)") {
  Field q = Field::rational();
  Algebra k(q, 1, unit_vector(q, 1, 0), {{0, 0, 0, q.one()}});
  auto triv = solve_dual_bases(k, Subspace::whole(q, 1), Matrix::identity(q, 1));
  REQUIRE(triv);
  CHECK(triv->tensor == Matrix::identity(q, 1));

  Algebra s = sqrt2(q);
  auto sol = solve_dual_bases(s, scalars(s), mat(q, {{1, 0}}));
  REQUIRE(sol);
  CHECK(sol->unique_in_quotient);
  // t = 1 (x) 1 + sqrt2 (x) sqrt2/2
  Matrix expected(q, 2, 2);
  expected(0, 0) = q.one();
  expected(1, 1) = q.from_ratio(1, 2);
  CHECK(sol->tensor == expected);
  // Oracle: expand both equations on 1 and sqrt2 by hand.
  auto chk = check_dual_bases(s, ambient_expectation(scalars(s), mat(q, {{1, 0}})), tensor_to_pairs(expected));
  CHECK(chk.ok);
}

TEST_CASE("M2(F2) over F2 with E(a) = a11 + a12 + a21") {
  Field f2 = Field::prime(2);
  Algebra m = matrix_units(f2);
  Subspace k = scalars(m);
  Matrix e = mat(f2, {{1, 1, 1, 0}});  // a11 + a12 + a21
  CHECK(verify_conditional_expectation(m, k, e).ok());
  auto sys = make_system(m, k, e);
  // t = e11(x)e21 + e12(x)e11 + e12(x)e21 + e22(x)e12 + e22(x)e22 + e21(x)e22
  Matrix expected(f2, 4, 4);
  expected(0, 2) = expected(1, 0) = expected(1, 2) = expected(3, 1) = expected(3, 3) = expected(2, 3) = f2.one();
  CHECK(sys.tensor == expected);
  CHECK(sys.index == m.unit());
  CHECK(sys.index_kind == IndexKind::scalar);
  CHECK(sys.lambda_inverse->is_one());
  CHECK(sys.flags.normalized);
  CHECK(sys.flags.split);
  CHECK(sys.flags.separable);
  CHECK(sys.flags.strongly_separable);
  CHECK_FALSE(sys.flags.irreducible);
  CHECK(verify_frobenius_system(sys).ok());

  Matrix qmap = nakayama(sys);
  CHECK(is_scope_automorphism(m, sys.centralizer, qmap));
  // E(a) = tr(a u) with u = [[1,1],[1,0]], so q(c) = u^{-1} c u and u has order 3.
  CHECK(qmap * qmap != Matrix::identity(f2, 4));
  CHECK(qmap * qmap * qmap == Matrix::identity(f2, 4));
  Vec u = zero_vector(f2, 4);
  u[0] = u[1] = u[2] = f2.one();
  Vec u_inv = zero_vector(f2, 4);  // [[0,1],[1,1]]
  u_inv[1] = u_inv[2] = u_inv[3] = f2.one();
  CHECK(m.multiply(u, u_inv) == m.unit());
  for (std::size_t i = 0; i < 4; ++i) {
    Vec bi = m.basis(i);
    CHECK(qmap.column(i) == m.product({u_inv, bi, u}));
  }
}

TEST_CASE("classification of S3 over A3 and the trivial extension") {
  Field q = Field::rational();
  Algebra g = s3(q);
  Subspace a3 = Subspace::from_basis(q, 6, {g.basis(0), g.basis(1), g.basis(2)});
  Matrix restrict = mat(q, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
  auto sys = make_system(g, a3, restrict);
  REQUIRE(sys.lambda_inverse);
  CHECK(*sys.lambda_inverse == q.from_int(2));
  CHECK(sys.flags.split);
  CHECK(sys.flags.separable);
  CHECK(sys.flags.strongly_separable);
  CHECK_FALSE(sys.flags.irreducible);
  CHECK(sys.centralizer.dim() == 4);
  CHECK(verify_frobenius_system(sys).ok());

  Algebra k(q, 1, unit_vector(q, 1, 0), {{0, 0, 0, q.one()}});
  auto triv = make_system(k, Subspace::whole(q, 1), Matrix::identity(q, 1));
  CHECK(triv.flags.split);
  CHECK(triv.flags.separable);
  CHECK(triv.flags.strongly_separable);
  CHECK(triv.flags.irreducible);
  CHECK(triv.flags.normalized);
  CHECK(triv.lambda_inverse->is_one());
}

TEST_CASE("a non-Frobenius map is rejected") {
  Field q = Field::rational();
  Algebra s = sqrt2(q);
  CHECK_FALSE(solve_dual_bases(s, scalars(s), Matrix(q, 1, 2)).has_value());
  CHECK_THROWS_AS(make_system(s, scalars(s), Matrix(q, 1, 2)), FrobeniusError);
  Matrix wrong = Matrix::identity(q, 2);
  CHECK_THROWS_AS(make_system(s, scalars(s), mat(q, {{1, 0}}), wrong), FrobeniusError);
}

TEST_CASE("normalize") {
  Field q = Field::rational();
  Algebra s = sqrt2(q);
  auto sys = make_system(s, scalars(s), mat(q, {{2, 0}}));
  CHECK_FALSE(sys.flags.normalized);
  auto norm = normalize(sys);
  CHECK(norm.flags.normalized);
  CHECK(verify_frobenius_system(norm).ok());
  // index scales by mu = 2: recompute sum (mu x_i) y_i directly
  Vec recomputed = s.zero();
  for (const auto& [x, y] : sys.pairs) recomputed = recomputed + s.multiply(q.from_int(2) * x, y);
  CHECK(norm.index == recomputed);
  CHECK(*norm.lambda_inverse == q.from_int(2) * *sys.lambda_inverse);

  auto already = make_system(s, scalars(s), mat(q, {{1, 0}}));
  CHECK(normalize(already).E == already.E);

  // E(1) = 0 but E(sqrt2) = 1 is still Frobenius.
  auto degenerate = make_system(s, scalars(s), mat(q, {{0, 1}}));
  CHECK_THROWS_AS(normalize(degenerate), FrobeniusError);
}

TEST_CASE("Nakayama automorphisms") {
  Field q = Field::rational();
  Algebra s = sqrt2(q);
  auto comm = make_system(s, scalars(s), mat(q, {{1, 0}}));
  CHECK(nakayama(comm) == Matrix::identity(q, 2));

  // E(a) = tr(a u), u = diag(1, 2): q(c) = u^{-1} c u.
  Algebra m = matrix_units(q);
  auto sys = make_system(m, scalars(m), mat(q, {{1, 0, 0, 2}}));
  Matrix qmap = nakayama(sys);
  CHECK(is_scope_automorphism(m, sys.centralizer, qmap));
  Vec u = zero_vector(q, 4), u_inv = zero_vector(q, 4);
  u[0] = q.one();
  u[3] = q.from_int(2);
  u_inv[0] = q.one();
  u_inv[3] = q.from_ratio(1, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    Vec bi = m.basis(i);
    Vec expected = m.product({u_inv, bi, u});
    CHECK(sys.centralizer.combine(qmap.apply(*sys.centralizer.coordinates(m.basis(i)))) == expected);
  }
}

TEST_CASE("composition of Frobenius systems") {
  Field q = Field::rational();
  Algebra k(q, 1, unit_vector(q, 1, 0), {{0, 0, 0, q.one()}});
  auto triv = make_system(k, Subspace::whole(q, 1), Matrix::identity(q, 1));
  auto tt = compose(triv, triv);
  CHECK(tt.report.ok());
  CHECK(tt.system.lambda_inverse->is_one());

  Algebra s = sqrt2(q);
  auto ext3 = make_system(s, scalars(s), mat(q, {{1, 0}}));
  auto whole = make_system(s, Subspace::whole(q, 2), Matrix::identity(q, 2));
  auto same = compose(ext3, make_system(k, Subspace::whole(q, 1), Matrix::identity(q, 1)));
  CHECK(same.system.E == ext3.E);
  CHECK(compose(whole, ext3).system.index == ext3.index);

  Algebra r = biquadratic(q);
  Subspace mid = Subspace::from_basis(q, 4, {r.basis(0), r.basis(1)});
  Matrix e_rm = mat(q, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  Vec i = r.basis(2);
  auto outer = make_system_from_pairs(r, mid, e_rm, {{r.unit(), r.unit()}, {i, q.from_int(-1) * i}});
  CHECK(*outer.lambda_inverse == q.from_int(2));
  auto comp = compose(outer, ext3);
  CHECK(comp.report.passed("frobenius.compose.lagrange"));
  CHECK(*comp.system.lambda_inverse == q.from_int(4));
  // Oracle: sum (z x)(y w) over the product bases
  Vec idx = r.zero();
  for (const auto& [z, w] : outer.pairs)
    for (const auto& [x, y] : ext3.pairs)
    {
      Vec mx = mid.combine(x), my = mid.combine(y);
      idx = idx + r.product({z, mx, my, w});
    }
  CHECK(idx == q.from_int(4) * r.unit());
  CHECK(verify_frobenius_system(comp.system).ok());
}

TEST_CASE("separability elements of simple extensions") {
  Field q = Field::rational();
  auto e = separability_element_field(q, {q.from_int(2), q.zero()});  // x^2 - 2
  Matrix expected(q, 2, 2);
  expected(0, 0) = q.from_ratio(1, 2);
  expected(1, 1) = q.from_ratio(1, 4);
  CHECK(e.tensor == expected);
  CHECK(e.multiplies_to_one);
  CHECK(e.commutes);

  auto lin = separability_element_field(q, {q.from_int(5)});  // x - 5
  CHECK(lin.tensor == Matrix::identity(q, 1));
  auto lin0 = separability_element_field(q, {q.zero()});  // x
  CHECK(lin0.tensor == Matrix::identity(q, 1));

  Field f7 = Field::prime(7);
  auto cubic = separability_element_field(f7, {f7.from_int(2), f7.zero(), f7.zero()});  // x^3 - 2
  CHECK(cubic.multiplies_to_one);
  CHECK(cubic.commutes);
  auto etale = separability_element_field(f7, {f7.one(), f7.one(), f7.zero()});  // x^3 - x - 1
  CHECK(etale.multiplies_to_one);
  CHECK(etale.commutes);
  // x^2 - x over Q has a = 0 as a root, exercising the non-invertible-a path
  auto split = separability_element_field(q, {q.zero(), q.one()});
  CHECK(split.multiplies_to_one);
  CHECK(split.commutes);

  Field f2 = Field::prime(2);
  CHECK_THROWS_AS(separability_element_field(f2, {f2.one(), f2.zero()}), FrobeniusError);  // (x+1)^2
  CHECK_THROWS_AS(separability_element_field(q, {}), std::invalid_argument);
}
