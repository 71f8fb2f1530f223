#include <doctest.h>

#include "jtower/examples.hpp"
#include "jtower/hopf.hpp"

using namespace jtower;

namespace {

void require_all_pass(const Report& r) {
  for (const auto& c : r.results()) {
    INFO(c.id << ": " << c.reason);
    CHECK(c.status == Status::pass);
  }
}

TowerData tower_for(const std::string& name) {
  auto ex = generate_example(name);
  return build_tower(make_system(ex.ext.M, ex.ext.N, *ex.ext.E, ex.ext.dual_bases));
}

// Closed forms for the function algebra k^G: Delta(d_x) = sum_{yz = x} d_y (x) d_z.
void check_function_algebra_closed_form(const HopfStructure& h, const Group& g) {
  const std::size_t n = g.order();
  const Field& f = h.algebra.field();
  for (std::size_t x = 0; x < n; ++x) {
    Vec expected = zero_vector(f, n * n);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (g.mul(y, z) == x) expected[y * n + z] = f.one();
    CHECK(h.delta.column(x) == expected);
    CHECK(h.epsilon[x] == (x == g.identity ? f.one() : f.zero()));
    REQUIRE(h.S);
    CHECK(h.S->column(x) == unit_vector(f, n, g.inverse[x]));
  }
}

void check_group_algebra_closed_form(const HopfStructure& h, const Group& g) {
  const std::size_t n = g.order();
  const Field& f = h.algebra.field();
  for (std::size_t x = 0; x < n; ++x) {
    CHECK(h.delta.column(x) == tensor_flat(unit_vector(f, n, x), unit_vector(f, n, x)));
    CHECK(h.epsilon[x] == f.one());
    REQUIRE(h.S);
    CHECK(h.S->column(x) == unit_vector(f, n, g.inverse[x]));
  }
}

}  // namespace

TEST_CASE("abstract pairing of k[G] and k^G reproduces the group closed forms") {
  for (const Field& f : {Field::rational(), Field::prime(7)}) {
    for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group3()}) {
      INFO(f.describe() << " |G| = " << g.order());
      Algebra kg = group_algebra(f, g), fun = function_algebra(f, g);
      Matrix eval = Matrix::identity(f, g.order());
      auto b = bialgebra_from_abstract_pairing(kg, fun, eval);
      require_all_pass(b.report);
      check_function_algebra_closed_form(b, g);
      auto a = bialgebra_from_abstract_pairing(fun, kg, eval);
      require_all_pass(a.report);
      check_group_algebra_closed_form(a, g);
    }
  }
}

TEST_CASE("dual of k^{Z/2} is k[Z/2]") {
  Field q = Field::rational();
  Group g = cyclic_group(2);
  Algebra kg = group_algebra(q, g), fun = function_algebra(q, g);
  auto b = bialgebra_from_abstract_pairing(kg, fun, Matrix::identity(q, 2));
  auto a = dualize(kg, b, Matrix::identity(q, 2));
  require_all_pass(a.report);
  check_group_algebra_closed_form(a, g);
}

TEST_CASE("pairing k[Z/2] with itself by the identity matrix is not a bialgebra") {
  Field q = Field::rational();
  Algebra kg = group_algebra(q, cyclic_group(2));
  auto h = bialgebra_from_abstract_pairing(kg, kg, Matrix::identity(q, 2), AntipodeMode::skip);
  CHECK(h.report.status("hopf.axioms.delta_multiplicative") == Status::fail);
  CHECK(h.report.status("hopf.axioms.antipode") == Status::skipped);
}

TEST_CASE("corrupted coproduct breaks coassociativity with a witness") {
  Field q = Field::rational();
  Group g = cyclic_group(3);
  auto h = bialgebra_from_abstract_pairing(function_algebra(q, g), group_algebra(q, g), Matrix::identity(q, 3));
  h.delta(1 * 3 + 2, 1) = q.one();
  auto r = verify_hopf_axioms(h);
  const auto* c = r.find("hopf.axioms.coassociative");
  REQUIRE(c);
  CHECK(c->status == Status::fail);
  CHECK(c->witness["basis"][0] == 1);
}

TEST_CASE("singular pairing is rejected") {
  Field q = Field::rational();
  Algebra kg = group_algebra(q, cyclic_group(2));
  CHECK_THROWS_AS(bialgebra_from_abstract_pairing(kg, kg, Matrix(q, 2, 2)), HopfError);
}

TEST_CASE("integrals of k[S3] over F_7") {
  Field f = Field::prime(7);
  Group g = symmetric_group3();
  auto h = bialgebra_from_abstract_pairing(function_algebra(f, g), group_algebra(f, g), Matrix::identity(f, 6));
  Subspace ints = left_integrals(h);
  REQUIRE(ints.dim() == 1);
  Vec sum = zero_vector(f, 6);
  for (auto& s : sum) s = f.one();
  CHECK(ints.contains(sum));
}

TEST_CASE("reconstruction on the trivial tower gives k") {
  auto t = tower_for("trivial");
  auto d = analyze_depth_two(t);
  auto rec = reconstruct(t, d);
  require_all_pass(rec.report);
  CHECK(rec.B.dim() == 1);
  CHECK(rec.A.dim() == 1);
  CHECK(rec.pairing.P == Matrix::identity(t.M().field(), 1));
  CHECK(*rec.B.S == Matrix::identity(t.M().field(), 1));
}

TEST_CASE("reconstruction on the skew path tower") {
  auto t = tower_for("skew-path");
  auto d = analyze_depth_two(t);
  auto rec = reconstruct(t, d);
  require_all_pass(rec.report);
  CHECK(rec.B.dim() == 2);
  CHECK(*rec.B.S * *rec.B.S == Matrix::identity(t.M().field(), 2));
  // Independent oracle: <1, e_2> = lambda^{-2} F(e_2 e_1 e_2) = lambda^{-1} F(e_2) = 1.
  Vec e2 = d.B.coordinates_or_throw(t.e2, "e_2");
  CHECK(rec.B.counit(e2) == t.M().field().one());
  auto dump = hopf_dump(rec.B, "B", rec.pairing.P);
  CHECK(dump["dim"] == 2);
  CHECK(dump["integrals"].size() == 1);
}

TEST_CASE("reconstruction refuses a reducible base") {
  auto t = tower_for("group-pair");
  auto d = analyze_depth_two(t);
  try {
    reconstruct(t, d);
    FAIL("expected HopfError");
  } catch (const HopfError& e) {
    CHECK(std::string(e.what()).find("irreducibility failed") != std::string::npos);
  }
}
