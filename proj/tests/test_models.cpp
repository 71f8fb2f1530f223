#include <doctest.h>

#include "jtower/models.hpp"

using namespace jtower;

namespace {

void require_all_pass(const Report& r) {
  for (const auto& c : r.results()) {
    INFO(c.id << ": " << c.reason << " " << c.witness.dump());
    CHECK(c.status == Status::pass);
  }
}

Subspace scalars(const Algebra& x) { return Subspace::span(x.field(), x.dim(), {x.unit()}); }

}  // namespace

TEST_CASE("group Hopf algebra of Z/2 over Q") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(2), q);
  require_all_pass(h.report);
  CHECK(h.t == Vec{q.from_ratio(1, 2), q.from_ratio(1, 2)});
  CHECK(h.f == Vec{q.from_int(2), q.zero()});
}

TEST_CASE("group Hopf algebra rejects char dividing the order") {
  CHECK_THROWS_AS(group_hopf(cyclic_group(2), Field::prime(2)), ModelError);
  CHECK_THROWS_AS(group_hopf(symmetric_group3(), Field::prime(3)), ModelError);
}

TEST_CASE("group Hopf algebra of S3 over F_7") {
  auto h = group_hopf(symmetric_group3(), Field::prime(7));
  require_all_pass(h.report);
}

TEST_CASE("Q(sqrt2) with the Galois action of Z/2") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(2), q);
  auto act = conjugation_action(h, q.from_int(2));
  auto b = galois_frobenius_system(h, act, scalars(act.X));
  require_all_pass(b.report);
  // E(a + b sqrt2) = a
  CHECK(b.system.expect(Vec{q.from_int(3), q.from_int(5)}) == Vec{q.from_int(3), q.zero()});
  REQUIRE(b.system.lambda_inverse);
  CHECK(*b.system.lambda_inverse == q.from_int(2));
  CHECK(b.smash.dim() == 4);
  CHECK(b.report.passed("galois.psi"));
  // Galois map Q(sqrt2) (x)_Q Q(sqrt2) -> Q(sqrt2) (x) Q^{Z/2}: 4 x 4 of full rank.
  auto r = galois_map(act, b.N);
  CHECK(r.passed("galois.galois_map"));
  CHECK(r.find("galois.galois_map")->witness["rank"] == 4);
}

TEST_CASE("k^{Z/3} over F_7 with the translation action") {
  Field f = Field::prime(7);
  auto h = group_hopf(cyclic_group(3), f);
  auto act = translation_action(h);
  auto b = galois_frobenius_system(h, act, scalars(act.X));
  require_all_pass(b.report);
  REQUIRE(b.system.lambda_inverse);
  CHECK(*b.system.lambda_inverse == f.from_int(3));
  // E is the normalized sum over translates: E(delta_y) = 1/3.
  for (std::size_t y = 0; y < 3; ++y) CHECK(b.system.expect(unit_vector(f, 3, y)) == f.from_ratio(1, 3) * act.X.unit());
  CHECK(b.smash.dim() == 9);
}

TEST_CASE("k^{Z/2} # k[Z/2] is a 2 x 2 matrix algebra") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(2), q);
  auto b = galois_frobenius_system(h, translation_action(h), std::nullopt);
  require_all_pass(b.report);
  CHECK(center(b.smash).dim() == 1);
  CHECK(b.smash.dim() == 4);
}

TEST_CASE("trivial action has the wrong invariants") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(2), q);
  auto act = trivial_action(h.kG, quadratic_algebra(q, q.from_int(2)));
  CHECK_THROWS_AS(galois_frobenius_system(h, act, scalars(act.X)), ModelError);
  // Trivial coaction with H != k: the Galois map cannot be bijective.
  auto r = galois_map(act, scalars(act.X));
  CHECK(r.status("galois.galois_map") == Status::fail);
}

TEST_CASE("Galois map for X = N and H = k is multiplication") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(1), q);
  Algebra x = quadratic_algebra(q, q.from_int(3));
  auto r = galois_map(trivial_action(h.kG, x), Subspace::whole(q, 2));
  CHECK(r.passed("galois.galois_map"));
}

TEST_CASE("smash with H = k is X and Psi is left multiplication") {
  Field q = Field::rational();
  auto h = group_hopf(cyclic_group(1), q);
  Algebra x = quadratic_algebra(q, q.from_int(3));
  auto act = trivial_action(h.kG, x);
  Algebra s = smash_product(act);
  CHECK(check_morphism(Matrix::identity(q, 2), x, s).is_isomorphism());
  CHECK(psi_map(s, act, Subspace::whole(q, 2)).passed("galois.psi"));
}
