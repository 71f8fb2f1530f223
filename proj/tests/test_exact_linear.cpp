#include <doctest.h>

#include <random>

#include "jtower/exact_linear.hpp"

using namespace jtower;

namespace {

Matrix mat(const Field& f, std::vector<std::vector<long long>> rows) {
  Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = f.from_int(rows[r][c]);
  return m;
}

Vec vec(const Field& f, std::vector<long long> xs) {
  Vec v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

}  // namespace

TEST_CASE("scalars serialize canonically") {
  Field q = Field::rational();
  CHECK(q.parse("6/4").to_string() == "3/2");
  CHECK(q.parse("-2/-1").to_string() == "2");
  CHECK(q.parse("4/2").to_string() == "2");
  CHECK(q.parse("0/5").to_string() == "0");
  CHECK(q.from_ratio(1, -3).to_string() == "-1/3");
  Field f7 = Field::prime(7);
  CHECK(f7.parse("-1").to_string() == "6");
  CHECK(f7.parse("1/2").to_string() == "4");
  CHECK_THROWS(f7.parse("1/7"));
  CHECK_THROWS(q.parse("1/0"));
  CHECK_THROWS(q.parse("abc"));
  CHECK_THROWS(q.parse("1.5"));
}

TEST_CASE("prime field arithmetic") {
  CHECK_THROWS_AS(Field::prime(4), std::invalid_argument);
  CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
  Field f = Field::prime(7);
  Scalar three = f.from_int(3);
  CHECK((three * three.inverse()).is_one());
  CHECK((three * f.from_int(5)).to_string() == "1");
  CHECK((f.from_int(2) - f.from_int(5)).to_string() == "4");
  CHECK((-f.from_int(3)).to_string() == "4");
  CHECK_THROWS_AS(f.zero().inverse(), std::domain_error);
  // An untyped integer combines with a field element in that field.
  CHECK((Scalar(9) * f.one()).to_string() == "2");
  CHECK(Scalar(9) == f.from_int(2));
  CHECK_THROWS_AS(Field::prime(5).one() + f.one(), std::logic_error);
}

TEST_CASE("solve: identity returns b with empty kernel") {
  Field q = Field::rational();
  auto s = solve(Matrix::identity(q, 3), vec(q, {4, -1, 7}));
  REQUIRE(s);
  CHECK(s->particular == vec(q, {4, -1, 7}));
  CHECK(s->kernel.empty());
}

TEST_CASE("solve: zero map on Q^2") {
  Field q = Field::rational();
  auto s = solve(Matrix(q, 2, 2), vec(q, {0, 0}));
  REQUIRE(s);
  CHECK(s->particular == vec(q, {0, 0}));
  CHECK(s->kernel.size() == 2);
  CHECK_FALSE(solve(Matrix(q, 2, 2), vec(q, {0, 1})).has_value());
}

TEST_CASE("solve over F2 matches enumeration of all four vectors") {
  Field f2 = Field::prime(2);
  Matrix a = mat(f2, {{1, 1}, {1, 1}});
  Vec b = vec(f2, {1, 1});
  auto s = solve(a, b);
  REQUIRE(s);
  CHECK(s->particular == vec(f2, {1, 0}));
  REQUIRE(s->kernel.size() == 1);
  CHECK(s->kernel[0] == vec(f2, {1, 1}));
  // Oracle: enumerate F2^2.
  std::vector<Vec> solutions;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Vec v = vec(f2, {x, y});
      if (a.apply(v) == b) solutions.push_back(v);
    }
  CHECK(solutions.size() == 2);
  for (const auto& v : solutions) {
    bool hit = v == s->particular || v == s->particular + s->kernel[0];
    CHECK(hit);
  }
}

TEST_CASE("solve rejects mismatched dimensions") {
  Field q = Field::rational();
  CHECK_THROWS_AS(solve(Matrix(q, 2, 3), vec(q, {1, 2, 3})), std::invalid_argument);
}

TEST_CASE("invert examples") {
  Field q = Field::rational();
  CHECK(*invert(Matrix::identity(q, 3)) == Matrix::identity(q, 3));
  Matrix d = mat(q, {{2, 0}, {0, 3}});
  Matrix di(q, 2, 2);
  di(0, 0) = q.from_ratio(1, 2);
  di(1, 1) = q.from_ratio(1, 3);
  CHECK(*invert(d) == di);
  Matrix u = mat(q, {{1, 1}, {0, 1}});
  auto ui = invert(u);
  REQUIRE(ui);
  CHECK(*ui == mat(q, {{1, -1}, {0, 1}}));
  CHECK(u * *ui == Matrix::identity(q, 2));
  CHECK_FALSE(invert(mat(q, {{1, 2}, {2, 4}})).has_value());
  CHECK_THROWS_AS(invert(Matrix(q, 2, 3)), std::invalid_argument);
}

TEST_CASE("rank-nullity and exact residuals on random matrices") {
  std::mt19937 rng(12345);
  for (auto field : {Field::rational(), Field::prime(7), Field::prime(2)}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
      Matrix a(field, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a(r, c) = field.from_int(static_cast<long long>(rng() % 5) - 2);
      // Make some rows dependent.
      if (rows > 2) a.set_row(rows - 1, a.row(0) + a.row(1));
      auto ker = kernel(a);
      CHECK(rank(a) + ker.size() == cols);
      for (const auto& k : ker) CHECK(is_zero(a.apply(k)));
      Vec x(cols);
      for (auto& s : x) s = field.from_int(static_cast<long long>(rng() % 7) - 3);
      Vec b = a.apply(x);
      auto s = solve(a, b);
      REQUIRE(s);
      CHECK(a.apply(s->particular) == b);
      CHECK(s->kernel.size() == ker.size());
    }
  }
}

TEST_CASE("row reduction is deterministic and canonical") {
  Field q = Field::rational();
  Matrix a = mat(q, {{0, 2, 4}, {1, 1, 1}, {2, 4, 6}});
  Echelon e1 = rref(a), e2 = rref(a);
  CHECK(e1.reduced == e2.reduced);
  CHECK(e1.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e1.reduced.to_strings()[0] == std::vector<std::string>{"1", "0", "-1"});
  CHECK(e1.reduced.to_strings()[1] == std::vector<std::string>{"0", "1", "2"});
}

TEST_CASE("sparse echelon reduces modulo its span") {
  Field q = Field::rational();
  SparseEchelon ech(q, 4);
  CHECK(ech.insert({{0, q.one()}, {3, q.one()}}));
  CHECK(ech.insert({{1, q.one()}, {3, q.from_int(2)}}));
  CHECK_FALSE(ech.insert({{0, q.from_int(2)}, {3, q.from_int(2)}}));
  ech.finalize();
  CHECK(ech.rank() == 2);
  CHECK(ech.is_pivot(3));
  CHECK(ech.is_pivot(1));
  // e3 = -e0 mod span; e1 = -2 e3 = 2 e0.
  auto r = ech.reduce({{1, q.one()}});
  REQUIRE(r.size() == 1);
  CHECK(r.begin()->first == 0);
  CHECK(r.begin()->second.to_string() == "2");
}
