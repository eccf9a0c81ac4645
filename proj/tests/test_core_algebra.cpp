#include "doctest.h"
#include "minorank/errors.hpp"
#include "minorank/matrix.hpp"
#include "minorank/span_basis.hpp"
#include "support.hpp"

using namespace minorank;
using testsupport::naive_rank;
using testsupport::random_matrix;

TEST_CASE("field rejects unsupported orders") {
  CHECK_THROWS_AS(Field(4), Error);
  CHECK_THROWS_AS(Field(11), Error);
  for (int p : {2, 3, 5, 7}) {
    Field f(p);
    for (int a = 1; a < p; ++a) CHECK(f.mul(Elem(a), f.inv(Elem(a))) == 1);
  }
}

TEST_CASE("mat_rank small cases") {
  Field f2(2);
  CHECK(mat_rank(FieldMatrix::identity(f2, 3)) == 3);
  CHECK(mat_rank(FieldMatrix(f2, 3, 3, FieldVector(9, 1))) == 1);
  CHECK(mat_rank(FieldMatrix(f2, 2, 5)) == 0);
}

TEST_CASE("mat_rank agrees with naive elimination") {
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5, 7})
    for (int trial = 0; trial < 200; ++trial) {
      Field f(p);
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 70;
      FieldMatrix m = random_matrix(f, r, c, rng);
      if (trial % 3 == 0) m = m * FieldMatrix(f, c, c, FieldVector(c * c, 1));  // low rank
      CHECK(mat_rank(m) == naive_rank(m));
    }
  Field f3(3);
  FieldMatrix m = random_matrix(f3, 4, 4, rng);
  CHECK(mat_rank(m) == naive_rank(m));
}

TEST_CASE("rank properties: transpose and subadditivity") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Field f(trial % 2 ? 3 : 2);
    FieldMatrix a = random_matrix(f, 5, 6, rng), b = random_matrix(f, 5, 6, rng);
    CHECK(mat_rank(a) == mat_rank(a.transpose()));
    CHECK(mat_rank(a + b) <= mat_rank(a) + mat_rank(b));
  }
}

TEST_CASE("nullspace basis") {
  Field f2(2), f3(3);
  CHECK(nullspace_basis(FieldMatrix::identity(f2, 2)).empty());
  CHECK(nullspace_basis(FieldMatrix(f2, 2, 2)).size() == 2);
  FieldMatrix r1(f3, 3, 3, {1, 2, 0, 2, 1, 0, 1, 2, 0});
  auto ns = nullspace_basis(r1);
  CHECK(ns.size() == 2);
  for (const auto& b : ns)
    for (std::size_t c = 0; c < 3; ++c) {
      Elem s = 0;
      for (std::size_t r = 0; r < 3; ++r) s = f3.add(s, f3.mul(b[r], r1.at(r, c)));
      CHECK(s == 0);
    }
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    FieldMatrix m = random_matrix(f3, 6, 3, rng);
    CHECK(nullspace_basis(m).size() + mat_rank(m) == 6);
    CHECK(kernel_basis(m).size() + mat_rank(m) == 3);
  }
}

TEST_CASE("dual basis") {
  Field f2(2);
  auto std2 = dual_basis(f2, {{1, 0}, {0, 1}});
  CHECK(std2.duals == std::vector<FieldVector>{{1, 0}, {0, 1}});
  auto db = dual_basis(f2, {{1, 1, 0}, {0, 1, 1}});
  CHECK(db.support.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(dot(f2, db.duals[i], db.originals[j]) == (i == j ? 1 : 0));
      for (std::size_t x = 0; x < 3; ++x)
        if (std::find(db.support.begin(), db.support.end(), x) == db.support.end()) CHECK(db.duals[i][x] == 0);
    }
  try {
    dual_basis(f2, {{1, 0}, {1, 0}});
    FAIL("dependent input accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DependentInput);
  }
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    Field f(trial % 2 ? 5 : 2);
    std::vector<FieldVector> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(testsupport::random_vector(f, 6, rng));
    if (independent_subfamily(f, vs).size() < 3) continue;
    auto d = dual_basis(f, vs);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(dot(f, d.duals[i], vs[j]) == (i == j ? 1 : 0));
  }
}

TEST_CASE("rank factorization and full rank minor") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    Field f(trial % 2 ? 7 : 2);
    FieldMatrix m = random_matrix(f, 4, 5, rng);
    auto rf = rank_factorization(m);
    CHECK(rf.cols.size() == mat_rank(m));
    FieldMatrix sum(f, 4, 5);
    for (std::size_t i = 0; i < rf.cols.size(); ++i)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 5; ++c) sum.set(r, c, f.add(sum.at(r, c), f.mul(rf.cols[i][r], rf.rows[i][c])));
    CHECK(sum == m);
    auto minor = full_rank_minor(m);
    CHECK(minor.rows.size() == mat_rank(m));
    CHECK(mat_rank(m.submatrix(minor.rows, minor.cols)) == mat_rank(m));
  }
}

TEST_CASE("inverse and solve") {
  std::mt19937_64 rng(16);
  Field f(3);
  for (int trial = 0; trial < 50; ++trial) {
    FieldMatrix m = random_matrix(f, 4, 4, rng);
    auto inv = inverse(m);
    CHECK(inv.has_value() == (mat_rank(m) == 4));
    if (inv) CHECK(m * *inv == FieldMatrix::identity(f, 4));
  }
  auto c = solve_combination(f, {{1, 0, 1}, {0, 1, 1}}, {2, 1, 0});
  REQUIRE(c);
  CHECK(*c == FieldVector{2, 1});
  CHECK_FALSE(solve_combination(f, {{1, 0, 1}}, {0, 1, 0}));
}

TEST_CASE("span basis rollback is exact") {
  std::mt19937_64 rng(17);
  for (int p : {2, 3}) {
    Field f(p);
    SpanBasis b(f, 130);
    std::vector<FieldVector> vs;
    for (int i = 0; i < 6; ++i) vs.push_back(testsupport::random_vector(f, 130, rng));
    for (int i = 0; i < 3; ++i) b.insert(vs[std::size_t(i)]);
    std::size_t d3 = b.dimension();
    for (int i = 3; i < 6; ++i) b.insert(vs[std::size_t(i)]);
    CHECK(b.contains(vs[5]));
    b.truncate(d3);
    CHECK(b.dimension() == d3);
    CHECK(b.contains(vs[1]));
    CHECK_FALSE(b.contains(vs[5]));
    CHECK(b.contains(add(f, vs[0], vs[2])));
  }
}
