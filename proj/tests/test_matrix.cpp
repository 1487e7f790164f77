#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arq/matrix.hpp"

using namespace arq;

TEST_CASE("rank: identity and zero") {
  CHECK(rank(Matrix::identity(3, 2)) == 3);
  CHECK(rank(Matrix::zero(2, 5, 2)) == 0);
}

TEST_CASE("rank: [[1,1],[1,1]] over F2 is 1") {
  Matrix m = Matrix::from_rows({{1, 1}, {1, 1}}, 2);
  CHECK(rank(m) == 1);
}

TEST_CASE("solve: identity returns rhs") {
  Matrix b = Matrix::from_rows({{1}, {0}}, 2);
  auto x = solve(Matrix::identity(2, 2), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);
}

TEST_CASE("solve: zero matrix with nonzero rhs is inconsistent") {
  Matrix a = Matrix::zero(2, 2, 2);
  Matrix b = Matrix::from_rows({{1}, {0}}, 2);
  CHECK(!solve(a, b).has_value());
}

TEST_CASE("solve: hand-substituted system over F3") {
  Matrix a = Matrix::from_rows({{1, 1}, {0, 1}}, 3);
  Matrix b = Matrix::from_rows({{2}, {1}}, 3);
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(*x == Matrix::from_rows({{1}, {1}}, 3));
}

TEST_CASE("solve: dimension mismatch throws") {
  Matrix a = Matrix::identity(2, 2);
  Matrix b = Matrix::zero(3, 1, 2);
  CHECK_THROWS_AS(solve(a, b), PreconditionError);
}

TEST_CASE("nullspace: identity, zero, and a hand case") {
  CHECK(nullspace(Matrix::identity(4, 3)).cols() == 0);
  CHECK(nullspace(Matrix::zero(1, 3, 2)).cols() == 3);
  Matrix m = Matrix::from_rows({{1, 1}}, 2);
  Matrix ns = nullspace(m);
  REQUIRE(ns.cols() == 1);
  CHECK(ns.at(0, 0) == 1);
  CHECK(ns.at(1, 0) == 1);
}

TEST_CASE("image basis spans the column space") {
  Matrix m = Matrix::from_rows({{1, 1, 0}, {0, 0, 1}}, 2);
  Matrix im = image(m);
  CHECK(im.cols() == 2);
  CHECK(subspace_eq(im, m));
}

TEST_CASE("quotient: identity sub gives empty quotient, zero sub gives ambient") {
  Matrix amb = Matrix::identity(3, 2);
  QuotientSpace full(amb, amb);
  CHECK(full.dim() == 0);
  QuotientSpace none(amb, Matrix::zero(3, 0, 2));
  CHECK(none.dim() == 3);
}

TEST_CASE("quotient: F2^3 modulo span{(1,1,0)} has dimension 2") {
  Matrix amb = Matrix::identity(3, 2);
  Matrix sub = Matrix::from_rows({{1}, {1}, {0}}, 2);
  QuotientSpace q(amb, sub);
  CHECK(q.dim() == 2);
  // Projection is linear, surjective, and kills exactly the subspace.
  CHECK(q.reduce(sub).is_zero());
  Matrix v = Matrix::from_rows({{1}, {0}, {0}}, 2);
  CHECK(!q.reduce(v).is_zero());
}

TEST_CASE("quotient: sub not contained in ambient throws") {
  Matrix amb = Matrix::from_rows({{1}, {0}, {0}}, 2);
  Matrix sub = Matrix::from_rows({{0}, {1}, {0}}, 2);
  CHECK_THROWS_AS(QuotientSpace(amb, sub), PreconditionError);
}

TEST_CASE("property: rank(m) == rank(transpose(m)), 200 samples per prime") {
  for (uint32_t p : {2u, 3u, 5u}) {
    std::mt19937_64 rng(42 + p);
    std::uniform_int_distribution<size_t> dim(0, 6);
    std::uniform_int_distribution<uint32_t> ent(0, p - 1);
    for (int s = 0; s < 200; ++s) {
      Matrix m(dim(rng), dim(rng), p);
      for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) m.set(i, j, ent(rng));
      CHECK(rank(m) == rank(m.transposed()));
      CHECK(nullspace(m).cols() + rank(m) == m.cols());
    }
  }
}

TEST_CASE("property: consistent solves verify exactly") {
  for (uint32_t p : {2u, 3u, 5u}) {
    std::mt19937_64 rng(1000 + p);
    std::uniform_int_distribution<size_t> dim(1, 5);
    std::uniform_int_distribution<uint32_t> ent(0, p - 1);
    for (int s = 0; s < 100; ++s) {
      Matrix a(dim(rng), dim(rng), p);
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) a.set(i, j, ent(rng));
      // Build a consistent rhs from a random x.
      Matrix x(a.cols(), 1, p);
      for (size_t i = 0; i < x.rows(); ++i) x.set(i, 0, ent(rng));
      Matrix b = a * x;
      auto sol = solve(a, b);
      REQUIRE(sol.has_value());
      CHECK(a * *sol == b);
    }
  }
}

TEST_CASE("0xn and nx0 matrices are legal and behave as zero spaces") {
  Matrix a(0, 3, 2);
  Matrix b(3, 0, 2);
  CHECK(rank(a) == 0);
  CHECK(rank(b) == 0);
  Matrix prod = b * a;  // 3x3 zero
  CHECK(prod.rows() == 3);
  CHECK(prod.is_zero());
  CHECK(nullspace(a).cols() == 3);
}

TEST_CASE("inverse arithmetic mod p") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (uint32_t a = 1; a < p; ++a) CHECK(mul_mod(a, inv_mod(a, p), p) == 1);
  }
  CHECK_THROWS_AS(inv_mod(0, 5), PreconditionError);
}
