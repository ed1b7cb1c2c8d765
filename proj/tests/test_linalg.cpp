#include <affcomp/linalg.hpp>

#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace affcomp;

namespace {

Scalar quat(long a, long b, long c, long d) { return ScalarDomain::quaternions().quaternion(a, b, c, d); }

}  // namespace

TEST_CASE("left echelon form over the quaternions", "[linalg]") {
  const auto& h = ScalarDomain::quaternions();
  Matrix m(h, 2, 2);
  m(0, 0) = quat(0, 1, 0, 0);
  m(1, 1) = quat(0, 0, 1, 0);
  auto e = rref_left(m);
  REQUIRE(e.rank == 2);
  REQUIRE(e.reduced == Matrix::identity(h, 2));

  // (1, i) and (i, -1) = i (1, i) are left-dependent, but (1, i), (i, 1) are not.
  Matrix dep = Matrix::from_rows(h, {{quat(1, 0, 0, 0), quat(0, 1, 0, 0)}, {quat(0, 1, 0, 0), quat(-1, 0, 0, 0)}}, 2);
  REQUIRE(rank(dep) == 1);
  Matrix indep = Matrix::from_rows(h, {{quat(1, 0, 0, 0), quat(0, 1, 0, 0)}, {quat(0, 1, 0, 0), quat(1, 0, 0, 0)}}, 2);
  REQUIRE(rank(indep) == 2);
}

TEST_CASE("invertibility agrees with the determinant over GF(3)", "[linalg]") {
  const auto& d = ScalarDomain::prime_field(3);
  std::size_t invertible = 0;
  for (const auto& flat : oracle::all_vectors(d, 4)) {
    Matrix a = Matrix::from_rows(d, {{flat[0], flat[1]}, {flat[2], flat[3]}}, 2);
    bool inv = is_invertible(a);
    REQUIRE(inv == !oracle::det(a).is_zero());
    if (inv) {
      ++invertible;
      REQUIRE(*inverse(a) * a == Matrix::identity(d, 2));
      REQUIRE(a * *inverse(a) == Matrix::identity(d, 2));
    } else {
      REQUIRE_FALSE(inverse(a).has_value());
    }
  }
  REQUIRE(invertible == 48);  // |GL(2,3)|
}

TEST_CASE("kernel and rank are consistent on random matrices", "[linalg]") {
  std::mt19937_64 rng(11);
  for (const ScalarDomain* d : {&ScalarDomain::prime_field(2), &ScalarDomain::prime_field(3),
                                &parse_field_spec("gf(2^2; modulus=[1,1,1])"), &ScalarDomain::quaternions()}) {
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      Matrix m = gen::matrix(*d, r, c, rng);
      Matrix ker = kernel(m);
      REQUIRE(rank(m) + ker.rows() == r);
      REQUIRE((ker * m).is_zero());
      REQUIRE(rank(ker) == ker.rows());
      REQUIRE(rank(image(m)) == rank(m));
    }
  }
}

TEST_CASE("maps compose left to right", "[linalg]") {
  std::mt19937_64 rng(3);
  const auto& h = ScalarDomain::quaternions();
  for (int t = 0; t < 30; ++t) {
    Matrix a = gen::matrix(h, 3, 2, rng), b = gen::matrix(h, 2, 3, rng);
    RowVector v{gen::scalar(h, rng), gen::scalar(h, rng), gen::scalar(h, rng)};
    Scalar k = gen::scalar(h, rng);
    REQUIRE(act(act(v, a), b) == act(v, compose(a, b)));
    REQUIRE(act(k * v, a) == k * act(v, a));  // left-linear
  }
}

TEST_CASE("solve_left finds coefficients", "[linalg]") {
  const auto& h = ScalarDomain::quaternions();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    Matrix basis = gen::invertible(h, 3, rng).row_block(0, 2);
    RowVector x{gen::scalar(h, rng), gen::scalar(h, rng)};
    auto found = solve_left(basis, act(x, basis));
    REQUIRE(found.has_value());
    REQUIRE(*found == x);
  }
  Matrix e1 = Matrix::identity(h, 3).row_block(0, 1);
  REQUIRE_FALSE(solve_left(e1, unit_vector(h, 3, 2)).has_value());
}

TEST_CASE("shape errors are reported", "[linalg]") {
  const auto& d = ScalarDomain::prime_field(2);
  REQUIRE_THROWS_AS(Matrix(d, 2, 3) * Matrix(d, 2, 3), shape_mismatch);
  REQUIRE_THROWS_AS(Matrix(d, 2, 3) + Matrix(d, 3, 2), shape_mismatch);
  REQUIRE_THROWS_AS(act(RowVector{d.one()}, Matrix(d, 2, 2)), shape_mismatch);
}
