#include <affcomp/algebra.hpp>

#include <catch_amalgamated.hpp>

#include "generators.hpp"

using namespace affcomp;

namespace {

const ScalarDomain& gf4() { return parse_field_spec("gf(2^2; modulus=[1,1,1])"); }

Scalar quat(long a, long b, long c, long d) { return ScalarDomain::quaternions().quaternion(a, b, c, d); }

}  // namespace

TEST_CASE("prime field arithmetic agrees with integers mod p", "[algebra]") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto& d = ScalarDomain::prime_field(p);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        REQUIRE((d.element(a) + d.element(b)).index() == (a + b) % p);
        REQUIRE((d.element(a) - d.element(b)).index() == (a + p - b) % p);
        REQUIRE((d.element(a) * d.element(b)).index() == (a * b) % p);
        if (b != 0) REQUIRE(((d.element(a) / d.element(b)) * d.element(b)).index() == a);
      }
    REQUIRE(d.from_int(-1).index() == p - 1);
  }
}

TEST_CASE("GF(4) multiplication matches the table of x^2 + x + 1", "[algebra]") {
  const auto& d = gf4();
  // elements 0, 1, x, x+1 have indices 0, 1, 2, 3
  const std::uint32_t mul[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      REQUIRE((d.element(a) * d.element(b)).index() == mul[a][b]);
      REQUIRE((d.element(a) + d.element(b)).index() == (a ^ b));
    }
  Scalar x = d.element(2);
  REQUIRE((x * x).to_string() == "x+1");
  REQUIRE(d.descriptor() == "gf(2^2; modulus=[1,1,1])");
  REQUIRE(*d.order() == 4);
}

TEST_CASE("GF(9) satisfies the field axioms", "[algebra]") {
  const auto& d = parse_field_spec("gf(3^2; modulus=[1,0,1])");
  REQUIRE(*d.order() == 9);
  for (std::uint32_t a = 0; a < 9; ++a) {
    Scalar x = d.element(a);
    if (a != 0) REQUIRE((x * x.inverse()).is_one());
    for (std::uint32_t b = 0; b < 9; ++b) {
      Scalar y = d.element(b);
      REQUIRE(x * y == y * x);
      for (std::uint32_t c = 0; c < 9; ++c) {
        Scalar z = d.element(c);
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE((x * y) * z == x * (y * z));
      }
    }
  }
}

TEST_CASE("field specs are validated", "[algebra]") {
  REQUIRE_THROWS_AS(parse_field_spec("gf(4)"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_field_spec("gf(2^2; modulus=[1,0,1])"), std::invalid_argument);  // (x+1)^2
  REQUIRE_THROWS_AS(parse_field_spec("gf(2^2; modulus=[1,1])"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_field_spec("quat(R)"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_field_spec("gf(x)"), std::invalid_argument);
  REQUIRE(&parse_field_spec(" gf( 3 ) ") == &ScalarDomain::prime_field(3));
  REQUIRE(&parse_field_spec("quat(Q)") == &ScalarDomain::quaternions());
  REQUIRE(&parse_field_spec("gf(2^2; modulus=[1,1,1])") == &gf4());
}

TEST_CASE("quaternion units multiply as Hamilton's table", "[algebra]") {
  Scalar one = quat(1, 0, 0, 0), i = quat(0, 1, 0, 0), j = quat(0, 0, 1, 0), k = quat(0, 0, 0, 1);
  REQUIRE(i * j == k);
  REQUIRE(j * i == -k);
  REQUIRE(j * k == i);
  REQUIRE(k * i == j);
  REQUIRE(i * i == -one);
  REQUIRE(i * j * k == -one);
  REQUIRE((i * j).to_string() == "k");
  REQUIRE((j * i).to_string() == "-k");
  REQUIRE(quat(1, 1, 0, 0).inverse() == ScalarDomain::quaternions().quaternion(mpq_class(1) / 2, mpq_class(-1) / 2, 0, 0));
  REQUIRE_THROWS_AS(quat(0, 0, 0, 0).inverse(), std::domain_error);
}

TEST_CASE("quaternion arithmetic is associative with multiplicative norm", "[algebra]") {
  const auto& h = ScalarDomain::quaternions();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Scalar a = gen::scalar(h, rng), b = gen::scalar(h, rng), c = gen::scalar(h, rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a * b).quaternion().norm() == a.quaternion().norm() * b.quaternion().norm());
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
  }
}

TEST_CASE("center membership", "[algebra]") {
  REQUIRE(is_central(quat(3, 0, 0, 0)));
  REQUIRE_FALSE(is_central(quat(0, 1, 0, 0)));
  REQUIRE(is_central(gf4().element(2)));  // commutative field
  auto parts = center_components(quat(1, -2, 3, 0));
  REQUIRE(parts.size() == 4);
  REQUIRE(parts[1] == quat(-2, 0, 0, 0));
  REQUIRE(center_components(gf4().element(3)) == std::vector<Scalar>{gf4().element(3)});
  REQUIRE(ScalarDomain::quaternions().center_degree() == 4);
  REQUIRE(gf4().center_degree() == 1);
}

TEST_CASE("scalar sequences are deterministic", "[algebra]") {
  const auto& h = ScalarDomain::quaternions();
  auto a = scalars(h, 5), b = scalars(h, 5), c = scalars(h, 6);
  REQUIRE(a.is_sample);
  REQUIRE(a.elements == b.elements);
  REQUIRE_FALSE(a.elements == c.elements);
  auto grid = scalar_grid(h);
  REQUIRE(grid.elements.size() == 81);
  REQUIRE(std::equal(grid.elements.begin(), grid.elements.end(), a.elements.begin()));
  auto f = scalars(gf4());
  REQUIRE_FALSE(f.is_sample);
  REQUIRE(f.elements.size() == 4);
  REQUIRE_THROWS_AS(enumerate_scalars(h, "test"), infinite_domain);
}

TEST_CASE("mixing domains is rejected", "[algebra]") {
  const auto& g2 = ScalarDomain::prime_field(2);
  const auto& g3 = ScalarDomain::prime_field(3);
  REQUIRE_THROWS_AS(g2.one() + g3.one(), domain_mismatch);
  REQUIRE_THROWS_AS(g2.one() == g3.one(), domain_mismatch);
}
