#include <doctest.h>

#include <vector>

#include "mui/error.hpp"
#include "mui/field.hpp"

using namespace mui;

TEST_CASE("scalar arithmetic") {
  const PrimeField f3(3), f5(5);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f5.inv(2) == 3);
  CHECK(f3.neg(1) == 2);
  CHECK(f3.neg(0) == 0);
  CHECK(f5.from_int(-1) == 4);
  CHECK(f5.from_int(-11) == 4);
  CHECK(f5.pow(2, 4) == 1);
  CHECK_THROWS_AS(f5.inv(0), DomainError);
  CHECK_THROWS_AS(PrimeField(4), UsageError);
  CHECK_THROWS_AS(PrimeField(1), UsageError);
}

TEST_CASE("every nonzero scalar has an inverse") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u, 65521u}) {
    const PrimeField f(p);
    for (Scalar a = 1; a < std::min<std::uint32_t>(p, 500); ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("is_prime agrees with trial division") {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    CHECK(is_prime(n) == prime);
  }
}

TEST_CASE("binomial mod p matches Pascal's triangle") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    std::vector<std::vector<Scalar>> pascal(201, std::vector<Scalar>(201, 0));
    for (std::size_t m = 0; m <= 200; ++m) {
      pascal[m][0] = 1;
      for (std::size_t k = 1; k <= m; ++k) pascal[m][k] = (pascal[m - 1][k - 1] + pascal[m - 1][k]) % p;
    }
    for (std::uint64_t m = 0; m <= 200; ++m) {
      for (std::uint64_t k = 0; k <= 200; ++k) {
        REQUIRE(binomial_mod_p(m, k, f) == pascal[m][k]);
      }
    }
  }
}

TEST_CASE("binomial examples") {
  CHECK(binomial_mod_p(4, 0, 3u) == 1);
  CHECK(binomial_mod_p(4, 2, 3u) == 0);
  CHECK(binomial_mod_p(3, 1, 3u) == 0);
  CHECK(binomial_mod_p(3, 5, 3u) == 0);
  // Lucas on large arguments: C(3^20, 3^19) = C(3,1) = 0 mod 3, C(3^20 + 1, 1) = 1.
  std::uint64_t big = 1;
  for (int i = 0; i < 20; ++i) big *= 3;
  CHECK(binomial_mod_p(big, big / 3, 3u) == 0);
  CHECK(binomial_mod_p(big + 1, 1, 3u) == 1);
}
