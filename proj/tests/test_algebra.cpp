#include <doctest.h>

#include <random>

#include "mui/algebra.hpp"
#include "mui/error.hpp"
#include "mui/invariants.hpp"
#include "mui/sampling.hpp"
#include "support.hpp"

using namespace mui;
using mui::testing::el;

TEST_CASE("Koszul signs on exterior generators") {
  const Ring R(3, 2);
  const Element a1 = Element::a(R, 1), a2 = Element::a(R, 2);
  CHECK(a1 * a2 == el(R, "a1a2"));
  CHECK(a2 * a1 == -el(R, "a1a2"));
  CHECK((a1 * a1).is_zero());
  CHECK(to_string(a2 * a1) == "2*a1a2");
  CHECK_THROWS_AS(Element::a(Ring(2, 2), 1), UsageError);
}

TEST_CASE("product of the two rank-2 Mui invariants") {
  const Ring R(3, 2);
  const Element m1 = el(R, "a1*x2^3 - a2*x1^3");
  const Element m2 = el(R, "a1*x2 - a2*x1");
  const Element L = el(R, "x1*x2^3 - x1^3*x2");
  CHECK(m1 * m2 == -(L * el(R, "a1a2")));
  CHECK(m1 * m2 == el(R, "x1^3x2 - x1x2^3") * el(R, "a1a2"));
}

TEST_CASE("canonical order and text form") {
  const Ring R(3, 2);
  const Element y = el(R, "x2^4 + 2*x1^3*x2*a1a2");
  CHECK(to_string(y) == "2*a1a2*x1^3x2 + x2^4");
  CHECK(to_string(el(R, "2*a2*x1 + a1*x2")) == "a1*x2 + 2*a2*x1");
  CHECK(to_string(Element(R)) == "0");
  CHECK(to_string(Element::one(R)) == "1");
  CHECK(to_string(el(R, "4")) == "1");
  CHECK(to_string(el(R, "x1*x1")) == "x1^2");
  CHECK(el(R, "a2 a1") == el(R, "2*a1a2"));
  CHECK(el(R, "x1 - x1").is_zero());
}

TEST_CASE("parse errors report a position") {
  const Ring R(3, 2);
  try {
    (void)parse_element(R, "a1 + x3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_element(R, "a1 +"), ParseError);
  CHECK_THROWS_AS(parse_element(R, "y1"), ParseError);
  CHECK_THROWS_AS(parse_element(Ring(2, 2), "a1"), ParseError);
}

TEST_CASE("projection to exterior rank") {
  const Ring R(3, 2);
  const Element y = el(R, "a1 + x1");
  CHECK(project_exterior_rank(y, 1) == el(R, "a1"));
  CHECK(project_exterior_rank(y, 0) == el(R, "x1"));
  const Element top = mui_invariant(R, IndexSet{1, 2});
  CHECK(project_exterior_rank(top, 2) == top);
  CHECK(project_exterior_rank(top, 1).is_zero());
}

TEST_CASE("exact division") {
  const Ring R(3, 2);
  const Element L = dickson_L(R);
  CHECK(exact_divide(-(L * el(R, "a1a2")), L) == -el(R, "a1a2"));
  CHECK(exact_divide(Element(R), L).is_zero());
  CHECK(exact_divide(el(R, "x1^2x2 + a1*x1x2^2"), el(R, "x1x2")) == el(R, "x1 + a1*x2"));
  CHECK_THROWS_AS(exact_divide(el(R, "x1 + 1"), el(R, "x1")), NotDivisibleError);
  CHECK_THROWS_AS(exact_divide(el(R, "x1"), Element(R)), UsageError);
}

TEST_CASE("exact division inverts multiplication") {
  std::mt19937_64 rng(7);
  for (auto [p, n] : {std::pair{3u, 2}, {3u, 3}, {2u, 3}, {5u, 2}}) {
    const Ring R(p, n);
    for (int k = 0; k < 200; ++k) {
      const Element f = random_polynomial(R, 1 + k % 4, rng, 3);
      const Element q = random_element(R, k % 9, rng, 4);
      if (f.is_zero()) continue;
      REQUIRE(exact_divide(q * f, f) == q);
    }
  }
}

TEST_CASE("total degree") {
  const Ring R(3, 2);
  CHECK(total_degree(el(R, "a1a2")).value == 2);
  CHECK(total_degree(dickson_L(R)).value == 8);
  CHECK(total_degree(el(R, "a1 + x1")).kind == DegreeKind::Inhomogeneous);
  CHECK(total_degree(Element(R)).kind == DegreeKind::Zero);
  CHECK(total_degree(el(Ring(2, 2), "x1^2x2")).value == 3);
}

TEST_CASE("rank projections sum to the element and respect products") {
  std::mt19937_64 rng(11);
  const Ring R(3, 3);
  for (int k = 0; k < 300; ++k) {
    const Element y = random_element(R, k % 10, rng, 6) + random_element(R, (k + 3) % 10, rng, 6);
    Element sum(R);
    for (int r = 0; r <= 3; ++r) sum += project_exterior_rank(y, r);
    REQUIRE(sum == y);
    const int r = k % 3, s = (k / 3) % 2;
    const Element u = project_exterior_rank(random_element(R, r + 2 * (k % 3), rng), r);
    const Element v = project_exterior_rank(random_element(R, s + 2, rng), s);
    const Element uv = u * v;
    REQUIRE(project_exterior_rank(uv, r + s) == uv);
  }
}

TEST_CASE("graded commutativity and ring axioms on random elements") {
  std::mt19937_64 rng(3);
  for (auto [p, n] : {std::pair{3u, 2}, {5u, 3}, {2u, 3}}) {
    const Ring R(p, n);
    for (int k = 0; k < 300; ++k) {
      const std::uint64_t du = k % 7, dv = (k / 7) % 7;
      const Element u = random_element(R, du, rng), v = random_element(R, dv, rng);
      const Element w = random_element(R, (k / 3) % 5, rng);
      REQUIRE(u * v == ((du * dv) % 2 == 0 ? v * u : -(v * u)));
      REQUIRE((u * v) * w == u * (v * w));
      REQUIRE(u * (v + w) == u * v + u * w);
      REQUIRE(parse_element(R, to_string(u + w)) == u + w);
    }
  }
}

TEST_CASE("powers") {
  const Ring R(3, 2);
  CHECK(power(el(R, "x1 + x2"), 3) == el(R, "x1^3 + x2^3"));
  CHECK(power(el(R, "a1"), 2).is_zero());
  CHECK(power(el(R, "x1"), 0) == Element::one(R));
}
