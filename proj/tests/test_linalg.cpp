#include <doctest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "mui/error.hpp"
#include "mui/linalg.hpp"
#include "mui/sampling.hpp"
#include "support.hpp"

using namespace mui;
using mui::testing::el;

namespace {

// All monomials of total degree d by brute force over bounded exponents.
std::set<std::string> brute_force_basis(const Ring& ring, std::uint64_t d) {
  std::set<std::string> out;
  const int n = ring.rank();
  const std::uint32_t subsets = ring.has_exterior() ? (1u << n) : 1u;
  for (std::uint32_t e = 0; e < subsets; ++e) {
    Monomial m;
    m.exterior = e;
    std::function<void(int)> fill = [&](int i) {
      if (i == n) {
        if (ring.degree(m) == d) out.insert(to_string(ring, m));
        return;
      }
      for (Exponent k = 0; k <= d; ++k) {
        m.exponents[i] = k;
        fill(i + 1);
      }
      m.exponents[i] = 0;
    };
    fill(0);
  }
  return out;
}

// Coefficients of prod_i 1/(1 - t^w) * prod_i (1 + t) up to t^D.
std::vector<std::uint64_t> generating_function(const Ring& ring, std::uint64_t D) {
  std::vector<std::uint64_t> series(D + 1, 0);
  series[0] = 1;
  const std::uint64_t w = ring.has_exterior() ? 2 : 1;
  for (int i = 0; i < ring.rank(); ++i) {
    for (std::uint64_t d = w; d <= D; ++d) series[d] += series[d - w];
    if (ring.has_exterior()) {
      for (std::uint64_t d = D; d >= 1; --d) series[d] += series[d - 1];
    }
  }
  return series;
}

}  // namespace

TEST_CASE("monomial basis examples") {
  const Ring R(3, 2);
  auto b1 = monomial_basis(R, 1);
  REQUIRE(b1->size() == 2);
  CHECK(to_string(R, b1->monomials[0]) == "a1");
  CHECK(to_string(R, b1->monomials[1]) == "a2");
  auto b2 = monomial_basis(R, 2);
  std::set<std::string> names;
  for (const auto& m : b2->monomials) names.insert(to_string(R, m));
  CHECK(names == std::set<std::string>{"a1a2", "x1", "x2"});
  for (auto [p, n] : {std::pair{2u, 3}, {3u, 4}, {7u, 1}}) CHECK(monomial_basis(Ring(p, n), 0)->size() == 1);
}

TEST_CASE("monomial basis agrees with brute-force enumeration") {
  for (auto [p, n] : {std::pair{3u, 1}, {3u, 2}, {3u, 3}, {2u, 2}, {2u, 4}, {5u, 2}}) {
    const Ring R(p, n);
    for (std::uint64_t d = 0; d <= 10; ++d) {
      auto basis = monomial_basis(R, d);
      std::set<std::string> names;
      for (std::size_t i = 0; i < basis->size(); ++i) {
        names.insert(to_string(R, basis->monomials[i]));
        if (i > 0) REQUIRE(canonical_less(basis->monomials[i - 1], basis->monomials[i]));
      }
      REQUIRE(names.size() == basis->size());
      REQUIRE(names == brute_force_basis(R, d));
    }
  }
}

TEST_CASE("basis sizes match the Hilbert series") {
  for (auto [p, n] : {std::pair{3u, 1}, {3u, 2}, {3u, 3}, {3u, 4}, {2u, 1}, {2u, 3}, {2u, 6}, {5u, 2}}) {
    const Ring R(p, n);
    const auto series = generating_function(R, 20);
    for (std::uint64_t d = 0; d <= 20; ++d) {
      REQUIRE(monomial_basis(R, d)->size() == series[d]);
      REQUIRE(monomial_count(R, d) == series[d]);
    }
  }
}

TEST_CASE("coordinates round trip") {
  const Ring R(3, 3);
  std::mt19937_64 rng(5);
  for (std::uint64_t d = 0; d < 12; ++d) {
    auto basis = monomial_basis(R, d);
    const Element y = random_element(R, d, rng, 5);
    CHECK(basis->element(basis->coordinates(y)) == y);
  }
  CHECK_THROWS_AS(monomial_basis(R, 2)->coordinates(el(R, "a1")), UsageError);
}

TEST_CASE("span examples") {
  const Ring R(3, 2);
  const std::vector<Element> zero{Element(R)};
  CHECK(span_of(R, zero, 3).rank() == 0);
  const std::vector<Element> twice{el(R, "a1"), el(R, "2*a1")};
  CHECK(span_of(R, twice, 1).rank() == 1);
  const std::vector<Element> dependent{el(R, "a1"), el(R, "a2"), el(R, "a1 + a2")};
  const DegreeSpan s = span_of(R, dependent, 1);
  CHECK(s.rank() == 2);
  CHECK(s.contains(el(R, "2*a1 + a2")));
  const std::vector<Element> wrong{el(R, "x1")};
  CHECK_THROWS_AS(span_of(R, wrong, 1), UsageError);
}

TEST_CASE("span equality does not depend on the generating set") {
  const Ring R(5, 2);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const std::uint64_t d = 4 + k % 6;
    std::vector<Element> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_element(R, d, rng, 4));
    std::vector<Element> mixed{gens[0] + gens[1], gens[1].scaled(3), gens[2] - gens[0], gens[0]};
    const DegreeSpan a = span_of(R, gens, d), b = span_of(R, mixed, d);
    REQUIRE(a == b);
    for (std::size_t i = 1; i < a.pivots().size(); ++i) REQUIRE(a.pivots()[i - 1] < a.pivots()[i]);
  }
}

TEST_CASE("kernel examples") {
  const Ring R(3, 2);
  auto basis = monomial_basis(R, 2);
  const std::vector<Element> zeros(basis->size(), Element(R));
  CHECK(kernel_of_map(basis, zeros).rank() == basis->size());
  std::vector<Element> identity;
  for (const auto& m : basis->monomials) identity.push_back(Element::from_monomial(R, m));
  CHECK(kernel_of_map(basis, identity).rank() == 0);
}

TEST_CASE("kernel agrees with brute-force enumeration and rank-nullity") {
  // Multiplication maps y -> y * g out of small degrees of (3,2).
  const Ring R(3, 2);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const std::uint64_t d = 1 + k % 4;
    const std::uint64_t e = 1 + (k / 4) % 3;
    auto basis = monomial_basis(R, d);
    const Element g = random_element(R, e, rng, 3);
    std::vector<Element> images;
    for (const auto& m : basis->monomials) images.push_back(Element::from_monomial(R, m) * g);
    const DegreeSpan kernel = kernel_of_map(basis, images);

    const std::size_t dim = basis->size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= 3;
    std::size_t brute = 0;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Scalar> v(dim);
      std::size_t c = code;
      for (std::size_t i = 0; i < dim; ++i, c /= 3) v[i] = static_cast<Scalar>(c % 3);
      if ((basis->element(v) * g).is_zero()) {
        ++brute;
        REQUIRE(kernel.contains(v));
      }
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < kernel.rank(); ++i) expected *= 3;
    REQUIRE(brute == expected);

    DegreeSpan image_span(monomial_basis(R, d + e));
    for (const auto& y : images) image_span.insert(y);
    REQUIRE(image_span.rank() + kernel.rank() == dim);
  }
}

TEST_CASE("row reduction") {
  const PrimeField f(5);
  Matrix m(3, 4);
  const Scalar data[3][4] = {{1, 2, 3, 4}, {2, 4, 1, 3}, {3, 1, 4, 2}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = data[r][c];
  const auto pivots = m.row_reduce(f);
  REQUIRE(pivots.size() == m.rows());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t q = 0; q < pivots.size(); ++q) CHECK(m(q, pivots[r]) == (q == r ? 1u : 0u));
  }
}
