#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mui/error.hpp"
#include "mui/invariants.hpp"
#include "support.hpp"

using namespace mui;
using mui::testing::el;

namespace {

// Leibniz formula: sum over permutations of sign * product of entries.
Element permutation_determinant(const Ring& ring, const VariableMatrix& m) {
  const std::size_t k = m.rows.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Element total(ring);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    Element term = Element::one(ring);
    for (std::size_t r = 0; r < k; ++r) term = term * entry(ring, m.rows[r], m.columns[perm[r]]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("Dickson L") {
  CHECK(dickson_L(Ring(3, 1)) == el(Ring(3, 1), "x1"));
  CHECK(dickson_L(Ring(3, 2)) == el(Ring(3, 2), "x1*x2^3 - x1^3*x2"));
  CHECK(dickson_L(Ring(2, 2)) == el(Ring(2, 2), "x1*x2^2 + x1^2*x2"));
}

TEST_CASE("minors and Mui invariants") {
  CHECK(gamma(Ring(3, 1), 1, 1) == Element::one(Ring(3, 1)));
  const Ring R(3, 2);
  CHECK(gamma(R, 1, 1) == el(R, "x2^3"));
  CHECK(mui_invariant(R, 2) == el(R, "a1*x2 - a2*x1"));
  CHECK(mui_invariant(R, 1) == el(R, "a1*x2^3 - a2*x1^3"));
  for (std::uint32_t p : {3u, 5u, 7u}) CHECK(mui_invariant(Ring(p, 1), 1) == el(Ring(p, 1), "a1"));
  CHECK(mui_invariant(R, IndexSet{}) == dickson_L(R));
  CHECK(mui_invariant(R, IndexSet{2}) == mui_invariant(R, 2));
  CHECK(mui_invariant(R, IndexSet{1, 2}) == el(R, "2*a1a2"));
  CHECK_THROWS_AS(mui_invariant(R, 3), UsageError);
  CHECK_THROWS_AS(mui_invariant(Ring(2, 2), 1), UsageError);
}

TEST_CASE("signs epsilon") {
  const Ring R(3, 2);
  CHECK(mui_epsilon(R, IndexSet{1, 2}) == 1);
  CHECK(mui_epsilon(R, IndexSet{}) == 1);
  CHECK(mui_epsilon(R, IndexSet{1}) == 1);
  for (auto [p, n] : {std::pair{3u, 3}, {5u, 2}, {3u, 4}}) {
    const Ring Q(p, n);
    const MuiTable table = MuiTable::build(Q);
    const IndexSet full = IndexSet::full(n);
    for (IndexSet S : all_subsets(n)) {
      const Scalar e = table.epsilon.at(S);
      CHECK((e == 1 || e == p - 1));
      CHECK(table.M.at(S) * table.M.at(S.complement(n)) == (table.L * table.M.at(full)).scaled(e));
    }
  }
}

TEST_CASE("cofactor determinant matches the permutation sum") {
  for (auto [p, n] : {std::pair{3u, 2}, {3u, 3}, {5u, 3}, {3u, 4}, {2u, 4}}) {
    const Ring R(p, n);
    CHECK(determinant(R, matrix_C(R)) == permutation_determinant(R, matrix_C(R)));
    if (R.has_exterior()) {
      for (int s = 1; s <= n; ++s) {
        CHECK(determinant(R, matrix_E(R, s)) == permutation_determinant(R, matrix_E(R, s)));
      }
    }
  }
}

TEST_CASE("L is the product of monic linear forms") {
  for (auto [p, n] : {std::pair{2u, 2}, {2u, 3}, {3u, 2}, {3u, 3}, {5u, 2}}) {
    const Ring R(p, n);
    const Element L = dickson_L(R);
    CHECK(monic_linear_forms_product(R, MonicConvention::TrailingCoefficient) == L);
    const Element leading = monic_linear_forms_product(R, MonicConvention::LeadingCoefficient);
    CHECK((leading == L || leading == -L));
  }
  // With a leading 1 the sign flips at (3,2).
  const Ring R(3, 2);
  CHECK(monic_linear_forms_product(R, MonicConvention::LeadingCoefficient) == -dickson_L(R));
}

TEST_CASE("Dickson invariants") {
  const Ring R31(3, 1), R21(2, 1);
  CHECK(dickson_invariant(R31, 0) == el(R31, "x1^2"));
  CHECK(dickson_invariant(R21, 0) == el(R21, "x1"));
  for (auto [p, n] : {std::pair{2u, 2}, {3u, 2}, {2u, 3}, {3u, 3}, {5u, 2}}) {
    const Ring R(p, n);
    const auto c = dickson_invariants(R);
    REQUIRE(c.size() == static_cast<std::size_t>(n));
    // x^{p^n} = sum_r (-1)^{n-r+1} c_r x^{p^r} for x = x_1 + 2 x_n (any linear form).
    const Element x = el(R, "x1 + 2*x" + std::to_string(n));
    std::uint64_t q = 1;
    Element rhs(R);
    for (int r = 0; r < n; ++r, q *= p) {
      const Element term = c[r] * power(x, q);
      rhs += (n - r + 1) % 2 == 0 ? term : -term;
    }
    CHECK(power(x, q) == rhs);
    // The top coefficient generates: c_{n,0} = L^{p-1}.
    CHECK(c[0] == power(dickson_L(R), p - 1));
  }
  CHECK_THROWS_AS(dickson_invariant(R31, 1), UsageError);
}

TEST_CASE("index sets") {
  CHECK(to_string(parse_index_set("1,2", 2)) == "{1,2}");
  CHECK(parse_index_set("", 3).empty());
  CHECK_THROWS_AS(parse_index_set("4", 3), UsageError);
  CHECK(IndexSet{1, 3}.smallest_missing(3) == 2);
  CHECK(IndexSet{1, 2, 3}.smallest_missing(3) == 4);
  CHECK(subsets_of_size(4, 2).size() == 6);
  CHECK(all_subsets(3).size() == 8);
  CHECK(IndexSet{2} < IndexSet{1, 2});
  CHECK(IndexSet{1, 3} < IndexSet{2, 3});
  CHECK(mui_degree(Ring(3, 2), IndexSet{}) == 8);
  CHECK(mui_degree(Ring(3, 2), IndexSet{1, 2}) == 2);
}
