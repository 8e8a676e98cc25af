#include <doctest.h>

#include <random>

#include "mui/error.hpp"
#include "mui/essential.hpp"
#include "mui/sampling.hpp"
#include "support.hpp"

using namespace mui;
using mui::testing::el;

namespace {

// Brute-force Ess_d: every vector of F_p^dim whose element restricts to zero.
std::size_t brute_force_ess_count(const Ring& ring, std::uint64_t d) {
  auto basis = monomial_basis(ring, d);
  const auto subgroups = enumerate_maximal_subgroups(ring);
  const std::size_t dim = basis->size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= ring.p();
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Scalar> v(dim);
    std::size_t c = code;
    for (std::size_t i = 0; i < dim; ++i, c /= ring.p()) v[i] = static_cast<Scalar>(c % ring.p());
    const Element y = basis->element(v);
    bool essential = true;
    for (const auto& h : subgroups) essential = essential && restrict(y, h).is_zero();
    count += essential;
  }
  return count;
}

std::size_t power_of(std::size_t p, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= p;
  return r;
}

}  // namespace

TEST_CASE("maximal subgroups are counted by projective space") {
  CHECK(enumerate_maximal_subgroups(Ring(3, 2)).size() == 4);
  CHECK(enumerate_maximal_subgroups(Ring(3, 3)).size() == 13);
  CHECK(enumerate_maximal_subgroups(Ring(2, 3)).size() == 7);
  CHECK(enumerate_maximal_subgroups(Ring(5, 2)).size() == 6);
  for (const auto& h : enumerate_maximal_subgroups(Ring(3, 3))) {
    std::size_t lead = 0;
    while (h.form[lead] == 0) ++lead;
    CHECK(h.form[lead] == 1);
    CHECK(h.restriction.size() == 2);
  }
}

TEST_CASE("restriction examples") {
  const Ring R(3, 2);
  const auto H = MaximalSubgroup::standard(R.field(), {0, 1});
  const RestrictionMap res(R, H);
  const Ring& T = res.target();
  CHECK(T.rank() == 1);
  CHECK(res(Element::one(R)) == Element::one(T));
  CHECK(res(mui_invariant(R, 2)).is_zero());
  CHECK(res(el(R, "x1^2")) == el(T, "x1^2"));
  CHECK(res(el(R, "a2 + x2")).is_zero());
  CHECK_THROWS_AS(MaximalSubgroup::with_matrix(R.field(), {0, 1}, {{0, 1}}), UsageError);
}

TEST_CASE("essential classes") {
  for (auto [p, n] : {std::pair{3u, 2}, {3u, 3}, {5u, 2}}) {
    const Ring R(p, n);
    for (int s = 1; s <= n; ++s) CHECK(is_essential(mui_invariant(R, s)));
    CHECK_FALSE(is_essential(Element::one(R)));
    CHECK(is_essential(dickson_L(R)));
  }
  CHECK(is_essential(dickson_L(Ring(2, 3))));
}

TEST_CASE("essential classes form an ideal") {
  std::mt19937_64 rng(31);
  const Ring R(3, 3);
  const auto Ms = std::vector<Element>{mui_invariant(R, 1), mui_invariant(R, 2), mui_invariant(R, 3)};
  for (int k = 0; k < 100; ++k) {
    const Element z = random_element(R, k % 7, rng, 4);
    CHECK(is_essential(Ms[k % 3] * z));
  }
}

TEST_CASE("ess_basis examples") {
  const Ring R(3, 2);
  CHECK(ess_basis(R, 1).total.rank() == 0);
  const EssentialPiece two = ess_basis(R, 2);
  CHECK(two.total.contains(el(R, "a1a2")));
  CHECK(two.by_rank[2].rank() == 1);
  const Ring F(2, 2);
  const EssentialPiece three = ess_basis(F, 3);
  CHECK(three.total.rank() == 1);
  CHECK(three.total.contains(el(F, "x1x2^2 + x1^2x2")));
}

TEST_CASE("ess_basis agrees with brute force") {
  for (auto [p, n, D] : {std::tuple{3u, 2, 6u}, {2u, 2, 5u}, {2u, 3, 3u}, {5u, 1, 4u}}) {
    const Ring R(p, n);
    for (std::uint64_t d = 0; d <= D; ++d) {
      if (monomial_basis(R, d)->size() > 10) continue;
      REQUIRE(power_of(p, ess_basis(R, d).total.rank()) == brute_force_ess_count(R, d));
    }
  }
}

TEST_CASE("Ess does not depend on the chosen restriction coordinates") {
  // Same subgroups, restriction matrices composed with an invertible change of basis.
  const Ring R(3, 3);
  const auto standard = enumerate_maximal_subgroups(R);
  const std::vector<std::vector<Scalar>> change{{1, 2}, {1, 1}};  // det = 1 - 2 = 2 != 0 mod 3
  std::mt19937_64 rng(37);
  for (std::uint64_t d : {5u, 8u, 11u, 14u}) {
    auto basis = monomial_basis(R, d);
    std::vector<std::vector<Element>> images;
    std::vector<RestrictionMap> maps;
    for (const auto& h : standard) {
      std::vector<std::vector<Scalar>> phi(2, std::vector<Scalar>(3, 0));
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 2; ++k)
            phi[j][i] = R.field().add(phi[j][i], R.field().mul(change[j][k], h.restriction[k][i]));
      maps.emplace_back(R, MaximalSubgroup::with_matrix(R.field(), h.form, phi));
    }
    for (const auto& m : basis->monomials) {
      std::vector<Element> tuple;
      for (const auto& map : maps) tuple.push_back(map(m));
      images.push_back(std::move(tuple));
    }
    CHECK(kernel_of_joint_map(basis, images) == ess_basis(R, d).total);
  }
}

TEST_CASE("decompose") {
  const Ring R(3, 2);
  const MuiTable table = MuiTable::build(R);
  for (const auto& [S, M] : table.M) {
    const MuiDecomposition f = decompose(M, table);
    for (const auto& [T, g] : f) CHECK(g == (T == S ? Element::one(R) : Element(R)));
  }
  const MuiDecomposition f = decompose(el(R, "x1") * mui_invariant(R, 1) + el(R, "x2") * mui_invariant(R, 2));
  CHECK(f.at(IndexSet{1}) == el(R, "x1"));
  CHECK(f.at(IndexSet{2}) == el(R, "x2"));
  CHECK(decompose(Element(R)).empty());
  CHECK_THROWS_AS(decompose(el(R, "x1")), UsageError);
  CHECK_THROWS_AS(decompose(mui_invariant(R, 1) + dickson_L(R)), UsageError);
}

TEST_CASE("decompose recovers random coefficients") {
  std::mt19937_64 rng(41);
  for (auto [p, n] : {std::pair{3u, 2}, {3u, 3}, {5u, 2}}) {
    const Ring R(p, n);
    const MuiTable table = MuiTable::build(R);
    for (int k = 0; k < 30; ++k) {
      const int r = k % (n + 1);
      MuiDecomposition coefficients;
      for (IndexSet S : subsets_of_size(n, r)) {
        coefficients.insert_or_assign(S, random_polynomial(R, k % 4, rng, 3));
      }
      const MuiDecomposition found = decompose(reconstruct(table, coefficients), table);
      for (const auto& [S, g] : coefficients) {
        CHECK((found.count(S) ? found.at(S) : Element(R)) == g);
      }
    }
  }
}

TEST_CASE("Steenrod closure") {
  const Ring R(3, 2);
  for (const auto& span : steenrod_closure(Element(R), 10)) CHECK(span.rank() == 0);
  const auto closure = steenrod_closure(el(R, "a1a2"), 20);
  REQUIRE(closure.size() == 21);
  for (std::uint64_t d = 0; d <= 20; ++d) CHECK(closure[d] == ess_basis(R, d).total);
  const MuiTable table = MuiTable::build(R);
  for (const auto& [S, M] : table.M) CHECK(closure[mui_degree(R, S)].contains(M));
  CHECK_THROWS_AS(steenrod_closure(el(R, "a1 + x1"), 5), UsageError);
}

TEST_CASE("proof words") {
  const Ring R(3, 3);
  const MuiTable table = MuiTable::build(R);
  CHECK(mui_word(R, IndexSet::full(3)).ops.empty());
  CHECK(to_string(mui_word(R, IndexSet{2, 3}), R.field()) == "b");
  CHECK(to_string(mui_word(R, IndexSet{1, 3}), R.field()) == "P1 b");
  CHECK(to_string(mui_word(R, IndexSet{1, 2}), R.field()) == "P3 P1 b");
  for (IndexSet S : all_subsets(3)) {
    CHECK(apply_word(mui_word(R, S), table.M.at(IndexSet::full(3))) == table.M.at(S));
  }
}
