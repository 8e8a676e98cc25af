#include "mui/sampling.hpp"

#include "mui/linalg.hpp"

namespace mui {

namespace {

Element sample_from(const Ring& ring, const std::vector<Monomial>& pool, std::mt19937_64& rng,
                    std::size_t max_terms) {
  if (pool.empty()) return Element(ring);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<Scalar> coef(1, ring.p() - 1);
  std::vector<Term> terms;
  for (std::size_t k = count(rng); k > 0; --k) terms.push_back({pool[pick(rng)], coef(rng)});
  return Element::from_terms(ring, std::move(terms));
}

}  // namespace

Element random_element(const Ring& ring, std::uint64_t d, std::mt19937_64& rng,
                       std::size_t max_terms) {
  return sample_from(ring, monomial_basis(ring, d)->monomials, rng, max_terms);
}

Element random_polynomial(const Ring& ring, std::uint64_t m, std::mt19937_64& rng,
                          std::size_t max_terms) {
  const std::uint64_t d = ring.has_exterior() ? 2 * m : m;
  const auto basis = monomial_basis(ring, d);
  std::vector<Monomial> pool;
  for (const Monomial& mono : basis->monomials) {
    if (mono.is_polynomial()) pool.push_back(mono);
  }
  return sample_from(ring, pool, rng, max_terms);
}

MaximalSubgroup random_subgroup(const Ring& ring, std::mt19937_64& rng) {
  auto all = enumerate_maximal_subgroups(ring);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace mui
