#pragma once

#include <cstdint>
#include <random>

#include "mui/algebra.hpp"
#include "mui/essential.hpp"

namespace mui {

/// Random homogeneous element of total degree d with at most `max_terms`
/// terms (possibly zero if the degree is empty).
Element random_element(const Ring& ring, std::uint64_t d, std::mt19937_64& rng,
                       std::size_t max_terms = 4);

/// Random purely polynomial element with every term of polynomial degree m.
Element random_polynomial(const Ring& ring, std::uint64_t m, std::mt19937_64& rng,
                          std::size_t max_terms = 4);

MaximalSubgroup random_subgroup(const Ring& ring, std::mt19937_64& rng);

}  // namespace mui
