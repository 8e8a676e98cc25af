#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mui/algebra.hpp"

namespace mui {

/// Bockstein: the derivation with beta(a_i) = x_i, beta(x_i) = 0 and
/// beta(uv) = beta(u) v + (-1)^{deg u} u beta(v). Odd p only.
Element bockstein(const Element& y);

/// P^k at odd p, Sq^k at p = 2, by the Cartan formula on monomials:
///   P^k(E * prod x_i^{m_i}) = E * sum_{k_1+..+k_n=k} prod C(m_i,k_i) x_i^{m_i + k_i(p-1)}
/// (at p = 2 the exponent grows by k_i instead). Exterior generators pass
/// through unchanged.
Element power_operation(std::uint64_t k, const Element& y);

struct SteenrodOp {
  enum class Kind { Bockstein, Power };
  Kind kind;
  std::uint64_t k = 0;  // Power only

  static SteenrodOp beta() { return {Kind::Bockstein, 0}; }
  static SteenrodOp P(std::uint64_t k) { return {Kind::Power, k}; }

  friend bool operator==(const SteenrodOp&, const SteenrodOp&) = default;
};

/// A composite operation, written left to right and applied right to left.
struct SteenrodWord {
  std::vector<SteenrodOp> ops;

  friend bool operator==(const SteenrodWord&, const SteenrodWord&) = default;
};

Element apply(const SteenrodOp& op, const Element& y);
Element apply_word(const SteenrodWord& word, const Element& y);

/// "b", "P<k>" (odd p) and "Sq<k>" (p = 2), space separated, e.g. "P3 b P1".
/// The empty string is the identity word.
SteenrodWord parse_word(std::string_view text, const PrimeField& field);
std::string to_string(const SteenrodWord& word, const PrimeField& field);

}  // namespace mui
