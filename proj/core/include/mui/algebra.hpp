#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mui/field.hpp"

namespace mui {

/// Largest supported rank n of the elementary abelian group.
inline constexpr int kMaxRank = 8;

using Exponent = std::uint32_t;

/// One basis term a_E * x^m of F_p[x_1..x_n] (x) Lambda(a_1..a_n).
///
/// Bit i-1 of `exterior` is set iff a_i is a factor; the exterior factors are
/// always understood in ascending index order. Exponents beyond the rank of
/// the ambient ring are zero.
struct Monomial {
  std::uint32_t exterior = 0;
  std::array<Exponent, kMaxRank> exponents{};

  int exterior_rank() const noexcept;
  std::uint64_t polynomial_degree() const noexcept;
  bool is_polynomial() const noexcept { return exterior == 0; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical term order: exterior subsets lexicographically with a_1 first
/// (so a1a2 < a1 < a2 < 1), then exponent vectors lexicographically
/// descending (x1^2 < x1x2 < x2^2). Printing and degree bases use this order.
bool canonical_less(const Monomial& a, const Monomial& b) noexcept;

struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return canonical_less(a, b);
  }
};

/// H^*(V, F_p) for V of rank n. For p = 2 there are no exterior generators and
/// x_i sits in degree 1.
class Ring {
 public:
  Ring(std::uint32_t p, int rank);
  Ring(PrimeField field, int rank);

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.characteristic(); }
  int rank() const noexcept { return rank_; }
  bool has_exterior() const noexcept { return !field_.is_two(); }

  std::uint64_t degree(const Monomial& m) const noexcept;
  /// Same prime, rank n - 1.
  Ring quotient_rank() const { return Ring(field_, rank_ - 1); }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  PrimeField field_;
  int rank_;
};

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

/// A finite F_p-linear combination of monomials.
///
/// Terms are kept sorted in canonical order with nonzero coefficients, so
/// equality is structural. Elements are immutable values.
class Element {
 public:
  explicit Element(Ring ring) : ring_(ring) {}

  static Element one(const Ring& ring);
  static Element scalar(const Ring& ring, Scalar c);
  /// a_i, 1 <= i <= n. Throws UsageError at p = 2.
  static Element a(const Ring& ring, int i);
  /// x_i^e, 1 <= i <= n.
  static Element x(const Ring& ring, int i, Exponent e = 1);
  static Element from_monomial(const Ring& ring, const Monomial& m, Scalar c = 1);
  /// Sorts and combines arbitrary terms (duplicates and zeros allowed).
  static Element from_terms(const Ring& ring, std::vector<Term> terms);

  const Ring& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Monomial& m) const noexcept;

  Element operator-() const;
  Element scaled(Scalar c) const;

  friend Element operator+(const Element& u, const Element& v);
  friend Element operator-(const Element& u, const Element& v);
  friend Element operator*(const Element& u, const Element& v);
  friend bool operator==(const Element& u, const Element& v);

  Element& operator+=(const Element& v) { return *this = *this + v; }
  Element& operator-=(const Element& v) { return *this = *this - v; }
  Element& operator*=(const Element& v) { return *this = *this * v; }

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

/// Graded-commutative product with the Koszul sign a_i a_j = -a_j a_i.
Element multiply(const Element& u, const Element& v);
Element power(const Element& u, std::uint64_t e);

/// Product of two monomials; `sign_negative` reports the Koszul sign. Returns
/// false when an exterior generator repeats (the product vanishes).
bool multiply_monomials(const Monomial& a, const Monomial& b, int rank, Monomial& out,
                        bool& sign_negative) noexcept;

/// Terms of y with exactly r exterior factors, i.e. the N_r summand.
Element project_exterior_rank(const Element& y, int r);

/// q with q * f == y, for f purely polynomial and nonzero. Each exterior
/// component of y is divided by f with graded-lex multivariate division.
/// Throws NotDivisibleError on a nonzero remainder, UsageError if f is not
/// purely polynomial or is zero.
Element exact_divide(const Element& y, const Element& f);

enum class DegreeKind { Zero, Homogeneous, Inhomogeneous };

struct TotalDegree {
  DegreeKind kind;
  std::uint64_t value = 0;  // meaningful for Homogeneous only

  bool is_homogeneous() const noexcept { return kind == DegreeKind::Homogeneous; }
  friend bool operator==(const TotalDegree&, const TotalDegree&) = default;
};

TotalDegree total_degree(const Element& y);

/// Canonical text, e.g. "2*a1a2*x1^3x2 + x2^4"; zero prints as "0".
std::string to_string(const Element& y);
std::string to_string(const Ring& ring, const Monomial& m);

/// Parses the canonical form and a slightly wider grammar: terms joined by
/// '+' or '-', each a product of integers, a<i> and x<i>^<e> with optional
/// '*'. Factors may appear in any order; Koszul signs are applied.
Element parse_element(const Ring& ring, std::string_view text);

}  // namespace mui
