#pragma once

#include <cstdint>

namespace mui {

/// Residue in [0, p). All higher layers assume canonical representatives.
using Scalar = std::uint32_t;

/// The prime field F_p for a runtime prime p.
///
/// p is limited to 16 bits so a product of two residues fits in 32 bits.
class PrimeField {
 public:
  /// Throws UsageError unless p is a prime below 2^16.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_two() const noexcept { return p_ == 2; }

  Scalar add(Scalar a, Scalar b) const noexcept {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept { return (a * b) % p_; }
  /// Throws DomainError for a == 0.
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;

  /// Canonical residue of an arbitrary integer.
  Scalar from_int(std::int64_t v) const noexcept;
  /// +1 or -1 as a residue.
  Scalar sign(bool negative) const noexcept { return negative ? p_ - 1 : 1; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// C(m, k) mod p by Lucas' theorem on base-p digits. Zero when k > m.
Scalar binomial_mod_p(std::uint64_t m, std::uint64_t k, const PrimeField& field);
Scalar binomial_mod_p(std::uint64_t m, std::uint64_t k, std::uint32_t p);

}  // namespace mui
