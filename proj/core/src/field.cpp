#include "mui/field.hpp"

#include "mui/error.hpp"

namespace mui {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 16)) throw UsageError("prime " + std::to_string(p) + " exceeds 16 bits");
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  // Fermat: a^(p-2)
  return pow(a, p_ - 2);
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const noexcept {
  Scalar result = 1 % p_;
  Scalar base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Scalar PrimeField::from_int(std::int64_t v) const noexcept {
  auto r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

namespace {

// C(m, k) mod p for m, k < p, via factorial ratio.
Scalar small_binomial(std::uint32_t m, std::uint32_t k, const PrimeField& field) {
  if (k > m) return 0;
  Scalar num = 1, den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = field.mul(num, m - i);
    den = field.mul(den, i + 1);
  }
  return field.mul(num, field.inv(den));
}

}  // namespace

Scalar binomial_mod_p(std::uint64_t m, std::uint64_t k, const PrimeField& field) {
  if (k > m) return 0;
  const std::uint32_t p = field.characteristic();
  Scalar result = 1;
  while (k > 0 || m > 0) {
    const auto md = static_cast<std::uint32_t>(m % p);
    const auto kd = static_cast<std::uint32_t>(k % p);
    if (kd > md) return 0;
    result = field.mul(result, small_binomial(md, kd, field));
    m /= p;
    k /= p;
  }
  return result;
}

Scalar binomial_mod_p(std::uint64_t m, std::uint64_t k, std::uint32_t p) {
  return binomial_mod_p(m, k, PrimeField(p));
}

}  // namespace mui
