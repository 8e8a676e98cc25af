#include "mui/steenrod.hpp"

#include <bit>
#include <cctype>
#include <limits>

#include "mui/error.hpp"

namespace mui {

Element bockstein(const Element& y) {
  const Ring& ring = y.ring();
  if (!ring.has_exterior()) throw UsageError("the Bockstein is Sq1 at p = 2; use power operations");
  const PrimeField& field = ring.field();
  std::vector<Term> out;
  for (const Term& t : y.terms()) {
    int position = 0;
    for (std::uint32_t rest = t.monomial.exterior; rest; rest &= rest - 1, ++position) {
      const int j = std::countr_zero(rest);
      Monomial m = t.monomial;
      m.exterior &= ~(1u << j);
      if (m.exponents[j] == std::numeric_limits<Exponent>::max()) {
        throw ResourceError("exponent overflow");
      }
      ++m.exponents[j];
      const Scalar c = (position & 1) ? field.neg(t.coefficient) : t.coefficient;
      out.push_back({m, c});
    }
  }
  return Element::from_terms(ring, std::move(out));
}

namespace {

struct PowerExpansion {
  const Ring& ring;
  const PrimeField& field;
  std::uint64_t step;  // exponent increase per unit of k_i
  std::vector<Term>& out;

  void run(const Monomial& source, Monomial& target, int i, std::uint64_t remaining, Scalar coef) {
    if (i == ring.rank()) {
      if (remaining == 0) out.push_back({target, coef});
      return;
    }
    const Exponent m = source.exponents[i];
    const std::uint64_t limit = std::min<std::uint64_t>(m, remaining);
    for (std::uint64_t ki = 0; ki <= limit; ++ki) {
      const Scalar b = binomial_mod_p(m, ki, field);
      if (b == 0) continue;
      const std::uint64_t e = m + ki * step;
      if (e > std::numeric_limits<Exponent>::max()) throw ResourceError("exponent overflow");
      target.exponents[i] = static_cast<Exponent>(e);
      run(source, target, i + 1, remaining - ki, field.mul(coef, b));
    }
    target.exponents[i] = m;
  }
};

}  // namespace

Element power_operation(std::uint64_t k, const Element& y) {
  if (k == 0) return y;
  const Ring& ring = y.ring();
  std::vector<Term> out;
  PowerExpansion expansion{ring, ring.field(), ring.field().is_two() ? 1u : ring.p() - 1, out};
  for (const Term& t : y.terms()) {
    // P^k vanishes unless k <= polynomial degree.
    if (t.monomial.polynomial_degree() < k) continue;
    Monomial target = t.monomial;
    expansion.run(t.monomial, target, 0, k, t.coefficient);
  }
  return Element::from_terms(ring, std::move(out));
}

Element apply(const SteenrodOp& op, const Element& y) {
  return op.kind == SteenrodOp::Kind::Bockstein ? bockstein(y) : power_operation(op.k, y);
}

Element apply_word(const SteenrodWord& word, const Element& y) {
  Element result = y;
  for (auto it = word.ops.rbegin(); it != word.ops.rend(); ++it) result = apply(*it, result);
  return result;
}

SteenrodWord parse_word(std::string_view text, const PrimeField& field) {
  SteenrodWord word;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
        throw ParseError("operation index too large", start);
      }
      v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
    }
    if (pos == start) throw ParseError("expected an operation index", pos);
    return v;
  };
  skip_space();
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (text.substr(pos, 2) == "Sq") {
      if (!field.is_two()) throw ParseError("Sq is only defined at p = 2; use P and b", start);
      pos += 2;
      word.ops.push_back(SteenrodOp::P(number()));
    } else if (text[pos] == 'P') {
      if (field.is_two()) throw ParseError("use Sq at p = 2", start);
      ++pos;
      word.ops.push_back(SteenrodOp::P(number()));
    } else if (text[pos] == 'b') {
      if (field.is_two()) throw ParseError("the Bockstein is Sq1 at p = 2", start);
      ++pos;
      word.ops.push_back(SteenrodOp::beta());
    } else {
      throw ParseError(std::string("unknown operation '") + text[pos] + "'", start);
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("expected a space between operations", pos);
    }
    skip_space();
  }
  return word;
}

std::string to_string(const SteenrodWord& word, const PrimeField& field) {
  std::string out;
  for (const SteenrodOp& op : word.ops) {
    if (!out.empty()) out += ' ';
    if (op.kind == SteenrodOp::Kind::Bockstein) {
      out += 'b';
    } else {
      out += (field.is_two() ? "Sq" : "P") + std::to_string(op.k);
    }
  }
  return out;
}

}  // namespace mui
