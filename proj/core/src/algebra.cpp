#include "mui/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>

#include "mui/error.hpp"

namespace mui {

int Monomial::exterior_rank() const noexcept { return std::popcount(exterior); }

std::uint64_t Monomial::polynomial_degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
}

bool canonical_less(const Monomial& a, const Monomial& b) noexcept {
  if (a.exterior != b.exterior) {
    const std::uint32_t diff = a.exterior ^ b.exterior;
    const std::uint32_t lowest = diff & (~diff + 1);
    return (a.exterior & lowest) != 0;
  }
  for (int i = 0; i < kMaxRank; ++i) {
    if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
  }
  return false;
}

Ring::Ring(std::uint32_t p, int rank) : Ring(PrimeField(p), rank) {}

Ring::Ring(PrimeField field, int rank) : field_(field), rank_(rank) {
  if (rank < 0 || rank > kMaxRank) {
    throw UsageError("rank " + std::to_string(rank) + " outside 0.." + std::to_string(kMaxRank));
  }
}

std::uint64_t Ring::degree(const Monomial& m) const noexcept {
  if (!has_exterior()) return m.polynomial_degree();
  return static_cast<std::uint64_t>(m.exterior_rank()) + 2 * m.polynomial_degree();
}

// ---------------------------------------------------------------------------

namespace {

void check_index(const Ring& ring, int i) {
  if (i < 1 || i > ring.rank()) {
    throw UsageError("generator index " + std::to_string(i) + " outside 1.." +
                     std::to_string(ring.rank()));
  }
}

void check_same_ring(const Element& u, const Element& v) {
  if (!(u.ring() == v.ring())) throw UsageError("elements over different rings");
}

}  // namespace

Element Element::one(const Ring& ring) { return scalar(ring, 1); }

Element Element::scalar(const Ring& ring, Scalar c) {
  return from_monomial(ring, Monomial{}, c);
}

Element Element::a(const Ring& ring, int i) {
  if (!ring.has_exterior()) throw UsageError("no exterior generators at p = 2");
  check_index(ring, i);
  Monomial m;
  m.exterior = 1u << (i - 1);
  return from_monomial(ring, m);
}

Element Element::x(const Ring& ring, int i, Exponent e) {
  check_index(ring, i);
  Monomial m;
  m.exponents[i - 1] = e;
  return from_monomial(ring, m);
}

Element Element::from_monomial(const Ring& ring, const Monomial& m, Scalar c) {
  Element result(ring);
  c %= ring.p();
  if (c != 0) result.terms_.push_back({m, c});
  return result;
}

Element Element::from_terms(const Ring& ring, std::vector<Term> terms) {
  const PrimeField& field = ring.field();
  std::sort(terms.begin(), terms.end(),
            [](const Term& s, const Term& t) { return canonical_less(s.monomial, t.monomial); });
  Element result(ring);
  auto& out = result.terms_;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    const Scalar c = t.coefficient % ring.p();
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coefficient = field.add(out.back().coefficient, c);
      if (out.back().coefficient == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back({t.monomial, c});
    }
  }
  return result;
}

Scalar Element::coefficient(const Monomial& m) const noexcept {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& key) { return canonical_less(t.monomial, key); });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

Element Element::operator-() const { return scaled(ring_.p() - 1); }

Element Element::scaled(Scalar c) const {
  c %= ring_.p();
  Element result(ring_);
  if (c == 0) return result;
  result.terms_ = terms_;
  for (Term& t : result.terms_) t.coefficient = ring_.field().mul(t.coefficient, c);
  return result;
}

namespace {

Element merge(const Element& u, const Element& v, bool subtract) {
  check_same_ring(u, v);
  const PrimeField& field = u.ring().field();
  std::vector<Term> out;
  out.reserve(u.size() + v.size());
  auto i = u.terms().begin();
  auto j = v.terms().begin();
  auto take_v = [&](const Term& t) {
    out.push_back({t.monomial, subtract ? field.neg(t.coefficient) : t.coefficient});
  };
  while (i != u.terms().end() && j != v.terms().end()) {
    if (canonical_less(i->monomial, j->monomial)) {
      out.push_back(*i++);
    } else if (canonical_less(j->monomial, i->monomial)) {
      take_v(*j++);
    } else {
      const Scalar c = subtract ? field.sub(i->coefficient, j->coefficient)
                                : field.add(i->coefficient, j->coefficient);
      if (c != 0) out.push_back({i->monomial, c});
      ++i;
      ++j;
    }
  }
  for (; i != u.terms().end(); ++i) out.push_back(*i);
  for (; j != v.terms().end(); ++j) take_v(*j);
  // already sorted and combined
  return Element::from_terms(u.ring(), std::move(out));
}

}  // namespace

Element operator+(const Element& u, const Element& v) { return merge(u, v, false); }
Element operator-(const Element& u, const Element& v) { return merge(u, v, true); }
Element operator*(const Element& u, const Element& v) { return multiply(u, v); }

bool operator==(const Element& u, const Element& v) {
  if (!(u.ring() == v.ring()) || u.size() != v.size()) return false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Term& s = u.terms()[k];
    const Term& t = v.terms()[k];
    if (!(s.monomial == t.monomial) || s.coefficient != t.coefficient) return false;
  }
  return true;
}

bool multiply_monomials(const Monomial& a, const Monomial& b, int rank, Monomial& out,
                        bool& sign_negative) noexcept {
  if (a.exterior & b.exterior) return false;
  // Moving each a_j of b left past the a_i of a with i > j costs one sign.
  unsigned swaps = 0;
  for (std::uint32_t rest = b.exterior; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a.exterior >> (j + 1));
  }
  sign_negative = swaps & 1;
  out.exterior = a.exterior | b.exterior;
  for (int i = 0; i < rank; ++i) out.exponents[i] = a.exponents[i] + b.exponents[i];
  for (int i = rank; i < kMaxRank; ++i) out.exponents[i] = 0;
  return true;
}

Element multiply(const Element& u, const Element& v) {
  check_same_ring(u, v);
  const Ring& ring = u.ring();
  const PrimeField& field = ring.field();
  std::vector<Term> terms;
  terms.reserve(u.size() * v.size());
  for (const Term& s : u.terms()) {
    for (const Term& t : v.terms()) {
      Monomial m;
      bool negative = false;
      if (!multiply_monomials(s.monomial, t.monomial, ring.rank(), m, negative)) continue;
      for (int i = 0; i < ring.rank(); ++i) {
        if (m.exponents[i] < s.monomial.exponents[i]) throw ResourceError("exponent overflow");
      }
      Scalar c = field.mul(s.coefficient, t.coefficient);
      if (negative) c = field.neg(c);
      terms.push_back({m, c});
    }
  }
  return Element::from_terms(ring, std::move(terms));
}

Element power(const Element& u, std::uint64_t e) {
  Element result = Element::one(u.ring());
  Element base = u;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Element project_exterior_rank(const Element& y, int r) {
  std::vector<Term> kept;
  for (const Term& t : y.terms()) {
    if (t.monomial.exterior_rank() == r) kept.push_back(t);
  }
  return Element::from_terms(y.ring(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Exact division

namespace {

using ExponentVector = std::array<Exponent, kMaxRank>;

// Graded lex, greatest first.
struct GrlexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const noexcept {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da > db;
    return a > b;
  }
};

using Polynomial = std::map<ExponentVector, Scalar, GrlexGreater>;

Polynomial divide_polynomial(Polynomial remainder, const Polynomial& divisor,
                             const PrimeField& field) {
  const auto& [lead_exp, lead_coef] = *divisor.begin();
  const Scalar lead_inv = field.inv(lead_coef);
  Polynomial quotient;
  while (!remainder.empty()) {
    const auto [exp, coef] = *remainder.begin();
    ExponentVector q{};
    for (int i = 0; i < kMaxRank; ++i) {
      if (exp[i] < lead_exp[i]) throw NotDivisibleError("exact division left a remainder");
      q[i] = exp[i] - lead_exp[i];
    }
    const Scalar qc = field.mul(coef, lead_inv);
    quotient[q] = qc;
    for (const auto& [dexp, dcoef] : divisor) {
      ExponentVector e{};
      for (int i = 0; i < kMaxRank; ++i) e[i] = q[i] + dexp[i];
      const Scalar delta = field.mul(qc, dcoef);
      auto [it, inserted] = remainder.try_emplace(e, 0);
      it->second = field.sub(it->second, delta);
      if (it->second == 0) remainder.erase(it);
    }
  }
  return quotient;
}

}  // namespace

Element exact_divide(const Element& y, const Element& f) {
  check_same_ring(y, f);
  if (f.is_zero()) throw UsageError("division by zero");
  Polynomial divisor;
  for (const Term& t : f.terms()) {
    if (!t.monomial.is_polynomial()) throw UsageError("divisor must be purely polynomial");
    divisor[t.monomial.exponents] = t.coefficient;
  }
  // Group y by exterior part.
  std::map<std::uint32_t, Polynomial> components;
  for (const Term& t : y.terms()) components[t.monomial.exterior][t.monomial.exponents] = t.coefficient;

  std::vector<Term> out;
  for (auto& [exterior, poly] : components) {
    for (const auto& [exp, coef] : divide_polynomial(std::move(poly), divisor, y.ring().field())) {
      Monomial m;
      m.exterior = exterior;
      m.exponents = exp;
      out.push_back({m, coef});
    }
  }
  return Element::from_terms(y.ring(), std::move(out));
}

TotalDegree total_degree(const Element& y) {
  if (y.is_zero()) return {DegreeKind::Zero};
  const std::uint64_t d = y.ring().degree(y.terms().front().monomial);
  for (const Term& t : y.terms()) {
    if (y.ring().degree(t.monomial) != d) return {DegreeKind::Inhomogeneous};
  }
  return {DegreeKind::Homogeneous, d};
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Ring& ring, const Monomial& m) {
  std::string exterior;
  for (int i = 0; i < ring.rank(); ++i) {
    if (m.exterior & (1u << i)) exterior += "a" + std::to_string(i + 1);
  }
  std::string poly;
  for (int i = 0; i < ring.rank(); ++i) {
    if (m.exponents[i] == 0) continue;
    poly += "x" + std::to_string(i + 1);
    if (m.exponents[i] != 1) poly += "^" + std::to_string(m.exponents[i]);
  }
  if (exterior.empty()) return poly;
  if (poly.empty()) return exterior;
  return exterior + "*" + poly;
}

std::string to_string(const Element& y) {
  if (y.is_zero()) return "0";
  std::string out;
  for (const Term& t : y.terms()) {
    if (!out.empty()) out += " + ";
    const std::string mono = to_string(y.ring(), t.monomial);
    if (mono.empty()) {
      out += std::to_string(t.coefficient);
    } else if (t.coefficient == 1) {
      out += mono;
    } else {
      out += std::to_string(t.coefficient) + "*" + mono;
    }
  }
  return out;
}

namespace {

class ElementParser {
 public:
  ElementParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Element parse() {
    skip_space();
    if (at_end()) throw ParseError("empty element", pos_);
    Element result(ring_);
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      Element term = parse_term();
      result = negative ? result - term : result + term;
      skip_space();
      if (at_end()) break;
      if (peek() == '+') {
        negative = false;
      } else if (peek() == '-') {
        negative = true;
      } else {
        throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
      }
      ++pos_;
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::uint64_t parse_number() {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > std::numeric_limits<Exponent>::max()) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", pos_);
    return value;
  }

  int parse_index() {
    const std::size_t start = pos_;
    const auto i = parse_number();
    if (i < 1 || i > static_cast<std::uint64_t>(ring_.rank())) {
      throw ParseError("generator index " + std::to_string(i) + " outside 1.." +
                           std::to_string(ring_.rank()),
                       start);
    }
    return static_cast<int>(i);
  }

  Element parse_factor() {
    skip_space();
    if (at_end()) throw ParseError("expected a factor", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Element::scalar(ring_, static_cast<Scalar>(parse_number() % ring_.p()));
    }
    if (c == 'a') {
      const std::size_t start = pos_++;
      if (!ring_.has_exterior()) throw ParseError("no exterior generators at p = 2", start);
      return Element::a(ring_, parse_index());
    }
    if (c == 'x') {
      ++pos_;
      const int i = parse_index();
      Exponent e = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        e = static_cast<Exponent>(parse_number());
      }
      return Element::x(ring_, i, e);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Element parse_term() {
    Element result = parse_factor();
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c == '*') {
        ++pos_;
        result = result * parse_factor();
      } else if (c == 'a' || c == 'x' || std::isdigit(static_cast<unsigned char>(c))) {
        result = result * parse_factor();
      } else {
        break;
      }
    }
    return result;
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const Ring& ring, std::string_view text) {
  return ElementParser(ring, text).parse();
}

}  // namespace mui
