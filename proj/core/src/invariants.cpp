#include "mui/invariants.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "mui/error.hpp"

namespace mui {

IndexSet::IndexSet(std::initializer_list<int> elements) {
  for (int s : elements) {
    if (s < 1 || s > kMaxRank) throw UsageError("index " + std::to_string(s) + " out of range");
    mask_ |= 1u << (s - 1);
  }
}

int IndexSet::size() const noexcept { return std::popcount(mask_); }

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  for (std::uint32_t rest = mask_; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
  return out;
}

int IndexSet::smallest_missing(int n) const noexcept {
  for (int s = 1; s <= n; ++s) {
    if (!contains(s)) return s;
  }
  return n + 1;
}

bool operator<(IndexSet a, IndexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

std::string to_string(IndexSet s) {
  std::string out = "{";
  for (int e : s.elements()) {
    if (out.size() > 1) out += ',';
    out += std::to_string(e);
  }
  return out + "}";
}

IndexSet parse_index_set(const std::string& text, int n) {
  IndexSet result;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" {}") == std::string::npos) continue;
    int s = 0;
    try {
      std::size_t used = 0;
      s = std::stoi(item.substr(item.find_first_not_of(" {")), &used);
    } catch (const std::exception&) {
      throw UsageError("bad index '" + item + "'");
    }
    if (s < 1 || s > n) {
      throw UsageError("index " + std::to_string(s) + " outside 1.." + std::to_string(n));
    }
    result = result.with(s);
  }
  return result;
}

std::vector<IndexSet> subsets_of_size(int n, int r) {
  std::vector<IndexSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) == r) out.emplace_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexSet> all_subsets(int n) {
  std::vector<IndexSet> out;
  for (int r = 0; r <= n; ++r) {
    auto layer = subsets_of_size(n, r);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Exponent prime_power(const Ring& ring, int t) {
  std::uint64_t e = 1;
  for (int i = 0; i < t; ++i) {
    e *= ring.p();
    if (e > std::numeric_limits<Exponent>::max()) throw ResourceError("exponent overflow");
  }
  return static_cast<Exponent>(e);
}

void require_odd(const Ring& ring, const char* what) {
  if (!ring.has_exterior()) throw UsageError(std::string(what) + " is only defined for odd p");
}

}  // namespace

VariableMatrix matrix_C(const Ring& ring) {
  VariableMatrix m;
  for (int s = 1; s <= ring.rank(); ++s) {
    m.rows.push_back(MatrixRow::powers(s - 1));
    m.columns.push_back(s);
  }
  return m;
}

VariableMatrix matrix_E(const Ring& ring, int s) {
  if (s < 1 || s > ring.rank()) throw UsageError("row index " + std::to_string(s) + " out of range");
  VariableMatrix m = matrix_C(ring);
  m.rows.erase(m.rows.begin() + (s - 1));
  m.rows.insert(m.rows.begin(), MatrixRow::exterior());
  return m;
}

Element entry(const Ring& ring, const MatrixRow& row, int column) {
  if (row.kind == MatrixRow::Kind::Exterior) return Element::a(ring, column);
  return Element::x(ring, column, prime_power(ring, row.power));
}

Element determinant(const Ring& ring, const VariableMatrix& m) {
  if (m.rows.size() != m.columns.size()) throw UsageError("determinant of a non-square matrix");
  if (m.rows.empty()) return Element::one(ring);
  VariableMatrix minor;
  minor.rows.assign(m.rows.begin() + 1, m.rows.end());
  Element result(ring);
  for (std::size_t j = 0; j < m.columns.size(); ++j) {
    minor.columns = m.columns;
    minor.columns.erase(minor.columns.begin() + static_cast<std::ptrdiff_t>(j));
    const Element cofactor = entry(ring, m.rows.front(), m.columns[j]) * determinant(ring, minor);
    result = (j % 2 == 0) ? result + cofactor : result - cofactor;
  }
  return result;
}

Element dickson_L(const Ring& ring) { return determinant(ring, matrix_C(ring)); }

Element gamma(const Ring& ring, int s, int i) {
  const int n = ring.rank();
  if (s < 1 || s > n || i < 1 || i > n) throw UsageError("minor index out of range");
  VariableMatrix m = matrix_C(ring);
  m.rows.erase(m.rows.begin() + (s - 1));
  m.columns.erase(m.columns.begin() + (i - 1));
  return determinant(ring, m);
}

Element mui_invariant(const Ring& ring, int s) {
  require_odd(ring, "M_{n,s}");
  return determinant(ring, matrix_E(ring, s));
}

Element mui_invariant(const Ring& ring, IndexSet S) {
  require_odd(ring, "M_{n,S}");
  if ((S.mask() & ~IndexSet::full(ring.rank()).mask()) != 0) {
    throw UsageError("index set " + to_string(S) + " not contained in 1.." + std::to_string(ring.rank()));
  }
  const Element L = dickson_L(ring);
  if (S.empty()) return L;
  const auto indices = S.elements();
  Element product = Element::one(ring);
  for (int s : indices) product = product * mui_invariant(ring, s);
  if (indices.size() == 1) return product;
  try {
    return exact_divide(product, power(L, indices.size() - 1));
  } catch (const NotDivisibleError&) {
    throw ConsistencyError("M_{n,s} product for " + to_string(S) + " not divisible by L_n^{r-1}");
  }
}

Scalar mui_epsilon(const Ring& ring, IndexSet S) {
  const int n = ring.rank();
  const IndexSet T = S.complement(n);
  const Element product = mui_invariant(ring, S) * mui_invariant(ring, T);
  const Element top = mui_invariant(ring, IndexSet::full(n));
  Element quotient(ring);
  try {
    quotient = exact_divide(product, dickson_L(ring));
  } catch (const NotDivisibleError&) {
    throw ConsistencyError("M_S M_T not divisible by L_n for S = " + to_string(S));
  }
  if (quotient.is_zero() || top.is_zero()) throw ConsistencyError("M_S M_T vanished for S = " + to_string(S));
  const Term& lead = top.terms().front();
  const PrimeField& field = ring.field();
  const Scalar c = field.mul(quotient.coefficient(lead.monomial), field.inv(lead.coefficient));
  if (!(top.scaled(c) == quotient) || (c != 1 && c != field.neg(1))) {
    throw ConsistencyError("M_S M_T is not +-L_n M_{n,{1..n}} for S = " + to_string(S));
  }
  return c;
}

MuiTable MuiTable::build(const Ring& ring) {
  require_odd(ring, "the Mui table");
  const int n = ring.rank();
  MuiTable table{ring, dickson_L(ring), {}, {}, 0};
  for (IndexSet S : all_subsets(n)) table.M.emplace(S, mui_invariant(ring, S));
  const Element& top = table.M.at(IndexSet::full(n));
  Monomial all_a;
  all_a.exterior = IndexSet::full(n).mask();
  if (top.size() != 1 || !(top.terms().front().monomial == all_a)) {
    throw ConsistencyError("M_{n,{1..n}} is not a scalar multiple of a_1..a_n");
  }
  table.top_scalar = top.terms().front().coefficient;
  for (IndexSet S : all_subsets(n)) table.epsilon.emplace(S, mui_epsilon(ring, S));
  return table;
}

// ---------------------------------------------------------------------------

namespace {

// Calls visit(coefficients) for every vector in F_p^n.
template <typename Visit>
void for_each_vector(const Ring& ring, Visit&& visit) {
  const int n = ring.rank();
  std::vector<Scalar> v(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(v);
    int i = n - 1;
    while (i >= 0 && v[i] == ring.p() - 1) v[i--] = 0;
    if (i < 0) return;
    ++v[i];
  }
}

Element linear_form(const Ring& ring, const std::vector<Scalar>& v) {
  Element form(ring);
  for (int i = 0; i < ring.rank(); ++i) {
    if (v[i] != 0) form += Element::x(ring, i + 1).scaled(v[i]);
  }
  return form;
}

}  // namespace

std::vector<Element> fundamental_polynomial(const Ring& ring) {
  const std::uint64_t degree = prime_power(ring, ring.rank());
  std::vector<Element> f(degree + 1, Element(ring));
  f[0] = Element::one(ring);
  std::uint64_t current = 0;
  for_each_vector(ring, [&](const std::vector<Scalar>& v) {
    const Element form = linear_form(ring, v);
    // f <- f * (X - form)
    for (std::uint64_t k = current + 1; k > 0; --k) f[k] = f[k - 1] - form * f[k];
    f[0] = -(form * f[0]);
    ++current;
  });
  for (std::uint64_t k = 0; k <= degree; ++k) {
    if (f[k].is_zero()) continue;
    std::uint64_t q = k;
    while (q > 1 && q % ring.p() == 0) q /= ring.p();
    if (q != 1) {
      throw ConsistencyError("X^" + std::to_string(k) + " survives in the fundamental equation");
    }
  }
  return f;
}

std::vector<Element> dickson_invariants(const Ring& ring) {
  const auto f = fundamental_polynomial(ring);
  std::vector<Element> out;
  for (int r = 0; r < ring.rank(); ++r) {
    const Element& coef = f[prime_power(ring, r)];
    out.push_back((ring.rank() - r) % 2 == 0 ? coef : -coef);
  }
  return out;
}

Element dickson_invariant(const Ring& ring, int r) {
  if (r < 0 || r >= ring.rank()) throw UsageError("Dickson index " + std::to_string(r) + " outside 0..n-1");
  return dickson_invariants(ring)[static_cast<std::size_t>(r)];
}

Element monic_linear_forms_product(const Ring& ring, MonicConvention convention) {
  Element product = Element::one(ring);
  for_each_vector(ring, [&](const std::vector<Scalar>& v) {
    auto nonzero = [](Scalar c) { return c != 0; };
    const auto first = std::find_if(v.begin(), v.end(), nonzero);
    if (first == v.end()) return;
    const Scalar normalizer =
        convention == MonicConvention::LeadingCoefficient ? *first : *std::find_if(v.rbegin(), v.rend(), nonzero);
    if (normalizer != 1) return;
    product = product * linear_form(ring, v);
  });
  return product;
}

std::uint64_t mui_degree(const Ring& ring, IndexSet S) {
  std::uint64_t sum = 0;
  for (int s = 1; s <= ring.rank(); ++s) {
    if (!S.contains(s)) sum += prime_power(ring, s - 1);
  }
  return static_cast<std::uint64_t>(S.size()) + 2 * sum;
}

}  // namespace mui
