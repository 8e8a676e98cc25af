#include "mui/linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "mui/error.hpp"

namespace mui {

namespace {

// row_target -= factor * row_source, over columns [from, end).
void subtract_multiple(std::span<Scalar> target, std::span<const Scalar> source, Scalar factor,
                       std::size_t from, const PrimeField& field,
                       std::vector<Scalar>& table) {
  if (factor == 0) return;
  const std::uint32_t p = field.characteristic();
  if (p > 256) {
    for (std::size_t c = from; c < target.size(); ++c) {
      if (source[c] != 0) target[c] = field.sub(target[c], field.mul(factor, source[c]));
    }
    return;
  }
  // table[s] = -factor * s
  table.resize(p);
  const Scalar neg = field.neg(factor);
  for (Scalar s = 0; s < p; ++s) table[s] = field.mul(neg, s);
  for (std::size_t c = from; c < target.size(); ++c) {
    const Scalar s = source[c];
    if (s == 0) continue;
    Scalar t = target[c] + table[s];
    if (t >= p) t -= p;
    target[c] = t;
  }
}

void scale_row(std::span<Scalar> row, Scalar factor, const PrimeField& field) {
  for (Scalar& v : row) v = field.mul(v, factor);
}

}  // namespace

std::vector<std::size_t> Matrix::row_reduce(const PrimeField& field,
                                            std::optional<std::size_t> pivot_cols) {
  const std::size_t limit = std::min(pivot_cols.value_or(cols_), cols_);
  std::vector<std::size_t> pivots;
  std::vector<Scalar> table;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < limit && rank < rows_; ++c) {
    std::size_t r = rank;
    while (r < rows_ && (*this)(r, c) == 0) ++r;
    if (r == rows_) continue;
    if (r != rank) std::swap_ranges(row(r).begin(), row(r).end(), row(rank).begin());
    scale_row(row(rank), field.inv((*this)(rank, c)), field);
    for (std::size_t o = 0; o < rows_; ++o) {
      if (o != rank) subtract_multiple(row(o), row(rank), (*this)(o, c), c, field, table);
    }
    pivots.push_back(c);
    ++rank;
  }
  // Pivot rows first, then the remaining nonzero rows.
  std::vector<Scalar> kept;
  std::size_t kept_rows = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rw = row(r);
    if (r < rank || std::any_of(rw.begin(), rw.end(), [](Scalar v) { return v != 0; })) {
      kept.insert(kept.end(), rw.begin(), rw.end());
      ++kept_rows;
    }
  }
  data_ = std::move(kept);
  rows_ = kept_rows;
  return pivots;
}

// ---------------------------------------------------------------------------

namespace {

void enumerate_exponents(int rank, int i, std::uint64_t remaining, Monomial& current,
                         std::vector<Monomial>& out) {
  if (i == rank - 1) {
    current.exponents[i] = static_cast<Exponent>(remaining);
    out.push_back(current);
    current.exponents[i] = 0;
    return;
  }
  // Descending in x_i so the result is already in canonical order.
  for (std::uint64_t e = remaining + 1; e-- > 0;) {
    current.exponents[i] = static_cast<Exponent>(e);
    enumerate_exponents(rank, i + 1, remaining - e, current, out);
  }
  current.exponents[i] = 0;
}

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

}  // namespace

std::shared_ptr<const DegreeBasis> monomial_basis(const Ring& ring, std::uint64_t d) {
  auto basis = std::make_shared<DegreeBasis>(DegreeBasis{ring, d, {}});
  const int n = ring.rank();
  std::vector<std::uint32_t> subsets;
  if (ring.has_exterior()) {
    for (std::uint32_t e = 0; e < (1u << n); ++e) subsets.push_back(e);
  } else {
    subsets.push_back(0);
  }
  for (std::uint32_t e : subsets) {
    const auto r = static_cast<std::uint64_t>(std::popcount(e));
    std::uint64_t poly_degree = d;
    if (ring.has_exterior()) {
      if (r > d || (d - r) % 2 != 0) continue;
      poly_degree = (d - r) / 2;
    }
    Monomial current;
    current.exterior = e;
    if (n == 0) {
      if (poly_degree == 0) basis->monomials.push_back(current);
      continue;
    }
    enumerate_exponents(n, 0, poly_degree, current, basis->monomials);
  }
  std::sort(basis->monomials.begin(), basis->monomials.end(), CanonicalLess{});
  return basis;
}

std::uint64_t monomial_count(const Ring& ring, std::uint64_t d) {
  const int n = ring.rank();
  auto poly_count = [n](std::uint64_t m) -> std::uint64_t {
    if (n == 0) return m == 0 ? 1 : 0;
    return binomial(m + n - 1, n - 1);
  };
  if (!ring.has_exterior()) return poly_count(d);
  std::uint64_t total = 0;
  for (int r = 0; r <= n; ++r) {
    const auto ru = static_cast<std::uint64_t>(r);
    if (ru > d || (d - ru) % 2 != 0) continue;
    total += binomial(n, r) * poly_count((d - ru) / 2);
  }
  return total;
}

std::optional<std::size_t> DegreeBasis::index_of(const Monomial& m) const noexcept {
  auto it = std::lower_bound(monomials.begin(), monomials.end(), m, CanonicalLess{});
  if (it == monomials.end() || !(*it == m)) return std::nullopt;
  return static_cast<std::size_t>(it - monomials.begin());
}

std::vector<Scalar> DegreeBasis::coordinates(const Element& y) const {
  if (!(y.ring() == ring)) throw UsageError("element over a different ring than the basis");
  std::vector<Scalar> coords(size(), 0);
  for (const Term& t : y.terms()) {
    const auto idx = index_of(t.monomial);
    if (!idx) {
      throw UsageError("element " + to_string(y) + " is not homogeneous of degree " +
                       std::to_string(degree));
    }
    coords[*idx] = t.coefficient;
  }
  return coords;
}

Element DegreeBasis::element(std::span<const Scalar> coords) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0) terms.push_back({monomials[i], coords[i]});
  }
  return Element::from_terms(ring, std::move(terms));
}

// ---------------------------------------------------------------------------

DegreeSpan::DegreeSpan(std::shared_ptr<const DegreeBasis> basis) : basis_(std::move(basis)) {}

std::optional<std::size_t> DegreeSpan::reduce(std::vector<Scalar>& v) const {
  const PrimeField& field = basis_->ring.field();
  std::vector<Scalar> table;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    subtract_multiple(v, rows_[k], v[pivots_[k]], pivots_[k], field, table);
  }
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] != 0) return c;
  }
  return std::nullopt;
}

bool DegreeSpan::insert(std::span<const Scalar> coords) {
  if (coords.size() != ambient_dimension()) throw UsageError("coordinate length mismatch");
  std::vector<Scalar> v(coords.begin(), coords.end());
  const auto lead = reduce(v);
  if (!lead) return false;
  const PrimeField& field = basis_->ring.field();
  scale_row(v, field.inv(v[*lead]), field);
  std::vector<Scalar> table;
  for (auto& row : rows_) subtract_multiple(row, v, row[*lead], *lead, field, table);
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), *lead) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), *lead);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  return true;
}

bool DegreeSpan::insert(const Element& y) { return insert(basis_->coordinates(y)); }

bool DegreeSpan::contains(std::span<const Scalar> coords) const {
  std::vector<Scalar> v(coords.begin(), coords.end());
  return !reduce(v).has_value();
}

bool DegreeSpan::contains(const Element& y) const {
  if (!(y.ring() == basis_->ring)) return false;
  for (const Term& t : y.terms()) {
    if (!basis_->index_of(t.monomial)) return false;
  }
  return contains(basis_->coordinates(y));
}

bool DegreeSpan::contains(const DegreeSpan& other) const {
  if (other.degree() != degree() || !(other.basis().ring == basis().ring)) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const auto& row) { return contains(row); });
}

std::vector<Element> DegreeSpan::elements() const {
  std::vector<Element> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(basis_->element(row));
  return out;
}

bool operator==(const DegreeSpan& a, const DegreeSpan& b) {
  return a.degree() == b.degree() && a.basis().ring == b.basis().ring && a.rows_ == b.rows_;
}

DegreeSpan span_of(const Ring& ring, std::span<const Element> elements, std::uint64_t d) {
  DegreeSpan span(monomial_basis(ring, d));
  for (const Element& y : elements) span.insert(y);
  return span;
}

// ---------------------------------------------------------------------------

namespace {

// Kernel of the map whose matrix has one row per domain vector: row-reduce
// [images | identity] on the image columns; rows whose image part vanished
// span the kernel.
DegreeSpan kernel_from_rows(std::shared_ptr<const DegreeBasis> domain, Matrix images,
                            std::size_t image_cols) {
  const std::size_t n = domain->size();
  const PrimeField& field = domain->ring.field();
  Matrix augmented(n, image_cols + n);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(images.row(r).begin(), images.row(r).end(), augmented.row(r).begin());
    augmented(r, image_cols + r) = 1;
  }
  const auto pivots = augmented.row_reduce(field, image_cols);
  DegreeSpan kernel(std::move(domain));
  for (std::size_t r = pivots.size(); r < augmented.rows(); ++r) {
    kernel.insert(augmented.row(r).subspan(image_cols));
  }
  return kernel;
}

}  // namespace

DegreeSpan kernel_of_joint_map(std::shared_ptr<const DegreeBasis> domain,
                               std::span<const std::vector<Element>> images) {
  if (images.size() != domain->size()) throw UsageError("one image per domain monomial required");
  // Column ids for (component, monomial) pairs actually occurring.
  std::vector<std::map<Monomial, std::size_t, CanonicalLess>> columns;
  std::size_t next = 0;
  for (const auto& tuple : images) {
    if (columns.size() < tuple.size()) columns.resize(tuple.size());
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      for (const Term& t : tuple[j].terms()) {
        if (columns[j].try_emplace(t.monomial, next).second) ++next;
      }
    }
  }
  Matrix matrix(domain->size(), next);
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < images[i].size(); ++j) {
      for (const Term& t : images[i][j].terms()) matrix(i, columns[j].at(t.monomial)) = t.coefficient;
    }
  }
  return kernel_from_rows(std::move(domain), std::move(matrix), next);
}

DegreeSpan kernel_of_map(std::shared_ptr<const DegreeBasis> domain,
                         std::span<const Element> images) {
  std::vector<std::vector<Element>> tuples;
  tuples.reserve(images.size());
  for (const Element& y : images) tuples.push_back({y});
  return kernel_of_joint_map(std::move(domain), tuples);
}

}  // namespace mui
