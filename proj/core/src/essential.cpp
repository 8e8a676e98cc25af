#include "mui/essential.hpp"

#include <algorithm>

#include "mui/error.hpp"

namespace mui {

namespace {

std::vector<Scalar> normalized(const PrimeField& field, std::vector<Scalar> form) {
  const auto lead = std::find_if(form.begin(), form.end(), [](Scalar c) { return c != 0; });
  if (lead == form.end()) throw UsageError("the zero form defines no maximal subgroup");
  const Scalar inv = field.inv(*lead);
  for (Scalar& c : form) c = field.mul(c % field.characteristic(), inv);
  return form;
}

std::size_t matrix_rank(const PrimeField& field, const std::vector<std::vector<Scalar>>& rows,
                        std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c] % field.characteristic();
  }
  return m.row_reduce(field).size();
}

}  // namespace

MaximalSubgroup MaximalSubgroup::standard(const PrimeField& field, std::vector<Scalar> form) {
  form = normalized(field, std::move(form));
  const std::size_t n = form.size();
  const auto pivot = static_cast<std::size_t>(
      std::find_if(form.begin(), form.end(), [](Scalar c) { return c != 0; }) - form.begin());
  std::vector<std::vector<Scalar>> phi(n - 1, std::vector<Scalar>(n, 0));
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pivot) continue;
    phi[j][i] = 1;
    phi[j][pivot] = field.neg(form[i]);
    ++j;
  }
  return {std::move(form), std::move(phi)};
}

MaximalSubgroup MaximalSubgroup::with_matrix(const PrimeField& field, std::vector<Scalar> form,
                                             std::vector<std::vector<Scalar>> restriction) {
  form = normalized(field, std::move(form));
  const std::size_t n = form.size();
  if (restriction.size() != n - 1) throw UsageError("restriction matrix needs n-1 rows");
  for (const auto& row : restriction) {
    if (row.size() != n) throw UsageError("restriction matrix needs n columns");
    Scalar dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot = field.add(dot, field.mul(row[i] % field.characteristic(), form[i]));
    if (dot != 0) throw UsageError("restriction matrix does not annihilate the form");
  }
  if (n > 1 && matrix_rank(field, restriction, n) != n - 1) {
    throw UsageError("restriction matrix must have rank n-1");
  }
  return {std::move(form), std::move(restriction)};
}

std::vector<MaximalSubgroup> enumerate_maximal_subgroups(const Ring& ring) {
  const int n = ring.rank();
  if (n < 1) throw UsageError("rank must be at least 1");
  std::vector<MaximalSubgroup> out;
  std::vector<Scalar> v(static_cast<std::size_t>(n), 0);
  // Lexicographic enumeration of F_p^n; keep vectors whose leading entry is 1.
  while (true) {
    const auto lead = std::find_if(v.begin(), v.end(), [](Scalar c) { return c != 0; });
    if (lead != v.end() && *lead == 1) out.push_back(MaximalSubgroup::standard(ring.field(), v));
    int i = n - 1;
    while (i >= 0 && v[i] == ring.p() - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

RestrictionMap::RestrictionMap(const Ring& ring, MaximalSubgroup subgroup)
    : source_(ring), target_(ring.quotient_rank()), subgroup_(std::move(subgroup)) {
  const int n = ring.rank();
  if (subgroup_.form.size() != static_cast<std::size_t>(n)) throw UsageError("subgroup rank mismatch");
  for (int i = 0; i < n; ++i) {
    Element a_image(target_), x_image(target_);
    for (int j = 0; j < n - 1; ++j) {
      const Scalar c = subgroup_.restriction[j][i];
      if (c == 0) continue;
      if (target_.has_exterior()) a_image += Element::a(target_, j + 1).scaled(c);
      x_image += Element::x(target_, j + 1).scaled(c);
    }
    a_images_.push_back(std::move(a_image));
    x_images_.push_back(std::move(x_image));
  }
  x_powers_.resize(static_cast<std::size_t>(n));
}

const Element& RestrictionMap::x_power(int i, Exponent e) const {
  auto& cache = x_powers_[static_cast<std::size_t>(i)];
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  Element value = e == 0 ? Element::one(target_)
                         : (e % 2 == 0 ? x_power(i, e / 2) * x_power(i, e / 2)
                                       : x_power(i, e - 1) * x_images_[static_cast<std::size_t>(i)]);
  return cache.emplace(e, std::move(value)).first->second;
}

Element RestrictionMap::operator()(const Monomial& m) const {
  Element result = Element::one(target_);
  for (int i = 0; i < source_.rank(); ++i) {
    if (m.exterior & (1u << i)) {
      result = result * a_images_[static_cast<std::size_t>(i)];
      if (result.is_zero()) return result;
    }
  }
  for (int i = 0; i < source_.rank(); ++i) {
    if (m.exponents[i] != 0) {
      result = result * x_power(i, m.exponents[i]);
      if (result.is_zero()) return result;
    }
  }
  return result;
}

Element RestrictionMap::operator()(const Element& y) const {
  if (!(y.ring() == source_)) throw UsageError("restricting an element of another ring");
  Element result(target_);
  for (const Term& t : y.terms()) result += (*this)(t.monomial).scaled(t.coefficient);
  return result;
}

Element restrict(const Element& y, const MaximalSubgroup& subgroup) {
  return RestrictionMap(y.ring(), subgroup)(y);
}

bool is_essential(const Element& y) {
  if (y.is_zero()) return true;
  for (const MaximalSubgroup& h : enumerate_maximal_subgroups(y.ring())) {
    if (!restrict(y, h).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

DegreeSpan joint_restriction_kernel(std::shared_ptr<const DegreeBasis> basis,
                                    const std::vector<RestrictionMap>& maps) {
  std::vector<std::vector<Element>> images;
  images.reserve(basis->size());
  for (const Monomial& m : basis->monomials) {
    std::vector<Element> tuple;
    tuple.reserve(maps.size());
    for (const RestrictionMap& map : maps) tuple.push_back(map(m));
    images.push_back(std::move(tuple));
  }
  return kernel_of_joint_map(std::move(basis), images);
}

}  // namespace

EssentialPiece ess_basis(const Ring& ring, std::uint64_t d) {
  std::vector<RestrictionMap> maps;
  for (MaximalSubgroup& h : enumerate_maximal_subgroups(ring)) maps.emplace_back(ring, std::move(h));
  auto basis = monomial_basis(ring, d);
  EssentialPiece piece{joint_restriction_kernel(basis, maps), {}};

  const int max_rank = ring.has_exterior() ? ring.rank() : 0;
  std::size_t split_rank = 0;
  for (int r = 0; r <= max_rank; ++r) {
    auto sub = std::make_shared<DegreeBasis>(DegreeBasis{ring, d, {}});
    for (const Monomial& m : basis->monomials) {
      if (m.exterior_rank() == r) sub->monomials.push_back(m);
    }
    DegreeSpan lifted(basis);
    if (!sub->monomials.empty()) {
      for (const Element& y : joint_restriction_kernel(sub, maps).elements()) lifted.insert(y);
    }
    if (!piece.total.contains(lifted)) {
      throw ConsistencyError("N_r part of Ess not inside Ess in degree " + std::to_string(d));
    }
    split_rank += lifted.rank();
    piece.by_rank.push_back(std::move(lifted));
  }
  if (split_rank != piece.total.rank()) {
    throw ConsistencyError("Ess does not split along exterior rank in degree " + std::to_string(d));
  }
  return piece;
}

// ---------------------------------------------------------------------------

MuiDecomposition decompose(const Element& y) {
  return decompose(y, MuiTable::build(y.ring()));
}

MuiDecomposition decompose(const Element& y, const MuiTable& table) {
  const Ring& ring = y.ring();
  if (!(ring == table.ring)) throw UsageError("decomposition table for another ring");
  MuiDecomposition result;
  if (y.is_zero()) return result;
  const int r = y.terms().front().monomial.exterior_rank();
  for (const Term& t : y.terms()) {
    if (t.monomial.exterior_rank() != r) throw UsageError("element does not lie in a single N_r");
  }
  if (!is_essential(y)) throw UsageError("element " + to_string(y) + " is not essential");

  const int n = ring.rank();
  const PrimeField& field = ring.field();
  const Scalar lambda_inv = field.inv(table.top_scalar);
  const std::uint32_t top_mask = IndexSet::full(n).mask();
  for (IndexSet S : subsets_of_size(n, r)) {
    const IndexSet T = S.complement(n);
    const Element z = (y * table.M.at(T)).scaled(table.epsilon.at(S));
    Element q(ring);
    try {
      q = exact_divide(z, table.L);
    } catch (const NotDivisibleError&) {
      throw ConsistencyError("y M_T not divisible by L_n for S = " + to_string(S));
    }
    std::vector<Term> coefficient;
    for (const Term& t : q.terms()) {
      if (t.monomial.exterior != top_mask) throw ConsistencyError("y M_T left N_n for S = " + to_string(S));
      Monomial m = t.monomial;
      m.exterior = 0;
      coefficient.push_back({m, field.mul(t.coefficient, lambda_inv)});
    }
    result.emplace(S, Element::from_terms(ring, std::move(coefficient)));
  }
  if (!(reconstruct(table, result) == y)) {
    throw ConsistencyError("Mui decomposition does not reconstruct " + to_string(y));
  }
  return result;
}

Element reconstruct(const MuiTable& table, const MuiDecomposition& coefficients) {
  Element sum(table.ring);
  for (const auto& [S, f] : coefficients) sum += f * table.M.at(S);
  return sum;
}

// ---------------------------------------------------------------------------

std::vector<DegreeSpan> steenrod_closure(const Element& seed, std::uint64_t max_degree,
                                         std::size_t dimension_cap) {
  const Ring& ring = seed.ring();
  std::vector<DegreeSpan> spans;
  spans.reserve(max_degree + 1);
  for (std::uint64_t d = 0; d <= max_degree; ++d) spans.emplace_back(monomial_basis(ring, d));
  const TotalDegree deg = total_degree(seed);
  if (deg.kind == DegreeKind::Zero) return spans;
  if (deg.kind != DegreeKind::Homogeneous) throw UsageError("closure seed must be homogeneous");
  if (deg.value > max_degree) return spans;
  spans[deg.value].insert(seed);

  const bool odd = ring.has_exterior();
  const std::uint64_t x_degree = odd ? 2 : 1;
  const std::uint64_t power_step = odd ? 2 * (ring.p() - 1) : 1;
  std::size_t dimension = 0;

  auto push = [&](std::uint64_t d, const Element& y) {
    if (d > max_degree || y.is_zero()) return;
    if (spans[d].insert(y) && ++dimension > dimension_cap) {
      throw ResourceError("Steenrod closure exceeded the dimension cap");
    }
  };

  // Every operation raises degree, so degree d is complete once all lower
  // degrees have been processed.
  for (std::uint64_t d = deg.value; d <= max_degree; ++d) {
    for (const Element& y : spans[d].elements()) {
      for (int i = 1; i <= ring.rank(); ++i) {
        if (odd) push(d + 1, Element::a(ring, i) * y);
        push(d + x_degree, Element::x(ring, i) * y);
      }
      if (odd) push(d + 1, bockstein(y));
      for (std::uint64_t k = 1; d + k * power_step <= max_degree; ++k) {
        if (odd ? 2 * k > d : k > d) break;  // instability
        push(d + k * power_step, power_operation(k, y));
      }
    }
  }
  return spans;
}

SteenrodWord mui_word(const Ring& ring, IndexSet S) {
  const int n = ring.rank();
  SteenrodWord word;
  while (!(S == IndexSet::full(n))) {
    const int u = S.smallest_missing(n);
    if (u == 1) {
      word.ops.push_back(SteenrodOp::beta());
      S = S.with(1);
      continue;
    }
    std::uint64_t step = 1;
    for (int i = 0; i < u - 2; ++i) step *= ring.p();
    word.ops.push_back(SteenrodOp::P(step));
    // S = {1..u-1} + Y  becomes  {1..u-2, u} + Y
    IndexSet next = S & IndexSet(~IndexSet::prefix(u - 1).mask());
    next = next | IndexSet::prefix(u - 2);
    S = next.with(u);
  }
  return word;
}

}  // namespace mui
