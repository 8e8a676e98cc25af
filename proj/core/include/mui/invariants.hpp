#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mui/algebra.hpp"

namespace mui {

/// A subset S of {1..n}, stored as a bitmask (bit s-1 for s).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint32_t mask) : mask_(mask) {}
  IndexSet(std::initializer_list<int> elements);
  static IndexSet full(int n) { return IndexSet(n == 0 ? 0u : (~0u >> (32 - n))); }
  /// {1, .., r}
  static IndexSet prefix(int r) { return full(r); }

  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept;
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(int s) const noexcept { return s >= 1 && s <= 32 && (mask_ >> (s - 1)) & 1u; }
  /// Ascending.
  std::vector<int> elements() const;
  /// Smallest element of {1..n} not in the set, or n + 1.
  int smallest_missing(int n) const noexcept;

  IndexSet with(int s) const { return IndexSet(mask_ | (1u << (s - 1))); }
  IndexSet complement(int n) const { return IndexSet(full(n).mask_ & ~mask_); }
  IndexSet operator|(IndexSet o) const { return IndexSet(mask_ | o.mask_); }
  IndexSet operator&(IndexSet o) const { return IndexSet(mask_ & o.mask_); }

  friend bool operator==(IndexSet, IndexSet) = default;
  /// Orders by size, then lexicographically on the ascending elements.
  friend bool operator<(IndexSet a, IndexSet b);

 private:
  std::uint32_t mask_ = 0;
};

std::string to_string(IndexSet s);
/// Parses "1,2,4" (or "" for the empty set).
IndexSet parse_index_set(const std::string& text, int n);
/// All subsets of {1..n} of size r, in IndexSet order.
std::vector<IndexSet> subsets_of_size(int n, int r);
std::vector<IndexSet> all_subsets(int n);

/// A row of a matrix over H^*(V): either the exterior row (a_1 .. a_n) or
/// the power row (x_1^{p^t} .. x_n^{p^t}).
struct MatrixRow {
  enum class Kind { Exterior, Power };
  Kind kind;
  int power = 0;  // t, for Power rows

  static MatrixRow exterior() { return {Kind::Exterior, 0}; }
  static MatrixRow powers(int t) { return {Kind::Power, t}; }
};

/// Square matrix of row specs over a selection of columns (variables).
struct VariableMatrix {
  std::vector<MatrixRow> rows;
  std::vector<int> columns;  // 1-based variable indices
};

/// C with C_{s,i} = x_i^{p^{s-1}}.
VariableMatrix matrix_C(const Ring& ring);
/// C with row s deleted and the exterior row prefixed.
VariableMatrix matrix_E(const Ring& ring, int s);

/// Entry of a variable matrix as an element.
Element entry(const Ring& ring, const MatrixRow& row, int column);
/// Determinant by cofactor expansion along the first row.
Element determinant(const Ring& ring, const VariableMatrix& m);

/// L_n = det C. Coefficient of x_1 x_2^p .. x_n^{p^{n-1}} is +1.
Element dickson_L(const Ring& ring);
/// Minor of C with row s and column i removed.
Element gamma(const Ring& ring, int s, int i);
/// M_{n,s} = det E(s) = sum_i (-1)^{i+1} gamma_{s,i} a_i. Odd p only.
Element mui_invariant(const Ring& ring, int s);
/// M_{n,S} = M_{n,s_1} .. M_{n,s_r} / L_n^{r-1}; M_{n,{}} = L_n. Odd p only.
Element mui_invariant(const Ring& ring, IndexSet S);
/// The sign e_S with M_{n,S} M_{n,T} = e_S L_n M_{n,{1..n}}, T the complement.
Scalar mui_epsilon(const Ring& ring, IndexSet S);

/// Coefficients of f(X) = prod_{v in V^*} (X - v), indexed by the power of X
/// (length p^n + 1). Throws ConsistencyError if a power of X that is not a
/// power of p survives.
std::vector<Element> fundamental_polynomial(const Ring& ring);
/// c_{n,r} = (-1)^{n-r} [X^{p^r}] f(X), 0 <= r < n, so that
///   x^{p^n} = sum_r (-1)^{n-r+1} c_{n,r} x^{p^r}  for every linear form x.
Element dickson_invariant(const Ring& ring, int r);
std::vector<Element> dickson_invariants(const Ring& ring);

enum class MonicConvention {
  LeadingCoefficient,   // first nonzero coefficient is one
  TrailingCoefficient,  // last nonzero coefficient is one
};

/// Product of all monic linear forms in x_1..x_n under the given convention.
Element monic_linear_forms_product(const Ring& ring, MonicConvention convention);

/// L_n, every M_{n,S}, every e_S and the scalar lambda with
/// M_{n,{1..n}} = lambda a_1 .. a_n, computed once.
struct MuiTable {
  Ring ring;
  Element L;
  std::map<IndexSet, Element> M;
  std::map<IndexSet, Scalar> epsilon;
  Scalar top_scalar;

  static MuiTable build(const Ring& ring);
};

/// Total degree of M_{n,S}: |S| + 2 (1 + p + .. + p^{n-1} - sum_{s in S} p^{s-1}).
std::uint64_t mui_degree(const Ring& ring, IndexSet S);

}  // namespace mui
