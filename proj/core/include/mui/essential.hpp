#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mui/algebra.hpp"
#include "mui/invariants.hpp"
#include "mui/linalg.hpp"
#include "mui/steenrod.hpp"

namespace mui {

/// The maximal subgroup ker(form) of V, with a chosen restriction map.
///
/// `restriction[j][i]` is the coefficient of b_{j+1} in the image of a_{i+1}
/// (and of y_{j+1} in the image of x_{i+1}); it is an (n-1) x n matrix of rank
/// n-1 whose kernel is spanned by `form`.
struct MaximalSubgroup {
  std::vector<Scalar> form;
  std::vector<std::vector<Scalar>> restriction;

  /// Standard coordinates: with pivot j (first nonzero entry of the
  /// normalized form), e_i maps to the next codomain basis vector for i != j
  /// and e_j maps to -sum_{i != j} form_i e_i.
  static MaximalSubgroup standard(const PrimeField& field, std::vector<Scalar> form);
  /// A custom restriction matrix; throws UsageError unless it has rank n-1
  /// and annihilates `form`.
  static MaximalSubgroup with_matrix(const PrimeField& field, std::vector<Scalar> form,
                                     std::vector<std::vector<Scalar>> restriction);
};

/// One subgroup per point of P(V^*), forms normalized to a leading 1 and
/// sorted lexicographically. There are (p^n - 1)/(p - 1) of them.
std::vector<MaximalSubgroup> enumerate_maximal_subgroups(const Ring& ring);

/// Restriction H^*(V) -> H^*(H), the algebra map a_i -> sum_j phi_ji b_j,
/// x_i -> sum_j phi_ji y_j. Caches powers of generator images, so one
/// instance must not be shared across threads.
class RestrictionMap {
 public:
  RestrictionMap(const Ring& ring, MaximalSubgroup subgroup);

  const Ring& source() const noexcept { return source_; }
  const Ring& target() const noexcept { return target_; }
  const MaximalSubgroup& subgroup() const noexcept { return subgroup_; }

  Element operator()(const Element& y) const;
  Element operator()(const Monomial& m) const;

 private:
  const Element& x_power(int i, Exponent e) const;

  Ring source_;
  Ring target_;
  MaximalSubgroup subgroup_;
  std::vector<Element> a_images_;
  std::vector<Element> x_images_;
  mutable std::vector<std::map<Exponent, Element>> x_powers_;
};

Element restrict(const Element& y, const MaximalSubgroup& subgroup);

/// True iff y restricts to zero on every maximal subgroup.
bool is_essential(const Element& y);

/// Ess(V) in one degree, together with its split by exterior rank.
struct EssentialPiece {
  DegreeSpan total;
  std::vector<DegreeSpan> by_rank;  // N_r \cap Ess, r = 0..n, same coordinates as total
};

/// Ess(V)_d as the joint kernel of all restriction maps. Throws
/// ConsistencyError unless Ess_d = (+)_r (N_r \cap Ess)_d.
EssentialPiece ess_basis(const Ring& ring, std::uint64_t d);

/// Coefficients f_S with y = sum_{|S|=r} f_S M_{n,S}, for y in N_r \cap Ess.
/// Keys are all S with |S| = r (zero coefficients included).
using MuiDecomposition = std::map<IndexSet, Element>;

/// Throws UsageError if y is not essential or not in a single N_r, and
/// ConsistencyError if the coefficients fail to reconstruct y.
MuiDecomposition decompose(const Element& y);
MuiDecomposition decompose(const Element& y, const MuiTable& table);
Element reconstruct(const MuiTable& table, const MuiDecomposition& coefficients);

/// Degreewise truncation of the smallest ideal containing `seed` that is
/// closed under beta and all P^k (Sq^k at p = 2). Index d holds degree d,
/// for d = 0..max_degree. Throws ResourceError if the total dimension passes
/// `dimension_cap`.
std::vector<DegreeSpan> steenrod_closure(const Element& seed, std::uint64_t max_degree,
                                         std::size_t dimension_cap = 200000);

/// The Steenrod word that produces M_{n,S} from M_{n,{1..n}}: beta when 1 is
/// missing from S, otherwise P^{p^{u-2}} with u the smallest missing index,
/// recursively.
SteenrodWord mui_word(const Ring& ring, IndexSet S);

}  // namespace mui
