#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mui/algebra.hpp"

namespace mui {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<Scalar> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  /// Reduced row echelon form in place; zero rows are dropped. Returns the
  /// pivot columns. Only the first `pivot_cols` columns are eligible as
  /// pivots (defaults to all).
  std::vector<std::size_t> row_reduce(const PrimeField& field,
                                      std::optional<std::size_t> pivot_cols = std::nullopt);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// All monomials of one total degree, in canonical order.
struct DegreeBasis {
  Ring ring;
  std::uint64_t degree;
  std::vector<Monomial> monomials;

  std::size_t size() const noexcept { return monomials.size(); }
  /// Position of m, or nullopt if m is not of this degree.
  std::optional<std::size_t> index_of(const Monomial& m) const noexcept;
  /// Coordinate vector of y; throws UsageError if y has a term of another degree.
  std::vector<Scalar> coordinates(const Element& y) const;
  Element element(std::span<const Scalar> coords) const;
};

/// Monomials a_E x^m with |E| + 2|m| = d (odd p) or |m| = d (p = 2).
std::shared_ptr<const DegreeBasis> monomial_basis(const Ring& ring, std::uint64_t d);

/// Number of monomials of total degree d, counted without enumerating them.
std::uint64_t monomial_count(const Ring& ring, std::uint64_t d);

/// A subspace of one graded piece, stored as a reduced row echelon matrix in
/// the coordinates of monomial_basis(d). Two spans are equal iff their
/// matrices are identical.
class DegreeSpan {
 public:
  explicit DegreeSpan(std::shared_ptr<const DegreeBasis> basis);

  const DegreeBasis& basis() const noexcept { return *basis_; }
  std::shared_ptr<const DegreeBasis> basis_ptr() const noexcept { return basis_; }
  std::uint64_t degree() const noexcept { return basis_->degree; }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ambient_dimension() const noexcept { return basis_->size(); }
  const std::vector<std::vector<Scalar>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Adds a vector; returns true if the span grew.
  bool insert(std::span<const Scalar> coords);
  bool insert(const Element& y);
  bool contains(std::span<const Scalar> coords) const;
  bool contains(const Element& y) const;
  /// True iff every row of `other` lies in this span.
  bool contains(const DegreeSpan& other) const;

  /// The rows as elements, in pivot order.
  std::vector<Element> elements() const;

  friend bool operator==(const DegreeSpan& a, const DegreeSpan& b);

 private:
  // Reduces v against the current rows; returns the first nonzero column.
  std::optional<std::size_t> reduce(std::vector<Scalar>& v) const;

  std::shared_ptr<const DegreeBasis> basis_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Span of homogeneous elements of degree d (zero allowed). Throws UsageError
/// for an element of another degree.
DegreeSpan span_of(const Ring& ring, std::span<const Element> elements, std::uint64_t d);

/// Kernel of the linear map sending domain monomial i to images[i].
DegreeSpan kernel_of_map(std::shared_ptr<const DegreeBasis> domain,
                         std::span<const Element> images);

/// Kernel of a map into a product: domain monomial i goes to the tuple
/// images[i][0..k). Component j of every tuple lives in the same ring.
DegreeSpan kernel_of_joint_map(std::shared_ptr<const DegreeBasis> domain,
                               std::span<const std::vector<Element>> images);

}  // namespace mui
