#pragma once

#include "pkcache/gf.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pkcache {

class FqVector {
 public:
  FqVector(const Field& field, std::size_t length);
  // Throws InvalidArgument if any entry is not reduced modulo q.
  FqVector(const Field& field, std::vector<Symbol> entries);

  static FqVector unit(const Field& field, std::size_t length, std::size_t index);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Symbol operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, Symbol value);
  std::span<const Symbol> entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  // Sum of the components in F_q.
  Symbol component_sum() const noexcept;

  FqVector& operator+=(const FqVector& other);
  FqVector& operator-=(const FqVector& other);
  FqVector scaled(Symbol factor) const;

  friend FqVector operator+(FqVector a, const FqVector& b) { return a += b; }
  friend FqVector operator-(FqVector a, const FqVector& b) { return a -= b; }
  friend bool operator==(const FqVector&, const FqVector&) = default;

 private:
  Field field_;
  std::vector<Symbol> entries_;
};

// Dense row-major matrix over F_q.
class FqMatrix {
 public:
  FqMatrix(const Field& field, std::size_t rows, std::size_t cols);
  // Throws DimensionMismatch for ragged rows, FieldMismatch for mixed fields.
  static FqMatrix from_rows(std::span<const FqVector> rows);
  static FqMatrix identity(const Field& field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Symbol value);
  FqVector row(std::size_t r) const;

  // A * x. Throws DimensionMismatch when x.size() != cols().
  FqVector apply(const FqVector& x) const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> data_;
};

// Span of a growing set of vectors, kept in reduced echelon form. insert()
// reports whether the candidate was independent of everything kept so far.
class IncrementalBasis {
 public:
  IncrementalBasis(const Field& field, std::size_t length);

  bool insert(const FqVector& v);
  bool contains(const FqVector& v) const;
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  // Reduces v against the stored rows in place; returns true if v became 0.
  bool reduce(std::vector<Symbol>& v) const;

  Field field_;
  std::size_t length_;
  std::vector<std::vector<Symbol>> rows_;  // each row has a leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

// Dimension of span(vectors) over F_q. Throws InvalidArgument for an empty
// input and DimensionMismatch for ragged input.
std::size_t rank_q(std::span<const FqVector> vectors);

// Lowest-index-first greedy selection of linearly independent vectors:
// index k is kept iff vectors[k] is independent of those already kept.
// The result has exactly rank_q(vectors) entries, in increasing order.
std::vector<std::size_t> leader_set(std::span<const FqVector> vectors);

// Solves A x = b by Gauss-Jordan elimination. Free variables are set to 0.
// Returns std::nullopt when the system is inconsistent.
std::optional<FqVector> solve(const FqMatrix& a, const FqVector& b);

}  // namespace pkcache
