#include "pkcache/linalg.hpp"

#include "pkcache/error.hpp"

#include <string>

namespace pkcache {

FqVector::FqVector(const Field& field, std::size_t length) : field_(field), entries_(length, 0) {}

FqVector::FqVector(const Field& field, std::vector<Symbol> entries)
    : field_(field), entries_(std::move(entries)) {
  for (Symbol e : entries_) {
    if (!field_.contains(e)) {
      throw InvalidArgument(std::to_string(e) + " is not a residue modulo " +
                            std::to_string(field_.order()));
    }
  }
}

FqVector FqVector::unit(const Field& field, std::size_t length, std::size_t index) {
  if (index >= length) throw InvalidArgument("unit vector index out of range");
  FqVector v(field, length);
  v.entries_[index] = 1;
  return v;
}

void FqVector::set(std::size_t i, Symbol value) {
  if (!field_.contains(value)) throw InvalidArgument("value is not a residue");
  entries_.at(i) = value;
}

bool FqVector::is_zero() const noexcept {
  for (Symbol e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

Symbol FqVector::component_sum() const noexcept {
  Symbol s = 0;
  for (Symbol e : entries_) s = field_.add(s, e);
  return s;
}

namespace {

void check_compatible(const FqVector& a, const FqVector& b) {
  if (a.field() != b.field()) throw FieldMismatch("vectors over different fields");
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
}

}  // namespace

FqVector& FqVector::operator+=(const FqVector& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.add(entries_[i], other.entries_[i]);
  }
  return *this;
}

FqVector& FqVector::operator-=(const FqVector& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.sub(entries_[i], other.entries_[i]);
  }
  return *this;
}

FqVector FqVector::scaled(Symbol factor) const {
  FqVector out = *this;
  factor %= field_.order();
  for (Symbol& e : out.entries_) e = field_.mul(e, factor);
  return out;
}

FqMatrix::FqMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FqMatrix FqMatrix::from_rows(std::span<const FqVector> rows) {
  if (rows.empty()) throw InvalidArgument("matrix needs at least one row");
  FqMatrix m(rows.front().field(), rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].field() != m.field_) throw FieldMismatch("rows over different fields");
    if (rows[r].size() != m.cols_) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.data_[r * m.cols_ + c] = rows[r][c];
  }
  return m;
}

FqMatrix FqMatrix::identity(const Field& field, std::size_t n) {
  FqMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

void FqMatrix::set(std::size_t r, std::size_t c, Symbol value) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  if (!field_.contains(value)) throw InvalidArgument("value is not a residue");
  data_[r * cols_ + c] = value;
}

FqVector FqMatrix::row(std::size_t r) const {
  if (r >= rows_) throw DimensionMismatch("row index out of range");
  return FqVector(field_, std::vector<Symbol>(data_.begin() + r * cols_,
                                              data_.begin() + (r + 1) * cols_));
}

FqVector FqMatrix::apply(const FqVector& x) const {
  if (x.field() != field_) throw FieldMismatch("vector and matrix over different fields");
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  FqVector y(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Symbol acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul(at(r, c), x[c]));
    y.set(r, acc);
  }
  return y;
}

IncrementalBasis::IncrementalBasis(const Field& field, std::size_t length)
    : field_(field), length_(length) {}

bool IncrementalBasis::reduce(std::vector<Symbol>& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Symbol factor = v[pivots_[i]];
    if (factor == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t c = pivots_[i]; c < length_; ++c) {
      v[c] = field_.sub(v[c], field_.mul(factor, row[c]));
    }
  }
  for (Symbol e : v) {
    if (e != 0) return false;
  }
  return true;
}

bool IncrementalBasis::contains(const FqVector& v) const {
  if (v.size() != length_) throw DimensionMismatch("vector length does not match basis");
  std::vector<Symbol> work(v.entries().begin(), v.entries().end());
  return reduce(work);
}

bool IncrementalBasis::insert(const FqVector& v) {
  if (v.field() != field_) throw FieldMismatch("vector over a different field");
  if (v.size() != length_) throw DimensionMismatch("vector length does not match basis");
  std::vector<Symbol> work(v.entries().begin(), v.entries().end());
  if (reduce(work)) return false;

  std::size_t pivot = 0;
  while (work[pivot] == 0) ++pivot;
  const Symbol scale = field_.inv(work[pivot]);
  for (std::size_t c = pivot; c < length_; ++c) work[c] = field_.mul(work[c], scale);
  // Keep earlier rows reduced at the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    const Symbol factor = row[pivot];
    if (factor == 0) continue;
    for (std::size_t c = pivot; c < length_; ++c) {
      row[c] = field_.sub(row[c], field_.mul(factor, work[c]));
    }
  }
  rows_.push_back(std::move(work));
  pivots_.push_back(pivot);
  return true;
}

namespace {

void check_uniform(std::span<const FqVector> vectors) {
  if (vectors.empty()) throw InvalidArgument("rank of an empty vector list");
  for (const auto& v : vectors) {
    if (v.field() != vectors.front().field()) throw FieldMismatch("vectors over different fields");
    if (v.size() != vectors.front().size()) throw DimensionMismatch("ragged vector list");
  }
}

}  // namespace

std::size_t rank_q(std::span<const FqVector> vectors) {
  check_uniform(vectors);
  IncrementalBasis basis(vectors.front().field(), vectors.front().size());
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

std::vector<std::size_t> leader_set(std::span<const FqVector> vectors) {
  check_uniform(vectors);
  IncrementalBasis basis(vectors.front().field(), vectors.front().size());
  std::vector<std::size_t> leaders;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (basis.insert(vectors[k])) leaders.push_back(k);
  }
  return leaders;
}

std::optional<FqVector> solve(const FqMatrix& a, const FqVector& b) {
  const Field& f = a.field();
  if (b.field() != f) throw FieldMismatch("matrix and right-hand side over different fields");
  if (b.size() != a.rows()) {
    throw DimensionMismatch("right-hand side has " + std::to_string(b.size()) +
                            " entries for " + std::to_string(a.rows()) + " rows");
  }
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t width = cols + 1;
  std::vector<Symbol> m(rows * width);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r * width + c] = a.at(r, c);
    m[r * width + cols] = b[r];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && m[r * width + c] == 0) ++r;
    if (r == rows) continue;
    if (r != pivot_row) {
      for (std::size_t k = 0; k < width; ++k) std::swap(m[r * width + k], m[pivot_row * width + k]);
    }
    const Symbol scale = f.inv(m[pivot_row * width + c]);
    for (std::size_t k = c; k < width; ++k) {
      m[pivot_row * width + k] = f.mul(m[pivot_row * width + k], scale);
    }
    for (std::size_t other = 0; other < rows; ++other) {
      if (other == pivot_row) continue;
      const Symbol factor = m[other * width + c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < width; ++k) {
        m[other * width + k] = f.sub(m[other * width + k], f.mul(factor, m[pivot_row * width + k]));
      }
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }

  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (m[r * width + cols] != 0) return std::nullopt;
  }
  FqVector x(f, cols);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x.set(pivot_cols[i], m[i * width + cols]);
  return x;
}

}  // namespace pkcache
