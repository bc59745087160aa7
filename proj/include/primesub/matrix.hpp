#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "primesub/errors.hpp"
#include "primesub/ring.hpp"

namespace primesub {

template <EuclideanRing R>
using RowVector = std::vector<ElementOf<R>>;

/// Dense row-major matrix over a Euclidean ring. Elements of a module are row
/// vectors and relations are rows, so submodules are row spans.
template <EuclideanRing R>
class Mat {
 public:
  using Element = ElementOf<R>;

  Mat(R ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, ring_.zero()) {}

  static Mat identity(const R& ring, std::size_t n) {
    Mat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  /// Every row must have `cols` entries.
  static Mat from_rows(const R& ring, const std::vector<RowVector<R>>& rows, std::size_t cols) {
    Mat m(ring, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(cols));
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const R& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  RowVector<R> row(std::size_t i) const {
    return RowVector<R>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
  }
  std::vector<RowVector<R>> row_list() const {
    std::vector<RowVector<R>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  bool row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!ring_.is_zero((*this)(i, j))) return false;
    return true;
  }
  bool is_zero() const {
    for (auto& e : entries_)
      if (!ring_.is_zero(e)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Element& c) {
    if (ring_.is_zero(c)) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!ring_.is_zero((*this)(src, j)))
        (*this)(dst, j) = ring_.add((*this)(dst, j), ring_.mul(c, (*this)(src, j)));
  }
  /// col[dst] += c * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Element& c) {
    if (ring_.is_zero(c)) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!ring_.is_zero((*this)(i, src)))
        (*this)(i, dst) = ring_.add((*this)(i, dst), ring_.mul(c, (*this)(i, src)));
  }
  void scale_row(std::size_t i, const Element& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = ring_.mul(c, (*this)(i, j));
  }

  Mat operator*(const Mat& b) const {
    if (cols_ != b.rows_) throw InputError("matrix product: dimension mismatch");
    Mat out(ring_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (ring_.is_zero(a)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!ring_.is_zero(b(k, j))) out(i, j) = ring_.add(out(i, j), ring_.mul(a, b(k, j)));
      }
    return out;
  }

  /// Vertical concatenation.
  Mat stacked(const Mat& below) const {
    if (cols_ != below.cols_) throw InputError("stack: column mismatch");
    Mat out(ring_, rows_ + below.rows_, cols_);
    std::copy(entries_.begin(), entries_.end(), out.entries_.begin());
    std::copy(below.entries_.begin(), below.entries_.end(), out.entries_.begin() + entries_.size());
    return out;
  }

  /// Rows [from, to).
  Mat row_range(std::size_t from, std::size_t to) const {
    Mat out(ring_, to - from, cols_);
    std::copy(entries_.begin() + from * cols_, entries_.begin() + to * cols_, out.entries_.begin());
    return out;
  }

  Mat without_zero_rows() const {
    std::vector<RowVector<R>> keep;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!row_is_zero(i)) keep.push_back(row(i));
    return from_rows(ring_, keep, cols_);
  }

  void append_row(const RowVector<R>& r) {
    if (r.size() != cols_) throw InputError("append_row: length mismatch");
    entries_.insert(entries_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

  /// Lexicographic on (rows, cols, entries in ring order).
  int compare(const Mat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_ ? -1 : 1;
    if (cols_ != o.cols_) return cols_ < o.cols_ ? -1 : 1;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (int c = ring_.compare(entries_[k], o.entries_[k])) return c;
    return 0;
  }

 private:
  R ring_;
  std::size_t rows_, cols_;
  std::vector<Element> entries_;
};

/// v * A for a row vector v of length A.rows().
template <EuclideanRing R>
RowVector<R> row_times(const RowVector<R>& v, const Mat<R>& A) {
  const R& ring = A.ring();
  RowVector<R> out(A.cols(), ring.zero());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (ring.is_zero(v[i])) continue;
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (!ring.is_zero(A(i, j))) out[j] = ring.add(out[j], ring.mul(v[i], A(i, j)));
  }
  return out;
}

template <EuclideanRing R>
RowVector<R> scaled(const R& ring, const ElementOf<R>& c, RowVector<R> v) {
  for (auto& x : v) x = ring.mul(c, x);
  return v;
}

template <EuclideanRing R>
bool is_zero_vector(const R& ring, const RowVector<R>& v) {
  for (auto& x : v)
    if (!ring.is_zero(x)) return false;
  return true;
}

}  // namespace primesub
