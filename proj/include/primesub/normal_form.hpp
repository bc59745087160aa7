#pragma once

// Hermite and Smith normal forms over a Euclidean domain, and the kernel and
// membership solvers built on them. Pivots are always entries of minimal
// Euclidean norm; arithmetic is exact, so there is no modular reduction.

#include <cstddef>
#include <optional>
#include <vector>

#include "primesub/matrix.hpp"

namespace primesub {

/// T * A = H with T unimodular. H is in row echelon form: pivots normalized,
/// entries above a pivot reduced to canonical residues modulo it, zero rows
/// last.
template <EuclideanRing R>
struct HNFResult {
  Mat<R> H;
  Mat<R> T;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, for i < rank

  std::size_t rank() const { return pivot_cols.size(); }
};

template <EuclideanRing R>
HNFResult<R> hermite_normal_form(const Mat<R>& A) {
  const R& ring = A.ring();
  const std::size_t m = A.rows(), n = A.cols();
  HNFResult<R> res{A, Mat<R>::identity(ring, m), {}};
  Mat<R>& H = res.H;
  Mat<R>& T = res.T;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    bool has_pivot = false;
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t k = r; k < m; ++k)
        if (!ring.is_zero(H(k, j)) && (!best || ring.norm_less(H(k, j), H(*best, j)))) best = k;
      if (!best) break;
      has_pivot = true;
      H.swap_rows(r, *best);
      T.swap_rows(r, *best);
      bool cleared = true;
      for (std::size_t k = r + 1; k < m; ++k) {
        if (ring.is_zero(H(k, j))) continue;
        auto q = ring.neg(ring.divmod(H(k, j), H(r, j)).first);
        H.add_row_multiple(k, r, q);
        T.add_row_multiple(k, r, q);
        if (!ring.is_zero(H(k, j))) cleared = false;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    const auto inv = ring.unit_inverse(ring.unit_part(H(r, j)));
    H.scale_row(r, inv);
    T.scale_row(r, inv);
    for (std::size_t k = 0; k < r; ++k) {
      auto q = ring.neg(ring.divmod(H(k, j), H(r, j)).first);
      H.add_row_multiple(k, r, q);
      T.add_row_multiple(k, r, q);
    }
    res.pivot_cols.push_back(j);
    ++r;
  }
  return res;
}

/// U * A * V = S with U, V unimodular and S diagonal, each diagonal entry
/// dividing the next (zeros last). V_inv is the inverse of V, maintained
/// alongside so that module coordinates can be mapped both ways.
template <EuclideanRing R>
struct SNFResult {
  Mat<R> U, S, V, V_inv;
  std::size_t rank = 0;

  std::vector<ElementOf<R>> diagonal() const {
    std::vector<ElementOf<R>> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

template <EuclideanRing R>
SNFResult<R> smith_normal_form(const Mat<R>& A) {
  const R& ring = A.ring();
  const std::size_t m = A.rows(), n = A.cols();
  SNFResult<R> res{Mat<R>::identity(ring, m), A, Mat<R>::identity(ring, n), Mat<R>::identity(ring, n), 0};
  Mat<R>& S = res.S;

  auto row_add = [&](std::size_t dst, std::size_t src, const ElementOf<R>& c) {
    S.add_row_multiple(dst, src, c);
    res.U.add_row_multiple(dst, src, c);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    res.U.swap_rows(a, b);
  };
  // col[dst] += c*col[src]; the inverse acts on rows of V_inv as row[src] -= c*row[dst].
  auto col_add = [&](std::size_t dst, std::size_t src, const ElementOf<R>& c) {
    S.add_col_multiple(dst, src, c);
    res.V.add_col_multiple(dst, src, c);
    res.V_inv.add_row_multiple(src, dst, ring.neg(c));
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    res.V.swap_cols(a, b);
    res.V_inv.swap_rows(a, b);
  };
  auto move_min_to = [&](std::size_t t, std::size_t row_from, std::size_t col_from, bool whole_block) -> bool {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (ring.is_zero(S(i, j))) return;
      if (!best || ring.norm_less(S(i, j), S(best->first, best->second))) best = {i, j};
    };
    if (whole_block) {
      for (std::size_t i = row_from; i < m; ++i)
        for (std::size_t j = col_from; j < n; ++j) consider(i, j);
    } else {
      for (std::size_t i = t; i < m; ++i) consider(i, t);
      for (std::size_t j = t; j < n; ++j) consider(t, j);
    }
    if (!best) return false;
    row_swap(t, best->first);
    col_swap(t, best->second);
    return true;
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    if (!move_min_to(t, t, t, true)) break;
    while (true) {
      // Clear row and column t by Euclidean steps.
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (ring.is_zero(S(i, t))) continue;
          row_add(i, t, ring.neg(ring.divmod(S(i, t), S(t, t)).first));
          if (!ring.is_zero(S(i, t))) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (ring.is_zero(S(t, j))) continue;
          col_add(j, t, ring.neg(ring.divmod(S(t, j), S(t, t)).first));
          if (!ring.is_zero(S(t, j))) dirty = true;
        }
        if (!dirty) break;
        move_min_to(t, t, t, false);
      }
      // Enforce divisibility of the remaining block by the pivot.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(ring, S(t, t), S(i, j))) {
            offender = i;
            break;
          }
      if (!offender) break;
      row_add(t, *offender, ring.one());
    }
    const auto inv = ring.unit_inverse(ring.unit_part(S(t, t)));
    S.scale_row(t, inv);
    res.U.scale_row(t, inv);
  }
  res.rank = t;
  return res;
}

/// Rows generating {v : v * A = 0}, returned in Hermite normal form.
template <EuclideanRing R>
Mat<R> kernel(const Mat<R>& A) {
  auto h = hermite_normal_form(A);
  Mat<R> tail = h.T.row_range(h.rank(), A.rows());
  return hermite_normal_form(tail).H.without_zero_rows();
}

/// v with v * A = b, if b lies in the row space of A.
template <EuclideanRing R>
std::optional<RowVector<R>> solve_membership(const Mat<R>& A, const RowVector<R>& b) {
  const R& ring = A.ring();
  if (b.size() != A.cols()) throw InputError("solve_membership: length mismatch");
  auto h = hermite_normal_form(A);
  RowVector<R> rest = b;
  RowVector<R> c(A.rows(), ring.zero());
  for (std::size_t i = 0; i < h.rank(); ++i) {
    const std::size_t j = h.pivot_cols[i];
    auto [q, r] = ring.divmod(rest[j], h.H(i, j));
    if (!ring.is_zero(r)) return std::nullopt;
    c[i] = q;
    for (std::size_t k = j; k < A.cols(); ++k) rest[k] = ring.sub(rest[k], ring.mul(q, h.H(i, k)));
  }
  if (!is_zero_vector(ring, rest)) return std::nullopt;
  return row_times(c, h.T);
}

/// Reduces x to its canonical residue modulo the row span of an echelon
/// matrix H (with the given pivot columns). Two vectors reduce to the same
/// residue iff their difference lies in the span.
template <EuclideanRing R>
RowVector<R> reduce_modulo(const Mat<R>& H, const std::vector<std::size_t>& pivot_cols, RowVector<R> x) {
  const R& ring = H.ring();
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    const std::size_t j = pivot_cols[i];
    auto q = ring.divmod(x[j], H(i, j)).first;
    if (ring.is_zero(q)) continue;
    for (std::size_t k = j; k < H.cols(); ++k) x[k] = ring.sub(x[k], ring.mul(q, H(i, k)));
  }
  return x;
}

/// Determinant by fraction-free (Bareiss) elimination.
template <EuclideanRing R>
ElementOf<R> determinant(Mat<R> A) {
  const R& ring = A.ring();
  if (A.rows() != A.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return ring.one();
  bool negate = false;
  ElementOf<R> prev = ring.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring.is_zero(A(k, k))) {
      std::size_t p = k + 1;
      while (p < n && ring.is_zero(A(p, k))) ++p;
      if (p == n) return ring.zero();
      A.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = exact_div(ring, ring.sub(ring.mul(A(i, j), A(k, k)), ring.mul(A(i, k), A(k, j))), prev);
    prev = A(k, k);
  }
  return negate ? ring.neg(A(n - 1, n - 1)) : A(n - 1, n - 1);
}

}  // namespace primesub
