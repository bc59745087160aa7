#pragma once

// Shared test scaffolding: a seeded generator for rings, matrices and
// modules, and small independent oracles (cofactor determinants,
// determinantal divisors, bounded kernel search) that never call into the
// normal-form code they are used to judge.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "primesub/normal_form.hpp"
#include "primesub/oracle.hpp"

namespace testsupport {

using namespace primesub;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  long long in(long long lo, long long hi) {
    return lo + static_cast<long long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return rng_() & 1; }

  Integer element(const IntegerRing&, long long bound) { return Integer(in(-bound, bound)); }
  Poly element(const PolyRing& ring, long long max_deg) {
    std::vector<long long> c(static_cast<std::size_t>(in(0, max_deg)) + 1);
    for (auto& x : c) x = in(0, ring.characteristic() - 1);
    return ring.from_coeffs(c);
  }

  /// bound is the entry bound for integers and the degree bound for polynomials.
  template <EuclideanRing R>
  Mat<R> matrix(const R& ring, std::size_t rows, std::size_t cols, long long bound) {
    Mat<R> A(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) A(i, j) = element(ring, bound);
    return A;
  }

 private:
  std::mt19937_64 rng_;
};

inline FPModule<IntegerRing> zmod(std::vector<long long> diag) {
  std::vector<Integer> d;
  for (auto x : diag) d.emplace_back(x);
  return FPModule<IntegerRing>::diagonal(IntegerRing{}, d);
}

inline RowVector<IntegerRing> zvec(std::vector<long long> v) {
  RowVector<IntegerRing> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

template <EuclideanRing R>
Submodule<R> span(const FPModule<R>& M, const std::vector<RowVector<R>>& rows) {
  return Submodule<R>(M, Mat<R>::from_rows(M.ring(), rows, M.ambient_rank()));
}

/// Element set spanned by the given vectors, closed by the oracle table alone.
template <EuclideanRing R>
ElementSet oracle_span(const FiniteModuleTable<R>& T, const std::vector<RowVector<R>>& rows) {
  std::vector<std::size_t> idx;
  for (auto& r : rows) idx.push_back(T.index_of(r));
  return T.span(idx);
}

// ---- independent linear-algebra oracles ---------------------------------

/// Laplace expansion along the first row.
template <EuclideanRing R>
ElementOf<R> cofactor_det(const Mat<R>& A) {
  const R& ring = A.ring();
  const std::size_t n = A.rows();
  if (n == 0) return ring.one();
  if (n == 1) return A(0, 0);
  ElementOf<R> acc = ring.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (ring.is_zero(A(0, j))) continue;
    Mat<R> minor(ring, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = A(i, k);
    const auto term = ring.mul(A(0, j), cofactor_det(minor));
    acc = j % 2 ? ring.sub(acc, term) : ring.add(acc, term);
  }
  return acc;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> s(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) return f(s);
    for (std::size_t i = start; i < n; ++i) {
      s[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

/// Invariant factors as quotients of determinantal divisors d_k / d_{k-1},
/// where d_k is the gcd of all k x k minors. Stops at the first zero d_k.
template <EuclideanRing R>
std::vector<ElementOf<R>> determinantal_invariants(const Mat<R>& A) {
  const R& ring = A.ring();
  std::vector<ElementOf<R>> out;
  ElementOf<R> prev = ring.one();
  for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
    ElementOf<R> g = ring.zero();
    for_each_subset(A.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(A.cols(), k, [&](const std::vector<std::size_t>& cs) {
        Mat<R> m(ring, k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = A(rs[i], cs[j]);
        g = gcd(ring, g, cofactor_det(m));
      });
    });
    if (ring.is_zero(g)) break;
    out.push_back(exact_div(ring, g, prev));
    prev = g;
  }
  return out;
}

template <EuclideanRing R>
bool is_diagonal(const Mat<R>& S) {
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = 0; j < S.cols(); ++j)
      if (i != j && !S.ring().is_zero(S(i, j))) return false;
  return true;
}

/// Echelon shape, normalized pivots, and canonical residues above each pivot.
template <EuclideanRing R>
bool is_hermite(const Mat<R>& H, const std::vector<std::size_t>& pivots) {
  const R& ring = H.ring();
  for (std::size_t i = 0; i < H.rows(); ++i) {
    if (i >= pivots.size()) {
      if (!H.row_is_zero(i)) return false;
      continue;
    }
    const std::size_t p = pivots[i];
    if (i > 0 && pivots[i - 1] >= p) return false;
    for (std::size_t j = 0; j < p; ++j)
      if (!ring.is_zero(H(i, j))) return false;
    if (ring.is_zero(H(i, p)) || !(ring.normalize(H(i, p)) == H(i, p))) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (!(ring.divmod(H(k, p), H(i, p)).second == H(k, p))) return false;
  }
  return true;
}

/// Visits every integer row vector with entries in [-B, B].
inline void for_each_small_vector(std::size_t n, long long B, const std::function<void(const RowVector<IntegerRing>&)>& f) {
  RowVector<IntegerRing> x(n, Integer(-B));
  while (true) {
    f(x);
    std::size_t k = 0;
    while (k < n && x[k] == B) x[k++] = -B;
    if (k == n) return;
    ++x[k];
  }
}

/// Every normal-form property violated by A, as readable messages. The
/// kernel completeness search is exhaustive over [-B, B]^rows.
inline std::vector<std::string> linalg_violations(const Mat<IntegerRing>& A, bool with_divisors) {
  const IntegerRing Z;
  std::vector<std::string> bad;
  auto is_unit = [&](const Mat<IntegerRing>& U) { return Z.is_unit(cofactor_det(U)); };

  const auto s = smith_normal_form(A);
  if (!(s.U * A * s.V == s.S)) bad.push_back("U*A*V != S");
  if (!is_unit(s.U) || !is_unit(s.V)) bad.push_back("U or V not unimodular");
  if (!(s.V * s.V_inv == Mat<IntegerRing>::identity(Z, A.cols()))) bad.push_back("V*V_inv != I");
  if (!is_diagonal(s.S)) bad.push_back("S not diagonal");
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) bad.push_back("negative invariant factor");
    if (i + 1 < d.size() && !divides(Z, d[i], d[i + 1])) bad.push_back("divisibility chain broken");
  }
  if (with_divisors) {
    const auto dd = determinantal_invariants(A);
    if (dd.size() != s.rank) bad.push_back("rank differs from determinantal rank");
    for (std::size_t i = 0; i < dd.size() && i < d.size(); ++i)
      if (d[i] != dd[i]) bad.push_back("invariant factor differs from determinantal divisor quotient");
  }

  const auto h = hermite_normal_form(A);
  if (!(h.T * A == h.H)) bad.push_back("T*A != H");
  if (!is_unit(h.T)) bad.push_back("T not unimodular");
  if (!is_hermite(h.H, h.pivot_cols)) bad.push_back("H not in Hermite form");
  if (!(hermite_normal_form(h.H).H == h.H)) bad.push_back("HNF not idempotent");
  if (h.rank() != s.rank) bad.push_back("HNF rank != SNF rank");

  const auto K = kernel(A);
  if (!(K * A).is_zero()) bad.push_back("kernel row not annihilated");
  if (K.rows() != A.rows() - s.rank) bad.push_back("kernel rank != rows - rank");
  const long long B = A.rows() <= 4 ? 2 : 1;
  bool complete = true;
  for_each_small_vector(A.rows(), B, [&](const RowVector<IntegerRing>& x) {
    if (!complete || !is_zero_vector(Z, row_times(x, A))) return;
    if (!solve_membership(K, x)) complete = false;
  });
  if (!complete) bad.push_back("small kernel vector outside kernel span");

  // Membership round trip on a random combination of the rows.
  RowVector<IntegerRing> c(A.rows());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Integer(static_cast<long long>(i % 3) - 1);
  const auto b = row_times(c, A);
  const auto sol = solve_membership(A, b);
  if (!sol || row_times(*sol, A) != b) bad.push_back("solve_membership misses a row-space vector");
  return bad;
}

}  // namespace testsupport
