#pragma once

// Finitely presented modules M = R^n / rowspan(relations) and their
// submodules. A submodule N is stored as the Hermite normal form of its
// generators stacked over the relations, i.e. as the lattice N + rowspan(rel)
// in R^n, so two submodules are equal iff their canonical matrices are.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "primesub/normal_form.hpp"

namespace primesub {

template <EuclideanRing R>
class FPModule {
 public:
  using Ring = R;
  using Element = ElementOf<R>;

  /// Caches the Smith form, invariant factors (units dropped) and free rank.
  static FPModule build(const R& ring, std::size_t ambient_rank, const Mat<R>& relations) {
    if (relations.cols() != ambient_rank)
      throw InputError("relations have " + std::to_string(relations.cols()) + " columns, expected " +
                       std::to_string(ambient_rank));
    if (!(relations.ring() == ring)) throw InputError("relations live over a different ring");
    auto d = std::make_shared<Data>(Data{ring, ambient_rank, relations, smith_normal_form(relations),
                                         hermite_normal_form(relations), {}, {}, 0});
    for (std::size_t i = 0; i < d->snf.rank; ++i) {
      const Element& s = d->snf.S(i, i);
      if (ring.is_unit(s)) continue;
      d->invariant_factors.push_back(s);
      d->torsion_coords.push_back(i);
    }
    d->free_rank = ambient_rank - d->snf.rank;
    d->basis = d->hnf.H.row_range(0, d->hnf.rank());
    return FPModule(std::move(d));
  }

  /// The free module R^n.
  static FPModule free(const R& ring, std::size_t n) { return build(ring, n, Mat<R>(ring, 0, n)); }

  /// R^k / diag(d_1, ..., d_k); a zero entry gives a free summand.
  static FPModule diagonal(const R& ring, const std::vector<Element>& diag) {
    Mat<R> rel(ring, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) rel(i, i) = diag[i];
    return build(ring, diag.size(), rel);
  }

  const R& ring() const { return d_->ring; }
  std::size_t ambient_rank() const { return d_->n; }
  const Mat<R>& relations() const { return d_->relations; }
  const SNFResult<R>& snf() const { return d_->snf; }
  /// Invariant factors d_1 | d_2 | ... with units dropped.
  const std::vector<Element>& invariant_factors() const { return d_->invariant_factors; }
  std::size_t free_rank() const { return d_->free_rank; }
  bool is_zero() const { return d_->invariant_factors.empty() && d_->free_rank == 0; }
  bool is_finite() const { return d_->free_rank == 0; }
  bool is_cyclic() const {
    return (d_->free_rank == 0 && d_->invariant_factors.size() <= 1) ||
           (d_->free_rank == 1 && d_->invariant_factors.empty());
  }

  /// Echelon basis of the relation lattice.
  const Mat<R>& relation_basis() const { return d_->basis; }
  const std::vector<std::size_t>& relation_pivots() const { return d_->hnf.pivot_cols; }

  /// Ambient vector of the i-th Smith basis element (row i of V^-1). Under
  /// x -> x*V the module becomes a direct sum of R/(s_i) on these coordinates.
  RowVector<R> smith_basis_vector(std::size_t i) const { return d_->snf.V_inv.row(i); }
  /// Smith coordinates of an ambient vector.
  RowVector<R> smith_coordinates(const RowVector<R>& x) const { return row_times(x, d_->snf.V); }
  /// Smith coordinates carrying the invariant factors, aligned with invariant_factors().
  const std::vector<std::size_t>& torsion_coordinates() const { return d_->torsion_coords; }
  /// Smith coordinates of the free summand.
  std::vector<std::size_t> free_coordinates() const {
    std::vector<std::size_t> out;
    for (std::size_t i = d_->snf.rank; i < d_->n; ++i) out.push_back(i);
    return out;
  }

  /// Canonical representative of the coset x + rowspan(relations).
  RowVector<R> reduce(const RowVector<R>& x) const {
    if (x.size() != d_->n) throw InputError("element has wrong length");
    return reduce_modulo(d_->basis, d_->hnf.pivot_cols, x);
  }

  /// Number of elements, when finite.
  std::optional<Integer> order() const {
    if (d_->free_rank) return std::nullopt;
    Integer n = 1;
    for (auto& s : d_->invariant_factors) n *= ring().residue_count(s);
    return n;
  }

  /// Same ring, rank and relation lattice.
  bool same_as(const FPModule& o) const {
    if (d_ == o.d_) return true;
    return d_->ring == o.d_->ring && d_->n == o.d_->n && d_->basis == o.d_->basis;
  }

 private:
  struct Data {
    R ring;
    std::size_t n;
    Mat<R> relations;
    SNFResult<R> snf;
    HNFResult<R> hnf;
    std::vector<Element> invariant_factors;
    std::vector<std::size_t> torsion_coords;
    std::size_t free_rank;
    Mat<R> basis = Mat<R>(ring, 0, n);
  };

  explicit FPModule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

/// An element of M in canonical residue form; equality is coordinate equality.
template <EuclideanRing R>
class ModuleElement {
 public:
  ModuleElement(const FPModule<R>& parent, const RowVector<R>& coords)
      : parent_(parent), coords_(parent.reduce(coords)) {}

  const FPModule<R>& parent() const { return parent_; }
  const RowVector<R>& coordinates() const { return coords_; }
  bool is_zero() const { return is_zero_vector(parent_.ring(), coords_); }

  bool operator==(const ModuleElement& o) const { return parent_.same_as(o.parent_) && coords_ == o.coords_; }

 private:
  FPModule<R> parent_;
  RowVector<R> coords_;
};

template <EuclideanRing R>
class Submodule {
 public:
  /// gens has one row per generator.
  Submodule(const FPModule<R>& parent, const Mat<R>& gens) : parent_(parent), canonical_(parent.ring(), 0, 0) {
    if (gens.cols() != parent.ambient_rank())
      throw InputError("generators have " + std::to_string(gens.cols()) + " columns, expected " +
                       std::to_string(parent.ambient_rank()));
    auto h = hermite_normal_form(gens.stacked(parent.relation_basis()));
    canonical_ = h.H.row_range(0, h.rank());
    pivots_ = std::move(h.pivot_cols);
  }

  const FPModule<R>& parent() const { return parent_; }
  /// Echelon basis of N + rowspan(relations); unique for N.
  const Mat<R>& canonical() const { return canonical_; }
  /// Generators modulo relations (the canonical rows that are not already zero in M).
  Mat<R> generators() const {
    Mat<R> out(parent_.ring(), 0, parent_.ambient_rank());
    for (std::size_t i = 0; i < canonical_.rows(); ++i) {
      auto r = parent_.reduce(canonical_.row(i));
      if (!is_zero_vector(parent_.ring(), r)) out.append_row(r);
    }
    return out;
  }

  bool contains(const RowVector<R>& x) const {
    if (x.size() != parent_.ambient_rank()) throw InputError("element has wrong length");
    return is_zero_vector(parent_.ring(), reduce_modulo(canonical_, pivots_, x));
  }
  /// other ⊆ this.
  bool contains(const Submodule& other) const {
    for (std::size_t i = 0; i < other.canonical_.rows(); ++i)
      if (!contains(other.canonical_.row(i))) return false;
    return true;
  }

  bool is_whole() const {
    const std::size_t n = parent_.ambient_rank();
    return canonical_ == Mat<R>::identity(parent_.ring(), n);
  }
  bool is_zero() const { return canonical_ == parent_.relation_basis(); }
  bool is_proper() const { return !is_whole(); }

  bool operator==(const Submodule& o) const { return parent_.same_as(o.parent_) && canonical_ == o.canonical_; }
  int compare(const Submodule& o) const { return canonical_.compare(o.canonical_); }

 private:
  FPModule<R> parent_;
  Mat<R> canonical_;
  std::vector<std::size_t> pivots_;
};

/// Sorts by canonical form and removes duplicates.
template <EuclideanRing R>
void canonicalize_set(std::vector<Submodule<R>>& subs) {
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.compare(b) < 0; });
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
}

template <EuclideanRing R>
Submodule<R> submodule_from_generators(const FPModule<R>& M, const Mat<R>& gens) {
  return Submodule<R>(M, gens);
}

template <EuclideanRing R>
Submodule<R> submodule_from_rows(const FPModule<R>& M, const std::vector<RowVector<R>>& rows) {
  return Submodule<R>(M, Mat<R>::from_rows(M.ring(), rows, M.ambient_rank()));
}

template <EuclideanRing R>
Submodule<R> zero_submodule(const FPModule<R>& M) {
  return Submodule<R>(M, Mat<R>(M.ring(), 0, M.ambient_rank()));
}

template <EuclideanRing R>
Submodule<R> whole_submodule(const FPModule<R>& M) {
  return Submodule<R>(M, Mat<R>::identity(M.ring(), M.ambient_rank()));
}

namespace detail {
template <EuclideanRing R>
void require_same_parent(const Submodule<R>& a, const Submodule<R>& b) {
  if (!a.parent().same_as(b.parent())) throw InputError("submodules belong to different modules");
}
}  // namespace detail

template <EuclideanRing R>
Submodule<R> submodule_sum(const Submodule<R>& N1, const Submodule<R>& N2) {
  detail::require_same_parent(N1, N2);
  return Submodule<R>(N1.parent(), N1.canonical().stacked(N2.canonical()));
}

/// Lifts of N1 and N2 to R^n are intersected through the syzygies of their
/// stacked bases: a*B1 + b*B2 = 0 gives a*B1 in both.
template <EuclideanRing R>
Submodule<R> submodule_intersection(const Submodule<R>& N1, const Submodule<R>& N2) {
  detail::require_same_parent(N1, N2);
  const Mat<R>& B1 = N1.canonical();
  const Mat<R> K = kernel(B1.stacked(N2.canonical()));
  Mat<R> gens(N1.parent().ring(), 0, N1.parent().ambient_rank());
  for (std::size_t i = 0; i < K.rows(); ++i) {
    RowVector<R> a = K.row(i);
    a.resize(B1.rows());
    gens.append_row(row_times(a, B1));
  }
  return Submodule<R>(N1.parent(), gens);
}

/// aM, generated by a*e_i.
template <EuclideanRing R>
Submodule<R> ideal_times_module(const PrincipalIdeal<R>& a, const FPModule<R>& M) {
  const R& ring = M.ring();
  Mat<R> gens(ring, M.ambient_rank(), M.ambient_rank());
  for (std::size_t i = 0; i < M.ambient_rank(); ++i) gens(i, i) = a.generator;
  return Submodule<R>(M, gens);
}

/// aN, generated by a times the generators of N.
template <EuclideanRing R>
Submodule<R> ideal_times_submodule(const PrincipalIdeal<R>& a, const Submodule<R>& N) {
  Mat<R> gens = N.canonical();
  for (std::size_t i = 0; i < gens.rows(); ++i) gens.scale_row(i, a.generator);
  return Submodule<R>(N.parent(), gens);
}

/// M/N presented by the relations of M stacked with the generators of N,
/// on the same ambient coordinates (the projection is the identity).
template <EuclideanRing R>
struct QuotientPresentation {
  FPModule<R> parent;
  FPModule<R> quotient;

  /// Pulls a submodule of the quotient back to its preimage in the parent.
  Submodule<R> preimage(const Submodule<R>& S) const { return Submodule<R>(parent, S.canonical()); }
};

template <EuclideanRing R>
QuotientPresentation<R> quotient_module(const FPModule<R>& M, const Submodule<R>& N) {
  if (!N.parent().same_as(M)) throw InputError("submodule does not belong to the module");
  return {M, FPModule<R>::build(M.ring(), M.ambient_rank(), M.relations().stacked(N.canonical()))};
}

/// Ann of a module from its classification: (0) with a free part, (1) for
/// the zero module, otherwise the last invariant factor.
template <EuclideanRing R>
PrincipalIdeal<R> annihilator(const FPModule<R>& M) {
  const R& ring = M.ring();
  if (M.free_rank() > 0) return {ring.zero()};
  if (M.invariant_factors().empty()) return {ring.one()};
  return {M.invariant_factors().back()};
}

/// (N:M) = Ann(M/N).
template <EuclideanRing R>
PrincipalIdeal<R> colon_ideal(const Submodule<R>& N) {
  return annihilator(quotient_module(N.parent(), N).quotient);
}

/// Span of the Smith basis vectors with nonzero diagonal entries.
template <EuclideanRing R>
Submodule<R> torsion_submodule(const FPModule<R>& M) {
  Mat<R> gens(M.ring(), 0, M.ambient_rank());
  for (std::size_t i : M.torsion_coordinates()) gens.append_row(M.smith_basis_vector(i));
  return Submodule<R>(M, gens);
}

struct LengthAndClass {
  bool finite_length = false;
  std::optional<std::size_t> length;
  bool noetherian = true;
  bool artinian = false;
};

/// Over a PID every finitely presented module is Noetherian; it has finite
/// length (equivalently, is Artinian) iff it has no free part, and then its
/// length counts prime factors of the invariant factors with multiplicity.
template <EuclideanRing R>
LengthAndClass length_and_class(const FPModule<R>& M) {
  LengthAndClass out;
  out.finite_length = out.artinian = M.free_rank() == 0;
  if (out.finite_length) {
    std::size_t len = 0;
    for (auto& d : M.invariant_factors())
      for (auto& [f, e] : M.ring().factor(d).factors) len += e;
    out.length = len;
  }
  return out;
}

/// {x : s*x in N for some s in S}, S = R \ (q): the preimage of the part of
/// M/N's torsion that is prime to q.
template <EuclideanRing R>
Submodule<R> saturate_away_from(const Submodule<R>& N, const ElementOf<R>& q) {
  const FPModule<R>& M = N.parent();
  const R& ring = M.ring();
  const FPModule<R> Q = quotient_module(M, N).quotient;
  Mat<R> gens = N.canonical();
  const auto& factors = Q.invariant_factors();
  const auto& coords = Q.torsion_coordinates();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    ElementOf<R> qpart = power(ring, q, valuation(ring, factors[k], q));
    gens.append_row(scaled(ring, qpart, Q.smith_basis_vector(coords[k])));
  }
  return Submodule<R>(M, gens);
}

/// sat_0(N) = {x : s*x in N for some s != 0}, the preimage of torsion(M/N).
template <EuclideanRing R>
Submodule<R> torsion_saturation(const Submodule<R>& N) {
  const FPModule<R>& M = N.parent();
  const FPModule<R> Q = quotient_module(M, N).quotient;
  return submodule_sum(N, Submodule<R>(M, torsion_submodule(Q).canonical()));
}

}  // namespace primesub
