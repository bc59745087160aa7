#pragma once

// Definitional brute force for finite modules. Every predicate here is
// evaluated by scanning elements and ring residues; nothing consults the
// Smith form or any structural shortcut from prime_theory.hpp.
//
// Ring action on a finite M factors through R/(D), where D is the product of
// the pivots of the relation lattice's echelon basis (D*M = 0 and
// |R/(D)| = |M|). Quantifiers over s in R are therefore decided by scanning
// residue classes r mod D together with explicit lifts: the class of r
// contains an element outside an ideal (g) iff r or r + D lies outside it.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "primesub/module.hpp"

namespace primesub {

inline constexpr std::size_t kOracleMaxOrder = 512;

/// Subset of the elements of a finite module of order <= 512.
class ElementSet {
 public:
  static constexpr std::size_t kWords = kOracleMaxOrder / 64;

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool subset_of(const ElementSet& o) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  ElementSet operator&(const ElementSet& o) const {
    ElementSet r;
    for (std::size_t k = 0; k < kWords; ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < kWords; ++k)
      for (std::uint64_t w = w_[k]; w; w &= w - 1) f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool operator==(const ElementSet&) const = default;
  /// Smaller sets first, then lexicographic on words.
  bool operator<(const ElementSet& o) const {
    const std::size_t a = count(), b = o.count();
    if (a != b) return a < b;
    return w_ < o.w_;
  }
  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) h = (h ^ w) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

/// Addition and ring-action tables of a finite module, with elements indexed
/// by the mixed-radix digits of their canonical residue vectors.
template <EuclideanRing R>
class FiniteModuleTable {
 public:
  using Element = ElementOf<R>;

  /// Throws UnsupportedInstance for modules with a free part and SizeError
  /// beyond `cap` elements.
  static FiniteModuleTable build(const FPModule<R>& M, std::size_t cap = kOracleMaxOrder) {
    if (M.free_rank() > 0) throw UnsupportedInstance("oracle needs a finite module");
    return FiniteModuleTable(M, std::min(cap, kOracleMaxOrder));
  }

  const FPModule<R>& parent() const { return M_; }
  const R& ring() const { return M_.ring(); }
  std::size_t order() const { return order_; }
  /// Product of the relation pivots; annihilates M.
  const Element& multiple_of_exponent() const { return D_; }
  std::size_t residue_count() const { return residues_.size(); }
  const Element& residue(std::size_t r) const { return residues_[r]; }

  std::size_t add(std::size_t a, std::size_t b) const { return add_[a * order_ + b]; }
  std::size_t act(std::size_t r, std::size_t x) const { return act_[r * order_ + x]; }
  /// Index of a ring element's residue class mod D.
  std::size_t residue_index(const Element& a) const {
    return digits_to_index(ring().residue_digits(ring().divmod(a, D_).second, D_), res_radix_);
  }
  std::size_t act_by(const Element& a, std::size_t x) const { return act(residue_index(a), x); }

  RowVector<R> vector_of(std::size_t idx) const {
    const R& ring = this->ring();
    RowVector<R> v(n_, ring.zero());
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& rs = coord_systems_[j];
      for (std::size_t k = 0; k < rs.basis.size(); ++k) {
        const std::size_t d = idx % rs.radix[k];
        idx /= rs.radix[k];
        if (d) v[j] = ring.add(v[j], ring.mul(ring.from_int(static_cast<long long>(d)), rs.basis[k]));
      }
    }
    return v;
  }

  std::size_t index_of(const RowVector<R>& x) const {
    const RowVector<R> red = reduce_modulo(H_, pivots_, x);
    std::size_t idx = 0, weight = 1;
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& rs = coord_systems_[j];
      auto d = ring().residue_digits(red[j], H_(j, j));
      for (std::size_t k = 0; k < rs.basis.size(); ++k) {
        idx += d[k] * weight;
        weight *= rs.radix[k];
      }
    }
    return idx;
  }

  /// Images of the standard basis vectors e_j; they generate M.
  const std::vector<std::size_t>& generators() const { return gens_; }

  ElementSet whole() const {
    ElementSet s;
    for (std::size_t i = 0; i < order_; ++i) s.set(i);
    return s;
  }
  ElementSet zero_set() const {
    ElementSet s;
    s.set(0);
    return s;
  }

  /// R*x.
  ElementSet cyclic(std::size_t x) const {
    ElementSet s;
    for (std::size_t r = 0; r < residue_count(); ++r) s.set(act(r, x));
    return s;
  }

  /// S + T for submodules S, T, built coset by coset.
  ElementSet sum(const ElementSet& S, const ElementSet& T) const {
    ElementSet out = S;
    const auto s_members = S.members();
    T.for_each([&](std::size_t t) {
      if (out.test(t)) return;
      for (std::size_t s : s_members) out.set(add(s, t));
    });
    return out;
  }

  /// Smallest submodule containing the given elements.
  ElementSet span(const std::vector<std::size_t>& elems) const {
    ElementSet out = zero_set();
    for (std::size_t x : elems)
      if (!out.test(x)) out = sum(out, cyclic(x));
    return out;
  }

  ElementSet to_set(const Submodule<R>& N) const {
    std::vector<std::size_t> elems;
    const Mat<R>& C = N.canonical();
    for (std::size_t i = 0; i < C.rows(); ++i) elems.push_back(index_of(C.row(i)));
    return span(elems);
  }

  Submodule<R> to_submodule(const ElementSet& S) const {
    std::vector<RowVector<R>> rows;
    ElementSet covered = zero_set();
    S.for_each([&](std::size_t x) {
      if (covered.test(x)) return;
      covered = sum(covered, cyclic(x));
      rows.push_back(vector_of(x));
    });
    return submodule_from_rows(M_, rows);
  }

  /// a*M as the image of multiplication by a.
  ElementSet ideal_times(const Element& a) const {
    ElementSet s;
    const std::size_t r = residue_index(a);
    for (std::size_t x = 0; x < order_; ++x) s.set(act(r, x));
    return s;
  }

  /// Generator of {r in R : pred(r mod D)}, an ideal containing D: its
  /// normalized element of least norm, found by scanning residues in norm order.
  template <class Pred>
  PrincipalIdeal<R> ideal_of_residues(Pred&& pred) const {
    for (std::size_t r = 1; r < residue_count(); ++r)
      if (pred(r)) return ideal(ring(), residues_[r]);
    return ideal(ring(), D_);
  }

  /// (N : M) = {r : r*e_j in N for every generator e_j}.
  PrincipalIdeal<R> colon(const ElementSet& N) const {
    return ideal_of_residues([&](std::size_t r) {
      return std::all_of(gens_.begin(), gens_.end(), [&](std::size_t g) { return N.test(act(r, g)); });
    });
  }

  /// {r : r*x in N}; the annihilator of x + N in M/N.
  PrincipalIdeal<R> annihilator_mod(std::size_t x, const ElementSet& N) const {
    return ideal_of_residues([&](std::size_t r) { return N.test(act(r, x)); });
  }

  /// Whether the residue class r contains a lift outside the ideal I.
  bool class_leaves_ideal(std::size_t r, const PrincipalIdeal<R>& I) const {
    const Element& lift = residues_[r];
    return !ideal_has(ring(), I, lift) || !ideal_has(ring(), I, ring().add(lift, D_));
  }

 private:
  FiniteModuleTable(const FPModule<R>& M, std::size_t cap) : M_(M), n_(M.ambient_rank()), H_(M.relation_basis()) {
    const R& ring = M.ring();
    pivots_ = M.relation_pivots();
    // Finite: the echelon basis is square with a pivot in every column.
    if (H_.rows() != n_) throw InternalError("finite module without full-rank relations");
    D_ = ring.one();
    std::vector<std::uint32_t> elem_radix;
    for (std::size_t j = 0; j < n_; ++j) {
      coord_systems_.push_back(ring.residue_system(H_(j, j), cap));
      for (auto r : coord_systems_.back().radix) elem_radix.push_back(r);
      D_ = ring.mul(D_, H_(j, j));
    }
    std::size_t order = 1;
    for (auto r : elem_radix) {
      if (order > cap / r) throw SizeError("module order exceeds oracle cap");
      order *= r;
    }
    order_ = order;

    // Addition: a + b = succ_k(a + b') where b' lowers b's first nonzero digit.
    std::vector<std::vector<std::uint16_t>> succ;
    std::vector<std::size_t> weights;
    {
      std::size_t w = 1;
      std::size_t k = 0;
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t b = 0; b < coord_systems_[j].basis.size(); ++b, ++k) {
          RowVector<R> unit(n_, ring.zero());
          unit[j] = coord_systems_[j].basis[b];
          std::vector<std::uint16_t> s(order_);
          for (std::size_t x = 0; x < order_; ++x) {
            RowVector<R> v = vector_of(x);
            for (std::size_t c = 0; c < n_; ++c) v[c] = ring.add(v[c], unit[c]);
            s[x] = static_cast<std::uint16_t>(index_of(v));
          }
          succ.push_back(std::move(s));
          weights.push_back(w);
          w *= elem_radix[k];
        }
    }
    auto lower = [&](std::size_t idx, const std::vector<std::uint32_t>& radix,
                     const std::vector<std::size_t>& wts) -> std::pair<std::size_t, std::size_t> {
      for (std::size_t k = 0; k < radix.size(); ++k)
        if ((idx / wts[k]) % radix[k]) return {k, idx - wts[k]};
      return {radix.size(), idx};
    };
    add_.assign(order_ * order_, 0);
    for (std::size_t a = 0; a < order_; ++a) add_[a * order_] = static_cast<std::uint16_t>(a);
    for (std::size_t b = 1; b < order_; ++b) {
      auto [k, prev] = lower(b, elem_radix, weights);
      for (std::size_t a = 0; a < order_; ++a) add_[a * order_ + b] = succ[k][add_[a * order_ + prev]];
    }

    // Residues mod D and the action table, additive in r.
    const auto rs = ring.residue_system(D_, cap);
    res_radix_ = rs;
    std::vector<std::size_t> rweights;
    {
      std::size_t w = 1;
      for (auto r : rs.radix) {
        rweights.push_back(w);
        w *= r;
      }
    }
    residues_.resize(rs.size, ring.zero());
    for (std::size_t r = 1; r < rs.size; ++r) {
      auto [k, prev] = lower(r, rs.radix, rweights);
      residues_[r] = ring.add(residues_[prev], rs.basis[k]);
    }
    std::vector<std::vector<std::uint16_t>> basis_act;
    for (auto& beta : rs.basis) {
      std::vector<std::uint16_t> a(order_);
      for (std::size_t x = 0; x < order_; ++x) a[x] = static_cast<std::uint16_t>(index_of(scaled(ring, beta, vector_of(x))));
      basis_act.push_back(std::move(a));
    }
    act_.assign(rs.size * order_, 0);
    for (std::size_t r = 1; r < rs.size; ++r) {
      auto [k, prev] = lower(r, rs.radix, rweights);
      for (std::size_t x = 0; x < order_; ++x)
        act_[r * order_ + x] = add_[act_[prev * order_ + x] * order_ + basis_act[k][x]];
    }

    for (std::size_t j = 0; j < n_; ++j) {
      RowVector<R> e(n_, ring.zero());
      e[j] = ring.one();
      gens_.push_back(index_of(e));
    }
  }

  static std::size_t digits_to_index(const std::vector<std::uint32_t>& d, const ResidueSystem<Element>& rs) {
    std::size_t idx = 0, w = 1;
    for (std::size_t k = 0; k < rs.radix.size(); ++k) {
      idx += d[k] * w;
      w *= rs.radix[k];
    }
    return idx;
  }

  FPModule<R> M_;
  std::size_t n_;
  Mat<R> H_;
  std::vector<std::size_t> pivots_;
  std::vector<ResidueSystem<Element>> coord_systems_;
  Element D_;
  ResidueSystem<Element> res_radix_;
  std::vector<Element> residues_;
  std::size_t order_ = 0;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> act_;
  std::vector<std::size_t> gens_;
};

/// All submodules, sorted (smaller first), each exactly once.
struct SubmoduleLattice {
  std::vector<ElementSet> submodules;

  std::size_t size() const { return submodules.size(); }
  /// Submodules covered by nothing but the whole module.
  std::vector<ElementSet> maximal(const ElementSet& whole) const {
    std::vector<ElementSet> out;
    for (auto& s : submodules) {
      if (s == whole) continue;
      bool maximal = true;
      for (auto& t : submodules)
        if (t != whole && t != s && s.subset_of(t)) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(s);
    }
    return out;
  }
};

inline constexpr std::size_t kDefaultLatticeCap = 20000;

/// Closes {0} under adding cyclic submodules; every submodule is a sum of
/// cyclic ones, so this reaches all of them.
template <EuclideanRing R>
SubmoduleLattice enumerate_submodules(const FiniteModuleTable<R>& T, std::size_t cap = kDefaultLatticeCap) {
  std::unordered_set<ElementSet, ElementSetHash> seen_cyclic;
  std::vector<ElementSet> cyclics;
  for (std::size_t x = 0; x < T.order(); ++x) {
    auto c = T.cyclic(x);
    if (seen_cyclic.insert(c).second) cyclics.push_back(c);
  }
  std::unordered_set<ElementSet, ElementSetHash> seen{T.zero_set()};
  std::vector<ElementSet> order{T.zero_set()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ElementSet S = order[i];
    for (auto& C : cyclics) {
      if (C.subset_of(S)) continue;
      ElementSet U = T.sum(S, C);
      if (seen.insert(U).second) {
        order.push_back(U);
        if (order.size() > cap) throw SizeError("submodule lattice exceeds cap");
      }
    }
  }
  std::sort(order.begin(), order.end());
  return {std::move(order)};
}

/// {x : exists s not in p with s*x in pM}, scanned over residue classes with lifts.
template <EuclideanRing R>
ElementSet oracle_m_of_p(const FiniteModuleTable<R>& T, const PrimeIdeal<R>& p) {
  const R& ring = T.ring();
  const ElementSet pM = T.ideal_times(p.generator());
  std::vector<std::size_t> outside;
  for (std::size_t r = 0; r < T.residue_count(); ++r)
    if (T.class_leaves_ideal(r, p.as_ideal())) outside.push_back(r);
  ElementSet out;
  for (std::size_t x = 0; x < T.order(); ++x)
    for (std::size_t r : outside)
      if (pM.test(T.act(r, x))) {
        out.set(x);
        break;
      }
  (void)ring;
  return out;
}

/// Primes occurring as annihilators of nonzero elements.
template <EuclideanRing R>
std::vector<PrimeIdeal<R>> oracle_ass_ring(const FiniteModuleTable<R>& T, const ElementSet& N) {
  const R& ring = T.ring();
  std::vector<PrimeIdeal<R>> out;
  for (std::size_t x = 0; x < T.order(); ++x) {
    if (N.test(x)) continue;
    auto ann = T.annihilator_mod(x, N);
    if (is_prime_ideal(ring, ann)) out.push_back(PrimeIdeal<R>::make(ring, ann.generator));
  }
  sort_unique_primes(ring, out);
  return out;
}

template <EuclideanRing R>
std::vector<PrimeIdeal<R>> oracle_ass_ring(const FiniteModuleTable<R>& T) {
  return oracle_ass_ring(T, T.zero_set());
}

/// The witness prime when N is a prime submodule: N proper, (N:M) prime, and
/// r*e in N implies e in N or r in (N:M), over every r in R and e in M.
template <EuclideanRing R>
std::optional<PrimeIdeal<R>> oracle_is_prime(const FiniteModuleTable<R>& T, const ElementSet& N) {
  const R& ring = T.ring();
  if (N == T.whole()) return std::nullopt;
  const auto colon = T.colon(N);
  if (!is_prime_ideal(ring, colon)) return std::nullopt;
  for (std::size_t r = 0; r < T.residue_count(); ++r) {
    if (!T.class_leaves_ideal(r, colon)) continue;
    for (std::size_t e = 0; e < T.order(); ++e)
      if (!N.test(e) && N.test(T.act(r, e))) return std::nullopt;
  }
  return PrimeIdeal<R>::make(ring, colon.generator);
}

template <EuclideanRing R>
std::vector<std::pair<ElementSet, PrimeIdeal<R>>> oracle_prime_submodules(const FiniteModuleTable<R>& T,
                                                                         const SubmoduleLattice& L) {
  std::vector<std::pair<ElementSet, PrimeIdeal<R>>> out;
  for (auto& N : L.submodules)
    if (auto p = oracle_is_prime(T, N)) out.emplace_back(N, *p);
  return out;
}

/// Intersection of the prime submodules containing N; M if there are none.
template <EuclideanRing R>
ElementSet oracle_radical(const FiniteModuleTable<R>& T,
                          const std::vector<std::pair<ElementSet, PrimeIdeal<R>>>& primes, const ElementSet& N) {
  ElementSet out = T.whole();
  for (auto& [P, p] : primes)
    if (N.subset_of(P)) out = out & P;
  return out;
}

/// Q is primary iff M/Q has exactly one associated prime.
template <EuclideanRing R>
std::optional<PrimeIdeal<R>> oracle_primary_prime(const FiniteModuleTable<R>& T, const ElementSet& Q) {
  if (Q == T.whole()) return std::nullopt;
  auto ass = oracle_ass_ring(T, Q);
  if (ass.size() != 1) return std::nullopt;
  return ass.front();
}

template <EuclideanRing R>
using OracleDecomposition = std::vector<std::pair<ElementSet, PrimeIdeal<R>>>;

inline constexpr std::size_t kDecompositionLatticeCap = 64;

/// Every irredundant family of primary submodules with pairwise distinct
/// primes whose intersection is zero.
template <EuclideanRing R>
std::vector<OracleDecomposition<R>> oracle_primary_decompositions(const FiniteModuleTable<R>& T,
                                                                  const SubmoduleLattice& L,
                                                                  std::size_t cap = kDecompositionLatticeCap) {
  if (L.size() > cap) throw SizeError("lattice too large for decomposition search");
  // Group primary submodules by prime.
  std::vector<PrimeIdeal<R>> primes;
  std::vector<std::vector<ElementSet>> groups;
  for (auto& Q : L.submodules) {
    auto p = oracle_primary_prime(T, Q);
    if (!p) continue;
    auto it = std::find(primes.begin(), primes.end(), *p);
    if (it == primes.end()) {
      primes.push_back(*p);
      groups.push_back({Q});
    } else {
      groups[static_cast<std::size_t>(it - primes.begin())].push_back(Q);
    }
  }
  std::vector<OracleDecomposition<R>> out;
  OracleDecomposition<R> current;
  const ElementSet zero = T.zero_set();
  std::function<void(std::size_t)> search = [&](std::size_t g) {
    if (g == groups.size()) {
      if (current.empty()) return;
      ElementSet meet = T.whole();
      for (auto& [Q, p] : current) meet = meet & Q;
      if (meet != zero) return;
      for (std::size_t drop = 0; drop < current.size(); ++drop) {
        ElementSet m = T.whole();
        for (std::size_t k = 0; k < current.size(); ++k)
          if (k != drop) m = m & current[k].first;
        if (m == zero) return;
      }
      out.push_back(current);
      return;
    }
    search(g + 1);
    for (auto& Q : groups[g]) {
      current.emplace_back(Q, primes[g]);
      search(g + 1);
      current.pop_back();
    }
  };
  search(0);
  return out;
}

/// Every submodule N equals (N:M)M.
template <EuclideanRing R>
bool oracle_multiplication(const FiniteModuleTable<R>& T, const SubmoduleLattice& L) {
  for (auto& N : L.submodules)
    if (T.ideal_times(T.colon(N).generator) != N) return false;
  return true;
}

}  // namespace primesub
