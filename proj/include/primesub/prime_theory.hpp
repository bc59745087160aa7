#pragma once

// Associated and supported primes and prime submodules, M(p), primary
// decomposition of zero, M-radicals, module-class predicates and
// localization at a prime, for finitely presented modules over a PID.
//
// Structural facts used here, each cross-checked against oracle.hpp by the
// harness on random finite modules:
//  * for p = (pi) != 0, R/p is a field, so every s outside p acts invertibly
//    on M/pM and M(p) = pM;
//  * M((0)) is the torsion submodule;
//  * the pi-prime submodules are exactly the proper submodules containing
//    pi*M, and the (0)-prime ones are the P with M/P nonzero and torsion-free.

#include <algorithm>
#include <optional>
#include <vector>

#include "primesub/module.hpp"
#include "primesub/oracle.hpp"

namespace primesub {

/// Supp_R M: finite, or every prime of R (exactly when Ann M = 0). The
/// minimal elements are always materialized.
template <EuclideanRing R>
struct SuppDescription {
  bool cofinite = false;
  std::vector<PrimeIdeal<R>> primes;   // the whole support when finite
  std::vector<PrimeIdeal<R>> minimal;

  bool empty() const { return !cofinite && primes.empty(); }
  bool contains(const PrimeIdeal<R>& p) const {
    return cofinite || std::find(primes.begin(), primes.end(), p) != primes.end();
  }
};

template <EuclideanRing R>
SuppDescription<R> supp_ring(const FPModule<R>& M) {
  const R& ring = M.ring();
  SuppDescription<R> out;
  if (M.is_zero()) return out;
  const auto ann = annihilator(M);
  if (is_zero_ideal(ring, ann)) {
    out.cofinite = true;
    out.minimal = {PrimeIdeal<R>::zero_ideal(ring)};
    return out;
  }
  out.primes = primes_dividing(ring, ann.generator);
  // Nonzero primes of a PID are maximal, hence pairwise incomparable.
  out.minimal = out.primes;
  return out;
}

template <EuclideanRing R>
std::vector<PrimeIdeal<R>> ass_ring(const FPModule<R>& M) {
  const R& ring = M.ring();
  std::vector<PrimeIdeal<R>> out;
  if (M.free_rank() > 0) out.push_back(PrimeIdeal<R>::zero_ideal(ring));
  for (auto& d : M.invariant_factors())
    for (auto& p : primes_dividing(ring, d)) out.push_back(p);
  sort_unique_primes(ring, out);
  return out;
}

/// Minimal elements under inclusion of a set of primes of a PID.
template <EuclideanRing R>
std::vector<PrimeIdeal<R>> minimal_primes(const R& ring, const std::vector<PrimeIdeal<R>>& ps) {
  for (auto& p : ps)
    if (is_zero_prime(ring, p)) return {p};
  return ps;
}

/// M(p) = {x : s*x in pM for some s not in p}.
template <EuclideanRing R>
Submodule<R> m_of_p(const FPModule<R>& M, const PrimeIdeal<R>& p) {
  if (is_zero_prime(M.ring(), p)) return torsion_submodule(M);
  return ideal_times_module(p.as_ideal(), M);
}

/// A submodule with every prime that produces it.
template <EuclideanRing R>
struct PrimeSubmoduleEntry {
  Submodule<R> submodule;
  std::vector<PrimeIdeal<R>> witnesses;
};

namespace detail {
template <EuclideanRing R>
std::vector<PrimeSubmoduleEntry<R>> collect_m_of_p(const FPModule<R>& M, const std::vector<PrimeIdeal<R>>& ps) {
  std::vector<PrimeSubmoduleEntry<R>> out;
  for (auto& p : ps) {
    Submodule<R> S = m_of_p(M, p);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.submodule == S; });
    if (it == out.end()) out.push_back({S, {p}});
    else it->witnesses.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.submodule.compare(b.submodule) < 0; });
  return out;
}
}  // namespace detail

/// Ass_P M = {M(p) : p in Ass_R M}, deduplicated by canonical form.
template <EuclideanRing R>
std::vector<PrimeSubmoduleEntry<R>> ass_p(const FPModule<R>& M) {
  return detail::collect_m_of_p(M, ass_ring(M));
}

template <EuclideanRing R>
std::vector<Submodule<R>> submodules_of(const std::vector<PrimeSubmoduleEntry<R>>& entries) {
  std::vector<Submodule<R>> out;
  for (auto& e : entries) out.push_back(e.submodule);
  return out;
}

/// Supp_P M. On a faithful module Supp_R M is every prime, so only the
/// submodules for its minimal elements are listed and minimal_only is set.
template <EuclideanRing R>
struct SuppP {
  bool minimal_only = false;
  std::vector<PrimeSubmoduleEntry<R>> entries;
};

template <EuclideanRing R>
SuppP<R> supp_p(const FPModule<R>& M) {
  auto supp = supp_ring(M);
  if (supp.cofinite) return {true, detail::collect_m_of_p(M, supp.minimal)};
  return {false, detail::collect_m_of_p(M, supp.primes)};
}

template <EuclideanRing R>
struct PrimeSubmoduleCert {
  Submodule<R> submodule;
  PrimeIdeal<R> witness_prime;  // equals (N:M)
};

/// N is p-prime iff N is proper, p = (N:M) is prime and M/N is torsion-free
/// over R/p. For p = (pi) the quotient is an R/(pi)-vector space, so only the
/// p = (0) case needs the torsion-free test.
template <EuclideanRing R>
std::optional<PrimeSubmoduleCert<R>> is_prime_submodule(const Submodule<R>& N) {
  const R& ring = N.parent().ring();
  if (N.is_whole()) return std::nullopt;
  const FPModule<R> Q = quotient_module(N.parent(), N).quotient;
  const auto colon = annihilator(Q);
  if (!is_prime_ideal(ring, colon)) return std::nullopt;
  if (is_zero_ideal(ring, colon) && !Q.invariant_factors().empty()) return std::nullopt;
  return PrimeSubmoduleCert<R>{N, PrimeIdeal<R>::make(ring, colon.generator)};
}

template <EuclideanRing R>
struct PrimaryComponent {
  Submodule<R> submodule;
  PrimeIdeal<R> associated_prime;  // rad(Q:M), the single prime of Ass(M/Q)
};

/// Throws InputError when Q = M.
template <EuclideanRing R>
std::optional<PrimaryComponent<R>> is_primary_submodule(const Submodule<R>& Q) {
  if (Q.is_whole()) throw InputError("primary test needs a proper submodule");
  auto ass = ass_ring(quotient_module(Q.parent(), Q).quotient);
  if (ass.size() != 1) return std::nullopt;
  return PrimaryComponent<R>{Q, ass.front()};
}

template <EuclideanRing R>
struct PrimaryDecomposition {
  std::vector<PrimaryComponent<R>> components;  // sorted by associated prime
};

/// Irredundant primary decomposition of 0 read off the Smith splitting
/// M = R^f + sum_q M_q: Q_q is the preimage of R^f + sum_{q' != q} M_q', and
/// when f > 0 and M has torsion, Q_(0) is the torsion submodule. Throws
/// DegenerateInput on the zero module and InternalError if the result fails
/// verification.
template <EuclideanRing R>
PrimaryDecomposition<R> primary_decomposition_zero(const FPModule<R>& M) {
  const R& ring = M.ring();
  if (M.is_zero()) throw DegenerateInput("the zero module has no primary decomposition");
  const auto& factors = M.invariant_factors();
  const auto& tcoords = M.torsion_coordinates();
  const auto fcoords = M.free_coordinates();
  PrimaryDecomposition<R> out;

  if (!fcoords.empty()) out.components.push_back({torsion_submodule(M), PrimeIdeal<R>::zero_ideal(ring)});
  if (!factors.empty()) {
    for (auto& q : primes_dividing(ring, factors.back())) {
      Mat<R> gens(ring, 0, M.ambient_rank());
      for (std::size_t i : fcoords) gens.append_row(M.smith_basis_vector(i));
      for (std::size_t k = 0; k < factors.size(); ++k) {
        auto qpart = power(ring, q.generator(), valuation(ring, factors[k], q.generator()));
        gens.append_row(scaled(ring, qpart, M.smith_basis_vector(tcoords[k])));
      }
      out.components.push_back({Submodule<R>(M, gens), q});
    }
  }
  std::sort(out.components.begin(), out.components.end(), [&](const auto& a, const auto& b) {
    return prime_less(ring, a.associated_prime, b.associated_prime);
  });

  // Verification: primary with the recorded prime, intersection zero, irredundant.
  for (auto& c : out.components) {
    auto pc = is_primary_submodule(c.submodule);
    if (!pc || !(pc->associated_prime == c.associated_prime))
      throw InternalError("primary decomposition: component is not primary for its prime");
  }
  auto meet_without = [&](std::optional<std::size_t> skip) {
    Submodule<R> m = whole_submodule(M);
    for (std::size_t k = 0; k < out.components.size(); ++k)
      if (k != skip) m = submodule_intersection(m, out.components[k].submodule);
    return m;
  };
  if (!meet_without(std::nullopt).is_zero()) throw InternalError("primary decomposition: intersection is not zero");
  for (std::size_t k = 0; k < out.components.size(); ++k)
    if (meet_without(k).is_zero()) throw InternalError("primary decomposition: redundant component");
  return out;
}

/// rad(N) through the prime submodules containing N: the (0)-prime ones
/// meet in sat_0(N) when M/N has a free part, and the pi-prime ones meet in
/// N + pi*M whenever that is proper. For pi prime to the torsion of M/N,
/// N + pi*M contains sat_0(N), so only the finitely many pi dividing the
/// torsion exponent of M/N contribute.
template <EuclideanRing R>
Submodule<R> m_radical_general(const Submodule<R>& N) {
  const FPModule<R>& M = N.parent();
  const R& ring = M.ring();
  const FPModule<R> Q = quotient_module(M, N).quotient;
  Submodule<R> out = whole_submodule(M);
  if (Q.is_zero()) return out;
  if (Q.free_rank() > 0) out = torsion_saturation(N);
  if (!Q.invariant_factors().empty())
    for (auto& pi : primes_dividing(ring, Q.invariant_factors().back()))
      out = submodule_intersection(out, submodule_sum(N, ideal_times_module(pi.as_ideal(), M)));
  return out;
}

/// rad(N) = rad(N:M) * M, valid on multiplication modules.
template <EuclideanRing R>
Submodule<R> m_radical_multiplication(const Submodule<R>& N) {
  const R& ring = N.parent().ring();
  const auto r = ideal_ops(ring, IdealOp::radical_of_first, colon_ideal(N), colon_ideal(N));
  return ideal_times_module(r, N.parent());
}

/// Over a PID a finitely generated module is multiplication iff it is cyclic.
template <EuclideanRing R>
bool is_multiplication(const FPModule<R>& M) {
  return M.is_cyclic();
}

template <EuclideanRing R>
Submodule<R> m_radical(const Submodule<R>& N) {
  return is_multiplication(N.parent()) ? m_radical_multiplication(N) : m_radical_general(N);
}

/// M(p) = pM holds automatically at nonzero p, so the only possible failure
/// is at p = (0) in Supp, i.e. a free part alongside nonzero torsion.
template <EuclideanRing R>
bool is_quasi_multiplication(const FPModule<R>& M) {
  return M.free_rank() == 0 || M.invariant_factors().empty();
}

/// N is maximal iff M/N is simple, i.e. isomorphic to R/(pi).
template <EuclideanRing R>
bool is_maximal_submodule(const Submodule<R>& N) {
  const FPModule<R> Q = quotient_module(N.parent(), N).quotient;
  return Q.free_rank() == 0 && Q.invariant_factors().size() == 1 &&
         is_irreducible(Q.ring(), Q.invariant_factors().front());
}

struct WeakMultiplicationAnswer {
  bool value = false;
  bool exhaustive = false;  // false: structural answer, flagged
};

/// Every prime submodule equals pM for a prime p. Finite modules within the
/// oracle caps are checked by enumerating Spec M; otherwise the structural
/// answer (cyclic) is returned when allow_structural is set, and
/// UnsupportedInstance is thrown when it is not.
template <EuclideanRing R>
WeakMultiplicationAnswer is_weak_multiplication(const FPModule<R>& M, bool allow_structural = false) {
  const R& ring = M.ring();
  if (M.is_zero()) return {true, true};
  if (M.is_finite()) {
    try {
      const auto T = FiniteModuleTable<R>::build(M);
      const auto L = enumerate_submodules(T);
      std::vector<ElementSet> pM;
      for (auto& p : ass_ring(M)) pM.push_back(T.ideal_times(p.generator()));
      for (auto& [P, p] : oracle_prime_submodules(T, L)) {
        // pM for p outside Supp is M itself, never prime; (0)M = 0.
        const bool of_form = std::find(pM.begin(), pM.end(), P) != pM.end() || P == T.ideal_times(ring.zero());
        if (!of_form) return {false, true};
      }
      return {true, true};
    } catch (const SizeError&) {
      if (!allow_structural) throw;
    }
  }
  if (!allow_structural) throw UnsupportedInstance("weak multiplication is only decided exhaustively on finite modules");
  return {M.is_cyclic(), false};
}

/// The candidates M(p) for p minimal in Supp_R M, reduced to the minimal
/// ones under inclusion. On quasi multiplication modules this is
/// {pM : p minimal in Supp_R M}, the set of minimal prime submodules. On a
/// module with both a free part and torsion (never quasi multiplication) it
/// can miss minimal primes such as 2(Z + Z/2) = 2Z + 0; use
/// minimal_elements_of_spec for the exact set. Throws DegenerateInput on the
/// zero module.
template <EuclideanRing R>
std::vector<PrimeSubmoduleCert<R>> minimal_prime_submodules(const FPModule<R>& M) {
  if (M.is_zero()) throw DegenerateInput("the zero module has no prime submodules");
  const auto minimal = supp_ring(M).minimal;
  std::vector<PrimeSubmoduleCert<R>> out;
  if (is_quasi_multiplication(M)) {
    for (auto& p : minimal) out.push_back({ideal_times_module(p.as_ideal(), M), p});
  } else {
    std::vector<PrimeSubmoduleCert<R>> cands;
    for (auto& p : minimal) cands.push_back({m_of_p(M, p), p});
    for (auto& c : cands) {
      bool is_min = std::none_of(cands.begin(), cands.end(), [&](const auto& d) {
        return !(d.submodule == c.submodule) && c.submodule.contains(d.submodule);
      });
      if (is_min) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.submodule.compare(b.submodule) < 0; });
  return out;
}

/// Minimal elements of Spec M. Every p-prime submodule contains M(p), and
/// for p in Supp \ Ass (only (pi) prime to the torsion, with a free part)
/// M(p) contains M((0)); so the minimal primes are the inclusion-minimal
/// M(p) over p in Ass_R M.
template <EuclideanRing R>
std::vector<PrimeSubmoduleCert<R>> minimal_elements_of_spec(const FPModule<R>& M) {
  std::vector<PrimeSubmoduleCert<R>> cands, out;
  for (auto& p : ass_ring(M)) cands.push_back({m_of_p(M, p), p});
  for (auto& c : cands) {
    bool is_min = std::none_of(cands.begin(), cands.end(), [&](const auto& d) {
      return !(d.submodule == c.submodule) && c.submodule.contains(d.submodule);
    });
    if (is_min) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.submodule.compare(b.submodule) < 0; });
  return out;
}

/// S^-1 M for S = R \ q, q = (pi) nonzero: R_q^f plus the pi-power parts of
/// the invariant factors. local_model is the R-module with that
/// classification; localizations are compared through it, each submodule
/// replaced by its S-saturation.
template <EuclideanRing R>
struct LocalizedModule {
  FPModule<R> parent;
  PrimeIdeal<R> base_prime;
  std::vector<ElementOf<R>> local_invariant_factors;
  std::size_t free_rank = 0;
  FPModule<R> local_model;
  /// Smith coordinates of the parent kept in the local model, in order.
  std::vector<std::size_t> kept_coordinates;
};

template <EuclideanRing R>
LocalizedModule<R> localize(const FPModule<R>& M, const PrimeIdeal<R>& q) {
  const R& ring = M.ring();
  if (is_zero_prime(ring, q)) throw UnsupportedInstance("localization at (0) is not supported");
  std::vector<ElementOf<R>> local;
  std::vector<std::size_t> kept;
  const auto& factors = M.invariant_factors();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const unsigned a = valuation(ring, factors[k], q.generator());
    if (!a) continue;
    local.push_back(power(ring, q.generator(), a));
    kept.push_back(M.torsion_coordinates()[k]);
  }
  std::vector<ElementOf<R>> diag = local;
  for (std::size_t i : M.free_coordinates()) {
    diag.push_back(ring.zero());
    kept.push_back(i);
  }
  return {M, q, local, M.free_rank(), FPModule<R>::diagonal(ring, diag), kept};
}

/// S^-1 N as the S-saturated submodule of the local model.
template <EuclideanRing R>
Submodule<R> localization_image(const LocalizedModule<R>& L, const Submodule<R>& N) {
  const R& ring = L.parent.ring();
  Mat<R> gens(ring, 0, L.kept_coordinates.size());
  const Mat<R>& C = N.canonical();
  for (std::size_t i = 0; i < C.rows(); ++i) {
    const auto y = L.parent.smith_coordinates(C.row(i));
    RowVector<R> v;
    for (std::size_t c : L.kept_coordinates) v.push_back(y[c]);
    gens.append_row(v);
  }
  return saturate_away_from(Submodule<R>(L.local_model, gens), L.base_prime.generator());
}

/// Ass_P(S^-1 M), computed inside the local model.
template <EuclideanRing R>
std::vector<Submodule<R>> ass_p_localized(const LocalizedModule<R>& L) {
  std::vector<Submodule<R>> out;
  for (auto& p : ass_ring(L.local_model))
    out.push_back(saturate_away_from(m_of_p(L.local_model, p), L.base_prime.generator()));
  canonicalize_set(out);
  return out;
}

/// Associated primes of S^-1 M, read off the local classification, as primes of R.
template <EuclideanRing R>
std::vector<PrimeIdeal<R>> ass_ring_localized(const LocalizedModule<R>& L) {
  std::vector<PrimeIdeal<R>> out;
  const R& ring = L.parent.ring();
  if (L.free_rank > 0) out.push_back(PrimeIdeal<R>::zero_ideal(ring));
  if (!L.local_invariant_factors.empty()) out.push_back(L.base_prime);
  sort_unique_primes(ring, out);
  return out;
}

template <EuclideanRing R>
struct ClassificationReport {
  bool weakly_finitely_generated = true;
  bool multiplication = false;
  bool quasi_multiplication = false;
  WeakMultiplicationAnswer weak_multiplication;
  bool finite_length = false;
  bool artinian = false;
  std::vector<PrimeIdeal<R>> ass_ring;
  std::vector<PrimeIdeal<R>> min_supp;
  std::vector<PrimeSubmoduleEntry<R>> ass_p;
  std::vector<PrimeSubmoduleCert<R>> minimal_prime_submodules;
};

template <EuclideanRing R>
ClassificationReport<R> classify(const FPModule<R>& M) {
  const R& ring = M.ring();
  ClassificationReport<R> out;
  const auto supp = supp_ring(M);
  // M(p) proper for every p in Supp: checked at the minimal primes, the
  // primes dividing Ann and (0) when it is in Supp.
  std::vector<PrimeIdeal<R>> probe = supp.minimal;
  probe.insert(probe.end(), supp.primes.begin(), supp.primes.end());
  if (supp.cofinite) probe.push_back(PrimeIdeal<R>::zero_ideal(ring));
  for (auto& p : probe)
    if (m_of_p(M, p).is_whole()) out.weakly_finitely_generated = false;
  out.multiplication = is_multiplication(M);
  out.quasi_multiplication = is_quasi_multiplication(M);
  out.weak_multiplication = is_weak_multiplication(M, true);
  const auto lc = length_and_class(M);
  out.finite_length = lc.finite_length;
  out.artinian = lc.artinian;
  out.ass_ring = ass_ring(M);
  out.min_supp = supp.minimal;
  out.ass_p = ass_p(M);
  if (!M.is_zero()) out.minimal_prime_submodules = minimal_prime_submodules(M);
  return out;
}

}  // namespace primesub
