#pragma once

// Named checks. Each one tests a single statement on a single instance and
// records the first violation with both sides serialized. ORACLE.* checks
// compare a structural routine with the brute-force engine; the others test
// the statements themselves, gated on their hypotheses.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primesub/harness/generator.hpp"
#include "primesub/oracle.hpp"
#include "primesub/prime_theory.hpp"

namespace primesub::harness {

// ---- implementation table and mutations ----------------------------------

enum class Mutation { none, m_of_p_zero_to_zero_times_M, multiplication_always_true, radical_fast_path_ungated };

inline const std::vector<std::pair<Mutation, std::string>>& mutation_names() {
  static const std::vector<std::pair<Mutation, std::string>> names = {
      {Mutation::none, "none"},
      {Mutation::m_of_p_zero_to_zero_times_M, "m_of_p_zero_to_zero_times_M"},
      {Mutation::multiplication_always_true, "multiplication_always_true"},
      {Mutation::radical_fast_path_ungated, "radical_fast_path_ungated"},
  };
  return names;
}

inline std::string mutation_name(Mutation m) {
  for (auto& [k, v] : mutation_names())
    if (k == m) return v;
  return "none";
}

inline Mutation mutation_from_name(const std::string& s) {
  for (auto& [k, v] : mutation_names())
    if (v == s) return k;
  throw FormatError("unknown implementation \"" + s + "\"");
}

/// The routines that the mutations replace. Checks call these instead of the
/// library functions so a mutated build can be run through the same suite.
template <EuclideanRing R>
struct Implementation {
  Mutation mutation = Mutation::none;

  Submodule<R> m_of_p(const FPModule<R>& M, const PrimeIdeal<R>& p) const {
    if (mutation == Mutation::m_of_p_zero_to_zero_times_M && is_zero_prime(M.ring(), p))
      return ideal_times_module(p.as_ideal(), M);
    return primesub::m_of_p(M, p);
  }
  bool is_multiplication(const FPModule<R>& M) const {
    return mutation == Mutation::multiplication_always_true || primesub::is_multiplication(M);
  }
  Submodule<R> m_radical(const Submodule<R>& N) const {
    if (mutation == Mutation::radical_fast_path_ungated) return m_radical_multiplication(N);
    return primesub::m_radical(N);
  }
};

// ---- verdicts ---------------------------------------------------------------

struct Verdict {
  bool applicable = false;
  bool passed = true;
  json detail;

  /// Marks the check as exercised; on the first failure stores describe().
  void expect(bool ok, const std::function<json()>& describe) {
    applicable = true;
    if (!ok && passed) {
      passed = false;
      detail = describe();
    }
  }
};

// ---- per-instance context ---------------------------------------------------

inline constexpr std::size_t kSampleCap = 64;

template <EuclideanRing R>
class Context {
 public:
  using Element = ElementOf<R>;
  using OraclePrimes = std::vector<std::pair<ElementSet, PrimeIdeal<R>>>;

  Context(FPModule<R> M, Mutation mutation, std::uint64_t seed) : M_(std::move(M)), impl_{mutation}, seed_(seed) {}

  const FPModule<R>& M() const { return M_; }
  const R& ring() const { return M_.ring(); }
  const Implementation<R>& impl() const { return impl_; }
  std::uint64_t seed() const { return seed_; }

  const std::vector<PrimeIdeal<R>>& ass() {
    if (!ass_) ass_ = ass_ring(M_);
    return *ass_;
  }
  const SuppDescription<R>& supp() {
    if (!supp_) supp_ = supp_ring(M_);
    return *supp_;
  }
  const std::vector<PrimeSubmoduleEntry<R>>& ass_p_entries() {
    if (!ass_p_) ass_p_ = ass_p(M_);
    return *ass_p_;
  }
  std::vector<Submodule<R>> ass_p_set() { return submodules_of(ass_p_entries()); }

  /// Largest torsion invariant factor, or 1.
  Element exponent() const {
    return M_.invariant_factors().empty() ? ring().one() : M_.invariant_factors().back();
  }

  /// Ass, Supp (when finite), (0), and two primes not dividing the torsion.
  const std::vector<PrimeIdeal<R>>& probe_primes() {
    if (!probes_) {
      std::vector<PrimeIdeal<R>> ps = ass();
      ps.insert(ps.end(), supp().primes.begin(), supp().primes.end());
      ps.push_back(PrimeIdeal<R>::zero_ideal(ring()));
      for (auto& q : primes_not_dividing(ring(), exponent(), 2)) ps.push_back(q);
      sort_unique_primes(ring(), ps);
      probes_ = ps;
    }
    return *probes_;
  }
  /// Nonzero primes for localization: those dividing the torsion plus two others.
  std::vector<PrimeIdeal<R>> local_primes() {
    std::vector<PrimeIdeal<R>> out;
    for (auto& p : probe_primes())
      if (!is_zero_prime(ring(), p)) out.push_back(p);
    return out;
  }

  /// Null unless M is finite and within the oracle caps.
  const FiniteModuleTable<R>* table() {
    if (!table_tried_) {
      table_tried_ = true;
      if (M_.is_finite()) {
        try {
          table_.emplace(FiniteModuleTable<R>::build(M_));
        } catch (const SizeError&) {
        }
      }
    }
    return table_ ? &*table_ : nullptr;
  }
  const SubmoduleLattice* lattice() {
    if (!lattice_tried_) {
      lattice_tried_ = true;
      if (auto* T = table()) {
        try {
          lattice_.emplace(enumerate_submodules(*T));
        } catch (const SizeError&) {
        }
      }
    }
    return lattice_ ? &*lattice_ : nullptr;
  }
  const OraclePrimes* oracle_primes() {
    if (!oracle_primes_ && lattice()) oracle_primes_ = oracle_prime_submodules(*table(), *lattice());
    return oracle_primes_ ? &*oracle_primes_ : nullptr;
  }
  /// Every minimal primary decomposition, when the lattice is small enough.
  const std::vector<OracleDecomposition<R>>* oracle_decompositions() {
    if (!decomps_tried_) {
      decomps_tried_ = true;
      if (lattice() && lattice()->size() <= kDecompositionLatticeCap)
        decomps_.emplace(oracle_primary_decompositions(*table(), *lattice()));
    }
    return decomps_ ? &*decomps_ : nullptr;
  }

  /// Submodules to quantify over: the lattice (evenly thinned to kSampleCap)
  /// for finite M, a deterministic family built from pM, torsion and random
  /// spans otherwise.
  const std::vector<Submodule<R>>& sample_submodules() {
    if (!sample_) {
      std::vector<Submodule<R>> out;
      if (auto* L = lattice()) {
        const std::size_t n = L->size();
        const std::size_t take = std::min(n, kSampleCap);
        for (std::size_t k = 0; k < take; ++k) out.push_back(table()->to_submodule(L->submodules[k * n / take]));
      } else {
        out = infinite_family();
      }
      canonicalize_set(out);
      sample_ = out;
    }
    return *sample_;
  }

  json module_json() const { return module_to_json(M_); }
  json set_json(const ElementSet& S) { return submodule_to_json(table()->to_submodule(S)); }
  json sets_json(const std::vector<ElementSet>& sets) {
    json out = json::array();
    for (auto& s : sets) out.push_back(set_json(s));
    return out;
  }
  json prime_json(const PrimeIdeal<R>& p) const { return prime_to_json(ring(), p); }
  json primes_json(const std::vector<PrimeIdeal<R>>& ps) const { return primes_to_json(ring(), ps); }

  /// Small random vectors, deterministic in the trial seed.
  std::vector<RowVector<R>> random_vectors(std::size_t count, std::uint64_t salt) const {
    detail::Draw d(seed_ * 1000003 + salt);
    std::vector<RowVector<R>> out;
    for (std::size_t k = 0; k < count; ++k) {
      RowVector<R> v;
      for (std::size_t j = 0; j < M_.ambient_rank(); ++j) v.push_back(small_element(d));
      out.push_back(v);
    }
    return out;
  }

  /// Ring elements of small norm, used as bounded witnesses for "some s".
  std::vector<Element> small_elements() const {
    std::vector<Element> out;
    if constexpr (std::is_same_v<R, IntegerRing>) {
      for (long long s = 1; s <= 12; ++s) out.push_back(Integer(s));
    } else {
      for (int deg = 0; deg <= 1; ++deg)
        ring().for_each_monic(deg, [&](const Poly& m) {
          out.push_back(m);
          return true;
        });
    }
    return out;
  }

 private:
  Element small_element(detail::Draw& d) const {
    if constexpr (std::is_same_v<R, IntegerRing>) {
      return Integer(d.in(-3, 3));
    } else {
      const long long p = ring().characteristic();
      return ring().from_coeffs({d.in(0, p - 1), d.in(0, p - 1)});
    }
  }

  std::vector<Submodule<R>> infinite_family() {
    std::vector<Submodule<R>> out{zero_submodule(M_), whole_submodule(M_), torsion_submodule(M_)};
    for (auto& p : probe_primes()) {
      auto pM = ideal_times_module(p.as_ideal(), M_);
      out.push_back(pM);
      out.push_back(torsion_saturation(pM));
    }
    const auto vs = random_vectors(6, 1);
    for (std::size_t k = 0; k < vs.size(); ++k) {
      auto one = submodule_from_rows(M_, {vs[k]});
      out.push_back(one);
      out.push_back(torsion_saturation(one));
      if (k + 1 < vs.size()) out.push_back(submodule_from_rows(M_, {vs[k], vs[k + 1]}));
      for (auto& q : local_primes()) out.push_back(submodule_sum(one, ideal_times_module(q.as_ideal(), M_)));
    }
    return out;
  }

  FPModule<R> M_;
  Implementation<R> impl_;
  std::uint64_t seed_;
  std::optional<std::vector<PrimeIdeal<R>>> ass_, probes_;
  std::optional<SuppDescription<R>> supp_;
  std::optional<std::vector<PrimeSubmoduleEntry<R>>> ass_p_;
  bool table_tried_ = false, lattice_tried_ = false, decomps_tried_ = false;
  std::optional<FiniteModuleTable<R>> table_;
  std::optional<SubmoduleLattice> lattice_;
  std::optional<OraclePrimes> oracle_primes_;
  std::optional<std::vector<OracleDecomposition<R>>> decomps_;
  std::optional<std::vector<Submodule<R>>> sample_;
};

// ---- set helpers ------------------------------------------------------------

template <EuclideanRing R>
std::vector<Submodule<R>> as_set(std::vector<Submodule<R>> v) {
  canonicalize_set(v);
  return v;
}

template <EuclideanRing R>
std::vector<PrimeIdeal<R>> as_set(const R& ring, std::vector<PrimeIdeal<R>> v) {
  sort_unique_primes(ring, v);
  return v;
}

inline std::vector<ElementSet> as_set(std::vector<ElementSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <EuclideanRing R>
std::vector<Submodule<R>> minimal_by_inclusion(const std::vector<Submodule<R>>& v) {
  std::vector<Submodule<R>> out;
  for (auto& a : v)
    if (std::none_of(v.begin(), v.end(), [&](const auto& b) { return !(a == b) && a.contains(b); })) out.push_back(a);
  return as_set(out);
}

inline std::vector<ElementSet> minimal_by_inclusion(const std::vector<ElementSet>& v) {
  std::vector<ElementSet> out;
  for (auto& a : v)
    if (std::none_of(v.begin(), v.end(), [&](const auto& b) { return a != b && b.subset_of(a); })) out.push_back(a);
  return as_set(out);
}

template <EuclideanRing R>
std::vector<Submodule<R>> times_module(const FPModule<R>& M, const std::vector<PrimeIdeal<R>>& ps) {
  std::vector<Submodule<R>> out;
  for (auto& p : ps) out.push_back(ideal_times_module(p.as_ideal(), M));
  return as_set(out);
}

template <EuclideanRing R>
std::vector<ElementSet> to_sets(const FiniteModuleTable<R>& T, const std::vector<Submodule<R>>& v) {
  std::vector<ElementSet> out;
  for (auto& s : v) out.push_back(T.to_set(s));
  return as_set(out);
}

/// rad(a) as a prime, if it is one.
template <EuclideanRing R>
std::optional<PrimeIdeal<R>> radical_prime(const R& ring, const PrincipalIdeal<R>& a) {
  const auto r = ideal_ops(ring, IdealOp::radical_of_first, a, a);
  if (!is_prime_ideal(ring, r)) return std::nullopt;
  return PrimeIdeal<R>::make(ring, r.generator);
}

template <EuclideanRing R>
json pair_detail(json lhs, json rhs, const std::string& note) {
  return {{"lhs", std::move(lhs)}, {"rhs", std::move(rhs)}, {"note", note}};
}

// ---- the checks ---------------------------------------------------------------

namespace checks {

template <EuclideanRing R>
void L2_1_i(Context<R>& c, Verdict& v) {
  v.expect(c.M().is_zero() == c.ass().empty(), [&] {
    return pair_detail<R>(c.M().is_zero(), c.primes_json(c.ass()), "M = 0 iff Ass_R M is empty");
  });
}

template <EuclideanRing R>
void L2_1_ii(Context<R>& c, Verdict& v) {
  auto lhs = as_set(c.ring(), minimal_primes(c.ring(), c.ass()));
  auto rhs = as_set(c.ring(), c.supp().minimal);
  v.expect(lhs == rhs, [&] { return pair_detail<R>(c.primes_json(lhs), c.primes_json(rhs), "min Ass_R = min Supp_R"); });
}

template <EuclideanRing R>
void L2_1_iii(Context<R>& c, Verdict& v) {
  // Finite, and bounded by the primes of the torsion exponent plus (0).
  const auto bound = primes_dividing(c.ring(), c.exponent()).size() + 1;
  v.expect(c.ass().size() <= bound, [&] { return pair_detail<R>(c.primes_json(c.ass()), bound, "|Ass_R M| is finite"); });
}

template <EuclideanRing R>
void L2_1_iv(Context<R>& c, Verdict& v) {
  if (!length_and_class(c.M()).artinian) return;
  const bool all_maximal = std::none_of(c.ass().begin(), c.ass().end(), [&](const auto& p) { return is_zero_prime(c.ring(), p); });
  v.expect(!c.supp().cofinite && c.ass() == as_set(c.ring(), c.supp().primes) && all_maximal, [&] {
    return pair_detail<R>(c.primes_json(c.ass()), c.primes_json(c.supp().primes), "Artinian: Ass_R = Supp_R, all maximal");
  });
}

template <EuclideanRing R>
void L2_1_v(Context<R>& c, Verdict& v) {
  for (auto& q : c.local_primes()) {
    const auto L = localize(c.M(), q);
    auto lhs = ass_ring_localized(L);
    std::vector<PrimeIdeal<R>> rhs;
    for (auto& p : c.ass())
      if (is_zero_prime(c.ring(), p) || p == q) rhs.push_back(p);
    rhs = as_set(c.ring(), rhs);
    // The local model is an R-module too; its own Ass_R must agree.
    auto model = ass_ring(L.local_model);
    v.expect(lhs == rhs && model == rhs, [&] {
      json d = pair_detail<R>(c.primes_json(lhs), c.primes_json(rhs), "Ass(S^-1 M) = {p in Ass : p inside q}");
      d["q"] = c.prime_json(q);
      return d;
    });
  }
}

template <EuclideanRing R>
void L2_1_vi(Context<R>& c, Verdict& v) {
  if (c.M().is_zero()) return;
  std::vector<PrimeIdeal<R>> rads;
  bool all_prime = true;
  for (auto& comp : primary_decomposition_zero(c.M()).components) {
    auto r = radical_prime(c.ring(), colon_ideal(comp.submodule));
    if (r) rads.push_back(*r);
    else all_prime = false;
  }
  rads = as_set(c.ring(), rads);
  v.expect(all_prime && rads == c.ass(), [&] {
    return pair_detail<R>(c.primes_json(rads), c.primes_json(c.ass()), "constructed decomposition: {rad(Q_i:M)} = Ass_R M");
  });
  if (auto* D = c.oracle_decompositions()) {
    const auto oracle_ass = oracle_ass_ring(*c.table());
    for (auto& dec : *D) {
      std::vector<PrimeIdeal<R>> rs;
      bool ok = true;
      for (auto& [Q, p] : dec) {
        auto r = radical_prime(c.ring(), c.table()->colon(Q));
        if (r) rs.push_back(*r);
        else ok = false;
      }
      rs = as_set(c.ring(), rs);
      v.expect(ok && rs == oracle_ass, [&] {
        json sides = json::array();
        for (auto& [Q, p] : dec) sides.push_back(c.set_json(Q));
        json d = pair_detail<R>(c.primes_json(rs), c.primes_json(oracle_ass), "oracle decomposition: {rad(Q_i:M)} = Ass_R M");
        d["decomposition"] = sides;
        return d;
      });
    }
  }
}

template <EuclideanRing R>
void L2_2_i(Context<R>& c, Verdict& v) {
  for (auto& p : c.probe_primes()) {
    const auto S = c.impl().m_of_p(c.M(), p);
    bool ok = S.is_whole();
    if (!ok) {
      auto cert = is_prime_submodule(S);
      ok = cert && cert->witness_prime == p;
      if (ok && c.table()) {
        auto oc = oracle_is_prime(*c.table(), c.table()->to_set(S));
        ok = oc && *oc == p;
      }
    }
    v.expect(ok, [&] {
      json d = pair_detail<R>(submodule_to_json(S), c.prime_json(p), "M(p) = M or M(p) is p-prime");
      d["p"] = c.prime_json(p);
      return d;
    });
  }
}

template <EuclideanRing R>
void L2_2_ii(Context<R>& c, Verdict& v) {
  for (auto& p : c.probe_primes()) {
    const bool proper = c.impl().m_of_p(c.M(), p).is_proper();
    v.expect(proper == c.supp().contains(p), [&] {
      json d = pair_detail<R>(proper, c.supp().contains(p), "M(p) proper iff p in Supp_R M");
      d["p"] = c.prime_json(p);
      return d;
    });
  }
}

template <EuclideanRing R>
void L2_2_iii(Context<R>& c, Verdict& v) {
  if (auto* primes = c.oracle_primes()) {
    for (auto& [P, p] : *primes) {
      const auto Mp = c.table()->to_set(c.impl().m_of_p(c.M(), p));
      v.expect(Mp.subset_of(P), [&] {
        json d = pair_detail<R>(c.set_json(P), c.set_json(Mp), "every p-prime submodule contains M(p)");
        d["p"] = c.prime_json(p);
        return d;
      });
    }
    return;
  }
  for (auto& N : c.sample_submodules()) {
    auto cert = is_prime_submodule(N);
    if (!cert) continue;
    const auto Mp = c.impl().m_of_p(c.M(), cert->witness_prime);
    v.expect(N.contains(Mp), [&] {
      json d = pair_detail<R>(submodule_to_json(N), submodule_to_json(Mp), "every p-prime submodule contains M(p)");
      d["p"] = c.prime_json(cert->witness_prime);
      return d;
    });
  }
}

template <EuclideanRing R>
void E2_4(Context<R>& c, Verdict& v) {
  // Finitely generated implies weakly finitely generated.
  std::vector<PrimeIdeal<R>> ps = c.supp().minimal;
  ps.insert(ps.end(), c.supp().primes.begin(), c.supp().primes.end());
  for (auto& p : ps) {
    const bool proper = c.impl().m_of_p(c.M(), p).is_proper();
    v.expect(proper, [&] { return pair_detail<R>(c.prime_json(p), false, "M(p) proper for p in Supp_R M"); });
  }
  if (ps.empty()) v.applicable = true;
}

template <EuclideanRing R>
void L2_5(Context<R>& c, Verdict& v) {
  const auto ap = c.ass_p_set();
  v.expect(ap.size() <= c.ass().size() && ap.empty() == c.M().is_zero(), [&] {
    return pair_detail<R>(submodules_to_json(ap), c.M().is_zero(), "Ass_P finite; empty iff M = 0");
  });
}

template <EuclideanRing R>
void L2_6_i(Context<R>& c, Verdict& v) {
  if (!length_and_class(c.M()).finite_length) return;
  const auto sp = supp_p(c.M());
  const auto lhs = as_set(c.ass_p_set());
  const auto rhs = as_set(submodules_of(sp.entries));
  v.expect(!sp.minimal_only && lhs == rhs, [&] {
    return pair_detail<R>(submodules_to_json(lhs), submodules_to_json(rhs), "finite length: Ass_P = Supp_P");
  });
}

template <EuclideanRing R>
void L2_6_ii(Context<R>& c, Verdict& v) {
  if (!length_and_class(c.M()).finite_length || !c.impl().is_multiplication(c.M()) || !c.oracle_primes()) return;
  const auto& T = *c.table();
  const auto ap = to_sets(T, c.ass_p_set());
  const auto max = as_set(c.lattice()->maximal(T.whole()));
  std::vector<ElementSet> spec;
  for (auto& [P, p] : *c.oracle_primes()) spec.push_back(P);
  spec = as_set(spec);
  v.expect(ap == max && max == spec, [&] {
    json d = pair_detail<R>(c.sets_json(ap), c.sets_json(max), "finite length multiplication: Ass_P = Max M = Spec M");
    d["spec"] = c.sets_json(spec);
    return d;
  });
}

template <EuclideanRing R>
void C2_7(Context<R>& c, Verdict& v) {
  if (!c.impl().is_multiplication(c.M())) return;
  const auto lc = length_and_class(c.M());
  const auto ap = c.ass_p_set();
  bool all_max = std::all_of(ap.begin(), ap.end(), [](const auto& P) { return is_maximal_submodule(P); });
  if (auto* L = c.lattice()) {
    const auto max = as_set(L->maximal(c.table()->whole()));
    for (auto& s : to_sets(*c.table(), ap)) all_max = all_max && std::binary_search(max.begin(), max.end(), s);
  }
  v.expect(lc.artinian == (lc.noetherian && all_max), [&] {
    return pair_detail<R>(lc.artinian, lc.noetherian && all_max, "Artinian iff Noetherian and Ass_P inside Max M");
  });
}

template <EuclideanRing R>
void L2_8(Context<R>& c, Verdict& v) {
  for (auto& q : c.local_primes()) {
    const auto L = localize(c.M(), q);
    const auto lhs = ass_p_localized(L);
    std::vector<Submodule<R>> rhs;
    for (auto& e : c.ass_p_entries())
      if (ideal_contains(c.ring(), q.as_ideal(), colon_ideal(e.submodule))) rhs.push_back(localization_image(L, e.submodule));
    rhs = as_set(rhs);
    v.expect(lhs == rhs, [&] {
      json d = pair_detail<R>(submodules_to_json(lhs), submodules_to_json(rhs),
                              "Ass_P(S^-1 M) = {S^-1 P : P in Ass_P M, (P:M) inside q}");
      d["q"] = c.prime_json(q);
      d["local_model"] = module_to_json(L.local_model);
      return d;
    });
  }
}

template <EuclideanRing R>
void T2_9(Context<R>& c, Verdict& v) {
  if (c.M().is_zero() || !c.impl().is_multiplication(c.M())) return;
  const auto ap = as_set(c.ass_p_set());
  std::vector<Submodule<R>> rads;
  for (auto& comp : primary_decomposition_zero(c.M()).components) rads.push_back(c.impl().m_radical(comp.submodule));
  rads = as_set(rads);
  v.expect(rads == ap, [&] {
    return pair_detail<R>(submodules_to_json(rads), submodules_to_json(ap), "constructed decomposition: {rad(Q_i)} = Ass_P M");
  });
  if (auto* D = c.oracle_decompositions()) {
    const auto& T = *c.table();
    const auto target = to_sets(T, ap);
    v.expect(!D->empty(), [&] { return pair_detail<R>(0, 1, "oracle found no minimal primary decomposition"); });
    for (auto& dec : *D) {
      std::vector<ElementSet> rs;
      for (auto& [Q, p] : dec) rs.push_back(T.to_set(c.impl().m_radical(T.to_submodule(Q))));
      rs = as_set(rs);
      v.expect(rs == target, [&] {
        json comps = json::array();
        for (auto& [Q, p] : dec) comps.push_back(c.set_json(Q));
        json d = pair_detail<R>(c.sets_json(rs), c.sets_json(target), "oracle decomposition: {rad(Q_i)} = Ass_P M");
        d["decomposition"] = comps;
        return d;
      });
    }
  }
}

template <EuclideanRing R>
void E3_2(Context<R>& c, Verdict& v) {
  const bool quasi = is_quasi_multiplication(c.M());
  if (c.impl().is_multiplication(c.M()))
    v.expect(quasi, [&] { return pair_detail<R>("multiplication", quasi, "multiplication implies quasi multiplication"); });
  if (c.M().invariant_factors().empty())
    v.expect(quasi, [&] { return pair_detail<R>("flat (torsion-free)", quasi, "flat implies quasi multiplication"); });
  if (c.lattice()) {
    const auto wm = is_weak_multiplication(c.M());
    if (wm.value)
      v.expect(quasi, [&] { return pair_detail<R>("weak multiplication", quasi, "weak multiplication implies quasi multiplication"); });
  }
  const auto lc = length_and_class(c.M());
  v.expect(!lc.finite_length || lc.artinian, [&] { return pair_detail<R>(lc.finite_length, lc.artinian, "finite length implies Artinian"); });
}

template <EuclideanRing R>
void L3_3(Context<R>& c, Verdict& v) {
  if (!is_quasi_multiplication(c.M())) return;
  const auto lhs = as_set(c.ass_p_set());
  const auto rhs = times_module(c.M(), c.ass());
  v.expect(lhs == rhs, [&] { return pair_detail<R>(submodules_to_json(lhs), submodules_to_json(rhs), "Ass_P = {pM : p in Ass_R}"); });
  const auto sp = supp_p(c.M());
  const auto slhs = as_set(submodules_of(sp.entries));
  const auto srhs = times_module(c.M(), sp.minimal_only ? c.supp().minimal : c.supp().primes);
  v.expect(slhs == srhs, [&] { return pair_detail<R>(submodules_to_json(slhs), submodules_to_json(srhs), "Supp_P = {pM : p in Supp_R}"); });
}

/// Minimal elements of Spec M: exhaustive on finite modules, otherwise the
/// exact structural description.
template <EuclideanRing R>
std::vector<Submodule<R>> minimal_spec(Context<R>& c) {
  if (auto* primes = c.oracle_primes()) {
    std::vector<ElementSet> sets;
    for (auto& [P, p] : *primes) sets.push_back(P);
    std::vector<Submodule<R>> out;
    for (auto& s : minimal_by_inclusion(sets)) out.push_back(c.table()->to_submodule(s));
    return as_set(out);
  }
  std::vector<Submodule<R>> out;
  for (auto& cert : minimal_elements_of_spec(c.M())) out.push_back(cert.submodule);
  return as_set(out);
}

template <EuclideanRing R>
void P3_4_i(Context<R>& c, Verdict& v) {
  if (c.M().is_zero() || !is_quasi_multiplication(c.M())) return;
  std::vector<Submodule<R>> mps;
  for (auto& cert : minimal_prime_submodules(c.M())) mps.push_back(cert.submodule);
  mps = as_set(mps);
  const auto formula = times_module(c.M(), c.supp().minimal);
  const auto exact = minimal_spec(c);
  v.expect(mps == formula && formula == exact, [&] {
    json d = pair_detail<R>(submodules_to_json(exact), submodules_to_json(formula), "minimal prime submodules = {pM : p minimal in Supp}");
    d["computed"] = submodules_to_json(mps);
    return d;
  });
}

template <EuclideanRing R>
void P3_4_ii(Context<R>& c, Verdict& v) {
  if (c.M().is_zero() || !is_quasi_multiplication(c.M())) return;
  const auto spec = minimal_spec(c);
  const auto supp = minimal_by_inclusion(submodules_of(supp_p(c.M()).entries));
  const auto ass = minimal_by_inclusion(c.ass_p_set());
  v.expect(spec == supp && supp == ass, [&] {
    json d = pair_detail<R>(submodules_to_json(spec), submodules_to_json(ass), "min Spec M = min Supp_P = min Ass_P");
    d["min_supp_p"] = submodules_to_json(supp);
    return d;
  });
}

template <EuclideanRing R>
void L3_5(Context<R>& c, Verdict& v) {
  const auto& mins = c.supp().minimal;
  if (mins.empty() || mins.size() > 8) return;
  for (std::size_t mask = 1; mask < (std::size_t(1) << mins.size()); ++mask) {
    auto prod = ideal(c.ring(), c.ring().one());
    std::vector<PrimeIdeal<R>> subset;
    for (std::size_t k = 0; k < mins.size(); ++k)
      if (mask >> k & 1) {
        prod = ideal_ops(c.ring(), IdealOp::product, prod, mins[k].as_ideal());
        subset.push_back(mins[k]);
      }
    const bool kills = ideal_times_module(prod, c.M()).is_zero();
    v.expect(!kills || subset.size() == mins.size(), [&] {
      return pair_detail<R>(c.primes_json(subset), c.primes_json(mins), "p_1...p_n M = 0 forces {p_i} = min Supp");
    });
  }
}

template <EuclideanRing R>
void P3_6(Context<R>& c, Verdict& v) {
  if (c.M().is_zero()) return;
  const auto& mins = c.supp().minimal;
  unsigned e = 1;
  for (auto& d : c.M().invariant_factors())
    for (auto& p : mins)
      if (!is_zero_prime(c.ring(), p)) e = std::max(e, valuation(c.ring(), d, p.generator()));
  auto prod = ideal(c.ring(), c.ring().one());
  for (auto& p : mins)
    for (unsigned k = 0; k < e; ++k) prod = ideal_ops(c.ring(), IdealOp::product, prod, p.as_ideal());
  v.expect(!mins.empty() && ideal_times_module(prod, c.M()).is_zero(), [&] {
    return pair_detail<R>(c.primes_json(mins), e, "finitely many minimal primes, some product of them kills M");
  });
}

template <EuclideanRing R>
void T3_7(Context<R>& c, Verdict& v) {
  if (c.M().is_zero() || !is_quasi_multiplication(c.M())) return;
  const auto mps = minimal_prime_submodules(c.M());
  bool all_prime = std::all_of(mps.begin(), mps.end(), [](const auto& cert) { return is_prime_submodule(cert.submodule).has_value(); });
  v.expect(all_prime && mps.size() == c.supp().minimal.size(), [&] {
    json s = json::array();
    for (auto& cert : mps) s.push_back(submodule_to_json(cert.submodule));
    return pair_detail<R>(s, c.primes_json(c.supp().minimal), "finitely many minimal prime submodules, one per minimal prime");
  });
}

// ---- oracle agreement -------------------------------------------------------

template <EuclideanRing R>
void ORACLE_m_of_p(Context<R>& c, Verdict& v) {
  if (auto* T = c.table()) {
    for (auto& p : c.probe_primes()) {
      const auto fast = T->to_set(c.impl().m_of_p(c.M(), p));
      const auto slow = oracle_m_of_p(*T, p);
      v.expect(fast == slow, [&] {
        json d = pair_detail<R>(c.set_json(fast), c.set_json(slow), "m_of_p vs definitional scan");
        d["p"] = c.prime_json(p);
        return d;
      });
    }
    return;
  }
  if (!c.M().is_finite()) {
    // Bounded spot check: x in M(p) iff some small s outside p (or the
    // torsion exponent) has s*x in pM.
    auto elems = c.random_vectors(16, 2);
    for (std::size_t i = 0; i < c.M().ambient_rank(); ++i) elems.push_back(c.M().smith_basis_vector(i));
    auto ss = c.small_elements();
    ss.push_back(c.exponent());
    for (auto& p : c.probe_primes()) {
      const auto fast = c.impl().m_of_p(c.M(), p);
      const auto pM = ideal_times_module(p.as_ideal(), c.M());
      for (auto& x : elems) {
        bool witnessed = false;
        for (auto& s : ss)
          if (!ideal_has(c.ring(), p.as_ideal(), s) && pM.contains(scaled(c.ring(), s, x))) witnessed = true;
        v.expect(fast.contains(x) == witnessed, [&] {
          json d = pair_detail<R>(fast.contains(x), witnessed, "x in m_of_p vs bounded witness search");
          d["p"] = c.prime_json(p);
          d["x"] = vector_to_json(c.ring(), x);
          return d;
        });
      }
    }
  }
}

template <EuclideanRing R>
void ORACLE_ass_ring(Context<R>& c, Verdict& v) {
  if (auto* T = c.table()) {
    const auto slow = oracle_ass_ring(*T);
    v.expect(c.ass() == slow, [&] { return pair_detail<R>(c.primes_json(c.ass()), c.primes_json(slow), "ass_ring vs annihilator scan"); });
    return;
  }
  // Infinite: every listed prime must be an element annihilator.
  const auto& M = c.M();
  for (auto& p : c.ass()) {
    bool witnessed = false;
    if (is_zero_prime(c.ring(), p)) {
      for (std::size_t i : M.free_coordinates()) {
        const auto x = M.smith_basis_vector(i);
        bool killed = false;
        for (auto& s : c.small_elements()) killed = killed || is_zero_vector(c.ring(), M.reduce(scaled(c.ring(), s, x)));
        witnessed = witnessed || !killed;
      }
    } else {
      for (std::size_t k = 0; k < M.invariant_factors().size(); ++k) {
        const auto& d = M.invariant_factors()[k];
        if (!divides(c.ring(), p.generator(), d)) continue;
        const auto x = scaled(c.ring(), exact_div(c.ring(), d, p.generator()), M.smith_basis_vector(M.torsion_coordinates()[k]));
        // x != 0 and pi*x = 0 give Ann(x) = (pi), a maximal ideal.
        witnessed = witnessed || (!is_zero_vector(c.ring(), M.reduce(x)) &&
                                  is_zero_vector(c.ring(), M.reduce(scaled(c.ring(), p.generator(), x))));
      }
    }
    v.expect(witnessed, [&] { return pair_detail<R>(c.prime_json(p), false, "associated prime has an element witness"); });
  }
  if (c.ass().empty()) v.applicable = true;
}

template <EuclideanRing R>
void ORACLE_colon_ideal(Context<R>& c, Verdict& v) {
  auto* T = c.table();
  if (!T || !c.lattice()) return;
  for (auto& N : c.sample_submodules()) {
    const auto fast = colon_ideal(N);
    const auto slow = T->colon(T->to_set(N));
    v.expect(fast.generator == slow.generator, [&] {
      json d = pair_detail<R>(ideal_to_json(c.ring(), fast), ideal_to_json(c.ring(), slow), "colon_ideal vs residue scan");
      d["N"] = submodule_to_json(N);
      return d;
    });
  }
}

template <EuclideanRing R>
void ORACLE_is_prime_submodule(Context<R>& c, Verdict& v) {
  auto* primes = c.oracle_primes();
  if (!primes) return;
  const auto& T = *c.table();
  for (auto& S : c.lattice()->submodules) {
    const auto N = T.to_submodule(S);
    const auto fast = is_prime_submodule(N);
    const auto it = std::find_if(primes->begin(), primes->end(), [&](const auto& e) { return e.first == S; });
    const bool slow = it != primes->end();
    v.expect(fast.has_value() == slow && (!slow || fast->witness_prime == it->second), [&] {
      return pair_detail<R>(fast ? c.prime_json(fast->witness_prime) : json(nullptr),
                            slow ? c.prime_json(it->second) : json(nullptr), "is_prime_submodule vs implication scan");
    });
  }
}

template <EuclideanRing R>
void ORACLE_is_multiplication(Context<R>& c, Verdict& v) {
  if (!c.lattice()) return;
  const bool fast = c.impl().is_multiplication(c.M());
  const bool slow = oracle_multiplication(*c.table(), *c.lattice());
  v.expect(fast == slow, [&] { return pair_detail<R>(fast, slow, "is_multiplication vs N = (N:M)M over the lattice"); });
}

template <EuclideanRing R>
void ORACLE_is_quasi_multiplication(Context<R>& c, Verdict& v) {
  const bool fast = is_quasi_multiplication(c.M());
  bool slow = true;
  if (auto* T = c.table()) {
    for (auto& p : c.supp().primes) slow = slow && oracle_m_of_p(*T, p) == T->ideal_times(p.generator());
  } else {
    std::vector<PrimeIdeal<R>> ps = c.supp().minimal;
    for (auto& p : c.probe_primes())
      if (c.supp().contains(p)) ps.push_back(p);
    for (auto& p : ps) slow = slow && m_of_p(c.M(), p) == ideal_times_module(p.as_ideal(), c.M());
  }
  v.expect(fast == slow, [&] { return pair_detail<R>(fast, slow, "is_quasi_multiplication vs M(p) = pM over Supp"); });
}

template <EuclideanRing R>
void ORACLE_m_radical(Context<R>& c, Verdict& v) {
  auto* primes = c.oracle_primes();
  if (!primes) return;
  const auto& T = *c.table();
  for (auto& N : c.sample_submodules()) {
    const auto fast = T.to_set(c.impl().m_radical(N));
    const auto slow = oracle_radical(T, *primes, T.to_set(N));
    v.expect(fast == slow, [&] {
      json d = pair_detail<R>(c.set_json(fast), c.set_json(slow), "m_radical vs intersection of prime submodules");
      d["N"] = submodule_to_json(N);
      return d;
    });
  }
}

template <EuclideanRing R>
void ORACLE_primary_decomposition_zero(Context<R>& c, Verdict& v) {
  auto* T = c.table();
  if (!T || c.M().is_zero()) return;
  const auto dec = primary_decomposition_zero(c.M());
  OracleDecomposition<R> as_sets;
  ElementSet meet = T->whole();
  for (auto& comp : dec.components) {
    const auto S = T->to_set(comp.submodule);
    as_sets.emplace_back(S, comp.associated_prime);
    meet = meet & S;
    const auto op = oracle_primary_prime(*T, S);
    v.expect(op && *op == comp.associated_prime, [&] {
      return pair_detail<R>(c.prime_json(comp.associated_prime), op ? c.prime_json(*op) : json(nullptr), "component primary for its prime");
    });
  }
  v.expect(meet == T->zero_set(), [&] { return pair_detail<R>(c.set_json(meet), c.set_json(T->zero_set()), "components meet in 0"); });
  if (auto* D = c.oracle_decompositions()) {
    auto key = [](OracleDecomposition<R> d) {
      std::vector<ElementSet> s;
      for (auto& e : d) s.push_back(e.first);
      return as_set(s);
    };
    const auto mine = key(as_sets);
    const bool found = std::any_of(D->begin(), D->end(), [&](const auto& d) { return key(d) == mine; });
    v.expect(found, [&] { return pair_detail<R>(c.sets_json(mine), D->size(), "decomposition among the oracle's minimal ones"); });
  }
}

template <EuclideanRing R>
void ORACLE_minimal_prime_submodules(Context<R>& c, Verdict& v) {
  auto* primes = c.oracle_primes();
  if (!primes || c.M().is_zero()) return;
  const auto exact = minimal_spec(c);
  std::vector<Submodule<R>> mps, mes;
  for (auto& cert : minimal_prime_submodules(c.M())) mps.push_back(cert.submodule);
  for (auto& cert : minimal_elements_of_spec(c.M())) mes.push_back(cert.submodule);
  mps = as_set(mps);
  mes = as_set(mes);
  v.expect(mps == exact && mes == exact, [&] {
    json d = pair_detail<R>(submodules_to_json(mps), submodules_to_json(exact), "minimal prime submodules vs minimal oracle primes");
    d["minimal_elements_of_spec"] = submodules_to_json(mes);
    return d;
  });
}

template <EuclideanRing R>
void ORACLE_weak_multiplication(Context<R>& c, Verdict& v) {
  if (!c.lattice()) return;
  const auto wm = is_weak_multiplication(c.M());
  v.expect(wm.exhaustive && wm.value == c.M().is_cyclic(), [&] {
    return pair_detail<R>(wm.value, c.M().is_cyclic(), "exhaustive weak multiplication vs the structural answer (cyclic)");
  });
}

}  // namespace checks

// ---- registry -----------------------------------------------------------------

struct CheckInfo {
  std::string id;
  std::string statement;
};

/// Frozen identifiers, in report order.
inline const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"C2.7", "multiplication M: Artinian iff Noetherian and Ass_P M inside Max M"},
      {"E2.4", "finitely generated implies weakly finitely generated"},
      {"E3.2", "multiplication, flat and weak multiplication modules are quasi multiplication"},
      {"L2.1.i", "M = 0 iff Ass_R M is empty"},
      {"L2.1.ii", "minimal elements of Ass_R M and Supp_R M agree"},
      {"L2.1.iii", "Ass_R M is finite"},
      {"L2.1.iv", "M Artinian: Ass_R M = Supp_R M, finitely many maximal ideals"},
      {"L2.1.v", "Ass(S^-1 M) = {S^-1 p : p in Ass_R M, p inside q}, S = R minus q"},
      {"L2.1.vi", "Ass_R M = {rad(Q_i:M)} for every minimal primary decomposition of 0"},
      {"L2.2.i", "M(p) = M or M(p) is p-prime"},
      {"L2.2.ii", "M(p) is p-prime iff p in Supp_R M"},
      {"L2.2.iii", "every p-prime submodule contains M(p)"},
      {"L2.5", "Ass_P M is finite, and empty iff M = 0"},
      {"L2.6.i", "finite length: Ass_P M = Supp_P M"},
      {"L2.6.ii", "finite length multiplication: Ass_P M = Max M = Spec M"},
      {"L2.8", "Ass_P(S^-1 M) = {S^-1 P : P in Ass_P M, (P:M) inside q}"},
      {"L3.3", "quasi multiplication: Ass_P M = {pM : p in Ass_R M}, same for Supp"},
      {"L3.5", "p_1...p_n M = 0 for minimal p_i forces them to be all minimal primes"},
      {"ORACLE.ass_ring", "ass_ring agrees with the annihilator scan"},
      {"ORACLE.colon_ideal", "colon_ideal agrees with the residue scan"},
      {"ORACLE.is_multiplication", "is_multiplication agrees with N = (N:M)M over the lattice"},
      {"ORACLE.is_prime_submodule", "is_prime_submodule agrees with the defining implication"},
      {"ORACLE.is_quasi_multiplication", "is_quasi_multiplication agrees with M(p) = pM over Supp"},
      {"ORACLE.m_of_p", "m_of_p agrees with the definitional scan"},
      {"ORACLE.m_radical", "m_radical agrees with the intersection of prime submodules"},
      {"ORACLE.minimal_prime_submodules", "minimal prime submodules agree with the oracle's minimal primes"},
      {"ORACLE.primary_decomposition_zero", "constructed decomposition verified against the oracle"},
      {"ORACLE.weak_multiplication", "exhaustive weak multiplication agrees with the structural answer"},
      {"P3.4.i", "quasi multiplication: minimal prime submodules = {pM : p minimal in Supp}"},
      {"P3.4.ii", "quasi multiplication: minimal elements of Spec M, Supp_P M, Ass_P M coincide"},
      {"P3.6", "finitely many minimal primes of Supp, some product of them kills M"},
      {"T2.9", "Noetherian multiplication M: Ass_P M = {rad(Q_i)} for every minimal primary decomposition"},
      {"T3.7", "quasi multiplication: finitely many minimal prime submodules"},
  };
  return catalog;
}

inline bool is_known_check(const std::string& id) {
  const auto& cat = check_catalog();
  return std::any_of(cat.begin(), cat.end(), [&](const auto& c) { return c.id == id; });
}

template <EuclideanRing R>
using CheckFn = void (*)(Context<R>&, Verdict&);

template <EuclideanRing R>
CheckFn<R> check_function(const std::string& id) {
  using namespace checks;
  static const std::vector<std::pair<std::string, CheckFn<R>>> table = {
      {"C2.7", &C2_7<R>},
      {"E2.4", &E2_4<R>},
      {"E3.2", &E3_2<R>},
      {"L2.1.i", &L2_1_i<R>},
      {"L2.1.ii", &L2_1_ii<R>},
      {"L2.1.iii", &L2_1_iii<R>},
      {"L2.1.iv", &L2_1_iv<R>},
      {"L2.1.v", &L2_1_v<R>},
      {"L2.1.vi", &L2_1_vi<R>},
      {"L2.2.i", &L2_2_i<R>},
      {"L2.2.ii", &L2_2_ii<R>},
      {"L2.2.iii", &L2_2_iii<R>},
      {"L2.5", &L2_5<R>},
      {"L2.6.i", &L2_6_i<R>},
      {"L2.6.ii", &L2_6_ii<R>},
      {"L2.8", &L2_8<R>},
      {"L3.3", &L3_3<R>},
      {"L3.5", &L3_5<R>},
      {"ORACLE.ass_ring", &ORACLE_ass_ring<R>},
      {"ORACLE.colon_ideal", &ORACLE_colon_ideal<R>},
      {"ORACLE.is_multiplication", &ORACLE_is_multiplication<R>},
      {"ORACLE.is_prime_submodule", &ORACLE_is_prime_submodule<R>},
      {"ORACLE.is_quasi_multiplication", &ORACLE_is_quasi_multiplication<R>},
      {"ORACLE.m_of_p", &ORACLE_m_of_p<R>},
      {"ORACLE.m_radical", &ORACLE_m_radical<R>},
      {"ORACLE.minimal_prime_submodules", &ORACLE_minimal_prime_submodules<R>},
      {"ORACLE.primary_decomposition_zero", &ORACLE_primary_decomposition_zero<R>},
      {"ORACLE.weak_multiplication", &ORACLE_weak_multiplication<R>},
      {"P3.4.i", &P3_4_i<R>},
      {"P3.4.ii", &P3_4_ii<R>},
      {"P3.6", &P3_6<R>},
      {"T2.9", &T2_9<R>},
      {"T3.7", &T3_7<R>},
  };
  for (auto& [k, f] : table)
    if (k == id) return f;
  throw FormatError("unknown check \"" + id + "\"");
}

/// Runs one check; exceptions become failures, never silent passes.
template <EuclideanRing R>
Verdict run_check(const std::string& id, Context<R>& ctx) {
  Verdict v;
  try {
    check_function<R>(id)(ctx, v);
  } catch (const std::exception& e) {
    v.applicable = true;
    v.passed = false;
    v.detail = {{"exception", e.what()}};
  }
  return v;
}

}  // namespace primesub::harness
