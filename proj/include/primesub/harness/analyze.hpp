#pragma once

// Full analysis report for one module, and the submodule lattice as DOT.

#include <sstream>

#include "primesub/json_io.hpp"
#include "primesub/oracle.hpp"
#include "primesub/prime_theory.hpp"

namespace primesub::harness {

template <EuclideanRing R>
json analyze(const FPModule<R>& M) {
  const R& ring = M.ring();
  json out;
  out["module"] = module_to_json(M);
  out.update(invariants_to_json(M));

  const auto lc = length_and_class(M);
  out["length"] = {{"finite_length", lc.finite_length},
                   {"length", lc.length ? json(*lc.length) : json(nullptr)},
                   {"noetherian", lc.noetherian},
                   {"artinian", lc.artinian}};
  out["annihilator"] = ideal_to_json(ring, annihilator(M));

  const auto supp = supp_ring(M);
  out["supp_ring"] = {{"cofinite", supp.cofinite},
                      {"primes", primes_to_json(ring, supp.primes)},
                      {"minimal", primes_to_json(ring, supp.minimal)}};
  out["ass_ring"] = primes_to_json(ring, ass_ring(M));

  auto entries_json = [&](const std::vector<PrimeSubmoduleEntry<R>>& es) {
    json a = json::array();
    for (auto& e : es) a.push_back({{"submodule", submodule_to_json(e.submodule)}, {"witnesses", primes_to_json(ring, e.witnesses)}});
    return a;
  };
  out["ass_p"] = entries_json(ass_p(M));
  const auto sp = supp_p(M);
  out["supp_p"] = {{"minimal_only", sp.minimal_only}, {"entries", entries_json(sp.entries)}};

  const auto cls = classify(M);
  out["classification"] = {{"weakly_finitely_generated", cls.weakly_finitely_generated},
                           {"multiplication", cls.multiplication},
                           {"quasi_multiplication", cls.quasi_multiplication},
                           {"weak_multiplication", cls.weak_multiplication.value},
                           {"weak_multiplication_exhaustive", cls.weak_multiplication.exhaustive},
                           {"finite_length", cls.finite_length},
                           {"artinian", cls.artinian}};

  auto certs_json = [&](const std::vector<PrimeSubmoduleCert<R>>& cs) {
    json a = json::array();
    for (auto& c : cs) a.push_back({{"submodule", submodule_to_json(c.submodule)}, {"prime", prime_to_json(ring, c.witness_prime)}});
    return a;
  };
  out["minimal_prime_submodules"] = certs_json(cls.minimal_prime_submodules);
  out["minimal_elements_of_spec"] = certs_json(minimal_elements_of_spec(M));

  if (M.is_zero()) {
    out["primary_decomposition"] = json::array();
  } else {
    json d = json::array();
    for (auto& c : primary_decomposition_zero(M).components)
      d.push_back({{"submodule", submodule_to_json(c.submodule)}, {"prime", prime_to_json(ring, c.associated_prime)}});
    out["primary_decomposition"] = d;
  }
  out["radical_of_zero"] = submodule_to_json(m_radical(zero_submodule(M)));
  return out;
}

inline json analyze(const AnyModule& M) {
  return std::visit([](const auto& m) { return analyze(m); }, M);
}

inline constexpr std::size_t kDotLatticeCap = 400;

/// Covering relations of the lattice, bottom to top. Prime submodules are
/// filled, associated prime submodules get a double border, rad(0) is
/// annotated. Throws UnsupportedInstance on modules with a free part.
template <EuclideanRing R>
std::string emit_lattice(const FPModule<R>& M) {
  if (!M.is_finite()) throw UnsupportedInstance("the lattice is only drawn for finite modules");
  const R& ring = M.ring();
  const auto T = FiniteModuleTable<R>::build(M);
  const auto L = enumerate_submodules(T, kDotLatticeCap);
  const auto primes = oracle_prime_submodules(T, L);
  std::vector<ElementSet> ap;
  for (auto& P : submodules_of(ass_p(M))) ap.push_back(T.to_set(P));
  const auto rad0 = oracle_radical(T, primes, T.zero_set());

  auto label = [&](const ElementSet& S) {
    const auto gens = T.to_submodule(S).generators();
    std::string s = "<";
    for (std::size_t i = 0; i < gens.rows(); ++i) {
      if (i) s += ", ";
      s += "(";
      for (std::size_t j = 0; j < gens.cols(); ++j) s += (j ? "," : "") + ring.to_string(gens(i, j));
      s += ")";
    }
    return s + ">  |N|=" + std::to_string(S.count());
  };

  std::ostringstream os;
  os << "digraph submodules {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  const auto& subs = L.submodules;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    os << "  n" << i << " [label=\"" << label(subs[i]) << "\"";
    const bool prime = std::any_of(primes.begin(), primes.end(), [&](const auto& e) { return e.first == subs[i]; });
    if (prime) os << ", style=filled, fillcolor=\"#cfe2f3\"";
    if (std::find(ap.begin(), ap.end(), subs[i]) != ap.end()) os << ", peripheries=2";
    if (subs[i] == rad0) os << ", xlabel=\"rad(0)\"";
    os << "];\n";
  }
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (i == j || !subs[i].subset_of(subs[j])) continue;
      const bool covers = std::none_of(subs.begin(), subs.end(), [&](const auto& u) {
        return u != subs[i] && u != subs[j] && subs[i].subset_of(u) && u.subset_of(subs[j]);
      });
      if (covers) os << "  n" << i << " -> n" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

inline std::string emit_lattice(const AnyModule& M) {
  return std::visit([](const auto& m) { return emit_lattice(m); }, M);
}

}  // namespace primesub::harness
