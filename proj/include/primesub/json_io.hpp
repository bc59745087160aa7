#pragma once

// JSON forms of rings, elements, ideals, matrices, modules and submodules,
// plus a variant that dispatches a parsed module to the right ring type.
//
//   ring       {"kind":"int"} | {"kind":"polyFp","p":2}
//   element    "-12" (decimal string; plain numbers are accepted on input)
//              | [0,1,1] (little-endian coefficients mod p)
//   prime      {"zero":true} | {"gen":<element>}
//   module     {"ring":..., "ambient_rank":n, "relations":[[...],...]}
//   submodule  {"generators":[[...],...]}

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "primesub/module.hpp"

namespace primesub {

using json = nlohmann::json;

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

// ---- rings and elements --------------------------------------------------

inline json ring_to_json(const IntegerRing&) { return {{"kind", "int"}}; }
inline json ring_to_json(const PolyRing& r) { return {{"kind", "polyFp"}, {"p", r.characteristic()}}; }

inline json element_to_json(const IntegerRing&, const Integer& a) { return a.str(); }
inline json element_to_json(const PolyRing&, const Poly& a) {
  json out = json::array();
  for (auto c : a.coeffs) out.push_back(c);
  return out;
}

inline Integer element_from_json(const IntegerRing&, const json& j) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<long long>());
  } catch (const std::exception&) {
  }
  throw FormatError("integer expected, got " + j.dump());
}

inline Poly element_from_json(const PolyRing& ring, const json& j) {
  if (!j.is_array()) throw FormatError("coefficient array expected, got " + j.dump());
  std::vector<long long> c;
  for (auto& x : j) {
    if (!x.is_number_integer()) throw FormatError("polynomial coefficient must be an integer, got " + x.dump());
    c.push_back(x.get<long long>());
  }
  return ring.from_coeffs(c);
}

template <EuclideanRing R>
json ideal_to_json(const R& ring, const PrincipalIdeal<R>& I) {
  return {{"gen", element_to_json(ring, I.generator)}};
}

template <EuclideanRing R>
PrincipalIdeal<R> ideal_from_json(const R& ring, const json& j) {
  if (j.is_object() && j.contains("gen")) return ideal(ring, element_from_json(ring, j.at("gen")));
  return ideal(ring, element_from_json(ring, j));
}

template <EuclideanRing R>
json prime_to_json(const R& ring, const PrimeIdeal<R>& p) {
  if (is_zero_prime(ring, p)) return {{"zero", true}};
  return {{"gen", element_to_json(ring, p.generator())}};
}

template <EuclideanRing R>
PrimeIdeal<R> prime_from_json(const R& ring, const json& j) {
  if (j.is_object() && j.value("zero", false)) return PrimeIdeal<R>::zero_ideal(ring);
  const json& g = j.is_object() && j.contains("gen") ? j.at("gen") : j;
  return PrimeIdeal<R>::make(ring, element_from_json(ring, g));
}

template <EuclideanRing R>
json primes_to_json(const R& ring, const std::vector<PrimeIdeal<R>>& ps) {
  json out = json::array();
  for (auto& p : ps) out.push_back(prime_to_json(ring, p));
  return out;
}

// ---- matrices, modules, submodules ---------------------------------------

template <EuclideanRing R>
json vector_to_json(const R& ring, const RowVector<R>& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(element_to_json(ring, x));
  return out;
}

template <EuclideanRing R>
json matrix_to_json(const Mat<R>& A) {
  json out = json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) out.push_back(vector_to_json(A.ring(), A.row(i)));
  return out;
}

template <EuclideanRing R>
RowVector<R> vector_from_json(const R& ring, const json& j) {
  if (!j.is_array()) throw FormatError("row expected, got " + j.dump());
  RowVector<R> v;
  for (auto& x : j) v.push_back(element_from_json(ring, x));
  return v;
}

/// cols is needed for an empty list of rows.
template <EuclideanRing R>
Mat<R> matrix_from_json(const R& ring, const json& j, std::size_t cols) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  std::vector<RowVector<R>> rows;
  for (auto& r : j) rows.push_back(vector_from_json(ring, r));
  return Mat<R>::from_rows(ring, rows, cols);
}

template <EuclideanRing R>
json module_to_json(const FPModule<R>& M) {
  return {{"ring", ring_to_json(M.ring())},
          {"ambient_rank", M.ambient_rank()},
          {"relations", matrix_to_json(M.relations())}};
}

template <EuclideanRing R>
json submodule_to_json(const Submodule<R>& N) {
  return {{"generators", matrix_to_json(N.canonical())}};
}

template <EuclideanRing R>
json submodules_to_json(const std::vector<Submodule<R>>& subs) {
  json out = json::array();
  for (auto& s : subs) out.push_back(submodule_to_json(s));
  return out;
}

/// Accepts {"generators": [...]} or a bare array of rows.
template <EuclideanRing R>
Submodule<R> submodule_from_json(const FPModule<R>& M, const json& j) {
  const json& g = j.is_object() ? j.at("generators") : j;
  return Submodule<R>(M, matrix_from_json(M.ring(), g, M.ambient_rank()));
}

template <EuclideanRing R>
json invariants_to_json(const FPModule<R>& M) {
  json f = json::array();
  for (auto& d : M.invariant_factors()) f.push_back(element_to_json(M.ring(), d));
  return {{"invariant_factors", f}, {"free_rank", M.free_rank()}};
}

// ---- ring dispatch -------------------------------------------------------

using AnyModule = std::variant<FPModule<IntegerRing>, FPModule<PolyRing>>;

inline std::variant<IntegerRing, PolyRing> ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("ring must be an object with a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "int") return IntegerRing{};
  if (kind == "polyFp") {
    if (!j.contains("p") || !j.at("p").is_number_unsigned()) throw FormatError("polyFp ring needs a positive \"p\"");
    return PolyRing(j.at("p").get<std::uint32_t>());
  }
  throw FormatError("unknown ring kind \"" + kind + "\"");
}

inline AnyModule module_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("module must be a JSON object");
  for (const char* key : {"ring", "ambient_rank", "relations"})
    if (!j.contains(key)) throw FormatError(std::string("module is missing \"") + key + "\"");
  if (!j.at("ambient_rank").is_number_unsigned()) throw FormatError("ambient_rank must be a non-negative integer");
  const auto n = j.at("ambient_rank").get<std::size_t>();
  return std::visit(
      [&](const auto& ring) -> AnyModule {
        return FPModule<std::decay_t<decltype(ring)>>::build(ring, n, matrix_from_json(ring, j.at("relations"), n));
      },
      ring_from_json(j.at("ring")));
}

inline json any_module_to_json(const AnyModule& M) {
  return std::visit([](const auto& m) { return module_to_json(m); }, M);
}

}  // namespace primesub
