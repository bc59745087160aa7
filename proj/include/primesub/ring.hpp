#pragma once

// Exact arithmetic for the two supported Euclidean domains: the integers and
// univariate polynomials over a prime field F_p. Everything above this header
// only talks to a ring through the EuclideanRing concept.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "primesub/errors.hpp"

namespace primesub {

using Integer = boost::multiprecision::cpp_int;

/// Additive basis of R/(m): every residue is sum_i d_i * basis[i] with
/// 0 <= d_i < radix[i]. Index order is non-decreasing in Euclidean norm.
template <class Element>
struct ResidueSystem {
  std::vector<Element> basis;
  std::vector<std::uint32_t> radix;
  std::size_t size = 1;
};

/// unit * prod(factor^exponent); factors normalized, pairwise distinct and
/// sorted by the ring's canonical order.
template <class Element>
struct Factorization {
  Element unit;
  std::vector<std::pair<Element, unsigned>> factors;
};

template <class R>
concept EuclideanRing = std::equality_comparable<R> &&
    requires(const R& ring, const typename R::Element& a, const typename R::Element& b,
             std::size_t cap) {
      typename R::Element;
      { ring.zero() } -> std::same_as<typename R::Element>;
      { ring.one() } -> std::same_as<typename R::Element>;
      { ring.from_int(0) } -> std::same_as<typename R::Element>;
      { ring.is_zero(a) } -> std::same_as<bool>;
      { ring.is_unit(a) } -> std::same_as<bool>;
      { ring.add(a, b) } -> std::same_as<typename R::Element>;
      { ring.sub(a, b) } -> std::same_as<typename R::Element>;
      { ring.neg(a) } -> std::same_as<typename R::Element>;
      { ring.mul(a, b) } -> std::same_as<typename R::Element>;
      { ring.divmod(a, b) } -> std::same_as<std::pair<typename R::Element, typename R::Element>>;
      { ring.norm_less(a, b) } -> std::same_as<bool>;
      { ring.normalize(a) } -> std::same_as<typename R::Element>;
      { ring.unit_part(a) } -> std::same_as<typename R::Element>;
      { ring.unit_inverse(a) } -> std::same_as<typename R::Element>;
      { ring.compare(a, b) } -> std::same_as<int>;
      { ring.to_string(a) } -> std::same_as<std::string>;
      { ring.factor(a) } -> std::same_as<Factorization<typename R::Element>>;
      { ring.residue_system(a, cap) } -> std::same_as<ResidueSystem<typename R::Element>>;
      { ring.residue_digits(a, b) } -> std::same_as<std::vector<std::uint32_t>>;
      { ring.residue_count(a) } -> std::same_as<Integer>;
    };

// ---------------------------------------------------------------------------
// Integers

class IntegerRing {
 public:
  using Element = Integer;

  bool operator==(const IntegerRing&) const = default;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const { return v; }

  bool is_zero(const Element& a) const { return a == 0; }
  bool is_unit(const Element& a) const { return a == 1 || a == -1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }

  /// Quotient and remainder with 0 <= r < |b|.
  std::pair<Element, Element> divmod(const Element& a, const Element& b) const {
    if (b == 0) throw DegenerateInput("division by zero");
    Element q = a / b;
    Element r = a % b;
    if (r < 0) {
      if (b > 0) {
        r += b;
        q -= 1;
      } else {
        r -= b;
        q += 1;
      }
    }
    return {std::move(q), std::move(r)};
  }

  bool norm_less(const Element& a, const Element& b) const { return abs(a) < abs(b); }
  Element normalize(const Element& a) const { return abs(a); }
  Element unit_part(const Element& a) const { return a < 0 ? Element(-1) : Element(1); }
  Element unit_inverse(const Element& u) const { return u; }

  int compare(const Element& a, const Element& b) const { return a < b ? -1 : (b < a ? 1 : 0); }

  std::string to_string(const Element& a) const { return a.str(); }

  Factorization<Element> factor(const Element& a) const {
    if (a == 0) throw DegenerateInput("factor: zero has no factorization");
    Factorization<Element> out{unit_part(a), {}};
    Element n = abs(a);
    for (Element d = 2; d * d <= n; ++d) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      if (e) out.factors.emplace_back(d, e);
    }
    if (n > 1) out.factors.emplace_back(n, 1u);
    return out;
  }

  ResidueSystem<Element> residue_system(const Element& m, std::size_t cap) const {
    Element n = abs(m);
    if (n == 0 || n > cap) throw SizeError("residue system of " + n.str() + " exceeds cap");
    ResidueSystem<Element> rs;
    rs.basis = {Element(1)};
    rs.radix = {static_cast<std::uint32_t>(n)};
    rs.size = static_cast<std::size_t>(n);
    return rs;
  }

  /// Digits of a canonical residue a in [0, |m|).
  std::vector<std::uint32_t> residue_digits(const Element& a, const Element& /*m*/) const {
    return {static_cast<std::uint32_t>(a)};
  }

  /// |R/(m)| for m != 0.
  Integer residue_count(const Element& m) const { return abs(m); }

 private:
  static Element abs(const Element& a) { return a < 0 ? Element(-a) : a; }
};

// ---------------------------------------------------------------------------
// Polynomials over F_p

/// Little-endian coefficients reduced mod p, no trailing zero; zero is empty.
struct Poly {
  std::vector<std::uint32_t> coeffs;

  bool operator==(const Poly&) const = default;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

class PolyRing {
 public:
  using Element = Poly;

  explicit PolyRing(std::uint32_t p) : p_(p) {
    if (p < 2 || p > 65521) throw InputError("characteristic out of range: " + std::to_string(p));
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InputError("characteristic is not prime: " + std::to_string(p));
  }

  bool operator==(const PolyRing&) const = default;

  std::uint32_t characteristic() const { return p_; }

  Element zero() const { return {}; }
  Element one() const { return Poly{{1}}; }
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return trimmed(Poly{{static_cast<std::uint32_t>(r)}});
  }
  /// Builds a polynomial from little-endian integer coefficients.
  Element from_coeffs(const std::vector<long long>& c) const {
    Poly out;
    out.coeffs.reserve(c.size());
    for (long long v : c) {
      long long r = v % static_cast<long long>(p_);
      if (r < 0) r += p_;
      out.coeffs.push_back(static_cast<std::uint32_t>(r));
    }
    return trimmed(std::move(out));
  }
  Element monomial(unsigned degree) const {
    Poly out;
    out.coeffs.assign(degree + 1, 0);
    out.coeffs.back() = 1;
    return out;
  }

  bool is_zero(const Element& a) const { return a.coeffs.empty(); }
  bool is_unit(const Element& a) const { return a.coeffs.size() == 1; }

  Element add(const Element& a, const Element& b) const {
    Poly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
      std::uint32_t s = (i < a.coeffs.size() ? a.coeffs[i] : 0) + (i < b.coeffs.size() ? b.coeffs[i] : 0);
      out.coeffs[i] = s % p_;
    }
    return trimmed(std::move(out));
  }
  Element neg(const Element& a) const {
    Poly out = a;
    for (auto& c : out.coeffs) c = c ? p_ - c : 0;
    return out;
  }
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element mul(const Element& a, const Element& b) const {
    if (a.coeffs.empty() || b.coeffs.empty()) return {};
    std::vector<std::uint64_t> acc(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (!a.coeffs[i]) continue;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        acc[i + j] = (acc[i + j] + std::uint64_t(a.coeffs[i]) * b.coeffs[j]) % p_;
    }
    Poly out;
    out.coeffs.assign(acc.begin(), acc.end());
    return trimmed(std::move(out));
  }

  std::pair<Element, Element> divmod(const Element& a, const Element& b) const {
    if (b.coeffs.empty()) throw DegenerateInput("division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<std::uint32_t> r = a.coeffs;
    std::vector<std::uint32_t> q(a.coeffs.size() - b.coeffs.size() + 1, 0);
    const std::uint32_t lead_inv = inverse(b.coeffs.back());
    const std::size_t db = b.coeffs.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(r[k + db]) * lead_inv % p_);
      q[k] = c;
      if (!c) continue;
      for (std::size_t j = 0; j <= db; ++j) {
        std::uint64_t t = std::uint64_t(c) * b.coeffs[j] % p_;
        r[k + j] = static_cast<std::uint32_t>((r[k + j] + p_ - t) % p_);
      }
    }
    r.resize(db);
    return {trimmed(Poly{std::move(q)}), trimmed(Poly{std::move(r)})};
  }

  bool norm_less(const Element& a, const Element& b) const { return a.degree() < b.degree(); }

  Element normalize(const Element& a) const {
    if (a.coeffs.empty()) return a;
    return scale(a, inverse(a.coeffs.back()));
  }
  Element unit_part(const Element& a) const {
    if (a.coeffs.empty()) return one();
    return Poly{{a.coeffs.back()}};
  }
  Element unit_inverse(const Element& u) const {
    if (u.coeffs.size() != 1) throw InputError("unit_inverse: not a unit");
    return Poly{{inverse(u.coeffs[0])}};
  }

  /// Degree first, then coefficients from the top down.
  int compare(const Element& a, const Element& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = a.coeffs.size(); i-- > 0;)
      if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i] ? -1 : 1;
    return 0;
  }

  std::string to_string(const Element& a) const {
    if (a.coeffs.empty()) return "0";
    std::string out;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
      std::uint32_t c = a.coeffs[i];
      if (!c) continue;
      if (!out.empty()) out += " + ";
      if (i == 0 || c != 1) out += std::to_string(c);
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  /// Exhaustive division by monic polynomials in increasing degree; each
  /// divisor found this way is irreducible.
  Factorization<Element> factor(const Element& a) const {
    if (a.coeffs.empty()) throw DegenerateInput("factor: zero has no factorization");
    Factorization<Element> out{unit_part(a), {}};
    Poly f = normalize(a);
    for (int d = 1; 2 * d <= f.degree(); ++d) {
      for_each_monic(d, [&](const Poly& g) {
        unsigned e = 0;
        while (f.degree() >= g.degree()) {
          auto [q, r] = divmod(f, g);
          if (!r.coeffs.empty()) break;
          f = std::move(q);
          ++e;
        }
        if (e) out.factors.emplace_back(g, e);
        return 2 * d <= f.degree();
      });
    }
    if (f.degree() >= 1) {
      auto it = std::find_if(out.factors.begin(), out.factors.end(),
                             [&](const auto& fe) { return fe.first == f; });
      if (it != out.factors.end()) ++it->second;
      else out.factors.emplace_back(f, 1u);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [&](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
    return out;
  }

  /// Calls visit(g) for every monic polynomial of the given degree in
  /// increasing coefficient order; stops early when visit returns false.
  template <class Visit>
  void for_each_monic(int degree, Visit&& visit) const {
    Poly g;
    g.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0);
    g.coeffs.back() = 1;
    while (true) {
      if (!visit(g)) return;
      std::size_t i = 0;
      while (i < static_cast<std::size_t>(degree) && ++g.coeffs[i] == p_) g.coeffs[i++] = 0;
      if (i == static_cast<std::size_t>(degree)) return;
    }
  }

  ResidueSystem<Element> residue_system(const Element& m, std::size_t cap) const {
    if (m.coeffs.empty()) throw SizeError("residue system of the zero polynomial is infinite");
    ResidueSystem<Element> rs;
    std::size_t size = 1;
    for (int i = 0; i < m.degree(); ++i) {
      if (size > cap / p_) throw SizeError("residue system exceeds cap");
      size *= p_;
      rs.basis.push_back(monomial(static_cast<unsigned>(i)));
      rs.radix.push_back(p_);
    }
    if (size > cap) throw SizeError("residue system exceeds cap");
    rs.size = size;
    return rs;
  }

  std::vector<std::uint32_t> residue_digits(const Element& a, const Element& m) const {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(std::max(m.degree(), 0)), 0);
    for (std::size_t i = 0; i < a.coeffs.size() && i < d.size(); ++i) d[i] = a.coeffs[i];
    return d;
  }

  Integer residue_count(const Element& m) const {
    Integer n = 1;
    for (int i = 0; i < m.degree(); ++i) n *= p_;
    return n;
  }

 private:
  std::uint32_t p_;

  static Poly trimmed(Poly a) {
    while (!a.coeffs.empty() && a.coeffs.back() == 0) a.coeffs.pop_back();
    return a;
  }
  Poly scale(const Poly& a, std::uint32_t c) const {
    Poly out = a;
    for (auto& x : out.coeffs) x = static_cast<std::uint32_t>(std::uint64_t(x) * c % p_);
    return trimmed(std::move(out));
  }
  std::uint32_t inverse(std::uint32_t a) const {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_;
    for (std::uint32_t e = p_ - 2; e; e >>= 1) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
    }
    return static_cast<std::uint32_t>(result);
  }
};

static_assert(EuclideanRing<IntegerRing>);
static_assert(EuclideanRing<PolyRing>);

// ---------------------------------------------------------------------------
// Generic Euclidean-domain algorithms

template <EuclideanRing R>
using ElementOf = typename R::Element;

/// g = u*a + v*b with g the normalized gcd.
template <EuclideanRing R>
struct Bezout {
  ElementOf<R> g, u, v;
};

template <EuclideanRing R>
Bezout<R> euclid(const R& ring, const ElementOf<R>& a, const ElementOf<R>& b) {
  if (ring.is_zero(a) && ring.is_zero(b)) throw DegenerateInput("euclid: both inputs are zero");
  ElementOf<R> r0 = a, r1 = b;
  ElementOf<R> s0 = ring.one(), s1 = ring.zero();
  ElementOf<R> t0 = ring.zero(), t1 = ring.one();
  while (!ring.is_zero(r1)) {
    auto [q, r] = ring.divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, ring.sub(s0, ring.mul(q, s1)));
    t0 = std::exchange(t1, ring.sub(t0, ring.mul(q, t1)));
  }
  const ElementOf<R> inv = ring.unit_inverse(ring.unit_part(r0));
  return {ring.mul(r0, inv), ring.mul(s0, inv), ring.mul(t0, inv)};
}

/// Normalized gcd; gcd(0, 0) = 0.
template <EuclideanRing R>
ElementOf<R> gcd(const R& ring, const ElementOf<R>& a, const ElementOf<R>& b) {
  if (ring.is_zero(a) && ring.is_zero(b)) return ring.zero();
  ElementOf<R> x = a, y = b;
  while (!ring.is_zero(y)) x = std::exchange(y, ring.divmod(x, y).second);
  return ring.normalize(x);
}

template <EuclideanRing R>
bool divides(const R& ring, const ElementOf<R>& d, const ElementOf<R>& a) {
  if (ring.is_zero(d)) return ring.is_zero(a);
  return ring.is_zero(ring.divmod(a, d).second);
}

/// a / d, requiring d | a.
template <EuclideanRing R>
ElementOf<R> exact_div(const R& ring, const ElementOf<R>& a, const ElementOf<R>& d) {
  auto [q, r] = ring.divmod(a, d);
  if (!ring.is_zero(r)) throw InternalError("exact_div: inexact division");
  return q;
}

template <EuclideanRing R>
ElementOf<R> lcm(const R& ring, const ElementOf<R>& a, const ElementOf<R>& b) {
  if (ring.is_zero(a) || ring.is_zero(b)) return ring.zero();
  return ring.normalize(exact_div(ring, ring.mul(a, b), gcd(ring, a, b)));
}

template <EuclideanRing R>
Factorization<ElementOf<R>> factor(const R& ring, const ElementOf<R>& a) {
  return ring.factor(a);
}

/// Distinct normalized irreducible divisors of a nonzero a, in canonical order.
template <EuclideanRing R>
std::vector<ElementOf<R>> prime_divisors(const R& ring, const ElementOf<R>& a) {
  std::vector<ElementOf<R>> out;
  for (auto& [f, e] : ring.factor(a).factors) out.push_back(f);
  return out;
}

template <EuclideanRing R>
bool is_irreducible(const R& ring, const ElementOf<R>& a) {
  if (ring.is_zero(a) || ring.is_unit(a)) return false;
  auto f = ring.factor(a);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

/// Largest e with pi^e | a; a must be nonzero and pi a non-unit.
template <EuclideanRing R>
unsigned valuation(const R& ring, ElementOf<R> a, const ElementOf<R>& pi) {
  unsigned e = 0;
  while (true) {
    auto [q, r] = ring.divmod(a, pi);
    if (!ring.is_zero(r)) return e;
    a = std::move(q);
    ++e;
  }
}

template <EuclideanRing R>
ElementOf<R> power(const R& ring, const ElementOf<R>& a, unsigned e) {
  ElementOf<R> out = ring.one();
  for (unsigned i = 0; i < e; ++i) out = ring.mul(out, a);
  return out;
}

// ---------------------------------------------------------------------------
// Principal ideals

template <EuclideanRing R>
struct PrincipalIdeal {
  ElementOf<R> generator;  // normalized; zero for the zero ideal

  bool operator==(const PrincipalIdeal&) const = default;
};

template <EuclideanRing R>
PrincipalIdeal<R> ideal(const R& ring, const ElementOf<R>& a) {
  return {ring.normalize(a)};
}

template <EuclideanRing R>
bool is_zero_ideal(const R& ring, const PrincipalIdeal<R>& I) {
  return ring.is_zero(I.generator);
}

template <EuclideanRing R>
bool is_unit_ideal(const R& ring, const PrincipalIdeal<R>& I) {
  return ring.is_unit(I.generator);
}

/// J ⊆ I.
template <EuclideanRing R>
bool ideal_contains(const R& ring, const PrincipalIdeal<R>& I, const PrincipalIdeal<R>& J) {
  return divides(ring, I.generator, J.generator);
}

template <EuclideanRing R>
bool ideal_has(const R& ring, const PrincipalIdeal<R>& I, const ElementOf<R>& a) {
  return divides(ring, I.generator, a);
}

enum class IdealOp { product, sum, intersection, radical_of_first };

template <EuclideanRing R>
PrincipalIdeal<R> ideal_ops(const R& ring, IdealOp op, const PrincipalIdeal<R>& I,
                            const PrincipalIdeal<R>& J) {
  switch (op) {
    case IdealOp::product:
      return ideal(ring, ring.mul(I.generator, J.generator));
    case IdealOp::sum:
      return {gcd(ring, I.generator, J.generator)};
    case IdealOp::intersection:
      return {lcm(ring, I.generator, J.generator)};
    case IdealOp::radical_of_first: {
      // rad((0)) = (0) in a domain.
      if (ring.is_zero(I.generator)) return I;
      ElementOf<R> r = ring.one();
      for (auto& p : prime_divisors(ring, I.generator)) r = ring.mul(r, p);
      return {r};
    }
  }
  throw InputError("unknown ideal operation");
}

template <EuclideanRing R>
bool is_prime_ideal(const R& ring, const PrincipalIdeal<R>& I) {
  return ring.is_zero(I.generator) || is_irreducible(ring, I.generator);
}

/// A prime ideal of R: (0) or (pi) with pi a normalized irreducible.
template <EuclideanRing R>
class PrimeIdeal {
 public:
  static PrimeIdeal zero_ideal(const R& ring) { return PrimeIdeal(ring.zero()); }

  /// Throws InputError when (a) is not prime.
  static PrimeIdeal make(const R& ring, const ElementOf<R>& a) {
    ElementOf<R> g = ring.normalize(a);
    if (!ring.is_zero(g) && !is_irreducible(ring, g))
      throw InputError("not a prime ideal: (" + ring.to_string(g) + ")");
    return PrimeIdeal(std::move(g));
  }

  const ElementOf<R>& generator() const { return gen_; }
  PrincipalIdeal<R> as_ideal() const { return {gen_}; }

  bool operator==(const PrimeIdeal&) const = default;

 private:
  explicit PrimeIdeal(ElementOf<R> g) : gen_(std::move(g)) {}
  ElementOf<R> gen_;
};

template <EuclideanRing R>
bool is_zero_prime(const R& ring, const PrimeIdeal<R>& p) {
  return ring.is_zero(p.generator());
}

/// Canonical order: (0) first, then by generator.
template <EuclideanRing R>
bool prime_less(const R& ring, const PrimeIdeal<R>& a, const PrimeIdeal<R>& b) {
  return ring.compare(a.generator(), b.generator()) < 0;
}

template <EuclideanRing R>
void sort_unique_primes(const R& ring, std::vector<PrimeIdeal<R>>& ps) {
  std::sort(ps.begin(), ps.end(), [&](const auto& a, const auto& b) { return prime_less(ring, a, b); });
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

/// Prime ideals (pi) for the irreducible divisors of a nonzero a.
template <EuclideanRing R>
std::vector<PrimeIdeal<R>> primes_dividing(const R& ring, const ElementOf<R>& a) {
  std::vector<PrimeIdeal<R>> out;
  for (auto& p : prime_divisors(ring, a)) out.push_back(PrimeIdeal<R>::make(ring, p));
  return out;
}

/// The first `count` nonzero primes (in canonical order) not dividing avoid.
template <EuclideanRing R>
std::vector<PrimeIdeal<R>> primes_not_dividing(const R& ring, const ElementOf<R>& avoid, std::size_t count) {
  std::vector<PrimeIdeal<R>> out;
  if constexpr (std::same_as<R, IntegerRing>) {
    for (Integer q = 2; out.size() < count; ++q)
      if (is_irreducible(ring, q) && !divides(ring, q, avoid)) out.push_back(PrimeIdeal<R>::make(ring, q));
  } else {
    for (int d = 1; out.size() < count; ++d) {
      ring.for_each_monic(d, [&](const Poly& g) {
        if (is_irreducible(ring, g) && !divides(ring, g, avoid)) out.push_back(PrimeIdeal<R>::make(ring, g));
        return out.size() < count;
      });
    }
  }
  return out;
}

}  // namespace primesub
