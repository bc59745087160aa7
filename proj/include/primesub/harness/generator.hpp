#pragma once

// Seeded random finitely presented modules. Each instance starts from a
// diagonal presentation of a chosen shape and is then scrambled by a few
// unimodular row and column operations, so the library never sees the
// classification it has to recover.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "primesub/json_io.hpp"
#include "primesub/oracle.hpp"

namespace primesub::harness {

struct TrialConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 200;
  std::size_t max_order = kOracleMaxOrder;
  std::size_t max_rank = 3;
  unsigned int_weight = 3;   // relative weight of Z instances
  unsigned poly_weight = 2;  // relative weight of F_p[x] instances, p in {2,3}
};

enum class InstanceKind { zero, cyclic_finite, noncyclic_finite, free_part };

inline const char* kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::zero: return "zero";
    case InstanceKind::cyclic_finite: return "cyclic_finite";
    case InstanceKind::noncyclic_finite: return "noncyclic_finite";
    case InstanceKind::free_part: return "free_part";
  }
  return "?";
}

struct GeneratedInstance {
  AnyModule module;
  InstanceKind kind;
};

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  /// Uniform enough for desk-scale ranges, and identical on every platform.
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  long long in(long long lo, long long hi) { return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 rng_;
};

struct Shape {
  InstanceKind kind;
  std::size_t free_rank = 0;
  std::size_t torsion_count = 0;
  bool want_cyclic = false;
};

inline Shape draw_shape(Draw& d, std::size_t max_rank) {
  const auto roll = d.below(100);
  if (roll < 2) return {InstanceKind::zero};
  if (roll < 42 || max_rank < 2) return {InstanceKind::cyclic_finite, 0, 1, true};
  if (roll < 72) return {InstanceKind::noncyclic_finite, 0, static_cast<std::size_t>(d.in(2, std::min<long long>(3, static_cast<long long>(max_rank))))};
  const auto f = static_cast<std::size_t>(d.in(1, std::min<long long>(2, static_cast<long long>(max_rank))));
  const auto t = static_cast<std::size_t>(d.in(f == 1 ? 1 : 0, static_cast<long long>(std::min<std::size_t>(2, max_rank - f))));
  return {InstanceKind::free_part, f, t};
}

// Every factor on its own fits under the order cap.
inline Integer draw_factor(Draw& d, const IntegerRing&, bool cyclic, std::size_t cap) {
  const auto hi = [&](long long range) { return std::max(2LL, std::min(range, static_cast<long long>(cap))); };
  if (cyclic) return Integer(d.in(2, hi(d.chance(50) ? 96 : static_cast<long long>(kOracleMaxOrder))));
  return Integer(d.in(2, hi(24)));
}

inline Poly draw_factor(Draw& d, const PolyRing& ring, bool cyclic, std::size_t cap) {
  int max_deg = ring.characteristic() == 2 ? 3 : (cyclic ? 3 : 2);
  for (std::size_t o = 1, k = 0; k < 3; ++k) {
    o *= ring.characteristic();
    if (o > cap) {
      max_deg = std::max(1, std::min(max_deg, static_cast<int>(k)));
      break;
    }
  }
  const int deg = static_cast<int>(d.in(1, max_deg));
  std::vector<long long> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = d.in(0, ring.characteristic() - 1);
  c.back() = 1;
  return ring.from_coeffs(c);
}

inline Integer draw_multiplier(Draw& d, const IntegerRing&) {
  static const long long choices[] = {-2, -1, 1, 2};
  return Integer(choices[d.below(4)]);
}
inline Poly draw_multiplier(Draw& d, const PolyRing& ring) {
  // Constants keep entry degrees at most 3.
  return ring.from_int(d.in(1, ring.characteristic() - 1));
}

template <EuclideanRing R>
FPModule<R> scrambled(Draw& d, const R& ring, const std::vector<ElementOf<R>>& diag) {
  const std::size_t n = diag.size();
  std::vector<RowVector<R>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (ring.is_zero(diag[i])) continue;
    RowVector<R> r(n, ring.zero());
    r[i] = diag[i];
    rows.push_back(r);
  }
  Mat<R> A = Mat<R>::from_rows(ring, rows, n);
  const std::size_t ops = n + static_cast<std::size_t>(d.below(n + 1));
  for (std::size_t k = 0; k < ops && n >= 2; ++k) {
    const auto i = static_cast<std::size_t>(d.below(n));
    auto j = static_cast<std::size_t>(d.below(n - 1));
    if (j >= i) ++j;
    if (d.chance(50) || A.rows() < 2) {
      A.add_col_multiple(i, j, draw_multiplier(d, ring));
    } else {
      const auto r1 = static_cast<std::size_t>(d.below(A.rows()));
      auto r2 = static_cast<std::size_t>(d.below(A.rows() - 1));
      if (r2 >= r1) ++r2;
      A.add_row_multiple(r1, r2, draw_multiplier(d, ring));
    }
  }
  if (A.rows() >= 2 && d.chance(20)) {
    RowVector<R> extra = A.row(0);
    for (std::size_t c = 0; c < n; ++c) extra[c] = ring.add(extra[c], A(1, c));
    A.append_row(extra);
  }
  return FPModule<R>::build(ring, n, A);
}

template <EuclideanRing R>
bool fits(const FPModule<R>& M, std::size_t max_order) {
  auto o = M.order();
  return !o || *o <= max_order;
}

template <EuclideanRing R>
GeneratedInstance generate(Draw& d, const R& ring, const TrialConfig& cfg) {
  const Shape shape = draw_shape(d, cfg.max_rank);
  if (shape.kind == InstanceKind::zero) {
    const auto n = static_cast<std::size_t>(d.below(3));
    std::vector<ElementOf<R>> diag(n, ring.one());
    return {scrambled(d, ring, diag), shape.kind};
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<ElementOf<R>> diag;
    for (std::size_t k = 0; k < shape.torsion_count; ++k) diag.push_back(draw_factor(d, ring, shape.want_cyclic, cfg.max_order));
    for (std::size_t k = 0; k < shape.free_rank; ++k) diag.push_back(ring.zero());
    // A unit factor adds a generator that the relations make redundant.
    if (diag.size() < cfg.max_rank && d.chance(50)) diag.insert(diag.begin() + static_cast<std::ptrdiff_t>(d.below(diag.size() + 1)), ring.one());
    FPModule<R> M = scrambled(d, ring, diag);
    if (!fits(M, cfg.max_order) || M.is_zero()) continue;
    if (shape.kind == InstanceKind::noncyclic_finite && M.is_cyclic()) continue;
    if (shape.kind == InstanceKind::cyclic_finite && !M.is_cyclic()) continue;
    return {M, shape.kind};
  }
  // Rejection sampling gave up (tiny caps); fall back to a cyclic module under the cap.
  return {FPModule<R>::diagonal(ring, {draw_factor(d, ring, true, cfg.max_order)}), InstanceKind::cyclic_finite};
}

}  // namespace detail

/// Deterministic in (cfg.seed + index) and the caps.
inline GeneratedInstance random_module(const TrialConfig& cfg, std::size_t index) {
  detail::Draw d(cfg.seed + index);
  const unsigned total = cfg.int_weight + cfg.poly_weight;
  if (total == 0) throw InputError("ring weights are both zero");
  if (d.below(total) < cfg.int_weight) return detail::generate(d, IntegerRing{}, cfg);
  // F_3[x] has no nonzero module of order 2.
  const bool two = d.chance(50) || cfg.max_order < 3;
  const PolyRing ring(two ? 2 : 3);
  return detail::generate(d, ring, cfg);
}

}  // namespace primesub::harness
