#include <gtest/gtest.h>

#include "primesub/module.hpp"
#include "support.hpp"

using namespace primesub;
using namespace testsupport;

namespace {

const IntegerRing Z;

FPModule<IntegerRing> presented(std::size_t n, std::vector<std::vector<long long>> rows) {
  std::vector<RowVector<IntegerRing>> rs;
  for (auto& r : rows) rs.push_back(zvec(r));
  return FPModule<IntegerRing>::build(Z, n, Mat<IntegerRing>::from_rows(Z, rs, n));
}

std::size_t element_count(const Submodule<IntegerRing>& N) {
  return FiniteModuleTable<IntegerRing>::build(N.parent()).to_set(N).count();
}

/// Random finite modules given by square relation matrices with small
/// nonzero determinant, so nothing about the Smith form is assumed.
template <EuclideanRing R>
std::vector<FPModule<R>> random_finite_modules(const R& ring, Gen& g, int count, long long bound) {
  std::vector<FPModule<R>> out;
  while (static_cast<int>(out.size()) < count) {
    const auto n = static_cast<std::size_t>(g.in(1, 3));
    const auto A = g.matrix(ring, n, n, bound);
    const auto M = FPModule<R>::build(ring, n, A);
    const auto o = M.order();
    if (!o || *o > 512 || *o < 2) continue;
    out.push_back(M);
  }
  return out;
}

template <EuclideanRing R>
Submodule<R> random_submodule(const FPModule<R>& M, Gen& g, long long bound) {
  Mat<R> gens(M.ring(), 0, M.ambient_rank());
  const auto k = g.in(0, 2);
  for (long long i = 0; i < k; ++i) {
    RowVector<R> v;
    for (std::size_t j = 0; j < M.ambient_rank(); ++j) v.push_back(g.element(M.ring(), bound));
    gens.append_row(v);
  }
  return Submodule<R>(M, gens);
}

/// Composition length as the longest chain in the lattice.
std::size_t longest_chain(const SubmoduleLattice& L) {
  auto subs = L.submodules;
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.count() < b.count(); });
  std::vector<std::size_t> len(subs.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (subs[j] != subs[i] && subs[j].subset_of(subs[i])) len[i] = std::max(len[i], len[j] + 1);
    best = std::max(best, len[i]);
  }
  return best;
}

template <EuclideanRing R>
void check_against_oracle(const FPModule<R>& M, Gen& g, long long bound) {
  const R& ring = M.ring();
  const auto T = FiniteModuleTable<R>::build(M);
  ASSERT_EQ(T.order(), *M.order());
  const auto L = enumerate_submodules(T);
  ASSERT_EQ(length_and_class(M).length, longest_chain(L));
  ASSERT_EQ(T.to_set(torsion_submodule(M)), T.whole());
  ASSERT_EQ(annihilator(M).generator, T.colon(T.zero_set()).generator);

  for (int k = 0; k < 6; ++k) {
    const auto A = random_submodule(M, g, bound), B = random_submodule(M, g, bound);
    const auto a = T.to_set(A), b = T.to_set(B);
    ASSERT_EQ(T.to_set(submodule_sum(A, B)), T.sum(a, b));
    ASSERT_EQ(T.to_set(submodule_intersection(A, B)), a & b);
    ASSERT_EQ(colon_ideal(A).generator, T.colon(a).generator);
    ASSERT_EQ(A.contains(B), b.subset_of(a));
    ASSERT_EQ(T.to_submodule(a), A);
    for (std::size_t x = 0; x < T.order(); ++x) ASSERT_EQ(A.contains(T.vector_of(x)), a.test(x));

    const auto r = g.element(ring, bound);
    ElementSet ra;
    a.for_each([&](std::size_t x) { ra.set(T.act_by(r, x)); });
    ASSERT_EQ(T.to_set(ideal_times_submodule(ideal(ring, r), A)), ra);
    ASSERT_EQ(T.to_set(ideal_times_module(ideal(ring, r), M)), T.ideal_times(r));

    const auto Q = quotient_module(M, A).quotient;
    ASSERT_EQ(*Q.order() * a.count(), T.order());
  }
}

}  // namespace

TEST(Build, Examples) {
  const auto z6 = presented(1, {{6}});
  EXPECT_EQ(z6.invariant_factors(), std::vector<Integer>{6});
  EXPECT_EQ(z6.free_rank(), 0u);

  const auto zz4 = presented(2, {{0, 4}});
  EXPECT_EQ(zz4.invariant_factors(), std::vector<Integer>{4});
  EXPECT_EQ(zz4.free_rank(), 1u);

  const auto z2z3 = presented(2, {{2, 0}, {0, 3}});
  EXPECT_EQ(z2z3.invariant_factors(), std::vector<Integer>{6});
  EXPECT_TRUE(z2z3.is_cyclic());
}

TEST(Build, ShapeErrors) {
  EXPECT_THROW(presented(2, {{1, 2, 3}}), InputError);
  const auto M = zmod({6});
  EXPECT_THROW(span(M, {zvec({1, 2})}), InputError);
  EXPECT_THROW(Submodule<IntegerRing>(M, Mat<IntegerRing>::from_rows(Z, {zvec({1, 0})}, 2)), InputError);
}

TEST(Submodule, Examples) {
  const auto z6 = zmod({6});
  EXPECT_EQ(element_count(span(z6, {zvec({2})})), 3u);
  EXPECT_TRUE(span(z6, {zvec({7})}).is_whole());

  const auto zz4 = zmod({0, 4});
  const auto N = span(zz4, {zvec({0, 2})});
  // |N| = |torsion(M)| / |torsion(M/N)|, counted without the oracle.
  const auto Q = quotient_module(zz4, N).quotient;
  EXPECT_EQ(Q.invariant_factors(), std::vector<Integer>{2});
  EXPECT_EQ(Q.free_rank(), 1u);
}

TEST(Submodule, SumAndIntersectionExamples) {
  const auto z6 = zmod({6});
  const auto two = span(z6, {zvec({2})}), three = span(z6, {zvec({3})});
  EXPECT_TRUE(submodule_sum(two, three).is_whole());
  EXPECT_EQ(submodule_sum(two, zero_submodule(z6)), two);
  EXPECT_TRUE(submodule_intersection(two, three).is_zero());
  EXPECT_EQ(submodule_intersection(two, whole_submodule(z6)), two);

  const auto v = zmod({2, 2});
  EXPECT_TRUE(submodule_sum(span(v, {zvec({1, 0})}), span(v, {zvec({0, 1})})).is_whole());

  const auto z2 = FPModule<IntegerRing>::free(Z, 2);
  EXPECT_EQ(submodule_intersection(span(z2, {zvec({2, 0})}), span(z2, {zvec({3, 0})})), span(z2, {zvec({6, 0})}));
}

TEST(Submodule, ParentMismatch) {
  // Parents are compared by presentation, so two copies of Z/6 are the same module.
  const auto a = zmod({6}), b = zmod({4});
  EXPECT_NO_THROW(submodule_sum(whole_submodule(a), whole_submodule(zmod({6}))));
  EXPECT_THROW(submodule_sum(whole_submodule(a), whole_submodule(b)), InputError);
  EXPECT_THROW(submodule_intersection(whole_submodule(a), zero_submodule(b)), InputError);
  EXPECT_THROW(quotient_module(a, whole_submodule(b)), InputError);
}

TEST(Ideals, Examples) {
  const auto z6 = zmod({6});
  EXPECT_EQ(ideal_times_module(ideal(Z, Integer(2)), z6), span(z6, {zvec({2})}));
  EXPECT_TRUE(ideal_times_module(ideal(Z, Integer(0)), z6).is_zero());
  EXPECT_TRUE(ideal_times_module(ideal(Z, Integer(1)), z6).is_whole());

  EXPECT_EQ(colon_ideal(span(z6, {zvec({3})})).generator, 3);
  EXPECT_EQ(colon_ideal(whole_submodule(z6)).generator, 1);
  EXPECT_EQ(colon_ideal(zero_submodule(zmod({0, 4}))).generator, 0);

  EXPECT_EQ(annihilator(zmod({4, 2})).generator, 4);
  EXPECT_EQ(annihilator(FPModule<IntegerRing>::free(Z, 2)).generator, 0);
  EXPECT_EQ(annihilator(zmod({1})).generator, 1);
}

TEST(Torsion, Examples) {
  const auto zz4 = zmod({0, 4});
  EXPECT_EQ(torsion_submodule(zz4), span(zz4, {zvec({0, 1})}));
  EXPECT_TRUE(torsion_submodule(FPModule<IntegerRing>::free(Z, 2)).is_zero());
  EXPECT_TRUE(torsion_submodule(zmod({6})).is_whole());
}

TEST(Quotient, Examples) {
  const auto z6 = zmod({6});
  EXPECT_EQ(quotient_module(z6, span(z6, {zvec({3})})).quotient.invariant_factors(), std::vector<Integer>{3});
  EXPECT_EQ(quotient_module(z6, zero_submodule(z6)).quotient.invariant_factors(), std::vector<Integer>{6});
  EXPECT_TRUE(quotient_module(z6, whole_submodule(z6)).quotient.is_zero());
}

TEST(Length, Examples) {
  const auto a = length_and_class(zmod({12}));
  EXPECT_TRUE(a.finite_length && a.artinian && a.noetherian);
  EXPECT_EQ(a.length, 3u);
  const auto b = length_and_class(FPModule<IntegerRing>::free(Z, 1));
  EXPECT_FALSE(b.finite_length);
  EXPECT_TRUE(b.noetherian);
  EXPECT_FALSE(b.artinian);
  EXPECT_EQ(length_and_class(zmod({1})).length, 0u);
}

TEST(Saturation, Examples) {
  const auto z12 = zmod({12});
  // Elements killed by an odd number: the 3-torsion {0,4,8}.
  EXPECT_EQ(saturate_away_from(zero_submodule(z12), Integer(2)), span(z12, {zvec({4})}));
  EXPECT_EQ(saturate_away_from(zero_submodule(z12), Integer(3)), span(z12, {zvec({3})}));
  const auto zz4 = zmod({0, 4});
  EXPECT_EQ(torsion_saturation(zero_submodule(zz4)), torsion_submodule(zz4));
  const auto z2 = FPModule<IntegerRing>::free(Z, 2);
  EXPECT_EQ(torsion_saturation(span(z2, {zvec({2, 4})})), span(z2, {zvec({1, 2})}));
}

TEST(Lattice, IntegerModulesAgreeWithOracle) {
  Gen g(101);
  for (auto& M : random_finite_modules(Z, g, 40, 6)) check_against_oracle(M, g, 9);
}

TEST(Lattice, PolynomialModulesAgreeWithOracle) {
  for (std::uint32_t p : {2u, 3u}) {
    const PolyRing R(p);
    Gen g(200 + p);
    for (auto& M : random_finite_modules(R, g, 20, 2)) check_against_oracle(M, g, 3);
  }
}

TEST(Lattice, ModularLawOnRandomTriples) {
  Gen g(303);
  for (auto& M : random_finite_modules(Z, g, 30, 6)) {
    for (int k = 0; k < 5; ++k) {
      auto A = random_submodule(M, g, 9), B = random_submodule(M, g, 9), C = random_submodule(M, g, 9);
      A = submodule_intersection(A, C);  // A inside C
      ASSERT_EQ(submodule_intersection(submodule_sum(A, B), C), submodule_sum(A, submodule_intersection(B, C)));
      ASSERT_EQ(submodule_sum(A, A), A);
      ASSERT_EQ(submodule_intersection(submodule_sum(A, B), A), A);
    }
  }
}
