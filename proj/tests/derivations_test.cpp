#include <gtest/gtest.h>

#include <random>

#include "nhom/derivations.hpp"
#include "nhom/fixtures.hpp"

using namespace nhom;

namespace {

GradedEndo endo(std::initializer_list<std::initializer_list<long>> rows, int xi = 0) {
  std::vector<Vec> rs;
  for (const auto& r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    rs.push_back(std::move(v));
  }
  return {Mat::from_rows(rs, rs.size()), xi};
}

}  // namespace

TEST(Omega, Commutants) {
  EXPECT_EQ(omega(fixtures::aff1(), 0).dim(), 4u);
  EXPECT_EQ(omega(fixtures::aff1(), 1).dim(), 0u);
  EXPECT_EQ(omega(fixtures::homaff1(), 0).dim(), 2u);
  EXPECT_EQ(omega(fixtures::super2(), 1).dim(), 2u);
}

TEST(Solve, Aff1DerivationBasis) {
  const auto der = solve(fixtures::aff1(), Kind::Der, 0, 0);
  ASSERT_EQ(der.dim(), 2u);
  // e1 -> e2 and e2 -> e2, in canonical form
  const auto expect = SubspaceBasis::span(4, {vectorize(endo({{0, 0}, {1, 0}}).mat), vectorize(endo({{0, 0}, {0, 1}}).mat)});
  EXPECT_EQ(der.space, expect);
}

TEST(Solve, Aff1Table) {
  const auto alg = fixtures::aff1();
  EXPECT_EQ(solve(alg, Kind::C, 0, 0).dim(), 1u);
  EXPECT_EQ(solve(alg, Kind::QC, 0, 0).dim(), 1u);
  EXPECT_EQ(solve(alg, Kind::QDer, 0, 0).dim(), 4u);
  EXPECT_EQ(solve(alg, Kind::GDer, 0, 0).dim(), 4u);
  EXPECT_EQ(solve(alg, Kind::ZDer, 0, 0).dim(), 0u);
}

TEST(Solve, OtherFixtures) {
  EXPECT_EQ(solve(fixtures::homaff1(), Kind::Der, 1, 0).dim(), 1u);
  EXPECT_EQ(solve(fixtures::super2(), Kind::Der, 0, 0).dim(), 1u);
  const auto odd = solve(fixtures::super2(), Kind::Der, 0, 1);
  ASSERT_EQ(odd.dim(), 1u);
  EXPECT_EQ(odd.basis[0].mat, endo({{0, 0}, {1, 0}}, 1).mat);
  EXPECT_EQ(solve(fixtures::three_lie4(), Kind::Der, 0, 0).dim(), 6u);
  for (auto kind : kAllKinds) EXPECT_EQ(solve(fixtures::abelian2(), kind, 1, 0).dim(), 4u);
}

TEST(Solve, WitnessesSatisfyTheirIdentity) {
  for (const auto& [name, alg] : fixtures::bundled()) {
    for (int xi = 0; xi < 2; ++xi) {
      const auto q = solve(alg, Kind::QDer, 1, xi);
      for (std::size_t i = 0; i < q.dim(); ++i) EXPECT_TRUE(satisfies_qder(alg, 1, q.basis[i], q.witnesses[i][0])) << name;
      const auto g = solve(alg, Kind::GDer, 1, xi);
      for (std::size_t i = 0; i < g.dim(); ++i) EXPECT_EQ(g.witnesses[i].size(), alg.arity()) << name;
    }
  }
}

TEST(InSpace, DefinitionExamples) {
  const auto alg = fixtures::aff1();
  EXPECT_TRUE(in_space(alg, Kind::C, 0, 0, {Mat::identity(2), 0}));
  for (auto kind : kAllKinds) EXPECT_TRUE(in_space(alg, kind, 0, 0, {Mat(2, 2), 0}));
  EXPECT_FALSE(in_space(alg, Kind::Der, 0, 0, endo({{1, 0}, {0, 0}})));
  EXPECT_TRUE(in_space(alg, Kind::Der, 0, 0, endo({{0, 0}, {1, 1}})));
}

TEST(InSpace, WrongParityIsRejected) {
  EXPECT_FALSE(in_space(fixtures::super2(), Kind::Omega, 0, 0, endo({{0, 1}, {0, 0}})));
}

TEST(EndoOps, SupercommutatorAndJordan) {
  const auto d = endo({{0, 1}, {1, 0}}, 1);
  EXPECT_EQ(supercommutator(d, d).mat, Scalar(2) * Mat(d.mat * d.mat));
  const auto e = endo({{1, 0}, {0, 2}});
  EXPECT_TRUE(supercommutator(e, e).mat.is_zero());
  EXPECT_EQ(jordan_product(e, e).mat, e.mat * e.mat);
  EXPECT_EQ(jordan_product({Mat::identity(2), 0}, d), d);
  const auto f = endo({{0, 3}, {5, 0}}, 1);
  Mat sym = jordan_product(d, f).mat;
  sym += jordan_product(f, d).mat;  // (-1)^{1*1} = -1
  EXPECT_TRUE(sym.is_zero());
}

TEST(EndoOps, AlphaTwistRequiresCommutation) {
  const auto alg = fixtures::homaff1();
  EXPECT_EQ(alpha_twist(alg, endo({{0, 0}, {0, 1}})).mat, endo({{0, 0}, {0, 2}}).mat);
  EXPECT_THROW(alpha_twist(alg, endo({{0, 1}, {0, 0}})), std::invalid_argument);
}

TEST(Tower, InclusionsHoldOnEveryFixture) {
  for (const auto& [name, alg] : fixtures::bundled()) {
    SpaceAtlas atlas(alg);
    for (std::size_t k = 0; k <= 2; ++k)
      for (int xi = 0; xi < 2; ++xi) {
        const Kind chain[] = {Kind::ZDer, Kind::Der, Kind::QDer, Kind::GDer, Kind::Omega};
        for (std::size_t i = 0; i + 1 < 5; ++i)
          EXPECT_TRUE(is_subspace(atlas.get(chain[i], k, xi).space, atlas.get(chain[i + 1], k, xi).space))
              << name << " " << to_string(chain[i]) << " k=" << k << " xi=" << xi;
      }
  }
}

TEST(CrossValidation, RandomMapsOutsideTheSpanFail) {
  std::mt19937_64 rng(7);
  const auto alg = fixtures::homaff1();
  const auto der = solve(alg, Kind::Der, 1, 0);
  const auto om = omega(alg, 0);
  int tried = 0;
  for (int i = 0; i < 50; ++i) {
    Vec v(4);
    for (const auto& b : om.space.vectors()) {
      const Scalar c(static_cast<long>(rng() % 7) - 3);
      for (std::size_t j = 0; j < 4; ++j) v[j] += c * b[j];
    }
    if (contains(der.space, v)) continue;
    ++tried;
    EXPECT_FALSE(in_space(alg, Kind::Der, 1, 0, {devectorize(v, 2), 0}));
  }
  EXPECT_GT(tried, 0);
}
