#include <gtest/gtest.h>

#include "corrupted.hpp"
#include "nhom/derivations.hpp"
#include "nhom/extension.hpp"
#include "nhom/fixtures.hpp"
#include "oracle.hpp"

using namespace nhom;

namespace {

oracle::Kind to_oracle(Kind k) {
  switch (k) {
    case Kind::Omega: return oracle::Kind::Omega;
    case Kind::Der: return oracle::Kind::Der;
    case Kind::ZDer: return oracle::Kind::ZDer;
    case Kind::C: return oracle::Kind::C;
    case Kind::QC: return oracle::Kind::QC;
    case Kind::QDer: return oracle::Kind::QDer;
    case Kind::GDer: return oracle::Kind::GDer;
  }
  return oracle::Kind::Omega;
}

}  // namespace

// Expected values are confirmed here before any other test relies on them.
TEST(Oracle, ReferenceDimensions) {
  const auto aff1 = fixtures::aff1();
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::Der, 0, 0), 2u);
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::C, 0, 0), 1u);
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::QC, 0, 0), 1u);
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::QDer, 0, 0), 4u);
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::GDer, 0, 0), 4u);
  EXPECT_EQ(oracle::dimension(aff1, oracle::Kind::ZDer, 0, 0), 0u);
  EXPECT_EQ(oracle::center_dimension(aff1), 0u);
  EXPECT_EQ(oracle::dimension(fixtures::homaff1(), oracle::Kind::Der, 1, 0), 1u);
  EXPECT_EQ(oracle::dimension(fixtures::super2(), oracle::Kind::Der, 0, 0), 1u);
  EXPECT_EQ(oracle::dimension(fixtures::super2(), oracle::Kind::Der, 0, 1), 1u);
  EXPECT_EQ(oracle::dimension(fixtures::three_lie4(), oracle::Kind::Der, 0, 0), 6u);
}

TEST(Oracle, SolverAgreesEverywhere) {
  for (const auto& [name, alg] : fixtures::bundled())
    for (std::size_t k = 0; k <= 2; ++k)
      for (int xi = 0; xi < 2; ++xi)
        for (auto kind : kAllKinds)
          EXPECT_EQ(solve(alg, kind, k, xi).dim(), oracle::dimension(alg, to_oracle(kind), k, xi))
              << name << " " << to_string(kind) << " k=" << k << " xi=" << xi;
}

TEST(Oracle, ExtensionDimensions) {
  const auto ext = build_check(fixtures::aff1()).ext;
  EXPECT_EQ(oracle::dimension(ext, oracle::Kind::ZDer, 0, 0), 6u);
  EXPECT_EQ(oracle::dimension(ext, oracle::Kind::Der, 0, 0), 10u);
  EXPECT_EQ(oracle::center_dimension(ext), 2u);
}

TEST(Oracle, JacobiAgreesWithValidate) {
  for (const auto& [name, alg] : fixtures::bundled()) EXPECT_EQ(oracle::jacobi_violations(alg), 0u) << name;
  EXPECT_GT(oracle::jacobi_violations(corrupted::jacobi_violation()), 0u);
}
