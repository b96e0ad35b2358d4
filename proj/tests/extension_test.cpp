#include <gtest/gtest.h>

#include "nhom/extension.hpp"
#include "nhom/fixtures.hpp"

using namespace nhom;

TEST(Extension, ValidatesForEveryFixture) {
  for (const auto& [name, alg] : fixtures::bundled()) {
    const auto ext = build_check(alg);
    EXPECT_EQ(ext.ext.dim(), 2 * alg.dim()) << name;
    EXPECT_TRUE(validate(ext.ext).ok()) << name;
    EXPECT_EQ(ext.complement.dim() + ext.derived.dim(), alg.dim()) << name;
  }
}

TEST(Extension, ProjectionIsIdempotentOntoDerived) {
  const auto ext = build_check(fixtures::aff1());
  const Mat& p = ext.derived_projection;
  EXPECT_EQ(p * p, p);
  EXPECT_EQ(p * Vec({0, 1}), Vec({0, 1}));
}

TEST(Extension, PhiRejectsNonWitness) {
  const auto ext = build_check(fixtures::aff1());
  EXPECT_THROW(phi(ext, 0, {Mat::identity(2), 0}, Mat(2, 2)), std::invalid_argument);
  // id needs D' = 2 id on a binary bracket
  EXPECT_THROW(phi(ext, 0, {Mat::identity(2), 0}, Mat::identity(2)), std::invalid_argument);
  const auto img = phi(ext, 0, {Mat::identity(2), 0}, Scalar(2) * Mat::identity(2));
  EXPECT_EQ(img.mat(0, 0), Scalar(1));
  EXPECT_EQ(img.mat(3, 3), Scalar(2));
  EXPECT_EQ(img.mat(2, 2), Scalar(0));  // e1 t^n lies in the complement U
}

TEST(Extension, Aff1Decomposition) {
  const auto p42 = check_prop42(fixtures::aff1());
  EXPECT_TRUE(p42.passed());
  const auto p43 = check_prop43(fixtures::aff1());
  EXPECT_TRUE(p43.passed());
  EXPECT_EQ(p43.dims.at({"phi(QDer)", 0, 0}), 4u);
  EXPECT_EQ(p43.dims.at({"ext.ZDer", 0, 0}), 6u);
  EXPECT_EQ(p43.dims.at({"ext.Der", 0, 0}), 10u);
  for (const auto& c : p43.claims) EXPECT_EQ(c.status, Status::Pass) << c.id;
}

TEST(Extension, NonzeroCenterSkipsDecomposition) {
  const auto rep = check_prop43(fixtures::abelian2());
  for (const auto& c : rep.claims) EXPECT_EQ(c.status, Status::Skipped);
  EXPECT_TRUE(rep.passed());
}

TEST(Extension, SuperFixture) {
  EXPECT_TRUE(check_prop42(fixtures::super2()).passed());
  EXPECT_TRUE(check_prop43(fixtures::super2()).passed());
}
