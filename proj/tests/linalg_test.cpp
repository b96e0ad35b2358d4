#include <gtest/gtest.h>

#include "nhom/linalg.hpp"

using namespace nhom;

namespace {

Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Scalar, ParseCanonicalizes) {
  EXPECT_EQ(parse_scalar("4/6"), Scalar(2, 3));
  EXPECT_EQ(to_string(parse_scalar("-10/5")), "-2");
  EXPECT_EQ(to_string(parse_scalar("7")), "7");
}

TEST(Scalar, ParseRejectsMalformed) {
  for (const char* bad : {"", "1.5", "1/0", "a/b", "--1", "1/-2", " 3"})
    EXPECT_THROW(parse_scalar(bad), std::invalid_argument) << bad;
}

TEST(Mat, ProductAndInverse) {
  const Mat a = Mat::from_rows({vec({1, 2}), vec({3, 4})}, 2);
  const auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, Mat::identity(2));
  EXPECT_EQ((*inv)(0, 0), Scalar(-2));
  EXPECT_EQ((*inv)(1, 0), Scalar(3, 2));
  EXPECT_FALSE(inverse(Mat::from_rows({vec({1, 2}), vec({2, 4})}, 2)));
}

TEST(Rref, RankAndPivots) {
  const Mat m = Mat::from_rows({vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 1, 1})}, 3);
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.reduced(0, 2), Scalar(1));
  EXPECT_EQ(r.reduced(1, 2), Scalar(1));
}

TEST(Nullspace, KernelVectorsAreAnnihilated) {
  const Mat m = Mat::from_rows({vec({1, 1, 0, 2}), vec({0, 0, 1, -1})}, 4);
  const auto ker = nullspace(m);
  EXPECT_EQ(ker.dim(), 2u);
  for (const auto& v : ker.vectors()) EXPECT_TRUE(is_zero(m * v));
}

TEST(Subspace, CanonicalFormIsBasisIndependent) {
  const auto a = SubspaceBasis::span(3, {vec({1, 1, 0}), vec({0, 1, 1})});
  const auto b = SubspaceBasis::span(3, {vec({1, 2, 1}), vec({1, 0, -1})});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(contains(a, vec({2, 3, 1})));
  EXPECT_FALSE(contains(a, vec({0, 0, 1})));
  EXPECT_THROW(contains(a, vec({1, 1})), std::invalid_argument);
}

TEST(Subspace, SumAndIntersection) {
  const auto xy = SubspaceBasis::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
  const auto yz = SubspaceBasis::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
  EXPECT_EQ(subspace_sum(xy, yz), SubspaceBasis::full(3));
  const auto meet = subspace_intersect(xy, yz);
  EXPECT_EQ(meet, SubspaceBasis::span(3, {vec({0, 5, 0})}));
  EXPECT_TRUE(is_subspace(meet, xy));
  EXPECT_FALSE(is_subspace(xy, yz));
  // dim formula
  EXPECT_EQ(subspace_sum(xy, yz).dim() + meet.dim(), xy.dim() + yz.dim());
}

TEST(Subspace, ComplementWithinAllowedCoordinates) {
  const auto line = SubspaceBasis::span(4, {vec({1, 1, 0, 0})});
  const auto comp = extend_to_complement(line, {0, 1});
  EXPECT_EQ(comp.dim(), 1u);
  EXPECT_EQ(subspace_sum(line, comp), SubspaceBasis::span(4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}));
  EXPECT_THROW(extend_to_complement(line, {0, 2}), std::invalid_argument);
}
