#include <algorithm>

#include <gtest/gtest.h>

#include "cpzreach/cpzreach.hpp"
#include "oracles.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace cpzreach {
namespace {

ConstrainedMatZonotope Interval(double center, double radius, FactorContext& ctx) {
  return to_cmz(MatrixZonotope(MatrixXd::Constant(1, 1, center), {MatrixXd::Constant(1, 1, radius)}), ctx);
}

GTEST_TEST(VectorizeTest, ColumnMajor) {
  MatrixXd M(2, 2);
  M << 1, 3, 2, 4;
  EXPECT_EQ(vectorize(M), (VectorXd(4) << 1, 2, 3, 4).finished());
  EXPECT_EQ(vectorize(MatrixXd::Constant(1, 1, 5.0)), VectorXd::Constant(1, 5.0));
  EXPECT_EQ(convert(vectorize(M), 2), M);
  const VectorXd v = (VectorXd(3) << 1, 2, 3).finished();
  EXPECT_EQ(convert(v, 3), MatrixXd(v));
  EXPECT_THROW(convert(v, 2), ConvertError);
  Rng rng(1);
  const VectorXd w = test::random_matrix(12, 1, rng);
  EXPECT_EQ(vectorize(convert(w, 4)), w);
}

GTEST_TEST(ConcatTest, RoundTrip) {
  Rng rng(2);
  std::vector<MatrixXd> blocks{test::random_matrix(2, 3, rng), test::random_matrix(2, 3, rng)};
  const MatrixXd wide = concat_blocks(blocks, 2, 3);
  EXPECT_EQ(wide.cols(), 6);
  const auto back = split_blocks(wide, 3);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], blocks[1]);
}

GTEST_TEST(CmzEvaluateTest, Basics) {
  FactorContext ctx;
  Rng rng(3);
  const auto N = test::random_feasible_cmz(2, 3, rng, ctx, true);
  FactorAssignment zero;
  for (auto id : N.ids()) zero.set(id, 0.0);
  const auto e0 = cmz_evaluate(N, zero);
  EXPECT_EQ(e0.point, N.center());
  EXPECT_EQ(e0.constraint_residual, N.constraint_rhs().cwiseAbs().maxCoeff());

  const auto one = Interval(2.0, 1.0, ctx);
  FactorAssignment a;
  a.set(one.ids()[0], 1.0);
  EXPECT_EQ(cmz_evaluate(one, a).point(0, 0), 3.0);
  EXPECT_EQ(cmz_evaluate(one, a).constraint_residual, 0.0);
  EXPECT_THROW(cmz_evaluate(one, FactorAssignment{}), MissingFactorError);
}

GTEST_TEST(CmzToCpmzTest, EvaluationIsUnchanged) {
  FactorContext ctx;
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto N = test::random_feasible_cmz(3, 2, rng, ctx, trial % 2 == 0);
    const auto Y = cmz_to_cpmz(N);
    EXPECT_EQ(Y.ids(), N.ids());
    EXPECT_EQ(Y.exponents(), ExponentMatrix::Identity(N.num_generators(), N.num_generators()));
    for (int s = 0; s < 100; ++s) {
      const auto v = test::random_values(test::id_values(N.ids()), rng);
      const auto a = test::to_assignment(v);
      const auto ey = cmz_evaluate(Y, a), en = cmz_evaluate(N, a);
      ASSERT_EQ(ey.point, en.point);
      ASSERT_EQ(ey.constraint_residual, en.constraint_residual);
    }
  }
  const auto mz = cmz_to_cpmz(Interval(0, 1, ctx));
  EXPECT_FALSE(mz.has_constraints());
  EXPECT_EQ(mz.constraint_exponents().cols(), 0);
  const auto pt = cmz_to_cpmz(ConstrainedMatZonotope(MatrixZonotope(MatrixXd::Identity(2, 2), {}), {}));
  EXPECT_EQ(pt.num_generators(), 0);
  EXPECT_EQ(cmz_evaluate(pt, FactorAssignment{}).point, MatrixXd::Identity(2, 2));
}

GTEST_TEST(IntersectTest, Intervals) {
  FactorContext ctx;
  const auto I = cmz_intersect(Interval(0, 1, ctx), Interval(1, 1, ctx), ctx);
  ASSERT_EQ(I.num_generators(), 2);
  EXPECT_EQ(I.constraint_blocks()[0], MatrixXd::Constant(1, 1, 1.0));
  EXPECT_EQ(I.constraint_blocks()[1], MatrixXd::Constant(1, 1, -1.0));
  EXPECT_EQ(I.constraint_rhs(), MatrixXd::Constant(1, 1, 1.0));
  EXPECT_EQ(I.generators()[1], MatrixXd::Zero(1, 1));

  Rng rng(5);
  const auto s = sample_cmz(I, 2000, rng);
  double lo = 1e9, hi = -1e9;
  for (const auto& m : s.members) {
    lo = std::min(lo, m(0, 0));
    hi = std::max(hi, m(0, 0));
  }
  EXPECT_GE(lo, -1e-9);
  EXPECT_LE(hi, 1 + 1e-9);
  EXPECT_LE(lo, 1e-6);
  EXPECT_GE(hi, 1 - 1e-6);
}

GTEST_TEST(IntersectTest, DisjointIntervalsAreInfeasible) {
  FactorContext ctx;
  const auto I = cmz_intersect(Interval(0, 1, ctx), Interval(5, 1, ctx), ctx);
  Rng rng(6);
  EXPECT_THROW(sample_cmz(I, 10, rng), InfeasibleError);
}

GTEST_TEST(IntersectTest, SelfIntersectionStaysInside) {
  FactorContext ctx;
  Rng rng(7);
  const auto N = test::random_feasible_cmz(2, 2, rng, ctx, true);
  const auto I = cmz_intersect(N, N, ctx);
  const auto s = sample_cmz(I, 100, rng);
  for (const auto& m : s.members) EXPECT_LE(cmz_membership(N, m).residual, 1e-8);
}

GTEST_TEST(IntersectTest, ShapeContract) {
  FactorContext ctx;
  Rng rng(8);
  const auto N1 = test::random_feasible_cmz(3, 4, rng, ctx, true);
  const auto N2 = test::random_feasible_cmz(3, 4, rng, ctx, true);
  const auto I = cmz_intersect(N1, N2, ctx);
  EXPECT_EQ(I.num_generators(), N1.num_generators() + N2.num_generators());
  EXPECT_EQ(I.constraint_rhs().rows(), N1.num_constraint_equations() + N2.num_constraint_equations() + 12);
  EXPECT_EQ(I.constraint_rhs().cols(), 1);
  for (auto id : I.ids()) EXPECT_GE(id.value, N2.ids().back().value + 1);
  EXPECT_THROW(cmz_intersect(N1, test::random_feasible_cmz(4, 3, rng, ctx, false), ctx), DimensionError);
}

GTEST_TEST(IntersectTest, SoundAndComplete) {
  FactorContext ctx;
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto N1 = test::random_feasible_cmz(2, 2, rng, ctx, rng.bernoulli(0.5));
    const MatrixXd shift = test::random_matrix(2, 2, rng, 0.3);
    std::vector<MatrixXd> G2;
    for (const auto& g : N1.generators()) G2.push_back(g + test::random_matrix(2, 2, rng, 0.2));
    const ConstrainedMatZonotope N2(N1.center() + shift, G2, {}, MatrixXd(0, 0), ctx.allocate(G2.size()));
    const auto I = cmz_intersect(N1, N2, ctx);
    std::optional<MatrixSamples<double>> inside;
    try {
      inside = sample_cmz(I, 50, rng);
    } catch (const InfeasibleError&) {
    }
    if (inside)
      for (const auto& m : inside->members) {
        EXPECT_LE(cmz_membership(N1, m).residual, 1e-8);
        EXPECT_LE(cmz_membership(N2, m).residual, 1e-8);
      }
    const auto from1 = sample_cmz(N1, 50, rng);
    for (const auto& m : from1.members)
      if (cmz_membership(N2, m).is_member) EXPECT_TRUE(cmz_membership(I, m).is_member);
  }
}

GTEST_TEST(MembershipTest, Examples) {
  FactorContext ctx;
  const auto N = Interval(0, 1, ctx);
  const auto c = cmz_membership(N, N.center(), 0.0);
  EXPECT_TRUE(c.is_member);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(c.witness->at(N.ids()[0]), 0.0);
  const auto out = cmz_membership(N, MatrixXd(MatrixXd::Constant(1, 1, 2.0)));
  EXPECT_FALSE(out.is_member);
  EXPECT_GE(out.residual, 1 - 1e-6);
  const auto edge = cmz_membership(N, MatrixXd(MatrixXd::Constant(1, 1, -1.0)));
  EXPECT_TRUE(edge.is_member);
  EXPECT_EQ(edge.witness->at(N.ids()[0]), -1.0);
  EXPECT_THROW(cmz_membership(N, MatrixXd(MatrixXd::Zero(2, 1))), DimensionError);
}

GTEST_TEST(MembershipTest, FindsConstructedWitnesses) {
  FactorContext ctx;
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto N = test::random_feasible_cmz(3, 3, rng, ctx, false);
    const VectorXd alpha = test::random_matrix(N.num_generators(), 1, rng);
    const MatrixXd M = evaluate_aligned(N, alpha).point;
    const auto r = cmz_membership(N, M);
    EXPECT_TRUE(r.is_member) << r.residual;
    EXPECT_LE((r.witness->aligned(N.ids()) - alpha).cwiseAbs().maxCoeff(), 1e-8);
  }
}

}  // namespace
}  // namespace cpzreach
