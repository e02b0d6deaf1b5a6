#include <gtest/gtest.h>

#include "cpzreach/cpzreach.hpp"
#include "oracles.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace cpzreach {
namespace {

FactorIds Ids(std::initializer_list<std::uint64_t> v) {
  FactorIds out;
  for (auto x : v) out.push_back(FactorId{x});
  return out;
}

// Same set with the right-hand side moved so that `v` satisfies the constraints.
ConstrainedPolyMatZonotope FeasibleAt(const ConstrainedPolyMatZonotope& Y, const test::Values& v) {
  if (!Y.has_constraints()) return Y;
  MatrixXd B = MatrixXd::Zero(Y.constraint_rhs().rows(), Y.constraint_rhs().cols());
  for (Index j = 0; j < Y.num_constraint_blocks(); ++j)
    B += test::monomial(Y.constraint_exponents(), j, Y.ids(), v) * Y.constraint_blocks()[static_cast<std::size_t>(j)];
  return ConstrainedPolyMatZonotope(Y.center(), Y.generators(), Y.exponents(), Y.constraint_blocks(), B,
                                    Y.constraint_exponents(), Y.ids());
}

ConstrainedPolyZonotope FeasibleAt(const ConstrainedPolyZonotope& P, const test::Values& v) {
  if (!P.has_constraints()) return P;
  VectorXd b = VectorXd::Zero(P.num_constraints());
  for (Index j = 0; j < P.num_constraint_terms(); ++j)
    b += test::monomial(P.constraint_exponents(), j, P.ids(), v) * P.constraint_matrix().col(j);
  return ConstrainedPolyZonotope(P.center(), P.generators(), P.exponents(), P.constraint_matrix(), b,
                                 P.constraint_exponents(), P.ids());
}

GTEST_TEST(ExactMultiplyTest, IdentityReproducesP) {
  Rng rng(1);
  std::uint64_t fresh = 100;
  const ConstrainedPolyMatZonotope I(MatrixXd::Identity(3, 3), {}, ExponentMatrix(0, 0), {}, MatrixXd(0, 0),
                                     ExponentMatrix(0, 0), {});
  for (int trial = 0; trial < 20; ++trial) {
    const auto P = test::random_cpz(3, rng, 6, fresh, trial % 2 == 1);
    const auto Q = exact_multiply(I, P);
    EXPECT_EQ(Q.num_generators(), P.num_generators());
    EXPECT_EQ(Q.ids(), P.ids());
    EXPECT_EQ(Q.generators(), P.generators());
    for (int s = 0; s < 20; ++s) {
      const auto a = test::to_assignment(test::random_values(test::id_values(P.ids()), rng));
      EXPECT_EQ(evaluate(Q, a).point, evaluate(P, a).point);
      EXPECT_EQ(evaluate(Q, a).constraint_residual, evaluate(P, a).constraint_residual);
    }
  }
}

GTEST_TEST(ExactMultiplyTest, ScalarExample) {
  const ConstrainedPolyMatZonotope Y(MatrixXd::Constant(1, 1, 2.0), {MatrixXd::Constant(1, 1, 1.0)},
                                     ExponentMatrix::Ones(1, 1), {}, MatrixXd(0, 0), ExponentMatrix(1, 0), Ids({1}));
  const ConstrainedPolyZonotope P(VectorXd::Zero(1), MatrixXd::Ones(1, 1), ExponentMatrix::Ones(1, 1), Ids({2}));
  const auto Q = exact_multiply(Y, P);
  EXPECT_EQ(Q.center(), VectorXd::Zero(1));
  EXPECT_EQ(Q.generators(), (MatrixXd(1, 3) << 0, 2, 1).finished());
  EXPECT_EQ(Q.exponents(), (ExponentMatrix(2, 3) << 1, 0, 1, 0, 1, 1).finished());
  EXPECT_EQ(Q.ids(), Ids({1, 2}));
  EXPECT_FALSE(Q.has_constraints());
  const auto e = evaluate_aligned(Q, VectorXd(VectorXd::Ones(2)));
  EXPECT_EQ(e.point(0), 3.0);
}

GTEST_TEST(ExactMultiplyTest, EvaluationHomomorphism) {
  Rng rng(2);
  std::uint64_t fresh = 100;
  for (int trial = 0; trial < 100; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng.index(3)), n = 1 + static_cast<Index>(rng.index(3));
    const auto Y = test::random_cpmz(rows, n, rng, 5, fresh, rng.bernoulli(0.5));
    const auto P = test::random_cpz(n, rng, 5, fresh, rng.bernoulli(0.5));
    const auto Q = exact_multiply(Y, P);
    ASSERT_EQ(test::id_values(Q.ids()), test::union_ids(Y.ids(), P.ids()));
    for (int s = 0; s < 100; ++s) {
      const auto v = test::random_values(test::union_ids(Y.ids(), P.ids()), rng);
      const auto y = test::naive_eval(Y, v);
      const auto p = test::naive_eval(P, v);
      const auto q = evaluate(Q, test::to_assignment(v));
      ASSERT_LE((q.point - y.value * p.point).cwiseAbs().maxCoeff(), 1e-9);
      ASSERT_NEAR(q.constraint_residual, std::max(y.residual, p.residual), 1e-12);
    }
  }
}

GTEST_TEST(ExactMultiplyTest, ConstraintEquivalence) {
  Rng rng(3);
  std::uint64_t fresh = 100;
  const double eps = 1e-9;
  for (int trial = 0; trial < 50; ++trial) {
    const auto Y0 = test::random_cpmz(2, 2, rng, 4, fresh, true);
    const auto P0 = test::random_cpz(2, rng, 4, fresh, true);
    const auto ids = test::union_ids(Y0.ids(), P0.ids());
    const auto star = test::random_values(ids, rng);
    const auto Y = FeasibleAt(Y0, star);
    const auto P = FeasibleAt(P0, star);
    const auto Q = exact_multiply(Y, P);
    EXPECT_LE(evaluate(Q, test::to_assignment(star)).constraint_residual, 1e-12);
    for (int s = 0; s < 50; ++s) {
      auto v = test::random_values(ids, rng);
      // Half the draws stay near the feasible point so both outcomes occur.
      if (s % 2 == 0)
        for (auto& [id, x] : v) x = star.at(id) + 1e-12 * x;
      const auto a = test::to_assignment(v);
      const bool both = evaluate(Y, a).constraint_residual <= eps && evaluate(P, a).constraint_residual <= eps;
      EXPECT_EQ(evaluate(Q, a).constraint_residual <= eps, both);
    }
  }
}

GTEST_TEST(ExactMultiplyTest, ShapeContract) {
  Rng rng(4);
  std::uint64_t fresh = 100;
  for (int trial = 0; trial < 50; ++trial) {
    const auto Y = test::random_cpmz(2, 3, rng, 4, fresh, rng.bernoulli(0.5));
    const auto P = test::random_cpz(3, rng, 4, fresh, rng.bernoulli(0.5));
    const auto Q = exact_multiply(Y, P);
    const Index g = Y.num_generators(), h = P.num_generators();
    EXPECT_EQ(Q.num_generators(), g + h + g * h);
    if (Q.has_constraints()) {
      EXPECT_EQ(Q.num_constraint_terms(), Y.num_constraint_blocks() + P.num_constraint_terms());
      EXPECT_EQ(Q.num_constraints(), Y.constraint_rhs().size() + P.num_constraints());
    }
  }
  FactorContext ctx;
  const auto N = test::random_feasible_cmz(2, 3, rng, ctx, true);
  const auto P = test::random_cpz(3, rng, 4, fresh, true);
  const auto Q = exact_multiply(cmz_to_cpmz(N), P);
  EXPECT_EQ(Q.num_constraint_terms(), P.num_constraint_terms() + N.num_generators());
}

GTEST_TEST(ExactMultiplyTest, KeepsDegreeOneConstraints) {
  Rng rng(5);
  FactorContext ctx;
  for (int trial = 0; trial < 20; ++trial) {
    const auto N = test::random_feasible_cmz(2, 2, rng, ctx, true);
    const Index p = 2;
    const FactorIds ids = ctx.allocate(p);
    const ConstrainedPolyZonotope P(VectorXd::Zero(2), test::random_matrix(2, 3, rng), test::random_exponents(p, 3, rng, 2),
                                    test::random_matrix(1, 2, rng), VectorXd::Zero(1), test::basis_exponents(p, 2, rng),
                                    ids);
    const auto Q = exact_multiply(cmz_to_cpmz(N), P);
    const auto& R = Q.constraint_exponents();
    for (Index j = 0; j < R.cols(); ++j) {
      EXPECT_EQ(R.col(j).sum(), 1);
      EXPECT_EQ(R.col(j).maxCoeff(), 1);
    }
  }
}

GTEST_TEST(ExactMultiplyTest, EmptyGeneratorBlocks) {
  Rng rng(6);
  const MatrixXd C = test::random_matrix(2, 2, rng);
  const ConstrainedPolyMatZonotope point(C, {}, ExponentMatrix(0, 0), {}, MatrixXd(0, 0), ExponentMatrix(0, 0), {});
  const ConstrainedPolyZonotope P(VectorXd::Ones(2), test::random_matrix(2, 2, rng), ExponentMatrix::Identity(2, 2),
                                  Ids({7, 8}));
  const auto Q1 = exact_multiply(point, P);
  EXPECT_EQ(Q1.num_generators(), 2);
  EXPECT_EQ(Q1.generators(), C * P.generators());

  const ConstrainedPolyMatZonotope Y(C, {MatrixXd::Identity(2, 2)}, ExponentMatrix::Ones(1, 1), {}, MatrixXd(0, 0),
                                     ExponentMatrix(1, 0), Ids({3}));
  const auto Q2 = exact_multiply(Y, ConstrainedPolyZonotope::point(VectorXd::Ones(2)));
  EXPECT_EQ(Q2.num_generators(), 1);
  EXPECT_EQ(Q2.generators().col(0), VectorXd::Ones(2));
  EXPECT_EQ(Q2.center(), C * VectorXd::Ones(2));
  EXPECT_EQ(Q2.ids(), Ids({3}));
}

GTEST_TEST(ExactMultiplyTest, DimensionMismatchThrows) {
  Rng rng(7);
  std::uint64_t fresh = 10;
  const auto Y = test::random_cpmz(2, 3, rng, 4, fresh, false);
  const auto P = test::random_cpz(2, rng, 4, fresh, false);
  EXPECT_THROW(exact_multiply(Y, P), DimensionError);
}

GTEST_TEST(MergeIdsTest, MixedSets) {
  Rng rng(8);
  std::uint64_t fresh = 100;
  for (int trial = 0; trial < 50; ++trial) {
    const auto Y = test::random_cpmz(2, 2, rng, 4, fresh, rng.bernoulli(0.5));
    const auto P = test::random_cpz(2, rng, 4, fresh, rng.bernoulli(0.5));
    const auto m = merge_ids(Y, P);
    ASSERT_EQ(test::id_values(m.ids), test::union_ids(Y.ids(), P.ids()));
    EXPECT_EQ(m.Y.ids(), m.ids);
    EXPECT_EQ(m.P.ids(), m.ids);
    const auto p = static_cast<Index>(Y.ids().size());
    EXPECT_EQ(m.Y.exponents().topRows(p), Y.exponents());
    EXPECT_TRUE((m.Y.exponents().bottomRows(m.Y.exponents().rows() - p).array() == 0).all());
    for (int s = 0; s < 20; ++s) {
      const auto a = test::to_assignment(test::random_values(test::id_values(m.ids), rng));
      EXPECT_EQ(evaluate(m.Y, a).point, evaluate(Y, a).point);
      EXPECT_LE((evaluate(m.P, a).point - evaluate(P, a).point).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(evaluate(m.P, a).constraint_residual, evaluate(P, a).constraint_residual, 1e-12);
    }
  }
}

}  // namespace
}  // namespace cpzreach
