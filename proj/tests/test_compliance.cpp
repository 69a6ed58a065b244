#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bracekin/compliance.hpp"
#include "support.hpp"

using namespace bracekin;
using testsup::example_constraint;
using testsup::example_robot;

namespace {

ConstraintSpec spec_with_normal(const Vec3& n) {
  ConstraintSpec spec;
  const Vec3 z = n.normalized();
  const Vec3 x = z.unitOrthogonal();
  spec.tangent_frame.rotation.col(0) = x;
  spec.tangent_frame.rotation.col(1) = z.cross(x);
  spec.tangent_frame.rotation.col(2) = z;
  spec.r_max = 0.3;
  return spec;
}

/// Free-space end-effector compliance of the whole robot: J K^-1 J^T of the
/// 11-joint Jacobian.
Mat6 full_chain_compliance(const BracedRobot& robot, const Configuration& cfg) {
  const MatX J = free_space_jacobian(robot, cfg);
  return chain_compliance(J, robot.stiffness_vector());
}

}  // namespace

TEST_CASE("chain_compliance: single revolute joint closed form") {
  SerialChain chain;
  const double L = 0.8, k = 25.0;
  chain.joints = {testsup::rev(Vec3::UnitZ(), {L, 0, 0}, k)};
  const MatX J = chain_jacobian(chain, VecX::Zero(1), Vec3(L, 0, 0));
  const Mat6 C = chain_compliance(J, chain.stiffness_vector());
  Vec6 v;
  v << 0, L, 0, 0, 0, 1;
  CHECK((C - (1.0 / k) * v * v.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("chain_compliance: rigid limit and stiffness linearity") {
  const BracedRobot robot = example_robot();
  const Configuration cfg = testsup::nominal_configuration();
  const auto [brace, ee] = forward_kinematics(robot, cfg);
  const MatX J1 = chain_jacobian(robot.chain1, cfg.q1, brace.origin);

  const Mat6 C = chain_compliance(J1, robot.chain1.stiffness_vector());
  const Mat6 Crigid = chain_compliance(J1, VecX::Constant(6, 1e12));
  CHECK(Crigid.cwiseAbs().maxCoeff() < 1e-10);

  const Mat6 Chalf = chain_compliance(J1, 2.0 * robot.chain1.stiffness_vector());
  CHECK((Chalf - 0.5 * C).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS(chain_compliance(J1, VecX::Constant(6, -1.0)));
  CHECK_THROWS(chain_compliance(J1, VecX::Constant(5, 1.0)));
}

TEST_CASE("chain_compliance is symmetric positive semidefinite") {
  const BracedRobot robot = example_robot();
  std::mt19937 rng(41);
  for (int i = 0; i < 30; ++i) {
    const Configuration cfg = testsup::wide_random_configuration(rng);
    const Mat6 C = full_chain_compliance(robot, cfg);
    CHECK((C - C.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat6> es(C);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("bracing_consistent_compliance: limits and structure") {
  const BracedRobot robot = example_robot();
  const Configuration cfg = testsup::nominal_configuration();
  const auto [brace, ee] = forward_kinematics(robot, cfg);
  const Mat6 C1 = chain_compliance(
      chain_jacobian(robot.chain1, cfg.q1, brace.origin),
      robot.chain1.stiffness_vector());

  CHECK((bracing_consistent_compliance(C1, Mat6::Zero()) - C1).norm() < 1e-14);
  CHECK(bracing_consistent_compliance(C1, Mat6::Identity()).norm() < 1e-14);

  // Normal along z: row 3 and column 3 of the braced compliance vanish.
  Mat6 P = Mat6::Zero();
  P(2, 2) = 1;
  const Mat6 Cb = bracing_consistent_compliance(C1, P);
  CHECK(Cb.row(2).norm() < 1e-14);
  CHECK(Cb.col(2).norm() < 1e-14);

  Mat6 bad = Mat6::Identity() * 0.7;
  CHECK_THROWS_AS(bracing_consistent_compliance(C1, bad), InvalidProjectorError);
}

TEST_CASE("bracing_consistent_compliance: PSD and annihilation over random normals") {
  const BracedRobot robot = example_robot();
  std::mt19937 rng(42);
  for (int i = 0; i < 100; ++i) {
    const Configuration cfg = testsup::random_configuration(rng);
    const auto [brace, ee] = forward_kinematics(robot, cfg);
    const Mat6 C1 = chain_compliance(
        chain_jacobian(robot.chain1, cfg.q1, brace.origin),
        robot.chain1.stiffness_vector());
    const ConstraintSpec spec = spec_with_normal(testsup::random_unit3(rng));
    const Mat6 P = constraint_projection(spec);
    const Mat6 Cb = bracing_consistent_compliance(C1, P);

    CHECK((Cb - Cb.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::SelfAdjointEigenSolver<Mat6> es(Cb);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    CHECK((P * Cb).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((Cb * P).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("end_effector_compliance reduces to the full-chain compliance when free") {
  // Unconstrained limit: assemble the two-chain sum with P = 0 by hand and
  // compare against the series compliance of all 11 joints.
  const BracedRobot robot = example_robot();
  std::mt19937 rng(43);
  for (int i = 0; i < 100; ++i) {
    const Configuration cfg = testsup::random_configuration(rng);
    const JacobianSet jac = evaluate_jacobians(robot, cfg);
    const Mat6 C1 = chain_compliance(jac.J1, robot.chain1.stiffness_vector());
    const Mat6 C2 = chain_compliance(jac.J2, robot.chain2.stiffness_vector());
    const Mat6 Ce = jac.shift.St1 * C1 * jac.shift.Sw1 +
                    jac.shift.St2 * C2 * jac.shift.Sw2_dual;
    const Mat6 Cfull = full_chain_compliance(robot, cfg);
    const double rel = (Ce - Cfull).norm() / Cfull.norm();
    CHECK(rel < 1e-10);
    CHECK((Ce - Ce.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("paper-verbatim wrench transform breaks the free-space symmetry") {
  // Recorded, not asserted, in the free case: with the moment-arm block the
  // assembled compliance is measurably asymmetric. Document the magnitude.
  const BracedRobot robot = example_robot();
  const Configuration cfg = testsup::nominal_configuration();
  const JacobianSet jac = evaluate_jacobians(robot, cfg);
  const Mat6 C1 = chain_compliance(jac.J1, robot.chain1.stiffness_vector());
  const Mat6 C2 = chain_compliance(jac.J2, robot.chain2.stiffness_vector());
  const Mat6 Ce = jac.shift.St1 * C1 * jac.shift.Sw1 +
                  jac.shift.St2 * C2 * jac.shift.Sw2_paper;
  const double asym = (Ce - Ce.transpose()).norm();
  MESSAGE("paper-verbatim asymmetry ||Ce - Ce^T|| = ", asym);
  CHECK(std::isfinite(asym));
}

TEST_CASE("bracing lowers the normal-direction compliance at the brace point") {
  const BracedRobot robot = example_robot();
  const ConstraintSpec spec = example_constraint();
  std::mt19937 rng(44);
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const Configuration cfg = testsup::random_configuration(rng, 0.2);
    const auto [brace, ee] = forward_kinematics(robot, cfg);
    const Mat6 C1 = chain_compliance(
        chain_jacobian(robot.chain1, cfg.q1, brace.origin),
        robot.chain1.stiffness_vector());
    const Mat6 P = constraint_projection(spec);
    const Mat6 Cb = bracing_consistent_compliance(C1, P);
    Vec6 beta = Vec6::Zero();
    beta.head<3>() = spec.tangent_frame.rotation.col(2);
    const double free_val = beta.dot(C1 * beta);
    const double braced_val = beta.dot(Cb * beta);
    if (braced_val > free_val + 1e-12) ++violations;
    CHECK(std::abs(braced_val) < 1e-12);  // the constrained direction is rigid
  }
  CHECK(violations == 0);
}

TEST_CASE("compliance_matrices bundles consistent pieces") {
  const BracedRobot robot = example_robot();
  const ConstraintSpec spec = example_constraint();
  const Configuration cfg = testsup::nominal_configuration();
  const ComplianceSet cs = compliance_matrices(robot, cfg, spec);
  const Mat6 P = constraint_projection(spec);
  CHECK((cs.C1_braced - bracing_consistent_compliance(cs.C1, P)).norm() < 1e-13);
  CHECK((cs.Ce - end_effector_compliance(robot, cfg, spec)).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat6> es(cs.C2);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("directional_compliance") {
  Mat6 Ce = Mat6::Identity();
  CHECK(directional_compliance(Ce, Vec6::Unit(0), Vec6::Unit(0)) == 1.0);
  CHECK(directional_compliance(Ce, Vec6::Unit(0), Vec6::Unit(1)) == 0.0);

  Mat6 D = Vec6(2, 3, 4, 5, 6, 7).asDiagonal();
  CHECK(directional_compliance(D, Vec6::Unit(1), Vec6::Unit(1)) == 3.0);

  CHECK_THROWS(directional_compliance(Ce, 2.0 * Vec6::Unit(0), Vec6::Unit(0)));
}

TEST_CASE("compliance_index") {
  CHECK(compliance_index(Mat6::Identity(), Vec6::Unit(3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(compliance_index(Mat6::Zero(), Vec6::Unit(0)) == 0.0);
  Mat6 D = Vec6(2, 3, 4, 5, 6, 7).asDiagonal();
  CHECK(compliance_index(D, Vec6::Unit(2)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS(compliance_index(Mat6::Identity(), 0.5 * Vec6::Unit(0)));

  // Ci is bounded by the largest singular value of Ce.
  std::mt19937 rng(45);
  for (int i = 0; i < 30; ++i) {
    MatX M = testsup::random_vector(rng, 36).reshaped(6, 6);
    Mat6 C = M * M.transpose();
    Eigen::JacobiSVD<Mat6> svd(C);
    Vec6 beta = testsup::random_vector(rng, 6);
    beta.normalize();
    CHECK(compliance_index(C, beta) <= svd.singularValues()(0) + 1e-12);
  }

  // Characteristic-length scaling shrinks the moment contribution.
  Mat6 C = Mat6::Identity();
  Vec6 beta = Vec6::Unit(0);
  CHECK(compliance_index(C, beta, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  Mat6 Cm = Mat6::Zero();
  Cm(0, 5) = 1.0;  // deflection along x from a pure moment
  CHECK(compliance_index(Cm, beta, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
}
