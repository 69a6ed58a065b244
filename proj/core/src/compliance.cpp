#include "bracekin/compliance.hpp"

#include <Eigen/Eigenvalues>

namespace bracekin {

namespace {

void check_unit_screw(const Vec6& beta, const char* who) {
  if (std::abs(beta.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": screw is not unit norm");
  }
}

void check_projector(const Mat6& P, const char* who) {
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-10 ||
      (P - P.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidProjectorError(std::string(who) + ": P is not a symmetric projector");
  }
}

}  // namespace

Mat6 chain_compliance(const MatX& J, const VecX& stiffnesses) {
  if (J.rows() != 6 || J.cols() != stiffnesses.size()) {
    throw DimensionError("chain_compliance: J and stiffness vector disagree");
  }
  for (int i = 0; i < stiffnesses.size(); ++i) {
    if (!(stiffnesses[i] > 0)) {
      throw std::invalid_argument("chain_compliance: stiffness must be positive");
    }
  }
  const Mat6 C = J * stiffnesses.cwiseInverse().asDiagonal() * J.transpose();
  // Symmetrize away round-off.
  return 0.5 * (C + C.transpose());
}

Mat6 bracing_consistent_compliance(const Mat6& C1, const Mat6& P) {
  check_projector(P, "bracing_consistent_compliance");
  const Mat6 IP = Mat6::Identity() - P;
  return IP * C1 * IP;
}

ComplianceSet compliance_matrices(const BracedRobot& robot, const JacobianSet& jac,
                                  const ConstraintSpec& spec,
                                  WrenchTransformVariant variant) {
  ComplianceSet cs;
  cs.C1 = chain_compliance(jac.J1, robot.chain1.stiffness_vector());
  cs.C2 = chain_compliance(jac.J2, robot.chain2.stiffness_vector());
  const Mat6 P = constraint_projection(spec);
  cs.C1_braced = bracing_consistent_compliance(cs.C1, P);
  cs.Ce = jac.shift.St1 * cs.C1_braced * jac.shift.Sw1 +
          jac.shift.St2 * cs.C2 * jac.shift.Sw2(variant);
  return cs;
}

ComplianceSet compliance_matrices(const BracedRobot& robot, const Configuration& cfg,
                                  const ConstraintSpec& spec,
                                  WrenchTransformVariant variant) {
  return compliance_matrices(robot, evaluate_jacobians(robot, cfg), spec, variant);
}

Mat6 end_effector_compliance(const BracedRobot& robot, const Configuration& cfg,
                             const ConstraintSpec& spec,
                             WrenchTransformVariant variant) {
  return compliance_matrices(robot, cfg, spec, variant).Ce;
}

double directional_compliance(const Mat6& Ce, const Vec6& beta_x,
                              const Vec6& beta_w) {
  check_unit_screw(beta_x, "directional_compliance");
  check_unit_screw(beta_w, "directional_compliance");
  return beta_x.dot(Ce * beta_w);
}

double compliance_index(const Mat6& Ce, const Vec6& beta_x,
                        double characteristic_length) {
  check_unit_screw(beta_x, "compliance_index");
  Vec6 row = Ce.transpose() * beta_x;
  if (characteristic_length > 0) {
    row.tail<3>() /= characteristic_length;
  }
  return row.norm();
}

}  // namespace bracekin
