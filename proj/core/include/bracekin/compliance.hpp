#pragma once

#include <optional>

#include "bracekin/bracing.hpp"
#include "bracekin/robot.hpp"

namespace bracekin {

/// All 6x6 compliance matrices at one configuration. Units are SI and mixed
/// per block: the 6x6 maps (force, moment) to (translation, rotation), so
/// blocks carry m/N, m/(N*m), rad/N and rad/(N*m) respectively.
struct ComplianceSet {
  Mat6 C1;         // chain 1 at the brace point, unconstrained
  Mat6 C1_braced;  // chain 1 restricted to bracing-consistent deflections
  Mat6 C2;         // chain 2 at the end-effector, in {b} coordinates
  Mat6 Ce;         // end-effector compliance under the bracing constraint
};

struct TaskDirections {
  Vec6 beta_x;                   // unit deflection screw of interest
  std::optional<Vec6> beta_w;    // unit wrench screw, when known
};

/// C = J * diag(1/k) * J^T. Throws std::invalid_argument on nonpositive
/// stiffness or dimension mismatch.
Mat6 chain_compliance(const MatX& J, const VecX& stiffnesses);

/// C1_braced = (I - P) * C1 * (I - P). Throws InvalidProjectorError unless P
/// is symmetric idempotent.
Mat6 bracing_consistent_compliance(const Mat6& C1, const Mat6& P);

/// Builds every compliance matrix at the given configuration.
ComplianceSet compliance_matrices(
    const BracedRobot& robot, const Configuration& cfg,
    const ConstraintSpec& spec,
    WrenchTransformVariant variant = WrenchTransformVariant::kDualityConsistent);
ComplianceSet compliance_matrices(
    const BracedRobot& robot, const JacobianSet& jac, const ConstraintSpec& spec,
    WrenchTransformVariant variant = WrenchTransformVariant::kDualityConsistent);

Mat6 end_effector_compliance(
    const BracedRobot& robot, const Configuration& cfg,
    const ConstraintSpec& spec,
    WrenchTransformVariant variant = WrenchTransformVariant::kDualityConsistent);

/// beta_x^T * Ce * beta_w. Both screws must be unit norm (1e-10).
double directional_compliance(const Mat6& Ce, const Vec6& beta_x,
                              const Vec6& beta_w);

/// ||beta_x^T * Ce||. When characteristic_length > 0 the moment columns of
/// the row vector are scaled by 1/characteristic_length before taking the
/// norm; the default (0) keeps the raw mixed-unit norm.
double compliance_index(const Mat6& Ce, const Vec6& beta_x,
                        double characteristic_length = 0.0);

}  // namespace bracekin
