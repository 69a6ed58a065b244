#include "bracekin/robot.hpp"

#include <Eigen/Geometry>
#include <string>

namespace bracekin {

namespace {

Frame joint_motion(const JointDescription& j, double q) {
  if (j.kind == JointKind::kRevolute) {
    return Frame{Eigen::AngleAxisd(q, j.axis).toRotationMatrix(), Vec3::Zero()};
  }
  return Frame{Mat3::Identity(), j.axis * q};
}

void check_dim(const SerialChain& chain, const VecX& q, const char* who) {
  if (q.size() != chain.dof()) {
    throw DimensionError(std::string(who) + ": configuration has " +
                         std::to_string(q.size()) + " entries for a " +
                         std::to_string(chain.dof()) + "-joint chain");
  }
}

}  // namespace

void SerialChain::validate() const {
  if (joints.empty()) throw DimensionError("SerialChain: chain has no joints");
  if (!is_special_orthogonal(base.rotation)) {
    throw InvalidRotationError("SerialChain: base rotation is not orthonormal");
  }
  for (size_t i = 0; i < joints.size(); ++i) {
    const auto& j = joints[i];
    if (std::abs(j.axis.norm() - 1.0) > 1e-10) {
      throw DimensionError("SerialChain: joint " + std::to_string(i) +
                           " axis is not unit length");
    }
    if (!(j.stiffness > 0)) {
      throw std::invalid_argument("SerialChain: joint " + std::to_string(i) +
                                  " stiffness must be positive");
    }
    if (!is_special_orthogonal(j.frame_offset.rotation)) {
      throw InvalidRotationError("SerialChain: joint " + std::to_string(i) +
                                 " offset rotation is not orthonormal");
    }
  }
}

VecX SerialChain::stiffness_vector() const {
  VecX k(dof());
  for (int i = 0; i < dof(); ++i) k[i] = joints[i].stiffness;
  return k;
}

void BracedRobot::validate() const {
  chain1.validate();
  chain2.validate();
  if (chain1.dof() != 6) {
    throw DimensionError("BracedRobot: chain1 must have exactly 6 joints, has " +
                         std::to_string(chain1.dof()));
  }
}

VecX BracedRobot::stiffness_vector() const {
  VecX k(chain1.dof() + chain2.dof());
  k << chain1.stiffness_vector(), chain2.stiffness_vector();
  return k;
}

Frame chain_fk(const SerialChain& chain, const VecX& q) {
  check_dim(chain, q, "chain_fk");
  Frame f = chain.base;
  for (int i = 0; i < chain.dof(); ++i) {
    f = f * joint_motion(chain.joints[i], q[i]) * chain.joints[i].frame_offset;
  }
  return f;
}

MatX chain_jacobian(const SerialChain& chain, const VecX& q,
                    const Vec3& reference_point) {
  check_dim(chain, q, "chain_jacobian");
  MatX J(6, chain.dof());
  Frame f = chain.base;
  for (int i = 0; i < chain.dof(); ++i) {
    const auto& joint = chain.joints[i];
    const Vec3 axis = f.rotation * joint.axis;
    if (joint.kind == JointKind::kRevolute) {
      J.col(i).head<3>() = axis.cross(reference_point - f.origin);
      J.col(i).tail<3>() = axis;
    } else {
      J.col(i).head<3>() = axis;
      J.col(i).tail<3>().setZero();
    }
    f = f * joint_motion(joint, q[i]) * joint.frame_offset;
  }
  return J;
}

std::pair<Frame, Frame> forward_kinematics(const BracedRobot& robot,
                                           const Configuration& cfg) {
  const Frame brace = chain_fk(robot.chain1, cfg.q1);
  const Frame ee_in_b = chain_fk(robot.chain2, cfg.q2);
  return {brace, brace * ee_in_b};
}

JacobianSet evaluate_jacobians(const BracedRobot& robot, const Configuration& cfg) {
  JacobianSet jac;
  jac.brace = chain_fk(robot.chain1, cfg.q1);
  const Frame ee_in_b = chain_fk(robot.chain2, cfg.q2);
  jac.ee = jac.brace * ee_in_b;
  jac.J1 = chain_jacobian(robot.chain1, cfg.q1, jac.brace.origin);
  jac.J2 = chain_jacobian(robot.chain2, cfg.q2, ee_in_b.origin);
  jac.shift = frame_shift_transforms(jac.brace.origin, jac.ee.origin,
                                     jac.brace.rotation);
  return jac;
}

MatX braced_task_jacobian(const JacobianSet& jac, const MatX& H) {
  if (H.rows() != 6 || H.cols() < 1) {
    throw DimensionError("braced_task_jacobian: H must be 6 x l with l >= 1");
  }
  MatX A(6, H.cols() + jac.J2.cols());
  A.leftCols(H.cols()) = jac.shift.St1 * H;
  A.rightCols(jac.J2.cols()) = jac.shift.St2 * jac.J2;
  return A;
}

MatX braced_task_jacobian(const BracedRobot& robot, const Configuration& cfg,
                          const MatX& H) {
  return braced_task_jacobian(evaluate_jacobians(robot, cfg), H);
}

MatX free_space_jacobian(const JacobianSet& jac) {
  MatX J(6, jac.J1.cols() + jac.J2.cols());
  J.leftCols(jac.J1.cols()) = jac.shift.St1 * jac.J1;
  J.rightCols(jac.J2.cols()) = jac.shift.St2 * jac.J2;
  return J;
}

MatX free_space_jacobian(const BracedRobot& robot, const Configuration& cfg) {
  return free_space_jacobian(evaluate_jacobians(robot, cfg));
}

MatX constrained_jacobian(const JacobianSet& jac, const Mat6& P) {
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidProjectorError("constrained_jacobian: P is not idempotent");
  }
  MatX J(6, jac.J1.cols() + jac.J2.cols());
  J.leftCols(jac.J1.cols()) = jac.shift.St1 * (Mat6::Identity() - P) * jac.J1;
  J.rightCols(jac.J2.cols()) = jac.shift.St2 * jac.J2;
  return J;
}

MatX constrained_jacobian(const BracedRobot& robot, const Configuration& cfg,
                          const Mat6& P) {
  return constrained_jacobian(evaluate_jacobians(robot, cfg), P);
}

}  // namespace bracekin
