#pragma once

#include <utility>
#include <vector>

#include "bracekin/spatial.hpp"

namespace bracekin {

enum class JointKind { kRevolute, kPrismatic };

struct JointDescription {
  JointKind kind = JointKind::kRevolute;
  Vec3 axis = Vec3::UnitZ();   // unit axis in the parent frame
  Frame frame_offset;          // fixed transform from this joint to the next
  double stiffness = 1.0;      // N*m/rad (revolute) or N/m (prismatic)
};

struct SerialChain {
  std::vector<JointDescription> joints;
  Frame base;  // pose of the first joint in the chain's reference coordinates

  int dof() const { return static_cast<int>(joints.size()); }
  /// Throws DimensionError / InvalidRotationError on malformed descriptions.
  void validate() const;
  VecX stiffness_vector() const;
};

/// A serial robot braced at the boundary between two kinematic chains:
/// chain1 runs from the world frame {0} to the brace frame {b}, chain2 from
/// {b} to the end-effector frame {e}. chain2.base is expressed in {b}.
struct BracedRobot {
  SerialChain chain1;
  SerialChain chain2;

  /// chain1 must have exactly 6 joints (its Jacobian is inverted when
  /// recovering chain-1 rates); chain2 must be non-empty.
  void validate() const;
  VecX stiffness_vector() const;  // chain1 then chain2
};

struct Configuration {
  VecX q1;
  VecX q2;
};

/// Pose of the chain tip in the coordinates chain.base is expressed in.
Frame chain_fk(const SerialChain& chain, const VecX& q);

/// Geometric Jacobian of a chain about reference_point (same coordinates as
/// chain.base). Column i is [axis x (p - o); axis] for a revolute joint and
/// [axis; 0] for a prismatic joint.
MatX chain_jacobian(const SerialChain& chain, const VecX& q,
                    const Vec3& reference_point);

/// Brace frame {b} and end-effector frame {e}, both in {0}.
std::pair<Frame, Frame> forward_kinematics(const BracedRobot& robot,
                                           const Configuration& cfg);

/// Everything the braced kinematics and compliance formulas need at one
/// configuration: J1 at b in {0}, J2 at e in {b} coordinates, both frames,
/// and the frame-shift transforms.
struct JacobianSet {
  MatX J1;
  MatX J2;
  Frame brace;
  Frame ee;
  FrameShift shift;
};

JacobianSet evaluate_jacobians(const BracedRobot& robot, const Configuration& cfg);

/// A = [St1*H, St2*J2]: task Jacobian of the virtual manipulator formed by
/// the constrained brace frame and the second chain.
MatX braced_task_jacobian(const BracedRobot& robot, const Configuration& cfg,
                          const MatX& H);
MatX braced_task_jacobian(const JacobianSet& jac, const MatX& H);

/// J = [St1*J1, St2*J2]: Jacobian of the full unconstrained robot at {e}.
MatX free_space_jacobian(const BracedRobot& robot, const Configuration& cfg);
MatX free_space_jacobian(const JacobianSet& jac);

/// Jt = [St1*(I-P)*J1, St2*J2]. Throws InvalidProjectorError unless P is
/// idempotent.
MatX constrained_jacobian(const BracedRobot& robot, const Configuration& cfg,
                          const Mat6& P);
MatX constrained_jacobian(const JacobianSet& jac, const Mat6& P);

}  // namespace bracekin
