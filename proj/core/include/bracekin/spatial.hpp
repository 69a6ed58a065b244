#pragma once

#include <Eigen/Dense>

#include "bracekin/errors.hpp"

namespace bracekin {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Rigid-body frame: orientation and origin relative to some parent frame.
struct Frame {
  Mat3 rotation = Mat3::Identity();
  Vec3 origin = Vec3::Zero();

  Frame operator*(const Frame& other) const {
    return Frame{rotation * other.rotation, origin + rotation * other.origin};
  }
  Frame inverse() const {
    return Frame{rotation.transpose(), -(rotation.transpose() * origin)};
  }
  Vec3 apply(const Vec3& p) const { return origin + rotation * p; }
};

// All twists are stored linear-first (linear velocity, then angular); all
// wrenches force-first (force, then moment). This convention is used
// throughout and never permuted.
struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vec6 vector() const {
    Vec6 v;
    v << linear, angular;
    return v;
  }
  static Twist FromVector(const Vec6& v) { return Twist{v.head<3>(), v.tail<3>()}; }
};

struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();

  Vec6 vector() const {
    Vec6 v;
    v << force, moment;
    return v;
  }
  static Wrench FromVector(const Vec6& v) { return Wrench{v.head<3>(), v.tail<3>()}; }
};

Mat3 skew(const Vec3& a);

bool is_special_orthogonal(const Mat3& R, double tol = 1e-10);

/// Rotation from roll-pitch-yaw (extrinsic x-y-z, i.e. Rz*Ry*Rx).
Mat3 rotation_rpy(double roll, double pitch, double yaw);

/// Log map of a rotation matrix as a rotation vector (axis * angle).
Vec3 rotation_log(const Mat3& R);

enum class WrenchTransformVariant {
  kPaperVerbatim,      // moment-arm block in the second wrench transform
  kDualityConsistent,  // rotation-only second wrench transform (default)
};

/// The four 6x6 frame-shift transforms used to express brace-point twists
/// and end-effector wrenches at the end-effector in the world frame.
struct FrameShift {
  Mat6 St1;         // twist: brace point -> end-effector point, world-parallel
  Mat6 St2;         // twist: rotate chain-2 twist from {b} into {0}
  Mat6 Sw1;         // wrench: end-effector -> brace point, world-parallel
  Mat6 Sw2_paper;   // wrench: end-effector into {b}, with moment-arm block
  Mat6 Sw2_dual;    // wrench: rotation-only counterpart of St2

  const Mat6& Sw2(WrenchTransformVariant v) const {
    return v == WrenchTransformVariant::kPaperVerbatim ? Sw2_paper : Sw2_dual;
  }
};

/// Builds the frame-shift transforms for brace origin b, end-effector origin
/// e (both in world coordinates) and brace orientation R0b.
/// Throws InvalidRotationError if R0b is not special orthogonal.
FrameShift frame_shift_transforms(const Vec3& b_origin, const Vec3& e_origin,
                                  const Mat3& R0b);

}  // namespace bracekin
