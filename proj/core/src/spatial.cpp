#include "bracekin/spatial.hpp"

#include <Eigen/Geometry>

namespace bracekin {

Mat3 skew(const Vec3& a) {
  Mat3 m;
  m <<     0, -a.z(),  a.y(),
       a.z(),      0, -a.x(),
      -a.y(),  a.x(),      0;
  return m;
}

bool is_special_orthogonal(const Mat3& R, double tol) {
  if ((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 rotation_rpy(double roll, double pitch, double yaw) {
  return (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
          Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
          Eigen::AngleAxisd(roll, Vec3::UnitX()))
      .toRotationMatrix();
}

Vec3 rotation_log(const Mat3& R) {
  Eigen::AngleAxisd aa(R);
  return aa.angle() * aa.axis();
}

FrameShift frame_shift_transforms(const Vec3& b_origin, const Vec3& e_origin,
                                  const Mat3& R0b) {
  if (!is_special_orthogonal(R0b)) {
    throw InvalidRotationError("frame_shift_transforms: R0b is not a rotation matrix");
  }
  const Mat3 I = Mat3::Identity();
  const Mat3 Rb0 = R0b.transpose();
  const Mat3 arm_be = skew(b_origin - e_origin);

  FrameShift s;
  s.St1.setIdentity();
  s.St1.topRightCorner<3, 3>() = arm_be;

  s.St2.setZero();
  s.St2.topLeftCorner<3, 3>() = R0b;
  s.St2.bottomRightCorner<3, 3>() = R0b;

  s.Sw1.setIdentity();
  s.Sw1.bottomLeftCorner<3, 3>() = skew(e_origin - b_origin);

  s.Sw2_paper.setZero();
  s.Sw2_paper.topLeftCorner<3, 3>() = Rb0;
  s.Sw2_paper.bottomLeftCorner<3, 3>() = Rb0 * arm_be;
  s.Sw2_paper.bottomRightCorner<3, 3>() = Rb0;

  s.Sw2_dual.setZero();
  s.Sw2_dual.topLeftCorner<3, 3>() = Rb0;
  s.Sw2_dual.bottomRightCorner<3, 3>() = Rb0;

  (void)I;
  return s;
}

}  // namespace bracekin
