#include "bracekin/bracing.hpp"

namespace bracekin {

void ConstraintSpec::validate() const {
  if (!is_special_orthogonal(tangent_frame.rotation)) {
    throw InvalidRotationError("ConstraintSpec: tangent frame rotation is not orthonormal");
  }
  if (!(r_max > 0)) {
    throw std::invalid_argument("ConstraintSpec: r_max must be positive");
  }
}

MatX allowable_twist_basis(const ConstraintSpec& spec) {
  if (spec.kind != ContactKind::kFrictionlessPoint) {
    throw std::invalid_argument("allowable_twist_basis: unsupported contact kind");
  }
  const Vec3 xt = spec.tangent_frame.rotation.col(0);
  const Vec3 yt = spec.tangent_frame.rotation.col(1);
  const Vec3 zt = spec.tangent_frame.rotation.col(2);
  MatX H = MatX::Zero(6, 5);
  H.block<3, 1>(0, 0) = xt;
  H.block<3, 1>(0, 1) = yt;
  H.block<3, 1>(3, 2) = xt;
  H.block<3, 1>(3, 3) = yt;
  H.block<3, 1>(3, 4) = zt;
  return H;
}

Mat6 constraint_projection(const ConstraintSpec& spec) {
  if (spec.kind != ContactKind::kFrictionlessPoint) {
    throw std::invalid_argument("constraint_projection: unsupported contact kind");
  }
  const Vec3 n = spec.tangent_frame.rotation.col(2);
  const double nn = n.squaredNorm();
  if (nn < 1e-20) throw std::invalid_argument("constraint_projection: zero normal");
  Mat6 P = Mat6::Zero();
  P.topLeftCorner<3, 3>() = n * n.transpose() / nn;
  return P;
}

double region_distance(const ConstraintSpec& spec, const Vec3& b_origin) {
  return (b_origin - spec.tangent_frame.origin).norm();
}

}  // namespace bracekin
