#pragma once

#include "bracekin/spatial.hpp"

namespace bracekin {

enum class ContactKind { kFrictionlessPoint };

/// Contact model at the brace point. The tangent frame {t} sits on the
/// bracing surface with z_t along the surface normal; r_max bounds the
/// allowable bracing region (a circle on the surface around {t}).
struct ConstraintSpec {
  Frame tangent_frame;
  ContactKind kind = ContactKind::kFrictionlessPoint;
  double r_max = 0.0;

  void validate() const;
};

/// Reduced brace velocity expressed in the columns of H.
struct BraceState {
  VecX b_reduced_velocity;
};

/// 6x5 basis of the twists a frictionless point contact allows: translation
/// along x_t, y_t and rotation about all three tangent-frame axes, columns
/// expressed in {0}.
MatX allowable_twist_basis(const ConstraintSpec& spec);

/// Rank-1 projector onto the forbidden direction (translation along the
/// surface normal): P = X (X^T X)^-1 X^T with X = [n; 0].
Mat6 constraint_projection(const ConstraintSpec& spec);

/// Distance of the brace origin from the tangent-frame origin.
double region_distance(const ConstraintSpec& spec, const Vec3& b_origin);

}  // namespace bracekin
