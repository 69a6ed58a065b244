// Shared fixtures for the unit tests: the example robot built in code (the
// same geometry as configs/puma_hebi.yaml), a default bracing constraint,
// and small random-sampling helpers.
#pragma once

#include <random>

#include "bracekin/bracing.hpp"
#include "bracekin/robot.hpp"

namespace testsup {

using namespace bracekin;

inline JointDescription rev(const Vec3& axis, const Vec3& link, double k = 170.0) {
  JointDescription j;
  j.kind = JointKind::kRevolute;
  j.axis = axis.normalized();
  j.frame_offset.origin = link;
  j.stiffness = k;
  return j;
}

inline JointDescription prism(const Vec3& axis, const Vec3& link, double k = 170.0) {
  JointDescription j = rev(axis, link, k);
  j.kind = JointKind::kPrismatic;
  return j;
}

/// PUMA-560-class 6R arm to the brace point, five serial wrist modules to
/// the end-effector. Mirrors the shipped robot config.
inline BracedRobot example_robot() {
  BracedRobot r;
  r.chain1.joints = {
      rev(Vec3::UnitZ(), {0.0, 0.0, 0.6604}),
      rev(Vec3::UnitY(), {0.4318, 0.0, 0.0}),
      rev(Vec3::UnitY(), {0.4331, 0.0, 0.1501}),
      rev(Vec3::UnitX(), {0.0, 0.0, 0.0}),
      rev(Vec3::UnitY(), {0.0, 0.0, 0.0}),
      rev(Vec3::UnitX(), {0.0563, 0.0, 0.0}),
  };
  r.chain2.joints = {
      rev(Vec3::UnitZ(), {0.09, 0.0, 0.0}),
      rev(Vec3::UnitY(), {0.09, 0.0, 0.0}),
      rev(Vec3::UnitZ(), {0.09, 0.0, 0.0}),
      rev(Vec3::UnitY(), {0.09, 0.0, 0.0}),
      rev(Vec3::UnitX(), {0.075, 0.0, 0.0}),
  };
  return r;
}

/// Nominal test pose: bent elbow, bent wrist chain, far from singularities.
inline Configuration nominal_configuration() {
  Configuration cfg;
  cfg.q1 = (VecX(6) << 0.0, 0.4, -0.8, 0.0, 0.4, 0.0).finished();
  cfg.q2 = (VecX(5) << 0.0, 1.2, 0.0, 1.0, 0.0).finished();
  return cfg;
}

inline ConstraintSpec example_constraint(double r_max = 0.30) {
  ConstraintSpec spec;
  spec.tangent_frame.origin = Vec3(0.794473961, 0.0, 0.799157499);
  spec.r_max = r_max;
  return spec;
}

inline VecX random_vector(std::mt19937& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Vec3 random_unit3(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  while (v.norm() < 1e-6) v = Vec3(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline Mat3 random_rotation(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const Vec3 axis = random_unit3(rng);
  return Eigen::AngleAxisd(u(rng), axis).toRotationMatrix();
}

/// Random configuration near the nominal pose (stays nonsingular).
inline Configuration random_configuration(std::mt19937& rng, double spread = 0.3) {
  Configuration cfg = nominal_configuration();
  cfg.q1 += random_vector(rng, 6, spread);
  cfg.q2 += random_vector(rng, 5, spread);
  return cfg;
}

/// Fully random configuration over a wide joint range (may pass near
/// singularities; use only with oracles that tolerate that).
inline Configuration wide_random_configuration(std::mt19937& rng) {
  Configuration cfg;
  cfg.q1 = random_vector(rng, 6, 2.0);
  cfg.q2 = random_vector(rng, 5, 2.0);
  return cfg;
}

}  // namespace testsup
