#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bracekin/bracing.hpp"
#include "support.hpp"

using namespace bracekin;

namespace {

ConstraintSpec spec_with_normal(const Vec3& n) {
  ConstraintSpec spec;
  // Build a tangent frame whose z axis is n.
  const Vec3 z = n.normalized();
  const Vec3 x = z.unitOrthogonal();
  const Vec3 y = z.cross(x);
  spec.tangent_frame.rotation.col(0) = x;
  spec.tangent_frame.rotation.col(1) = y;
  spec.tangent_frame.rotation.col(2) = z;
  spec.r_max = 0.3;
  return spec;
}

Vec6 constraint_direction(const ConstraintSpec& spec) {
  Vec6 X = Vec6::Zero();
  X.head<3>() = spec.tangent_frame.rotation.col(2);
  return X;
}

}  // namespace

TEST_CASE("allowable_twist_basis: identity tangent frame picks columns of I6") {
  ConstraintSpec spec;
  spec.r_max = 0.3;
  const MatX H = allowable_twist_basis(spec);
  REQUIRE(H.rows() == 6);
  REQUIRE(H.cols() == 5);
  MatX expected(6, 5);
  expected.setZero();
  expected(0, 0) = 1;  // translate along x_t
  expected(1, 1) = 1;  // translate along y_t
  expected(3, 2) = 1;  // rotate about x_t
  expected(4, 3) = 1;  // rotate about y_t
  expected(5, 4) = 1;  // rotate about z_t
  CHECK((H - expected).norm() == 0.0);
}

TEST_CASE("allowable_twist_basis: unit columns and full rank for any frame") {
  std::mt19937 rng(31);
  for (int i = 0; i < 50; ++i) {
    ConstraintSpec spec;
    spec.tangent_frame.rotation = testsup::random_rotation(rng);
    spec.r_max = 0.3;
    const MatX H = allowable_twist_basis(spec);
    for (int c = 0; c < 5; ++c) CHECK(H.col(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::JacobiSVD<MatX> svd(H);
    CHECK(svd.singularValues()(4) > 1e-10);
  }
}

TEST_CASE("allowable_twist_basis: tangent frame rotated 90 degrees about x") {
  ConstraintSpec spec;
  spec.tangent_frame.rotation = rotation_rpy(M_PI / 2, 0, 0);
  spec.r_max = 0.3;
  const MatX H = allowable_twist_basis(spec);
  // x_t = x, y_t = z, z_t = -y.
  CHECK((H.col(0).head<3>() - Vec3::UnitX()).norm() < 1e-14);
  CHECK((H.col(1).head<3>() - Vec3::UnitZ()).norm() < 1e-14);
  CHECK((H.col(2).tail<3>() - Vec3::UnitX()).norm() < 1e-14);
  CHECK((H.col(3).tail<3>() - Vec3::UnitZ()).norm() < 1e-14);
  CHECK((H.col(4).tail<3>() + Vec3::UnitY()).norm() < 1e-14);
}

TEST_CASE("constraint_projection: axis-aligned normal") {
  ConstraintSpec spec;
  spec.r_max = 0.3;
  const Mat6 P = constraint_projection(spec);
  Mat6 expected = Mat6::Zero();
  expected(2, 2) = 1;
  CHECK((P - expected).norm() < 1e-14);
}

TEST_CASE("constraint_projection: oblique normal") {
  const ConstraintSpec spec = spec_with_normal(Vec3(1, 1, 1));
  const Mat6 P = constraint_projection(spec);
  CHECK((P * P - P).norm() < 1e-13);
  CHECK((P - P.transpose()).norm() < 1e-13);
  CHECK((P.topLeftCorner<3, 3>() - Mat3::Constant(1.0 / 3.0)).norm() < 1e-13);
  CHECK(P.bottomRightCorner<3, 3>().norm() == 0.0);
  CHECK(P.topRightCorner<3, 3>().norm() == 0.0);
}

TEST_CASE("projector / basis complementarity over random normals") {
  std::mt19937 rng(32);
  for (int i = 0; i < 100; ++i) {
    const ConstraintSpec spec = spec_with_normal(testsup::random_unit3(rng));
    const Mat6 P = constraint_projection(spec);
    const MatX H = allowable_twist_basis(spec);
    const Vec6 X = constraint_direction(spec);

    CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((P - P.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((X.transpose() * H).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(((Mat6::Identity() - P) * H - H).cwiseAbs().maxCoeff() < 1e-13);

    // P annihilates any twist with no normal translation.
    Vec6 t = testsup::random_vector(rng, 6);
    t.head<3>() -= X.head<3>() * X.head<3>().dot(t.head<3>());
    CHECK((P * t).norm() < 1e-12);
  }
}

TEST_CASE("region_distance") {
  ConstraintSpec spec;
  spec.tangent_frame.origin = Vec3(1, 2, 3);
  spec.r_max = 10;
  CHECK(region_distance(spec, Vec3(1, 2, 3)) == 0.0);
  CHECK(region_distance(spec, Vec3(4, 6, 3)) == doctest::Approx(5.0).epsilon(1e-14));

  std::mt19937 rng(33);
  for (int i = 0; i < 20; ++i) {
    const Vec3 b = testsup::random_vector(rng, 3, 5.0);
    const double r = region_distance(spec, b);
    CHECK(r >= 0.0);
    const Mat3 R = testsup::random_rotation(rng);
    ConstraintSpec rotated = spec;
    rotated.tangent_frame.origin = R * spec.tangent_frame.origin;
    CHECK(region_distance(rotated, R * b) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("constraint spec validation") {
  ConstraintSpec spec;
  spec.r_max = 0.0;
  CHECK_THROWS(spec.validate());
  spec.r_max = 0.3;
  CHECK_NOTHROW(spec.validate());
  spec.tangent_frame.rotation(0, 0) = 3.0;
  CHECK_THROWS(spec.validate());
}
