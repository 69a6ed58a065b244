#pragma once

#include <array>

#include "bracekin/compliance.hpp"

namespace bracekin {

enum class Strategy {
  kFreeSpaceMinNorm,
  kBracedMinNorm,
  kBracedGradientProjection,
};

struct ResolutionConfig {
  Strategy strategy = Strategy::kBracedGradientProjection;
  double alpha = -1.0;                               // step gain, must be < 0
  std::array<double, 4> weights{0.5, 100.0, 0.6, 0.01};  // alpha_1..alpha_4
  double fd_step = 1e-5;                             // rad
  Vec6 beta_x = Vec6::Unit(0);                       // unit deflection screw
  WrenchTransformVariant sw2_variant = WrenchTransformVariant::kDualityConsistent;
  double characteristic_length = 0.0;

  void validate() const;
};

struct ResolutionStep {
  VecX b_reduced_velocity;
  VecX q2_rates;
  VecX q1_rates;
  double g = 0, k = 0, Ci = 0, theta_z = 0, d = 0;
  double residual = 0;
};

/// Moore-Penrose pseudoinverse via SVD; singular values below
/// rel_cutoff * sigma_max are treated as zero.
MatX pseudoinverse(const MatX& M, double rel_cutoff = 1e-10);

/// Minimum-norm solution of A*x = rhs. If the residual exceeds the feasibility
/// tolerance the least-squares solution is still returned with feasible=false.
struct RateSolution {
  VecX rates;
  double residual = 0;
  bool feasible = false;
};

RateSolution min_norm_solve(const MatX& A, const Vec6& dx_e,
                            double feasibility_tol = 1e-9);

/// Minimum-norm solution plus the null-space step alpha*grad_g projected by
/// (I - A^+ A). The achieved task twist equals the minimum-norm one.
RateSolution gradient_projection_step(const MatX& A, const Vec6& dx_e,
                                      const VecX& grad_g, double alpha,
                                      double feasibility_tol = 1e-9);

/// q1_rates solving J1 * q1_rates = H * b_reduced_velocity. Throws
/// SingularityError when J1's reciprocal condition number drops below 1e-10.
VecX recover_q1_rates(const Mat6& J1, const MatX& H,
                      const VecX& b_reduced_velocity);

/// k = sqrt(Tr(J J^T) * Tr((J J^T)^-1) / 36); 1 at isotropy. Returns +inf
/// when J J^T is numerically singular.
double frobenius_condition_number(const MatX& J);

/// Angle between the bracing surface normal z_t and the brace frame's z_b.
double brace_alignment_angle(const ConstraintSpec& spec, const Frame& brace_frame);

/// Barrier d = r_max^2 / (r_max^2 - r^2); d(0) = 1, grows without bound as
/// r -> r_max. Throws BoundaryError when r >= r_max.
double region_penalty(const ConstraintSpec& spec, double r);

struct ObjectiveValue {
  double g = 0;
  double k = 0;        // Frobenius condition number of the free-space Jacobian
  double Ci = 0;       // compliance index along beta_x
  double theta_z = 0;  // brace alignment angle
  double d = 0;        // bracing-region barrier
};

ObjectiveValue objective(const BracedRobot& robot, const Configuration& cfg,
                         const ConstraintSpec& spec, const ResolutionConfig& rescfg);

/// Gradient of the objective with respect to [b_reduced; q2] per the chain
/// rule through the bracing constraint; the joint-space partials use central
/// finite differences of step rescfg.fd_step. When a stencil point falls
/// outside the bracing region the step is shrunk 10x, at most 3 times, before
/// a StencilError is thrown.
VecX objective_gradient(const BracedRobot& robot, const Configuration& cfg,
                        const ConstraintSpec& spec, const ResolutionConfig& rescfg);

/// One full redundancy-resolution step at the given configuration for the
/// braced strategies: solve over (b_reduced, q2), recover q1 rates.
ResolutionStep resolve_braced(const BracedRobot& robot, const Configuration& cfg,
                              const ConstraintSpec& spec,
                              const ResolutionConfig& rescfg, const Vec6& dx_e);

}  // namespace bracekin
