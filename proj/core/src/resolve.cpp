#include "bracekin/resolve.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace bracekin {

void ResolutionConfig::validate() const {
  if (!(alpha < 0)) throw std::invalid_argument("ResolutionConfig: alpha must be < 0");
  if (!(fd_step > 0)) throw std::invalid_argument("ResolutionConfig: fd_step must be > 0");
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("ResolutionConfig: weights must be nonnegative");
  }
  if (std::abs(beta_x.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("ResolutionConfig: beta_x is not unit norm");
  }
}

MatX pseudoinverse(const MatX& M, double rel_cutoff) {
  Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VecX& sigma = svd.singularValues();
  const double cutoff = sigma.size() ? rel_cutoff * sigma[0] : 0.0;
  VecX inv = VecX::Zero(sigma.size());
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) inv[i] = 1.0 / sigma[i];
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

RateSolution min_norm_solve(const MatX& A, const Vec6& dx_e, double feasibility_tol) {
  RateSolution sol;
  sol.rates = pseudoinverse(A) * dx_e;
  sol.residual = (A * sol.rates - dx_e).norm();
  sol.feasible = sol.residual <= feasibility_tol * std::max(1.0, dx_e.norm());
  return sol;
}

RateSolution gradient_projection_step(const MatX& A, const Vec6& dx_e,
                                      const VecX& grad_g, double alpha,
                                      double feasibility_tol) {
  if (grad_g.size() != A.cols()) {
    throw DimensionError("gradient_projection_step: gradient length mismatch");
  }
  const MatX Ap = pseudoinverse(A);
  RateSolution sol;
  const VecX min_norm = Ap * dx_e;
  sol.rates = min_norm +
              (alpha * grad_g - Ap * (A * (alpha * grad_g)));
  sol.residual = (A * sol.rates - dx_e).norm();
  sol.feasible = sol.residual <= feasibility_tol * std::max(1.0, dx_e.norm());
  return sol;
}

VecX recover_q1_rates(const Mat6& J1, const MatX& H, const VecX& b_reduced_velocity) {
  if (H.rows() != 6 || H.cols() != b_reduced_velocity.size()) {
    throw DimensionError("recover_q1_rates: H and reduced velocity disagree");
  }
  Eigen::JacobiSVD<MatX> svd(J1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VecX& sigma = svd.singularValues();
  const double rcond = sigma[5] / sigma[0];
  if (!(rcond >= 1e-10)) {
    throw SingularityError("recover_q1_rates: chain-1 Jacobian is singular", rcond);
  }
  return svd.solve(H * b_reduced_velocity);
}

double frobenius_condition_number(const MatX& J) {
  Eigen::JacobiSVD<MatX> svd(J);
  const VecX& sigma = svd.singularValues();
  const double sigma_max = sigma[0];
  if (sigma_max <= 0 || sigma.minCoeff() <= 1e-14 * sigma_max) {
    return std::numeric_limits<double>::infinity();
  }
  double tr = 0, tr_inv = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    tr += sigma[i] * sigma[i];
    tr_inv += 1.0 / (sigma[i] * sigma[i]);
  }
  return std::sqrt(tr * tr_inv / 36.0);
}

double brace_alignment_angle(const ConstraintSpec& spec, const Frame& brace_frame) {
  const double c = spec.tangent_frame.rotation.col(2).dot(brace_frame.rotation.col(2));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double region_penalty(const ConstraintSpec& spec, double r) {
  if (r >= spec.r_max) {
    throw BoundaryError("region_penalty: brace point at or beyond r_max", r, spec.r_max);
  }
  const double rm2 = spec.r_max * spec.r_max;
  return rm2 / (rm2 - r * r);
}

ObjectiveValue objective(const BracedRobot& robot, const Configuration& cfg,
                         const ConstraintSpec& spec, const ResolutionConfig& rescfg) {
  const JacobianSet jac = evaluate_jacobians(robot, cfg);
  ObjectiveValue v;
  v.k = frobenius_condition_number(free_space_jacobian(jac));
  const ComplianceSet cs = compliance_matrices(robot, jac, spec, rescfg.sw2_variant);
  v.Ci = compliance_index(cs.Ce, rescfg.beta_x, rescfg.characteristic_length);
  v.theta_z = brace_alignment_angle(spec, jac.brace);
  v.d = region_penalty(spec, region_distance(spec, jac.brace.origin));
  v.g = rescfg.weights[0] * v.k + rescfg.weights[1] * v.Ci +
        rescfg.weights[2] * v.theta_z + rescfg.weights[3] * v.d;
  return v;
}

namespace {

double objective_value(const BracedRobot& robot, const Configuration& cfg,
                       const ConstraintSpec& spec, const ResolutionConfig& rescfg) {
  return objective(robot, cfg, spec, rescfg).g;
}

// Central difference in one joint coordinate, shrinking the step 10x (up to
// 3 times) when a stencil point leaves the bracing region.
double central_difference(const BracedRobot& robot, const Configuration& cfg,
                          const ConstraintSpec& spec, const ResolutionConfig& rescfg,
                          bool first_chain, int idx) {
  double h = rescfg.fd_step;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      Configuration plus = cfg, minus = cfg;
      if (first_chain) {
        plus.q1[idx] += h;
        minus.q1[idx] -= h;
      } else {
        plus.q2[idx] += h;
        minus.q2[idx] -= h;
      }
      const double gp = objective_value(robot, plus, spec, rescfg);
      const double gm = objective_value(robot, minus, spec, rescfg);
      return (gp - gm) / (2.0 * h);
    } catch (const BoundaryError&) {
      h *= 0.1;
    }
  }
  throw StencilError("objective_gradient: stencil leaves the bracing region even after shrinking the step");
}

}  // namespace

VecX objective_gradient(const BracedRobot& robot, const Configuration& cfg,
                        const ConstraintSpec& spec, const ResolutionConfig& rescfg) {
  const JacobianSet jac = evaluate_jacobians(robot, cfg);
  const MatX H = allowable_twist_basis(spec);
  const int n1 = static_cast<int>(jac.J1.cols());
  const int n2 = static_cast<int>(jac.J2.cols());

  Eigen::JacobiSVD<MatX> svd(jac.J1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VecX& sigma = svd.singularValues();
  const double rcond = sigma[5] / sigma[0];
  if (!(rcond >= 1e-10)) {
    throw SingularityError("objective_gradient: chain-1 Jacobian is singular", rcond);
  }

  VecX dg_dq1(n1), dg_dq2(n2);
  for (int i = 0; i < n1; ++i) {
    dg_dq1[i] = central_difference(robot, cfg, spec, rescfg, true, i);
  }
  for (int i = 0; i < n2; ++i) {
    dg_dq2[i] = central_difference(robot, cfg, spec, rescfg, false, i);
  }

  // dg/db_reduced = (dg/dq1) * J1^-1 * H, via J1^-T solve of the row vector.
  const VecX j1t_sol = svd.solve(MatX::Identity(6, 6)).transpose() * dg_dq1;
  VecX grad(H.cols() + n2);
  grad.head(H.cols()) = H.transpose() * j1t_sol;
  grad.tail(n2) = dg_dq2;
  return grad;
}

ResolutionStep resolve_braced(const BracedRobot& robot, const Configuration& cfg,
                              const ConstraintSpec& spec,
                              const ResolutionConfig& rescfg, const Vec6& dx_e) {
  const JacobianSet jac = evaluate_jacobians(robot, cfg);
  const MatX H = allowable_twist_basis(spec);
  const MatX A = braced_task_jacobian(jac, H);
  const int l = static_cast<int>(H.cols());

  RateSolution sol;
  if (rescfg.strategy == Strategy::kBracedGradientProjection) {
    const VecX grad = objective_gradient(robot, cfg, spec, rescfg);
    sol = gradient_projection_step(A, dx_e, grad, rescfg.alpha);
  } else {
    sol = min_norm_solve(A, dx_e);
  }

  ResolutionStep step;
  step.b_reduced_velocity = sol.rates.head(l);
  step.q2_rates = sol.rates.tail(sol.rates.size() - l);
  step.q1_rates = recover_q1_rates(jac.J1, H, step.b_reduced_velocity);
  step.residual = sol.residual;

  const ObjectiveValue v = objective(robot, cfg, spec, rescfg);
  step.g = v.g;
  step.k = v.k;
  step.Ci = v.Ci;
  step.theta_z = v.theta_z;
  step.d = v.d;
  return step;
}

}  // namespace bracekin
