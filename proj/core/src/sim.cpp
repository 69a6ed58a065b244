#include "bracekin/sim.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace bracekin {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Vec3 in_plane_start(const TaskPath& path) {
  if (path.start_direction.norm() > 1e-12) {
    Vec3 u = path.start_direction - path.normal * path.normal.dot(path.start_direction);
    if (u.norm() < 1e-12) {
      throw std::invalid_argument("TaskPath: start_direction parallel to normal");
    }
    return u.normalized();
  }
  return path.normal.unitOrthogonal();
}

double phase_rate(const TaskPath& path) {
  return path.duration > 0 ? kTwoPi / path.duration : 0.0;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void TaskPath::validate() const {
  if (!(radius > 0)) throw std::invalid_argument("TaskPath: radius must be positive");
  if (!(dt > 0)) throw std::invalid_argument("TaskPath: dt must be positive");
  if (duration < 0) throw std::invalid_argument("TaskPath: duration must be nonnegative");
  if (duration > 0 && dt > duration) {
    throw std::invalid_argument("TaskPath: dt must not exceed duration");
  }
  if (std::abs(normal.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("TaskPath: normal is not unit length");
  }
}

Vec3 TaskPath::radial_direction(double t) const {
  const Vec3 u = in_plane_start(*this);
  const Vec3 v = normal.cross(u);
  const double phi = phase_rate(*this) * t;
  return std::cos(phi) * u + std::sin(phi) * v;
}

Vec3 TaskPath::point(double t) const {
  return center + radius * radial_direction(t);
}

Vec6 path_twist(const TaskPath& path, double t) {
  if (t < 0 || t > path.duration) {
    throw std::out_of_range("path_twist: t outside [0, duration]");
  }
  const Vec3 u = in_plane_start(path);
  const Vec3 v = path.normal.cross(u);
  const double w = phase_rate(path);
  const double phi = w * t;
  Vec6 twist = Vec6::Zero();
  twist.head<3>() = path.radius * w * (-std::sin(phi) * u + std::cos(phi) * v);
  if (path.orientation_mode == OrientationMode::kTracking) {
    twist.tail<3>() = w * path.normal;
  }
  return twist;
}

double product_of_singular_values(const MatX& J, JacobianBlock block) {
  const MatX sub = block == JacobianBlock::kTranslational ? J.topRows(3) : J.bottomRows(3);
  Eigen::JacobiSVD<MatX> svd(sub);
  return svd.singularValues().prod();
}

double min_singular_value(const MatX& J, JacobianBlock block) {
  const MatX sub = block == JacobianBlock::kTranslational ? J.topRows(3) : J.bottomRows(3);
  Eigen::JacobiSVD<MatX> svd(sub);
  return svd.singularValues().minCoeff();
}

SummaryStats summarize(const std::vector<TrajectorySample>& samples) {
  SummaryStats s;
  if (samples.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s = SummaryStats{nan, nan, nan, nan, nan, nan, nan};
    return s;
  }
  const double n = static_cast<double>(samples.size());
  s.min_Ci = std::numeric_limits<double>::infinity();
  s.min_sigma_t = std::numeric_limits<double>::infinity();
  s.min_sigma_o = std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    s.mean_Ci += x.Ci;
    s.mean_prod_sigma_t += x.prod_sigma_t;
    s.mean_prod_sigma_o += x.prod_sigma_o;
    s.mean_k += x.k;
    s.min_Ci = std::min(s.min_Ci, x.Ci);
    s.min_sigma_t = std::min(s.min_sigma_t, x.sigma_t_min);
    s.min_sigma_o = std::min(s.min_sigma_o, x.sigma_o_min);
  }
  s.mean_Ci /= n;
  s.mean_prod_sigma_t /= n;
  s.mean_prod_sigma_o /= n;
  s.mean_k /= n;
  return s;
}

namespace {

TrajectorySample make_sample(const BracedRobot& robot, const Configuration& cfg,
                             const ConstraintSpec& spec, ResolutionConfig rescfg,
                             const TaskPath& path, bool braced, double t,
                             double residual, std::vector<std::string>& warnings,
                             bool& warned_region) {
  TrajectorySample s;
  s.time = t;
  s.cfg = cfg;
  s.residual = residual;

  const JacobianSet jac = evaluate_jacobians(robot, cfg);
  s.ee_pose = jac.ee;
  s.brace_origin = jac.brace.origin;
  s.tracking_error = (jac.ee.origin - path.point(std::min(t, path.duration))).norm();

  const Mat6 P = braced ? constraint_projection(spec) : Mat6::Zero();
  const MatX Jt = constrained_jacobian(jac, P);
  s.prod_sigma_t = product_of_singular_values(Jt, JacobianBlock::kTranslational);
  s.prod_sigma_o = product_of_singular_values(Jt, JacobianBlock::kOrientational);
  s.sigma_t_min = min_singular_value(Jt, JacobianBlock::kTranslational);
  s.sigma_o_min = min_singular_value(Jt, JacobianBlock::kOrientational);
  s.k = frobenius_condition_number(Jt);

  // Deflection direction of interest: unit radial of the task circle,
  // zero angular part, recomputed every step.
  Vec6 beta = Vec6::Zero();
  beta.head<3>() = path.radial_direction(std::min(t, path.duration));
  rescfg.beta_x = beta;

  const ComplianceSet cs = [&] {
    ComplianceSet c;
    c.C1 = chain_compliance(jac.J1, robot.chain1.stiffness_vector());
    c.C2 = chain_compliance(jac.J2, robot.chain2.stiffness_vector());
    c.C1_braced = (Mat6::Identity() - P) * c.C1 * (Mat6::Identity() - P);
    c.Ce = jac.shift.St1 * c.C1_braced * jac.shift.Sw1 +
           jac.shift.St2 * c.C2 * jac.shift.Sw2(rescfg.sw2_variant);
    return c;
  }();
  s.Ci = compliance_index(cs.Ce, beta, rescfg.characteristic_length);

  s.obj.k = frobenius_condition_number(free_space_jacobian(jac));
  s.obj.Ci = s.Ci;
  s.obj.theta_z = brace_alignment_angle(spec, jac.brace);
  const double r = region_distance(spec, jac.brace.origin);
  if (r < spec.r_max) {
    s.obj.d = region_penalty(spec, r);
  } else {
    s.obj.d = std::numeric_limits<double>::infinity();
    if (!warned_region) {
      warnings.push_back("brace point left the bracing region at t=" + fmt(t));
      warned_region = true;
    }
  }
  s.obj.g = rescfg.weights[0] * s.obj.k + rescfg.weights[1] * s.obj.Ci +
            rescfg.weights[2] * s.obj.theta_z + rescfg.weights[3] * s.obj.d;
  return s;
}

std::string dump_sample(const TrajectorySample& s) {
  std::ostringstream os;
  os << " [t=" << s.time << " Ci=" << s.Ci << " k=" << s.k
     << " tracking_error=" << s.tracking_error << " brace=(" << s.brace_origin.x()
     << "," << s.brace_origin.y() << "," << s.brace_origin.z() << ")]";
  return os.str();
}

// Newton re-projection of q1 so the brace point stays on the bracing plane
// after an Euler step.
void project_brace_to_surface(const BracedRobot& robot, const ConstraintSpec& spec,
                              Configuration& cfg) {
  const Vec3 n = spec.tangent_frame.rotation.col(2);
  for (int iter = 0; iter < 5; ++iter) {
    const Frame brace = chain_fk(robot.chain1, cfg.q1);
    const double f = n.dot(brace.origin - spec.tangent_frame.origin);
    if (std::abs(f) < 1e-13) return;
    const MatX J1 = chain_jacobian(robot.chain1, cfg.q1, brace.origin);
    const Eigen::RowVectorXd row = n.transpose() * J1.topRows(3);
    const double nn = row.squaredNorm();
    if (nn < 1e-16) return;
    cfg.q1 -= (f / nn) * row.transpose();
  }
}

// Desired end-effector twist with first-order pose correction: drives the
// end-effector to the next path point over one step, which keeps the
// integrated tracking error at the truncation level.
Vec6 desired_twist(const TaskPath& path, double t, const Frame& ee,
                   const Mat3& R_des) {
  const double t_next = std::min(t + path.dt, std::max(path.duration, t));
  Vec6 dx;
  dx.head<3>() = (path.point(t_next) - ee.origin) / path.dt;
  Mat3 R_target = R_des;
  if (path.orientation_mode == OrientationMode::kTracking) {
    R_target = Eigen::AngleAxisd(phase_rate(path) * t_next, path.normal)
                   .toRotationMatrix() * R_des;
  }
  dx.tail<3>() = rotation_log(R_target * ee.rotation.transpose()) / path.dt;
  return dx;
}

}  // namespace

SimulationResult run_simulation(const BracedRobot& robot, const ConstraintSpec& spec,
                                const TaskPath& path, const ResolutionConfig& rescfg,
                                const SimulationOptions& options) {
  robot.validate();
  spec.validate();
  path.validate();
  rescfg.validate();

  const bool braced = rescfg.strategy != Strategy::kFreeSpaceMinNorm;
  const Vec3 n = spec.tangent_frame.rotation.col(2);

  SimulationResult result;
  bool warned_region = false;
  bool warned_liftoff = false;

  Configuration cfg = options.initial;
  {
    const auto [brace, ee] = forward_kinematics(robot, cfg);
    (void)ee;
    if (braced) {
      const double off = std::abs(n.dot(brace.origin - spec.tangent_frame.origin));
      if (off > 1e-6) {
        throw std::invalid_argument(
            "run_simulation: initial brace point is " + fmt(off) +
            " m off the bracing surface");
      }
      const double r0 = region_distance(spec, brace.origin);
      if (r0 >= spec.r_max) {
        throw BoundaryError("run_simulation: initial brace point outside region",
                            r0, spec.r_max);
      }
    }
  }

  const int n_steps = path.duration > 0
                          ? static_cast<int>(std::llround(path.duration / path.dt))
                          : 0;
  const Mat3 R_des0 = forward_kinematics(robot, cfg).second.rotation;
  const MatX H = allowable_twist_basis(spec);
  const int l = static_cast<int>(H.cols());

  for (int i = 0; i <= n_steps; ++i) {
    const double t = i * path.dt;
    TrajectorySample sample =
        make_sample(robot, cfg, spec, rescfg, path, braced, t, 0.0,
                    result.warnings, warned_region);

    if (sample.tracking_error > options.tracking_error_bound) {
      throw std::runtime_error("run_simulation: tracking diverged" +
                               dump_sample(sample));
    }
    if (braced) {
      const double r = region_distance(spec, sample.brace_origin);
      if (r >= spec.r_max) {
        throw BoundaryError("run_simulation: brace point left the region" +
                                dump_sample(sample),
                            r, spec.r_max);
      }
    }

    if (i == n_steps) {
      result.samples.push_back(std::move(sample));
      break;
    }

    const JacobianSet jac = evaluate_jacobians(robot, cfg);
    const Vec6 dx = desired_twist(path, t, jac.ee, R_des0);

    if (braced) {
      ResolutionConfig stepcfg = rescfg;
      Vec6 beta = Vec6::Zero();
      beta.head<3>() = path.radial_direction(t);
      stepcfg.beta_x = beta;

      const MatX A = braced_task_jacobian(jac, H);
      RateSolution sol;
      if (rescfg.strategy == Strategy::kBracedGradientProjection) {
        const VecX grad = objective_gradient(robot, cfg, spec, stepcfg);
        sol = gradient_projection_step(A, dx, grad, stepcfg.alpha);
      } else {
        sol = min_norm_solve(A, dx);
      }
      sample.residual = sol.residual;
      if (!sol.feasible) {
        result.warnings.push_back("desired twist infeasible at t=" + fmt(t) +
                                  " (residual " + fmt(sol.residual) + ")");
      }
      const VecX q1_rates = recover_q1_rates(jac.J1, H, sol.rates.head(l));

      // Lift-off tendency check: would the unconstrained robot move the
      // brace point along +normal for this task twist?
      if (!warned_liftoff) {
        const RateSolution free_sol = min_norm_solve(free_space_jacobian(jac), dx);
        const VecX q1_free = free_sol.rates.head(6);
        const double vn = n.dot((jac.J1 * q1_free).head<3>());
        if (vn > 1e-6) {
          result.warnings.push_back(
              "task motion tends to lift the brace off the surface at t=" + fmt(t));
          warned_liftoff = true;
        }
      }

      cfg.q1 += path.dt * q1_rates;
      cfg.q2 += path.dt * sol.rates.tail(sol.rates.size() - l);
      project_brace_to_surface(robot, spec, cfg);
    } else {
      const MatX J = free_space_jacobian(jac);
      const RateSolution sol = min_norm_solve(J, dx);
      sample.residual = sol.residual;
      cfg.q1 += path.dt * sol.rates.head(6);
      cfg.q2 += path.dt * sol.rates.tail(sol.rates.size() - 6);
    }

    result.samples.push_back(std::move(sample));
  }

  result.stats = summarize(result.samples);
  return result;
}

void write_trace(const std::string& file, const std::vector<TrajectorySample>& samples) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("write_trace: cannot open " + file);

  const int n2 = samples.empty() ? 5 : static_cast<int>(samples.front().cfg.q2.size());
  out << "time";
  for (int i = 0; i < 6; ++i) out << ",q1_" << i;
  for (int i = 0; i < n2; ++i) out << ",q2_" << i;
  out << ",ee_px,ee_py,ee_pz,ee_qw,ee_qx,ee_qy,ee_qz"
      << ",brace_px,brace_py,brace_pz"
      << ",Ci,prod_sigma_t,prod_sigma_o,k,g,theta_z,d,residual\n";

  for (const auto& s : samples) {
    out << fmt(s.time);
    for (int i = 0; i < 6; ++i) out << "," << fmt(s.cfg.q1[i]);
    for (int i = 0; i < n2; ++i) out << "," << fmt(s.cfg.q2[i]);
    out << "," << fmt(s.ee_pose.origin.x()) << "," << fmt(s.ee_pose.origin.y())
        << "," << fmt(s.ee_pose.origin.z());
    Eigen::Quaterniond q(s.ee_pose.rotation);
    if (q.w() < 0) q.coeffs() = -q.coeffs();  // fixed hemisphere for determinism
    out << "," << fmt(q.w()) << "," << fmt(q.x()) << "," << fmt(q.y()) << ","
        << fmt(q.z());
    out << "," << fmt(s.brace_origin.x()) << "," << fmt(s.brace_origin.y()) << ","
        << fmt(s.brace_origin.z());
    out << "," << fmt(s.Ci) << "," << fmt(s.prod_sigma_t) << ","
        << fmt(s.prod_sigma_o) << "," << fmt(s.k) << "," << fmt(s.obj.g) << ","
        << fmt(s.obj.theta_z) << "," << fmt(s.obj.d) << "," << fmt(s.residual)
        << "\n";
  }
}

std::vector<std::vector<double>> read_trace(const std::string& file,
                                            std::vector<std::string>* header) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("read_trace: cannot open " + file);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      first = false;
      if (header) {
        while (std::getline(ss, cell, ',')) header->push_back(cell);
      }
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

SummaryStats summarize_trace(const std::vector<std::vector<double>>& rows,
                             const std::vector<std::string>& header) {
  auto col = [&](const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("summarize_trace: missing column " + name);
  };
  const size_t ci = col("Ci"), pt = col("prod_sigma_t"), po = col("prod_sigma_o"),
               kk = col("k");
  SummaryStats s;
  if (rows.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return SummaryStats{nan, nan, nan, nan, nan, nan, nan};
  }
  s.min_Ci = std::numeric_limits<double>::infinity();
  // The trace does not carry the per-block minimum singular values; report
  // them as NaN so callers compare only the recomputable columns.
  s.min_sigma_t = std::numeric_limits<double>::quiet_NaN();
  s.min_sigma_o = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    s.mean_Ci += r[ci];
    s.mean_prod_sigma_t += r[pt];
    s.mean_prod_sigma_o += r[po];
    s.mean_k += r[kk];
    s.min_Ci = std::min(s.min_Ci, r[ci]);
  }
  const double n = static_cast<double>(rows.size());
  s.mean_Ci /= n;
  s.mean_prod_sigma_t /= n;
  s.mean_prod_sigma_o /= n;
  s.mean_k /= n;
  return s;
}

std::vector<std::string> emit_outputs(const std::vector<StrategyRun>& runs,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> files;

  for (const auto& run : runs) {
    const std::string trace = (fs::path(out_dir) / ("trace_" + run.name + ".csv")).string();
    write_trace(trace, run.result.samples);
    files.push_back(trace);

    const struct {
      const char* suffix;
      double TrajectorySample::*field;
    } metrics[] = {
        {"Ci", &TrajectorySample::Ci},
        {"prod_sigma_t", &TrajectorySample::prod_sigma_t},
        {"prod_sigma_o", &TrajectorySample::prod_sigma_o},
        {"k", &TrajectorySample::k},
    };
    for (const auto& m : metrics) {
      const std::string fname =
          (fs::path(out_dir) / (run.name + "_" + m.suffix + ".dat")).string();
      std::ofstream out(fname, std::ios::binary);
      for (const auto& s : run.result.samples) {
        out << fmt(s.time) << " " << fmt(s.*(m.field)) << "\n";
      }
      files.push_back(fname);
    }
  }

  const std::string summary = (fs::path(out_dir) / "summary.csv").string();
  std::ofstream out(summary, std::ios::binary);
  out << "strategy,mean_Ci,min_Ci,mean_prod_sigma_t,mean_prod_sigma_o,"
         "min_sigma_t,min_sigma_o,mean_k\n";
  for (const auto& run : runs) {
    if (run.result.samples.empty()) {
      out << "# " << run.name << ": empty run\n";
    }
    const SummaryStats& s = run.result.stats;
    out << run.name << "," << fmt(s.mean_Ci) << "," << fmt(s.min_Ci) << ","
        << fmt(s.mean_prod_sigma_t) << "," << fmt(s.mean_prod_sigma_o) << ","
        << fmt(s.min_sigma_t) << "," << fmt(s.min_sigma_o) << "," << fmt(s.mean_k)
        << "\n";
  }
  files.push_back(summary);
  return files;
}

Configuration seed_initial_configuration(const BracedRobot& robot,
                                         const ConstraintSpec& spec,
                                         const TaskPath& path,
                                         const Configuration& guess,
                                         unsigned seed) {
  const Vec3 n = spec.tangent_frame.rotation.col(2);
  const Vec3 target = path.point(0.0);
  const int n2 = robot.chain2.dof();

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);

  Configuration best = guess;
  double best_res = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < 25; ++restart) {
    Configuration cfg = guess;
    if (restart > 0) {
      for (int i = 0; i < 6; ++i) cfg.q1[i] += jitter(rng);
      for (int i = 0; i < n2; ++i) cfg.q2[i] += jitter(rng);
    }
    for (int iter = 0; iter < 400; ++iter) {
      const JacobianSet jac = evaluate_jacobians(robot, cfg);
      Eigen::Vector4d res;
      res.head<3>() = jac.ee.origin - target;
      res[3] = n.dot(jac.brace.origin - spec.tangent_frame.origin);
      if (res.norm() < 1e-11) break;

      const MatX J = free_space_jacobian(jac);
      MatX Jr(4, 6 + n2);
      Jr.topRows(3) = J.topRows(3);
      Jr.row(3).setZero();
      Jr.row(3).head(6) = n.transpose() * jac.J1.topRows(3);

      const MatX JJt = Jr * Jr.transpose() + 1e-6 * Eigen::Matrix4d::Identity();
      const VecX dq = Jr.transpose() * JJt.ldlt().solve(-res);
      cfg.q1 += 0.5 * dq.head(6);
      cfg.q2 += 0.5 * dq.tail(n2);
    }
    const JacobianSet jac = evaluate_jacobians(robot, cfg);
    Eigen::Vector4d res;
    res.head<3>() = jac.ee.origin - target;
    res[3] = n.dot(jac.brace.origin - spec.tangent_frame.origin);
    const double r = region_distance(spec, jac.brace.origin);
    if (res.norm() < best_res && r < spec.r_max) {
      best_res = res.norm();
      best = cfg;
    }
    if (best_res < 1e-9) break;
  }
  return best;
}

}  // namespace bracekin
