#pragma once

#include <string>
#include <vector>

#include "bracekin/resolve.hpp"

namespace bracekin {

enum class PathKind { kCircle };
enum class OrientationMode { kFixed, kTracking };

/// Circular task path traversed once over [0, duration].
struct TaskPath {
  PathKind kind = PathKind::kCircle;
  Vec3 center = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();        // unit circle-plane normal
  double radius = 0.1;                // m
  Vec3 start_direction = Vec3::Zero();  // in-plane start radial; auto if zero
  OrientationMode orientation_mode = OrientationMode::kFixed;
  double duration = 10.0;             // s
  double dt = 0.02;                   // s

  void validate() const;
  /// Unit radial direction at time t (used as the deflection screw beta_x).
  Vec3 radial_direction(double t) const;
  Vec3 point(double t) const;
};

/// Desired end-effector twist at time t: linear part tangent to the circle,
/// angular part zero in fixed orientation mode (the plane normal rate in
/// tracking mode). Throws std::out_of_range outside [0, duration].
Vec6 path_twist(const TaskPath& path, double t);

struct TrajectorySample {
  double time = 0;
  Configuration cfg;
  double Ci = 0;
  double prod_sigma_t = 0;
  double prod_sigma_o = 0;
  double sigma_t_min = 0;
  double sigma_o_min = 0;
  double k = 0;              // Frobenius condition number of the braced Jacobian
  ObjectiveValue obj;        // objective components at this configuration
  Frame ee_pose;
  Vec3 brace_origin = Vec3::Zero();
  double tracking_error = 0;  // m
  double residual = 0;        // task residual of the resolved rates
};

struct SummaryStats {
  double mean_Ci = 0;
  double min_Ci = 0;
  double mean_prod_sigma_t = 0;
  double mean_prod_sigma_o = 0;
  double min_sigma_t = 0;
  double min_sigma_o = 0;
  double mean_k = 0;
};

struct SimulationOptions {
  Configuration initial;
  double tracking_error_bound = 0.05;  // m; run aborts beyond this
};

struct SimulationResult {
  std::vector<TrajectorySample> samples;
  SummaryStats stats;
  std::vector<std::string> warnings;
};

/// Runs one strategy along the path: per step resolve rates, Euler-integrate,
/// re-project the brace point onto the surface (braced strategies), record
/// metrics. Throws SingularityError / BoundaryError / std::runtime_error on
/// divergence, with the samples collected so far attached to the message.
SimulationResult run_simulation(const BracedRobot& robot, const ConstraintSpec& spec,
                                const TaskPath& path, const ResolutionConfig& rescfg,
                                const SimulationOptions& options);

enum class JacobianBlock { kTranslational, kOrientational };

/// Product of the singular values of the selected 3-row block.
double product_of_singular_values(const MatX& J, JacobianBlock block);
double min_singular_value(const MatX& J, JacobianBlock block);

SummaryStats summarize(const std::vector<TrajectorySample>& samples);

/// Named run for output emission.
struct StrategyRun {
  std::string name;
  SimulationResult result;
};

/// Writes trace_<name>.csv, per-metric plot files and summary.csv into
/// out_dir. Returns the list of files written.
std::vector<std::string> emit_outputs(const std::vector<StrategyRun>& runs,
                                      const std::string& out_dir);

void write_trace(const std::string& file, const std::vector<TrajectorySample>& samples);
/// Parses a trace file back into raw rows; header names returned separately.
std::vector<std::vector<double>> read_trace(const std::string& file,
                                            std::vector<std::string>* header = nullptr);
/// Recomputes SummaryStats from trace rows (columns located via the header).
SummaryStats summarize_trace(const std::vector<std::vector<double>>& rows,
                             const std::vector<std::string>& header);

/// Damped-least-squares search (with seeded random restarts) for an initial
/// configuration placing the brace point on the bracing surface and the
/// end-effector at the path start. A utility for scenario authoring, not part
/// of the resolution strategies.
Configuration seed_initial_configuration(const BracedRobot& robot,
                                         const ConstraintSpec& spec,
                                         const TaskPath& path,
                                         const Configuration& guess,
                                         unsigned seed = 0);

}  // namespace bracekin
