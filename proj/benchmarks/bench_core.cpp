// Microbenchmarks for the hot paths of a simulation step: forward
// kinematics, Jacobian assembly, compliance evaluation, the objective
// gradient and the rate solvers.

#include <benchmark/benchmark.h>

#include <random>

#include "bracekin/resolve.hpp"
#include "support.hpp"

using namespace bracekin;

namespace {

const BracedRobot& robot() {
  static const BracedRobot r = testsup::example_robot();
  return r;
}

const Configuration& cfg() {
  static const Configuration c = testsup::nominal_configuration();
  return c;
}

ConstraintSpec spec() {
  ConstraintSpec s = testsup::example_constraint();
  const auto [brace, ee] = forward_kinematics(robot(), cfg());
  s.tangent_frame.origin = brace.origin;
  return s;
}

void BM_ForwardKinematics(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(robot(), cfg()));
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_JacobianSet(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_jacobians(robot(), cfg()));
  }
}
BENCHMARK(BM_JacobianSet);

void BM_ComplianceMatrices(benchmark::State& state) {
  const ConstraintSpec s = spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compliance_matrices(robot(), cfg(), s));
  }
}
BENCHMARK(BM_ComplianceMatrices);

void BM_Objective(benchmark::State& state) {
  const ConstraintSpec s = spec();
  ResolutionConfig rc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(robot(), cfg(), s, rc));
  }
}
BENCHMARK(BM_Objective);

void BM_ObjectiveGradient(benchmark::State& state) {
  const ConstraintSpec s = spec();
  ResolutionConfig rc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective_gradient(robot(), cfg(), s, rc));
  }
}
BENCHMARK(BM_ObjectiveGradient);

void BM_MinNormSolve(benchmark::State& state) {
  std::mt19937 rng(7);
  const MatX A = testsup::random_vector(rng, 60).reshaped(6, 10);
  const Vec6 dx = testsup::random_vector(rng, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_norm_solve(A, dx));
  }
}
BENCHMARK(BM_MinNormSolve);

void BM_GradientProjectionStep(benchmark::State& state) {
  std::mt19937 rng(8);
  const MatX A = testsup::random_vector(rng, 60).reshaped(6, 10);
  const Vec6 dx = testsup::random_vector(rng, 6);
  const VecX grad = testsup::random_vector(rng, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_projection_step(A, dx, grad, -1.0));
  }
}
BENCHMARK(BM_GradientProjectionStep);

void BM_ResolveBraced(benchmark::State& state) {
  const ConstraintSpec s = spec();
  ResolutionConfig rc;
  rc.strategy = Strategy::kBracedGradientProjection;
  Vec6 dx = Vec6::Zero();
  dx(0) = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolve_braced(robot(), cfg(), s, rc, dx));
  }
}
BENCHMARK(BM_ResolveBraced);

}  // namespace

BENCHMARK_MAIN();
