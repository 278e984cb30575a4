#pragma once

#include <cstddef>
#include <vector>

#include "qdsim/density_matrix.hpp"
#include "qdsim/generator.hpp"
#include "qdsim/params.hpp"

namespace qdsim::solvers {

/// Residual bound every steady state returned by the direct solver satisfies.
inline constexpr double kSteadyResidualTolerance = 1e-10;
/// Pivots smaller than this mark the trace-constrained system as degenerate.
inline constexpr double kPivotFloor = 1e-13;

/// Time stepping controls. Times are in units of 1/gamma.
struct SolverSettings {
  double dt = 1e-3;
  double t_max = 2000.0;
  double relax_tol = 1e-10;
  std::size_t sample_stride = 1000;

  bool operator==(const SolverSettings&) const = default;
};

void validate(const SolverSettings& s);

struct TrajectorySample {
  double time;
  RealStateVector state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
};

/// Steady state from the kernel of the generator.
///
/// The rho22 row of L is replaced by the trace row (1, 1, 1, 0, ...) and the
/// system L' x = e_2 is solved by Gaussian elimination with partial pivoting
/// plus one step of iterative refinement. Throws DegenerateSteadyStateError if
/// a pivot falls below kPivotFloor or the residual ||L x||_inf of the
/// unmodified generator exceeds kSteadyResidualTolerance.
DensityMatrix steady_state_direct(const ModelParams& p);

struct RelaxResult {
  DensityMatrix state;
  std::size_t steps = 0;
  double time = 0.0;
  double residual = 0.0;
};

/// Steady state by RK4 time-marching from the ground state until
/// ||rhs||_inf < s.relax_tol. Throws NonConvergenceError at s.t_max.
RelaxResult steady_state_relax(const ModelParams& p, const SolverSettings& s);

/// Classical fixed-step RK4 trajectory on [0, s.t_max].
///
/// Samples are emitted at t = 0, every s.sample_stride steps, and at t_max.
/// Throws InstabilityError if a population leaves [-0.1, 1.1] or the trace
/// drifts by more than 1e-9.
Trajectory integrate(const DensityMatrix& rho0, const ModelParams& p, const SolverSettings& s);

/// ||rhs(rho, p)||_inf over the nine real coordinates.
double residual_norm(const DensityMatrix& rho, const ModelParams& p);

/// One classical RK4 step of dx/dt = L x.
RealStateVector rk4_step(const GeneratorMatrix& L, const RealStateVector& x, double dt);

}  // namespace qdsim::solvers
