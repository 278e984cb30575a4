#include "qdsim/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "qdsim/errors.hpp"

namespace qdsim::solvers {

namespace {

using Matrix9 = std::array<std::array<double, kRealDim>, kRealDim>;

struct Elimination {
  RealStateVector x;
  double smallest_pivot;
};

// Gaussian elimination with partial pivoting; A and b are taken by value.
Elimination gauss_solve(Matrix9 a, RealStateVector b) {
  constexpr std::size_t n = kRealDim;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    smallest = std::min(smallest, std::abs(a[piv][k]));
    if (std::abs(a[piv][k]) < kPivotFloor) return {b, smallest};
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(b[piv], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  RealStateVector x;
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return {x, smallest};
}

RealStateVector multiply(const Matrix9& a, const RealStateVector& x) {
  RealStateVector y;
  for (std::size_t r = 0; r < kRealDim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < kRealDim; ++c) acc += a[r][c] * x[c];
    y[r] = acc;
  }
  return y;
}

std::string degenerate_message(const ModelParams& p, const std::string& why) {
  return "degenerate steady state (" + why + ") for " + describe(p);
}

}  // namespace

void validate(const SolverSettings& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw ValidationError("dt must be positive");
  if (!(s.t_max > s.dt) || !std::isfinite(s.t_max)) {
    throw ValidationError("t_max must exceed dt");
  }
  if (!(s.relax_tol > 0.0)) throw ValidationError("relax_tol must be positive");
  if (s.sample_stride == 0) throw ValidationError("sample_stride must be at least 1");
}

RealStateVector rk4_step(const GeneratorMatrix& L, const RealStateVector& x, double dt) {
  const RealStateVector k1 = L.apply(x);
  RealStateVector tmp;
  for (std::size_t i = 0; i < kRealDim; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
  const RealStateVector k2 = L.apply(tmp);
  for (std::size_t i = 0; i < kRealDim; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
  const RealStateVector k3 = L.apply(tmp);
  for (std::size_t i = 0; i < kRealDim; ++i) tmp[i] = x[i] + dt * k3[i];
  const RealStateVector k4 = L.apply(tmp);
  RealStateVector out;
  for (std::size_t i = 0; i < kRealDim; ++i) {
    out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

DensityMatrix steady_state_direct(const ModelParams& p) {
  validate(p);
  const GeneratorMatrix L = assemble_generator(p);

  Matrix9 a;
  for (std::size_t r = 0; r < kRealDim; ++r) a[r] = L.row(r);
  a[coord::rho22] = {1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  RealStateVector b;
  b[coord::rho22] = 1.0;

  Elimination sol = gauss_solve(a, b);
  if (sol.smallest_pivot < kPivotFloor) {
    std::ostringstream why;
    why << "pivot " << sol.smallest_pivot << " below " << kPivotFloor;
    throw DegenerateSteadyStateError(degenerate_message(p, why.str()));
  }

  // One refinement pass against the modified system.
  const RealStateVector ax = multiply(a, sol.x);
  RealStateVector r;
  for (std::size_t i = 0; i < kRealDim; ++i) r[i] = b[i] - ax[i];
  const Elimination corr = gauss_solve(a, r);
  RealStateVector x = sol.x;
  for (std::size_t i = 0; i < kRealDim; ++i) x[i] += corr.x[i];

  const double residual = L.apply(x).max_abs();
  if (!(residual <= kSteadyResidualTolerance)) {
    std::ostringstream why;
    why << "residual " << residual << " above " << kSteadyResidualTolerance;
    throw DegenerateSteadyStateError(degenerate_message(p, why.str()));
  }
  return from_real(x);
}

RelaxResult steady_state_relax(const ModelParams& p, const SolverSettings& s) {
  validate(p);
  validate(s);
  const GeneratorMatrix L = assemble_generator(p);
  RealStateVector x = to_real(DensityMatrix::ground_state());

  const auto max_steps = static_cast<std::size_t>(std::ceil(s.t_max / s.dt));
  double residual = L.apply(x).max_abs();
  std::size_t step = 0;
  while (residual >= s.relax_tol) {
    if (step == max_steps || !std::isfinite(residual)) {
      std::ostringstream os;
      os << "relaxation did not converge by t=" << s.t_max << " (residual " << residual
         << ", tolerance " << s.relax_tol << ") for " << describe(p);
      throw NonConvergenceError(os.str(), residual);
    }
    x = rk4_step(L, x, s.dt);
    ++step;
    residual = L.apply(x).max_abs();
  }
  return {from_real(x), step, static_cast<double>(step) * s.dt, residual};
}

Trajectory integrate(const DensityMatrix& rho0, const ModelParams& p, const SolverSettings& s) {
  validate(p);
  validate(s);
  require_physical(rho0);
  const GeneratorMatrix L = assemble_generator(p);

  // Fixed step dt; the last step is shortened to land exactly on t_max.
  const auto n_steps = static_cast<std::size_t>(std::ceil(s.t_max / s.dt * (1.0 - 1e-12)));
  Trajectory traj;
  traj.samples.reserve(n_steps / s.sample_stride + 2);

  RealStateVector x = to_real(rho0);
  traj.samples.push_back({0.0, x});
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * s.dt;
    const double h = k == n_steps ? s.t_max - t_prev : s.dt;
    x = rk4_step(L, x, h);

    for (std::size_t i = 0; i < 3; ++i) {
      if (!(x[i] >= -0.1 && x[i] <= 1.1)) {
        std::ostringstream os;
        os << "integration unstable at t=" << t_prev + h << ": population rho" << i << i
           << " = " << x[i] << "; reduce dt (currently " << s.dt << ")";
        throw InstabilityError(os.str());
      }
    }
    if (std::abs(x.population_sum() - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "trace drifted to " << x.population_sum() << " at t=" << t_prev + h
         << "; reduce dt (currently " << s.dt << ")";
      throw InstabilityError(os.str());
    }

    if (k % s.sample_stride == 0 || k == n_steps) {
      traj.samples.push_back({k == n_steps ? s.t_max : static_cast<double>(k) * s.dt, x});
    }
  }
  return traj;
}

double residual_norm(const DensityMatrix& rho, const ModelParams& p) {
  return to_real(rhs(rho, p)).max_abs();
}

}  // namespace qdsim::solvers
