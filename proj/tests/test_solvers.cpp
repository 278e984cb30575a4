#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qdsim/errors.hpp"
#include "qdsim/solvers.hpp"
#include "test_support.hpp"

using namespace qdsim;
using namespace qdsim::solvers;

namespace {

using Mat = std::array<std::array<double, kRealDim>, kRealDim>;

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (std::size_t i = 0; i < kRealDim; ++i)
    for (std::size_t k = 0; k < kRealDim; ++k)
      for (std::size_t j = 0; j < kRealDim; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// exp(t L) by scaling and squaring of a 20-term Taylor series.
Mat expm(const GeneratorMatrix& L, double t) {
  double norm = 0.0;
  for (std::size_t i = 0; i < kRealDim; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < kRealDim; ++j) row += std::abs(L(i, j));
    norm = std::max(norm, row);
  }
  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm * t / 0.25))));
  const double h = t / std::ldexp(1.0, squarings);
  Mat a{}, term{}, sum{};
  for (std::size_t i = 0; i < kRealDim; ++i) {
    for (std::size_t j = 0; j < kRealDim; ++j) a[i][j] = h * L(i, j);
    term[i][i] = 1.0;
    sum[i][i] = 1.0;
  }
  for (int n = 1; n <= 20; ++n) {
    term = mat_mul(term, a);
    for (auto& row : term)
      for (double& v : row) v /= n;
    for (std::size_t i = 0; i < kRealDim; ++i)
      for (std::size_t j = 0; j < kRealDim; ++j) sum[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) sum = mat_mul(sum, sum);
  return sum;
}

double distance(const DensityMatrix& a, const DensityMatrix& b) {
  const RealStateVector x = to_real(a), y = to_real(b);
  double m = 0.0;
  for (std::size_t i = 0; i < kRealDim; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

// Dephasing at least half the total decay out of both levels of each coherence:
// the equations are then Hamiltonian plus Lindblad decay and keep rho positive.
bool lindblad_consistent(const ModelParams& p) {
  return p.mode == EquationMode::corrected && p.gamma1 >= 0.5 * (p.big_gamma10 + p.big_gamma12) &&
         p.gamma2 >= 0.5 * (p.big_gamma10 + p.big_gamma12 + p.big_gamma20) &&
         p.gamma3 >= 0.5 * p.big_gamma20;
}

void check_physical(const DensityMatrix& rho, bool positive) {
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
  if (!positive) return;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rho.population(i) >= -1e-9);
    CHECK(rho.population(i) <= 1.0 + 1e-9);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(std::norm(rho(i, j)) <= rho.population(i) * rho.population(j) + 1e-8);
    }
  }
}

}  // namespace

TEST_CASE("undriven steady state is the ground state") {
  for (double te : {0.0, 0.7, 5.0}) {
    ModelParams p;
    p.omega_rabi = 0.0;
    p.t_e = te;
    const DensityMatrix rho = steady_state_direct(p);
    CHECK(distance(rho, DensityMatrix::ground_state()) <= 1e-14);
  }
}

TEST_CASE("two-level limit matches the closed form") {
  // At T_e = 0, delta1 = 0: rho01 = i Omega (rho00 - rho11) / (2 gamma1); with
  // G10 = G12 = G20 = 1/2 the rate equations give rho11 = rho22 = S / (1 + 3 S),
  // S = Omega^2 / (2 gamma1).
  ModelParams p;
  p.omega_rabi = 0.1;
  p.t_e = 0.0;
  const double S = p.omega_rabi * p.omega_rabi / (2.0 * p.gamma1);
  const double excited = S / (1.0 + 3.0 * S);
  const double im_rho10 = -p.omega_rabi * (1.0 - 3.0 * excited) / (2.0 * p.gamma1);

  const DensityMatrix rho = steady_state_direct(p);
  CHECK(S == doctest::Approx(0.005));
  CHECK(rho.population(1) == doctest::Approx(excited).epsilon(1e-12));
  CHECK(rho.population(2) == doctest::Approx(excited).epsilon(1e-12));
  CHECK(rho.population(2) == doctest::Approx(0.004926).epsilon(1e-4));
  CHECK(std::abs(std::conj(rho.rho01()).imag() - im_rho10) <= 1e-12);
  CHECK(im_rho10 == doctest::Approx(-0.04926).epsilon(1e-4));

  const RelaxResult relaxed = steady_state_relax(p, SolverSettings{});
  CHECK(distance(relaxed.state, rho) <= 1e-8);
}

TEST_CASE("direct solve flags a degenerate system") {
  ModelParams p;
  p.omega_rabi = 0.0;
  p.t_e = 0.0;
  p.big_gamma10 = p.big_gamma12 = p.big_gamma20 = 0.0;
  CHECK_THROWS_AS(steady_state_direct(p), DegenerateSteadyStateError);
  try {
    steady_state_direct(p);
  } catch (const DegenerateSteadyStateError& e) {
    CHECK(std::string(e.what()).find("omega_rabi=0") != std::string::npos);
  }
}

TEST_CASE("relaxation from the ground state") {
  SUBCASE("undriven: converged before the first step") {
    ModelParams p;
    p.omega_rabi = 0.0;
    const RelaxResult r = steady_state_relax(p, SolverSettings{});
    CHECK(r.steps == 0);
    CHECK(r.state == DensityMatrix::ground_state());
  }
  SUBCASE("absorption operating point") {
    ModelParams p;
    p.t_e = 0.5;
    const RelaxResult r = steady_state_relax(p, SolverSettings{});
    CHECK(r.residual < 1e-10);
    CHECK(distance(r.state, steady_state_direct(p)) <= 1e-8);
  }
  SUBCASE("transparency operating point") {
    ModelParams p;
    p.t_e = 6.0;
    CHECK(distance(steady_state_relax(p, SolverSettings{}).state, steady_state_direct(p)) <=
          1e-8);
  }
  SUBCASE("horizon exhausted") {
    ModelParams p;
    SolverSettings s;
    s.t_max = 1.0;
    CHECK_THROWS_AS(steady_state_relax(p, s), NonConvergenceError);
  }
}

TEST_CASE("direct and relaxation solvers agree on random parameters") {
  std::mt19937_64 rng(31337);
  const SolverSettings s;
  for (std::size_t i = 0; i < 100; ++i) {
    const ModelParams p = testing::random_params(rng, i);
    const DensityMatrix direct = steady_state_direct(p);
    const DensityMatrix relaxed = steady_state_relax(p, s).state;
    INFO(describe(p));
    REQUIRE(distance(direct, relaxed) <= 1e-8);
    REQUIRE(residual_norm(direct, p) <= 1e-10);
    check_physical(direct, lindblad_consistent(p));
  }
}

TEST_CASE("steady states are positive for Lindblad-consistent rates") {
  std::mt19937_64 rng(77);
  std::size_t tested = 0;
  for (std::size_t i = 0; tested < 100; ++i) {
    ModelParams p = testing::random_params(rng, 0);
    if (!lindblad_consistent(p)) continue;
    ++tested;
    INFO(describe(p));
    check_physical(steady_state_direct(p), true);
  }
  ModelParams defaults;
  CHECK(lindblad_consistent(defaults));
  check_physical(steady_state_direct(defaults), true);
}

TEST_CASE("integrate: constant trajectory in the undriven ground state") {
  ModelParams p;
  p.omega_rabi = 0.0;
  SolverSettings s;
  s.t_max = 5.0;
  s.sample_stride = 500;
  const Trajectory traj = integrate(DensityMatrix::ground_state(), p, s);
  REQUIRE(traj.samples.size() == 11);
  for (const auto& sample : traj.samples) CHECK(sample.state == to_real(DensityMatrix::ground_state()));
}

TEST_CASE("integrate: exponential decay of the direct exciton") {
  ModelParams p;
  p.omega_rabi = 0.0;
  p.t_e = 0.0;
  SolverSettings s;
  s.t_max = 1.0;
  s.sample_stride = 100;
  const Trajectory traj = integrate(DensityMatrix({0.0, 1.0, 0.0}, {}, {}, {}), p, s);
  const auto& last = traj.samples.back();
  CHECK(last.time == 1.0);
  const double exact = std::exp(-(p.big_gamma10 + p.big_gamma12) * 1.0);
  CHECK(std::abs(last.state[coord::rho11] - exact) <= 1e-8);
}

TEST_CASE("integrate: sampling and final time") {
  ModelParams p;
  SolverSettings s;
  s.dt = 0.3;
  s.t_max = 1.0;
  s.sample_stride = 2;
  const Trajectory traj = integrate(DensityMatrix::ground_state(), p, s);
  // steps at 0.3, 0.6, 0.9, 1.0; samples at 0, 0.6, 1.0
  REQUIRE(traj.samples.size() == 3);
  CHECK(traj.samples[1].time == doctest::Approx(0.6));
  CHECK(traj.samples[2].time == 1.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].time > traj.samples[i - 1].time);
  }
}

TEST_CASE("integrate: long horizon relaxes to the steady state") {
  std::mt19937_64 rng(8);
  SolverSettings s;
  s.dt = 0.01;
  s.t_max = 800.0;
  s.sample_stride = 1000000;
  for (std::size_t i = 0; i < 5; ++i) {
    ModelParams p = testing::random_params(rng, i);
    p.big_gamma10 = std::max(p.big_gamma10, 0.3);
    p.big_gamma20 = std::max(p.big_gamma20, 0.3);
    p.gamma1 = std::max(p.gamma1, 0.3);
    p.gamma2 = std::max(p.gamma2, 0.3);
    p.gamma3 = std::max(p.gamma3, 0.3);
    const DensityMatrix start = testing::random_state(rng);
    const Trajectory traj = integrate(
        DensityMatrix({start.population(0), start.population(1), start.population(2)}, {}, {},
                      {}),
        p, s);
    CHECK(distance(from_real(traj.samples.back().state), steady_state_direct(p)) <= 1e-6);
  }
}

TEST_CASE("integrate: trace drift stays at round-off") {
  ModelParams p;
  SolverSettings s;
  s.t_max = 100.0;
  s.sample_stride = 100;
  const Trajectory traj = integrate(DensityMatrix::ground_state(), p, s);
  double drift = 0.0;
  for (const auto& sample : traj.samples) {
    drift = std::max(drift, std::abs(sample.state.population_sum() - 1.0));
  }
  CHECK(drift <= 1e-10);
}

TEST_CASE("integrate: too large a step is reported") {
  ModelParams p;
  p.delta1 = 10.0;
  SolverSettings s;
  s.dt = 1.0;
  s.t_max = 50.0;
  CHECK_THROWS_AS(integrate(DensityMatrix::ground_state(), p, s), InstabilityError);
}

TEST_CASE("integrate rejects unphysical initial states and bad settings") {
  ModelParams p;
  CHECK_THROWS_AS(integrate(DensityMatrix({0.5, 0.6, 0.0}, {}, {}, {}), p, SolverSettings{}),
                  ValidationError);
  SolverSettings s;
  s.dt = 0.0;
  CHECK_THROWS_AS(integrate(DensityMatrix::ground_state(), p, s), ValidationError);
  s = {};
  s.t_max = s.dt / 2;
  CHECK_THROWS_AS(integrate(DensityMatrix::ground_state(), p, s), ValidationError);
}

TEST_CASE("RK4 converges at fourth order") {
  ModelParams p;
  p.t_e = 2.0;
  p.delta1 = 1.0;
  const GeneratorMatrix L = assemble_generator(p);
  const double horizon = 2.0;
  const Mat prop = expm(L, horizon);
  const RealStateVector x0 = to_real(DensityMatrix::ground_state());
  RealStateVector exact;
  for (std::size_t i = 0; i < kRealDim; ++i)
    for (std::size_t j = 0; j < kRealDim; ++j) exact[i] += prop[i][j] * x0[j];

  auto error_with = [&](double dt) {
    SolverSettings s;
    s.dt = dt;
    s.t_max = horizon;
    s.sample_stride = 1000000;
    const auto traj = integrate(DensityMatrix::ground_state(), p, s);
    double e = 0.0;
    for (std::size_t i = 0; i < kRealDim; ++i)
      e = std::max(e, std::abs(traj.samples.back().state[i] - exact[i]));
    return e;
  };
  const double coarse = error_with(0.1);
  const double fine = error_with(0.05);
  const double ratio = coarse / fine;
  INFO("errors " << coarse << " " << fine);
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 32.0);
}

TEST_CASE("residual norm") {
  ModelParams p;
  p.omega_rabi = 0.5;
  CHECK(residual_norm(DensityMatrix::ground_state(), p) == doctest::Approx(0.25));

  CHECK(residual_norm(steady_state_direct(p), p) <= 1e-10);

  // coherence rows scale with the coherences at fixed populations
  ModelParams q;
  q.omega_rabi = 0.0;
  q.t_e = 0.0;
  const DensityMatrix one({0.6, 0.3, 0.1}, {0.1, 0.05}, {0.02, -0.03}, {0.0, 0.04});
  const DensityMatrix two({0.6, 0.3, 0.1}, {0.2, 0.1}, {0.04, -0.06}, {0.0, 0.08});
  const RealStateVector r1 = to_real(rhs(one, q)), r2 = to_real(rhs(two, q));
  for (std::size_t i = 3; i < kRealDim; ++i) CHECK(r2[i] == doctest::Approx(2.0 * r1[i]));
}
