#include "qdsim/generator.hpp"

namespace qdsim {

namespace {
constexpr complex kI{0.0, 1.0};
}

DensityMatrix rhs(const DensityMatrix& rho, const ModelParams& p) {
  const double half_omega = 0.5 * p.omega_rabi;
  const double delta2 = derive_delta2(p);

  const complex r00 = rho(0, 0), r11 = rho(1, 1), r22 = rho(2, 2);
  const complex r01 = rho(0, 1), r10 = rho(1, 0);
  const complex r02 = rho(0, 2);
  const complex r12 = rho(1, 2), r21 = rho(2, 1);

  const complex d01 = kI * (p.delta1 + kI * p.gamma1) * r01 -
                      kI * half_omega * (r11 - r00) + kI * p.t_e * r02;
  const complex d12 = -kI * (p.delta1 - delta2 - kI * p.gamma2) * r12 -
                      kI * half_omega * r02 - kI * p.t_e * (r22 - r11);
  const complex tunneling_source = p.mode == EquationMode::corrected ? r01 : r02;
  const complex d02 = kI * (delta2 + kI * p.gamma3) * r02 - kI * half_omega * r12 +
                      kI * p.t_e * tunneling_source;
  const complex d00 = p.big_gamma20 * r22 + p.big_gamma10 * r11 -
                      kI * half_omega * (r10 - r01);
  const complex d11 = -(p.big_gamma10 + p.big_gamma12) * r11 +
                      kI * half_omega * (r10 - r01) - kI * p.t_e * (r21 - r12);
  const double d22 = -d00.real() - d11.real();

  return DensityMatrix({d00.real(), d11.real(), d22}, d01, d02, d12);
}

RealStateVector GeneratorMatrix::apply(const RealStateVector& x) const {
  RealStateVector y;
  for (std::size_t r = 0; r < kRealDim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < kRealDim; ++c) acc += rows_[r][c] * x[c];
    y[r] = acc;
  }
  return y;
}

GeneratorMatrix assemble_generator(const ModelParams& p) {
  using namespace coord;
  GeneratorMatrix m;
  const double h = 0.5 * p.omega_rabi;
  const double te = p.t_e;
  const double d1 = p.delta1;
  const double d2 = derive_delta2(p);
  const double d12 = p.delta1 - d2;

  m(rho00, rho11) = p.big_gamma10;
  m(rho00, rho22) = p.big_gamma20;
  m(rho00, im01) = -p.omega_rabi;

  m(rho11, rho11) = -(p.big_gamma10 + p.big_gamma12);
  m(rho11, im01) = p.omega_rabi;
  m(rho11, im12) = -2.0 * te;

  m(rho22, rho11) = p.big_gamma12;
  m(rho22, rho22) = -p.big_gamma20;
  m(rho22, im12) = 2.0 * te;

  m(re01, re01) = -p.gamma1;
  m(re01, im01) = -d1;
  m(re01, im02) = -te;
  m(im01, re01) = d1;
  m(im01, im01) = -p.gamma1;
  m(im01, rho00) = h;
  m(im01, rho11) = -h;
  m(im01, re02) = te;

  m(re02, re02) = -p.gamma3;
  m(re02, im02) = -d2;
  m(re02, im12) = h;
  m(im02, re02) = d2;
  m(im02, im02) = -p.gamma3;
  m(im02, re12) = -h;
  if (p.mode == EquationMode::corrected) {
    m(re02, im01) = -te;
    m(im02, re01) = te;
  } else {
    m(re02, im02) -= te;
    m(im02, re02) += te;
  }

  m(re12, re12) = -p.gamma2;
  m(re12, im12) = d12;
  m(re12, im02) = h;
  m(im12, re12) = -d12;
  m(im12, im12) = -p.gamma2;
  m(im12, re02) = -h;
  m(im12, rho11) = te;
  m(im12, rho22) = -te;

  return m;
}

}  // namespace qdsim
