#pragma once

#include <array>

#include "qdsim/density_matrix.hpp"
#include "qdsim/params.hpp"

namespace qdsim {

/// Time derivative of rho under the double-dot equations of motion.
///
/// The coherences follow the driven, tunneling-coupled Bloch equations for
/// rho01, rho12 and rho02 (the last one's tunneling term chosen by p.mode);
/// rho00 and rho11 follow their rate equations and rho22 is fixed by trace
/// conservation: d rho22 = G12 rho11 - G20 rho22 + i T_e (rho21 - rho12).
DensityMatrix rhs(const DensityMatrix& rho, const ModelParams& p);

/// 9x9 real matrix of the (linear, homogeneous) equations of motion acting on
/// the RealStateVector chart.
class GeneratorMatrix {
 public:
  using Row = std::array<double, kRealDim>;

  double& operator()(std::size_t row, std::size_t col) { return rows_[row][col]; }
  double operator()(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  const Row& row(std::size_t r) const { return rows_[r]; }

  RealStateVector apply(const RealStateVector& x) const;

 private:
  std::array<Row, kRealDim> rows_{};
};

GeneratorMatrix assemble_generator(const ModelParams& p);

}  // namespace qdsim
