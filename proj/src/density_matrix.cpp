#include "qdsim/density_matrix.hpp"

#include <cmath>
#include <string>

#include "qdsim/errors.hpp"

namespace qdsim {

double RealStateVector::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DensityMatrix DensityMatrix::from_full(const Matrix3c& full) {
  for (std::size_t i = 0; i < kLevels; ++i) {
    if (std::abs(full[i][i].imag()) > kHermiticityTolerance) {
      throw ValidationError("diagonal entry rho" + std::to_string(i) + std::to_string(i) +
                            " has an imaginary part");
    }
    for (std::size_t j = i + 1; j < kLevels; ++j) {
      if (std::abs(full[i][j] - std::conj(full[j][i])) > kHermiticityTolerance) {
        throw ValidationError("matrix is not Hermitian at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
  return DensityMatrix({full[0][0].real(), full[1][1].real(), full[2][2].real()},
                       full[0][1], full[0][2], full[1][2]);
}

complex DensityMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return populations_[i];
  if (i > j) return std::conj((*this)(j, i));
  // (0,1) -> 0, (0,2) -> 1, (1,2) -> 2
  return coherences_[i + j - 1];
}

Matrix3c DensityMatrix::to_full() const {
  Matrix3c m{};
  for (std::size_t i = 0; i < kLevels; ++i) {
    for (std::size_t j = 0; j < kLevels; ++j) m[i][j] = (*this)(i, j);
  }
  return m;
}

RealStateVector to_real(const DensityMatrix& rho) {
  return RealStateVector{{rho.population(0), rho.population(1), rho.population(2),
                          rho.rho01().real(), rho.rho01().imag(), rho.rho02().real(),
                          rho.rho02().imag(), rho.rho12().real(), rho.rho12().imag()}};
}

DensityMatrix from_real(const RealStateVector& x) {
  return DensityMatrix({x[coord::rho00], x[coord::rho11], x[coord::rho22]},
                       {x[coord::re01], x[coord::im01]}, {x[coord::re02], x[coord::im02]},
                       {x[coord::re12], x[coord::im12]});
}

void require_physical(const DensityMatrix& rho) {
  for (double v : to_real(rho).values) {
    if (!std::isfinite(v)) throw ValidationError("density matrix has non-finite entries");
  }
  if (std::abs(rho.trace() - 1.0) > kTraceTolerance) {
    throw ValidationError("density matrix trace " + std::to_string(rho.trace()) +
                          " differs from 1");
  }
}

}  // namespace qdsim
