#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace qdsim {

using complex = std::complex<double>;
using Matrix3c = std::array<std::array<complex, 3>, 3>;

inline constexpr std::size_t kLevels = 3;
inline constexpr std::size_t kRealDim = 9;

/// Inputs whose off-diagonal mismatch |rho_ij - conj(rho_ji)| exceeds this are rejected.
inline constexpr double kHermiticityTolerance = 1e-10;
/// |trace - 1| allowed for a state to count as physical.
inline constexpr double kTraceTolerance = 1e-12;

/// Index of each real coordinate in a RealStateVector.
namespace coord {
inline constexpr std::size_t rho00 = 0;
inline constexpr std::size_t rho11 = 1;
inline constexpr std::size_t rho22 = 2;
inline constexpr std::size_t re01 = 3;
inline constexpr std::size_t im01 = 4;
inline constexpr std::size_t re02 = 5;
inline constexpr std::size_t im02 = 6;
inline constexpr std::size_t re12 = 7;
inline constexpr std::size_t im12 = 8;
}  // namespace coord

/// (rho00, rho11, rho22, Re rho01, Im rho01, Re rho02, Im rho02, Re rho12, Im rho12)
struct RealStateVector {
  std::array<double, kRealDim> values{};

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double population_sum() const { return values[0] + values[1] + values[2]; }
  double max_abs() const;

  bool operator==(const RealStateVector&) const = default;
};

/// Hermitian 3x3 matrix stored as a real diagonal plus the upper triangle.
///
/// The lower triangle is always the conjugate of the upper one, so Hermiticity
/// holds by construction. Also used for time derivatives (trace zero).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(std::array<double, 3> populations, complex rho01, complex rho02,
                complex rho12)
      : populations_(populations), coherences_{rho01, rho02, rho12} {}

  /// |0><0|: no excitation.
  static DensityMatrix ground_state() { return DensityMatrix({1.0, 0.0, 0.0}, {}, {}, {}); }

  /// Throws ValidationError if `full` is not Hermitian within kHermiticityTolerance.
  static DensityMatrix from_full(const Matrix3c& full);

  complex operator()(std::size_t i, std::size_t j) const;
  double population(std::size_t i) const { return populations_[i]; }
  complex rho01() const { return coherences_[0]; }
  complex rho02() const { return coherences_[1]; }
  complex rho12() const { return coherences_[2]; }

  double trace() const { return populations_[0] + populations_[1] + populations_[2]; }
  Matrix3c to_full() const;

  bool operator==(const DensityMatrix&) const = default;

 private:
  std::array<double, 3> populations_{};
  std::array<complex, 3> coherences_{};  // 01, 02, 12
};

RealStateVector to_real(const DensityMatrix& rho);
DensityMatrix from_real(const RealStateVector& x);

/// Throws ValidationError unless trace is 1 within kTraceTolerance and all entries finite.
void require_physical(const DensityMatrix& rho);

}  // namespace qdsim
