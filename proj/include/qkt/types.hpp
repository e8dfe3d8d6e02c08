// types.hpp - linear-algebra aliases and the spin Hilbert space
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qkt/errors.hpp"

namespace qkt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Spin-j Hilbert space in the |j,m> basis. Basis index q in {0,...,d-1} maps
// to m = j - q (descending m), so q=0 is the maximal-weight state |j,j>.
struct SpinSpace {
  double j = 0.5;
  int dim = 2;

  static SpinSpace from_j(double j) {
    if (!std::isfinite(j) || j < 0.0)
      throw DomainError("spin j must be finite and non-negative");
    const double two_j = 2.0 * j;
    if (std::abs(two_j - std::llround(two_j)) > 1e-9)
      throw DomainError("spin j must be integer or half-integer");
    return SpinSpace{j, static_cast<int>(std::llround(two_j)) + 1};
  }

  static SpinSpace from_dim(int d) {
    if (d < 1) throw DomainError("dimension must be positive");
    return SpinSpace{0.5 * (d - 1), d};
  }

  double m(int q) const { return j - static_cast<double>(q); }
};

}  // namespace qkt
