// spin_algebra.hpp - angular momentum operators, rotations, coherent states
#pragma once

#include <cmath>

#include "qkt/types.hpp"

namespace qkt {

// <q+1|J_-|q> = sqrt(j(j+1) - m(m-1)) evaluated at m = j - q.
inline double ladder_coupling(const SpinSpace& s, int q) {
  const double m = s.m(q);
  return std::sqrt(s.j * (s.j + 1.0) - m * (m - 1.0));
}

inline ComplexMatrix build_jz(const SpinSpace& s) {
  ComplexMatrix jz = ComplexMatrix::Zero(s.dim, s.dim);
  for (int q = 0; q < s.dim; ++q) jz(q, q) = s.m(q);
  return jz;
}

// J_- (lowering=true) or its adjoint J_+.
inline ComplexMatrix build_ladder(const SpinSpace& s, bool lowering) {
  ComplexMatrix op = ComplexMatrix::Zero(s.dim, s.dim);
  for (int q = 0; q + 1 < s.dim; ++q) {
    const double c = ladder_coupling(s, q);
    if (lowering)
      op(q + 1, q) = c;
    else
      op(q, q + 1) = c;
  }
  return op;
}

// J_x = (J_+ + J_-)/2: real symmetric tridiagonal in this basis.
inline ComplexMatrix build_jx(const SpinSpace& s) {
  ComplexMatrix jx = ComplexMatrix::Zero(s.dim, s.dim);
  for (int q = 0; q + 1 < s.dim; ++q) {
    const double c = 0.5 * ladder_coupling(s, q);
    jx(q, q + 1) = c;
    jx(q + 1, q) = c;
  }
  return jx;
}

// J_y = (J_+ - J_-)/(2i): purely imaginary Hermitian tridiagonal.
inline ComplexMatrix build_jy(const SpinSpace& s) {
  ComplexMatrix jy = ComplexMatrix::Zero(s.dim, s.dim);
  for (int q = 0; q + 1 < s.dim; ++q) {
    const double c = 0.5 * ladder_coupling(s, q);
    jy(q, q + 1) = Complex(0.0, -c);
    jy(q + 1, q) = Complex(0.0, c);
  }
  return jy;
}

enum class Axis { x, y, z };

// exp(-i angle J_axis), unitary to round-off.
//
// J_z is diagonal. J_x is real symmetric tridiagonal, so its
// eigendecomposition runs directly on the tridiagonal form. J_y becomes real
// symmetric tridiagonal after the phase similarity T J_y T^dag with
// T = diag(i^q), whose subdiagonal is -c_q/2; the phases are undone on the
// assembled exponential.
inline ComplexMatrix rotation(const SpinSpace& s, Axis axis, double angle) {
  if (!std::isfinite(angle)) throw DomainError("rotation angle must be finite");
  const int d = s.dim;
  if (angle == 0.0) return ComplexMatrix::Identity(d, d);

  if (axis == Axis::z) {
    ComplexMatrix r = ComplexMatrix::Zero(d, d);
    for (int q = 0; q < d; ++q) r(q, q) = std::polar(1.0, -angle * s.m(q));
    return r;
  }

  RealVector diag = RealVector::Zero(d);
  RealVector sub(d > 1 ? d - 1 : 0);
  const double sign = (axis == Axis::y) ? -1.0 : 1.0;
  for (int q = 0; q + 1 < d; ++q) sub[q] = sign * 0.5 * ladder_coupling(s, q);

  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericError("tridiagonal eigendecomposition failed");

  const RealMatrix& v = es.eigenvectors();
  const RealVector phase = angle * es.eigenvalues();
  const RealMatrix re = v * phase.array().cos().matrix().asDiagonal() * v.transpose();
  const RealMatrix im = v * (-phase.array().sin()).matrix().asDiagonal() * v.transpose();

  ComplexMatrix r(d, d);
  r.real() = re;
  r.imag() = im;

  if (axis == Axis::y) {
    // r -> T^dag r T with T = diag(i^q): entry (a,b) picks up i^(b-a).
    static const Complex i_pow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) r(a, b) *= i_pow[((b - a) % 4 + 4) % 4];
  }
  return r;
}

// Spin coherent state at polar angles (theta, phi):
// amplitudes c_q = beta^q sqrt(C(2j,q)) / (1+|beta|^2)^j with
// beta = e^{i phi} tan(theta/2). Magnitudes are assembled in log space so the
// binomials stay finite at d ~ 1000. theta at (or within 1e-9 of) pi is the
// limit state |j,-j>, where beta diverges.
inline StateVector coherent_state(const SpinSpace& s, double theta, double phi) {
  if (!(theta >= 0.0 && theta <= pi))
    throw DomainError("coherent_state: theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < two_pi))
    throw DomainError("coherent_state: phi must lie in [0, 2*pi)");

  const int d = s.dim;
  StateVector psi = StateVector::Zero(d);
  if (pi - theta <= 1e-9) {
    psi[d - 1] = 1.0;
    return psi;
  }
  const double tan_half = std::tan(0.5 * theta);
  if (tan_half == 0.0) {
    psi[0] = 1.0;
    return psi;
  }

  const double two_j = 2.0 * s.j;
  const double log_tan = std::log(tan_half);
  const double log_norm = s.j * std::log1p(tan_half * tan_half);
  for (int q = 0; q < d; ++q) {
    const double log_sqrt_binom =
        0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(q + 1.0) -
               std::lgamma(two_j - q + 1.0));
    const double log_mag = q * log_tan + log_sqrt_binom - log_norm;
    psi[q] = std::polar(std::exp(log_mag), q * phi);
  }
  psi.normalize();  // analytic norm is 1; this removes rounding drift
  return psi;
}

inline ComplexMatrix pure_density(const StateVector& psi) {
  return psi * psi.adjoint();
}

namespace detail {

// Eigendecomposition of a density matrix, validating hermiticity, positivity
// and unit trace to 1e-10.
inline Eigen::SelfAdjointEigenSolver<ComplexMatrix> density_eigs(
    const ComplexMatrix& rho) {
  constexpr double tol = 1e-10;
  if (rho.rows() != rho.cols())
    throw NotDensityMatrix("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw NotDensityMatrix("density matrix must be Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol)
    throw NotDensityMatrix("density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition of density matrix failed");
  if (es.eigenvalues().minCoeff() < -tol)
    throw NotDensityMatrix("density matrix must be positive semidefinite");
  return es;
}

}  // namespace detail

// -Tr[rho log rho] in nats, with 0 log 0 := 0.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto es = detail::density_eigs(rho);
  double sum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > 0.0) sum -= lam * std::log(lam);
  }
  return sum;
}

}  // namespace qkt
