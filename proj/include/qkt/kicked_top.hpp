// kicked_top.hpp - Floquet unitary of the kicked top and stroboscopic evolution
#pragma once

#include <cmath>
#include <vector>

#include "qkt/spin_algebra.hpp"
#include "qkt/types.hpp"

namespace qkt {

struct KickedTopParams {
  SpinSpace space;
  double kappa = 0.0;
  double alpha = 0.5 * pi;
};

// U = exp(-i kappa/(2j) J_z^2) exp(-i alpha J_y). The kick factor is diagonal
// in the J_z basis, so building U costs one row scaling beyond the rotation.
inline ComplexMatrix floquet_unitary(const KickedTopParams& p) {
  if (!(p.space.j > 0.0)) throw DomainError("floquet_unitary requires j > 0");
  if (!std::isfinite(p.kappa) || !std::isfinite(p.alpha))
    throw DomainError("kappa and alpha must be finite");

  ComplexMatrix u = rotation(p.space, Axis::y, p.alpha);
  const double scale = p.kappa / (2.0 * p.space.j);
  for (int q = 0; q < p.space.dim; ++q) {
    const double m = p.space.m(q);
    u.row(q) *= std::polar(1.0, -scale * m * m);
  }
  return u;
}

namespace detail {

// One application of U with a norm guard: drift beyond 1e-8 is an error,
// drift beyond 1e-12 is corrected so long runs do not accumulate it.
inline StateVector advance_state(const ComplexMatrix& u, const StateVector& psi) {
  StateVector next = u * psi;
  const double nrm = next.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    throw NumericError("state norm drifted beyond 1e-8 during evolution");
  if (std::abs(nrm - 1.0) > 1e-12) next /= nrm;
  return next;
}

// A -> U^dag A U with a hermiticity guard and re-symmetrization.
inline ComplexMatrix heisenberg_step(const ComplexMatrix& u, const ComplexMatrix& a) {
  ComplexMatrix next = u.adjoint() * a * u;
  if ((next - next.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericError("hermiticity drifted beyond 1e-8 during evolution");
  next = 0.5 * (next + next.adjoint()).eval();
  return next;
}

}  // namespace detail

// |psi(0)>, U|psi(0)>, ..., U^n|psi(0)>.
inline std::vector<StateVector> evolve_state(const ComplexMatrix& u,
                                             const StateVector& psi0, int n) {
  if (n < 0) throw DomainError("step count must be non-negative");
  if (u.rows() != u.cols() || u.cols() != psi0.size())
    throw DimensionMismatch("evolve_state: operator and state dimensions differ");
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(psi0);
  for (int t = 0; t < n; ++t) out.push_back(detail::advance_state(u, out.back()));
  return out;
}

// A(0), ..., A(n) with A(t+1) = U^dag A(t) U.
inline std::vector<ComplexMatrix> heisenberg_evolve(const ComplexMatrix& u,
                                                    const ComplexMatrix& a, int n) {
  if (n < 0) throw DomainError("step count must be non-negative");
  if (u.rows() != u.cols() || a.rows() != a.cols() || u.rows() != a.rows())
    throw DimensionMismatch("heisenberg_evolve: operator dimensions differ");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(a);
  for (int t = 0; t < n; ++t) out.push_back(detail::heisenberg_step(u, out.back()));
  return out;
}

// t_E = log(2j+1) / log(kappa/2), defined for kappa > 2.
inline double ehrenfest_time(const SpinSpace& s, double kappa) {
  if (!(kappa > 2.0)) throw DomainError("ehrenfest_time requires kappa > 2");
  return std::log(static_cast<double>(s.dim)) / std::log(0.5 * kappa);
}

}  // namespace qkt
