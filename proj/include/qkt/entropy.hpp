// entropy.hpp - observational entropy, retrodiction and relative entropies
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qkt/coarse_graining.hpp"
#include "qkt/spin_algebra.hpp"
#include "qkt/types.hpp"

namespace qkt {

struct OEResult {
  double total = 0.0;      // -sum_i p_i log(p_i / V_i), nats
  double shannon = 0.0;    // -sum_i p_i log p_i
  double boltzmann = 0.0;  // sum_i p_i log V_i
  std::vector<double> probs;
};

// p_i = sum of |psi_q|^2 over block i.
inline std::vector<double> block_probabilities(const StateVector& psi,
                                               const CoarseGraining& cg) {
  if (psi.size() != cg.dim())
    throw DimensionMismatch("block_probabilities: state and partition dimensions differ");
  std::vector<double> probs(static_cast<std::size_t>(cg.block_count()));
  for (int i = 0; i < cg.block_count(); ++i)
    probs[static_cast<std::size_t>(i)] =
        psi.segment(cg.start(i), cg.volume(i)).squaredNorm();
  return probs;
}

namespace detail {

// Projectors are diagonal in this basis, so Tr(Pi_i rho) is a partial trace
// over the block's diagonal.
inline std::vector<double> block_probabilities_diag(const ComplexMatrix& rho,
                                                    const CoarseGraining& cg) {
  std::vector<double> probs(static_cast<std::size_t>(cg.block_count()));
  for (int i = 0; i < cg.block_count(); ++i) {
    double p = 0.0;
    for (int q = cg.start(i); q < cg.start(i) + cg.volume(i); ++q)
      p += rho(q, q).real();
    probs[static_cast<std::size_t>(i)] = p;
  }
  return probs;
}

inline OEResult oe_from_probs(std::vector<double> probs, const CoarseGraining& cg) {
  OEResult r;
  for (int i = 0; i < cg.block_count(); ++i) {
    const double p = probs[static_cast<std::size_t>(i)];
    if (p > 0.0) {
      r.shannon -= p * std::log(p);
      r.boltzmann += p * std::log(static_cast<double>(cg.volume(i)));
    }
  }
  r.total = r.shannon + r.boltzmann;
  r.probs = std::move(probs);
  return r;
}

}  // namespace detail

inline OEResult observational_entropy(const StateVector& psi,
                                      const CoarseGraining& cg) {
  return detail::oe_from_probs(block_probabilities(psi, cg), cg);
}

inline OEResult observational_entropy(const ComplexMatrix& rho,
                                      const CoarseGraining& cg) {
  if (rho.rows() != cg.dim())
    throw DimensionMismatch("observational_entropy: density matrix and partition dimensions differ");
  detail::density_eigs(rho);  // validates; throws NotDensityMatrix
  return detail::oe_from_probs(detail::block_probabilities_diag(rho, cg), cg);
}

namespace detail {
inline ComplexMatrix retrodicted_from_probs(const std::vector<double>& probs,
                                            const CoarseGraining& cg) {
  ComplexMatrix rec = ComplexMatrix::Zero(cg.dim(), cg.dim());
  for (int i = 0; i < cg.block_count(); ++i) {
    const double fill = probs[static_cast<std::size_t>(i)] / cg.volume(i);
    for (int q = cg.start(i); q < cg.start(i) + cg.volume(i); ++q)
      rec(q, q) = fill;
  }
  return rec;
}
}  // namespace detail

// rho_rec = sum_i (p_i / V_i) Pi_i, the state inferred from coarse-grained
// measurement statistics.
inline ComplexMatrix retrodicted_state(const StateVector& psi,
                                       const CoarseGraining& cg) {
  return detail::retrodicted_from_probs(block_probabilities(psi, cg), cg);
}

inline ComplexMatrix retrodicted_state(const ComplexMatrix& rho,
                                       const CoarseGraining& cg) {
  if (rho.rows() != cg.dim())
    throw DimensionMismatch("retrodicted_state: density matrix and partition dimensions differ");
  detail::density_eigs(rho);
  return detail::retrodicted_from_probs(detail::block_probabilities_diag(rho, cg), cg);
}

// sum_i p_i log(p_i / q_i) with 0 log 0 := 0. q need not be normalized (the
// prediction/retrodiction joints are not), but p must be absolutely
// continuous with respect to q.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw DimensionMismatch("kl_divergence: distributions must have equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0)
      throw SupportMismatch("kl_divergence: support of p must lie inside support of q");
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

// Tr[rho (log rho - log sigma)] via eigendecompositions.
inline double umegaki_relative_entropy(const ComplexMatrix& rho,
                                       const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("umegaki_relative_entropy: dimensions differ");
  const auto es_rho = detail::density_eigs(rho);
  const auto es_sigma = detail::density_eigs(sigma);

  double sum = 0.0;
  for (int i = 0; i < es_rho.eigenvalues().size(); ++i) {
    const double lam = es_rho.eigenvalues()[i];
    if (lam > 0.0) sum += lam * std::log(lam);
  }
  constexpr double support_tol = 1e-12;
  for (int k = 0; k < es_sigma.eigenvalues().size(); ++k) {
    const double s = es_sigma.eigenvalues()[k];
    const auto vk = es_sigma.eigenvectors().col(k);
    const double weight = (vk.adjoint() * rho * vk).value().real();
    if (s <= support_tol) {
      if (weight > 1e-10)
        throw SupportMismatch("umegaki_relative_entropy: support of rho must lie inside support of sigma");
      continue;
    }
    sum -= weight * std::log(s);
  }
  return sum;
}

struct RetrodictionCheck {
  double oe_minus_vn = 0.0;  // S_chi(rho) - S_vN(rho)
  double kl = 0.0;           // D_KL(P_p || P_r)
  double umegaki = 0.0;      // D(rho || rho_rec)
};

namespace detail {

// Joint prediction/retrodiction distributions over (block i, eigenvector k):
// P_p(i,k) = lambda_k <phi_k|Pi_i|phi_k>, P_r(i,k) = (p_i/V_i) <phi_k|Pi_i|phi_k>.
// Their KL divergence telescopes to S_chi - S_vN.
inline RetrodictionCheck retrodiction_check_impl(
    const std::vector<std::pair<double, StateVector>>& eigenpairs,
    const std::vector<double>& probs, double s_vn, double umegaki,
    const CoarseGraining& cg) {
  double oe_total = 0.0;
  for (int i = 0; i < cg.block_count(); ++i) {
    const double p = probs[static_cast<std::size_t>(i)];
    if (p > 0.0) oe_total -= p * std::log(p / cg.volume(i));
  }

  std::vector<double> pp, pr;
  pp.reserve(probs.size() * eigenpairs.size());
  pr.reserve(probs.size() * eigenpairs.size());
  for (const auto& [lam, phi] : eigenpairs) {
    const std::vector<double> overlap = block_probabilities(phi, cg);
    for (int i = 0; i < cg.block_count(); ++i) {
      const double g = overlap[static_cast<std::size_t>(i)];
      pp.push_back(lam * g);
      pr.push_back(probs[static_cast<std::size_t>(i)] / cg.volume(i) * g);
    }
  }

  RetrodictionCheck out;
  out.oe_minus_vn = oe_total - s_vn;
  out.kl = kl_divergence(pp, pr);
  out.umegaki = umegaki;
  if (std::abs(out.oe_minus_vn - out.kl) > 1e-8)
    throw NumericError("retrodiction identity violated beyond 1e-8");
  if (out.umegaki > out.oe_minus_vn + 1e-8)
    throw NumericError("retrodiction inequality violated beyond 1e-8");
  return out;
}

}  // namespace detail

// Pure-state check of the retrodiction identity and inequality. The
// eigendecomposition is trivial (a single unit eigenvalue), and
// D(rho||rho_rec) reduces to -<psi| log rho_rec |psi> on the diagonal.
inline RetrodictionCheck prediction_retrodiction_check(const StateVector& psi,
                                                       const CoarseGraining& cg) {
  const std::vector<double> probs = block_probabilities(psi, cg);
  double umegaki = 0.0;
  for (int i = 0; i < cg.block_count(); ++i) {
    const double p = probs[static_cast<std::size_t>(i)];
    if (p > 0.0) umegaki -= p * std::log(p / cg.volume(i));
  }
  std::vector<std::pair<double, StateVector>> eigenpairs;
  eigenpairs.emplace_back(1.0, psi);
  return detail::retrodiction_check_impl(eigenpairs, probs, 0.0, umegaki, cg);
}

// Mixed-state variant using the full eigendecomposition of rho.
inline RetrodictionCheck prediction_retrodiction_check(const ComplexMatrix& rho,
                                                       const CoarseGraining& cg) {
  if (rho.rows() != cg.dim())
    throw DimensionMismatch("prediction_retrodiction_check: dimensions differ");
  const auto es = detail::density_eigs(rho);
  double s_vn = 0.0;
  std::vector<std::pair<double, StateVector>> eigenpairs;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()[k];
    if (lam <= 1e-12) continue;
    s_vn -= lam * std::log(lam);
    eigenpairs.emplace_back(lam, es.eigenvectors().col(k));
  }
  const std::vector<double> probs = detail::block_probabilities_diag(rho, cg);
  const double umegaki = umegaki_relative_entropy(rho, detail::retrodicted_from_probs(probs, cg));
  return detail::retrodiction_check_impl(eigenpairs, probs, s_vn, umegaki, cg);
}

}  // namespace qkt
