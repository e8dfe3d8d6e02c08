// ensemble.hpp - seeded coherent-state ensembles and averaged diagnostics
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qkt/diagnostics.hpp"
#include "qkt/parallel.hpp"
#include "qkt/rng.hpp"

namespace qkt {

enum class Sampling {
  uniform_theta_phi,  // theta uniform on [theta_min, theta_max]
  uniform_sphere      // cos(theta) uniform (area-uniform on the sphere)
};

struct EnsembleSpec {
  int count = 100;
  std::uint64_t seed = 1;
  Sampling sampling = Sampling::uniform_theta_phi;
  double theta_min = 0.0;
  double theta_max = pi;
  double phi_min = 0.0;
  double phi_max = two_pi;
};

namespace detail {
inline void validate(const EnsembleSpec& spec) {
  if (spec.count < 1) throw DomainError("ensemble count must be >= 1");
  if (!(spec.theta_min >= 0.0 && spec.theta_min <= spec.theta_max &&
        spec.theta_max <= pi))
    throw DomainError("ensemble theta range must lie in [0, pi]");
  if (!(spec.phi_min >= 0.0 && spec.phi_min <= spec.phi_max &&
        spec.phi_max <= two_pi))
    throw DomainError("ensemble phi range must lie in [0, 2*pi]");
}
}  // namespace detail

// Member i draws from its own counter-based stream, so the ensemble is
// reproducible bit-for-bit for a fixed (seed, spec) and any worker count.
inline std::vector<StateVector> sample_states(const SpinSpace& space,
                                              const EnsembleSpec& spec) {
  detail::validate(spec);
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    SplitMix64 rng = stream_rng(spec.seed, static_cast<std::uint64_t>(i));
    double theta = 0.0;
    if (spec.sampling == Sampling::uniform_theta_phi) {
      theta = rng.uniform(spec.theta_min, spec.theta_max);
    } else {
      const double c = rng.uniform(std::cos(spec.theta_max), std::cos(spec.theta_min));
      theta = std::acos(std::clamp(c, -1.0, 1.0));
    }
    const double phi = rng.uniform(spec.phi_min, spec.phi_max);
    states.push_back(coherent_state(space, theta, phi));
  }
  return states;
}

// Quantity to average over the ensemble.
struct OEQuantity {
  CoarseGraining cg;
};
struct OTOCQuantity {};  // A = J_z
struct FOTOCQuantity {
  double delta = 0.01;
};
using Quantity = std::variant<OEQuantity, OTOCQuantity, FOTOCQuantity>;

namespace detail {

inline TimeSeries mean_of(const std::vector<std::vector<double>>& member,
                          int n, const KickedTopParams& params,
                          const EnsembleSpec& spec, const std::string& tag) {
  TimeSeries ts = make_series(n, tag, params.space.j);
  ts.meta.kappa = params.kappa;
  ts.meta.alpha = params.alpha;
  ts.meta.ensemble = spec.count;
  ts.meta.seed = spec.seed;
  for (int t = 0; t <= n; ++t) {
    double acc = 0.0;
    for (const auto& series : member) acc += series[static_cast<std::size_t>(t)];
    ts.values.push_back(acc / static_cast<double>(spec.count));
  }
  return ts;
}

// Ensemble OTOC shares the Heisenberg stream A(t) across members: the
// operator update is the d^3 cost, member evaluations are matrix-vector.
inline TimeSeries averaged_otoc(const ComplexMatrix& u,
                                const std::vector<StateVector>& states,
                                const KickedTopParams& params,
                                const EnsembleSpec& spec, int n,
                                unsigned workers) {
  const ComplexMatrix a = build_jz(params.space);
  std::vector<StateVector> a_psi(states.size());
  parallel_for(states.size(), workers,
               [&](std::size_t i) { a_psi[i] = a * states[i]; });

  std::vector<std::vector<double>> member(
      states.size(), std::vector<double>(static_cast<std::size_t>(n) + 1));
  ComplexMatrix at = a;
  for (int t = 0; t <= n; ++t) {
    parallel_for(states.size(), workers, [&](std::size_t i) {
      const StateVector w = at * a_psi[i] - a * (at * states[i]);
      member[i][static_cast<std::size_t>(t)] = 0.5 * w.squaredNorm();
    });
    if (t < n) at = heisenberg_step(u, at);
  }
  return mean_of(member, n, params, spec, "otoc");
}

}  // namespace detail

// Pointwise arithmetic mean of the per-member series; members are summed in
// index order, so the result is independent of the worker count.
inline TimeSeries averaged_series(const KickedTopParams& params,
                                  const Quantity& quantity,
                                  const EnsembleSpec& spec, int n,
                                  unsigned workers = 0) {
  if (n < 1) throw DomainError("averaged_series: needs at least one step");
  if (workers == 0) workers = worker_count();
  const std::vector<StateVector> states = sample_states(params.space, spec);
  const ComplexMatrix u = floquet_unitary(params);

  if (std::holds_alternative<OTOCQuantity>(quantity))
    return detail::averaged_otoc(u, states, params, spec, n, workers);

  std::vector<std::vector<double>> member(states.size());
  if (const auto* oe = std::get_if<OEQuantity>(&quantity)) {
    if (oe->cg.dim() != params.space.dim)
      throw DimensionMismatch("averaged_series: partition dimension differs");
    parallel_for(states.size(), workers, [&](std::size_t i) {
      member[i] = oe_series(states[i], oe->cg, u, n).values;
    });
    return detail::mean_of(member, n, params, spec, "oe");
  }

  const auto& fq = std::get<FOTOCQuantity>(quantity);
  const ComplexMatrix w = rotation(params.space, Axis::x, fq.delta);
  parallel_for(states.size(), workers, [&](std::size_t i) {
    member[i] = fotoc_with_perturbation(states[i], w, u, n).values;
  });
  return detail::mean_of(member, n, params, spec, "fotoc");
}

}  // namespace qkt
