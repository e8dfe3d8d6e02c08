// classical_map.hpp - classical limit of the kicked top on the unit sphere
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qkt/errors.hpp"
#include "qkt/rng.hpp"
#include "qkt/types.hpp"

namespace qkt {

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm2() const { return x * x + y * y + z * z; }
};

// One kick period:
//   X' =  Z cos(kX) + Y sin(kX)
//   Y' = -Z sin(kX) + Y cos(kX)
//   Z' = -X
// A composition of rotations, so the sphere is preserved; the output is
// renormalized only if the drift exceeds 1e-12.
inline PhasePoint classical_step(const PhasePoint& p, double kappa) {
  if (std::abs(p.norm2() - 1.0) > 1e-6)
    throw NotOnSphere("classical_step: input must lie on the unit sphere");
  const double a = kappa * p.x;
  const double c = std::cos(a);
  const double s = std::sin(a);
  PhasePoint out{p.z * c + p.y * s, -p.z * s + p.y * c, -p.x};
  const double n2 = out.norm2();
  if (std::abs(n2 - 1.0) > 1e-12) {
    const double inv = 1.0 / std::sqrt(n2);
    out.x *= inv;
    out.y *= inv;
    out.z *= inv;
  }
  return out;
}

struct PortraitPoint {
  int traj = 0;
  int step = 0;
  double theta = 0.0;
  double phi = 0.0;
};

namespace detail {
inline PortraitPoint to_angles(int traj, int step, const PhasePoint& p) {
  double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
  double phi = std::atan2(p.y, p.x);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return PortraitPoint{traj, step, theta, phi};
}
}  // namespace detail

// Iterates n_init starting points (uniform on the sphere: uniform phi,
// uniform cos theta) for n_steps kicks and emits every visited point,
// including the initial ones.
inline std::vector<PortraitPoint> phase_portrait(double kappa, int n_init,
                                                 int n_steps, std::uint64_t seed) {
  if (n_init < 1 || n_steps < 1)
    throw DomainError("phase_portrait: n_init and n_steps must be >= 1");
  std::vector<PortraitPoint> out;
  out.reserve(static_cast<std::size_t>(n_init) * (n_steps + 1));
  for (int traj = 0; traj < n_init; ++traj) {
    SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(traj));
    const double cz = rng.uniform(-1.0, 1.0);
    const double ph = rng.uniform(0.0, two_pi);
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    PhasePoint p{sz * std::cos(ph), sz * std::sin(ph), cz};
    out.push_back(detail::to_angles(traj, 0, p));
    for (int step = 1; step <= n_steps; ++step) {
      p = classical_step(p, kappa);
      out.push_back(detail::to_angles(traj, step, p));
    }
  }
  return out;
}

}  // namespace qkt
