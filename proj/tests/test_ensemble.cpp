#include <doctest.h>

#include <cmath>

#include "qkt/ensemble.hpp"

using namespace qkt;

TEST_CASE("sampled ensembles are deterministic and in range") {
  const SpinSpace s = SpinSpace::from_j(9.5);
  EnsembleSpec spec;
  spec.count = 100;
  spec.seed = 31;

  const auto states = sample_states(s, spec);
  REQUIRE(states.size() == 100);
  for (const auto& psi : states) CHECK(std::abs(psi.norm() - 1.0) < 1e-12);

  const auto again = sample_states(s, spec);
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK((states[i] - again[i]).norm() == 0.0);  // bitwise reproducible

  EnsembleSpec single = spec;
  single.count = 1;
  const auto one = sample_states(s, single);
  CHECK((one[0] - states[0]).norm() == 0.0);
}

TEST_CASE("theta range is honored by both sampling modes") {
  const SpinSpace s = SpinSpace::from_j(4.5);
  const auto jz = build_jz(s);
  for (Sampling sampling : {Sampling::uniform_theta_phi, Sampling::uniform_sphere}) {
    EnsembleSpec spec;
    spec.count = 50;
    spec.seed = 5;
    spec.sampling = sampling;
    spec.theta_min = 0.2;
    spec.theta_max = 0.9;
    for (const auto& psi : sample_states(s, spec)) {
      // recover theta from <J_z>/j = cos(theta)
      const double mz = (psi.adjoint() * jz * psi).value().real() / s.j;
      const double theta = std::acos(std::clamp(mz, -1.0, 1.0));
      CHECK(theta >= 0.2 - 1e-9);
      CHECK(theta <= 0.9 + 1e-9);
    }
  }
}

TEST_CASE("ensemble spec validation") {
  const SpinSpace s = SpinSpace::from_j(1.0);
  EnsembleSpec bad;
  bad.count = 0;
  CHECK_THROWS_AS(sample_states(s, bad), DomainError);
  EnsembleSpec range;
  range.theta_max = 4.0;
  CHECK_THROWS_AS(sample_states(s, range), DomainError);
}

TEST_CASE("averaged series of a single member equals the member series") {
  const SpinSpace s = SpinSpace::from_j(15.5);
  const KickedTopParams params{s, 3.0};
  EnsembleSpec spec;
  spec.count = 1;
  spec.seed = 12;
  const auto cg = dynamics_partition(s.dim);

  const TimeSeries avg = averaged_series(params, OEQuantity{cg}, spec, 8);
  const auto psi = sample_states(s, spec)[0];
  const TimeSeries direct = oe_series(psi, cg, floquet_unitary(params), 8);
  REQUIRE(avg.values.size() == direct.values.size());
  for (std::size_t t = 0; t < avg.values.size(); ++t)
    CHECK(avg.values[t] == direct.values[t]);

  CHECK(avg.meta.kappa == 3.0);
  CHECK(avg.meta.ensemble == 1);
  CHECK(avg.meta.seed == 12);
  CHECK(avg.meta.quantity == "oe");
}

TEST_CASE("averaged series identical across worker counts") {
  const SpinSpace s = SpinSpace::from_j(11.5);
  const KickedTopParams params{s, 4.0};
  EnsembleSpec spec;
  spec.count = 12;
  spec.seed = 3;

  for (const Quantity& quantity :
       {Quantity{OEQuantity{dynamics_partition(s.dim)}}, Quantity{OTOCQuantity{}},
        Quantity{FOTOCQuantity{0.01}}}) {
    const TimeSeries serial = averaged_series(params, quantity, spec, 6, 1);
    const TimeSeries threaded = averaged_series(params, quantity, spec, 6, 4);
    REQUIRE(serial.values.size() == threaded.values.size());
    for (std::size_t t = 0; t < serial.values.size(); ++t)
      CHECK(serial.values[t] == threaded.values[t]);  // bitwise
  }
}

TEST_CASE("ensemble mean lies within the member envelope") {
  const SpinSpace s = SpinSpace::from_j(7.5);
  const KickedTopParams params{s, 5.0};
  EnsembleSpec spec;
  spec.count = 6;
  spec.seed = 9;
  const auto cg = dynamics_partition(s.dim);

  const TimeSeries avg = averaged_series(params, OEQuantity{cg}, spec, 10);
  const auto states = sample_states(s, spec);
  const auto u = floquet_unitary(params);
  std::vector<TimeSeries> members;
  for (const auto& psi : states) members.push_back(oe_series(psi, cg, u, 10));
  for (std::size_t t = 0; t < avg.values.size(); ++t) {
    double lo = members[0].values[t], hi = members[0].values[t];
    for (const auto& m : members) {
      lo = std::min(lo, m.values[t]);
      hi = std::max(hi, m.values[t]);
    }
    CHECK(avg.values[t] >= lo - 1e-12);
    CHECK(avg.values[t] <= hi + 1e-12);
  }
}
