#include <doctest.h>

#include <cmath>
#include <vector>

#include "qkt/entropy.hpp"
#include "test_helpers.hpp"

using namespace qkt;
using qkt_test::random_state;

namespace {

// Brute-force oracle: explicit dense projector matrices and
// p_i = Tr(Pi_i |psi><psi|). Never touches the block-sum path.
double oe_projector_oracle(const StateVector& psi, const CoarseGraining& cg) {
  const ComplexMatrix rho = psi * psi.adjoint();
  double total = 0.0;
  for (int i = 0; i < cg.block_count(); ++i) {
    ComplexMatrix proj = ComplexMatrix::Zero(cg.dim(), cg.dim());
    for (int q = cg.start(i); q < cg.start(i) + cg.volume(i); ++q) proj(q, q) = 1.0;
    const double p = (proj * rho).trace().real();
    if (p > 1e-300) total -= p * std::log(p / cg.volume(i));
  }
  return total;
}

}  // namespace

TEST_CASE("uniform partition construction") {
  const auto whole = uniform_partition(1024, 1024);
  CHECK(whole.block_count() == 1);
  CHECK(whole.volume(0) == 1024);

  const auto finest = uniform_partition(1024, 1);
  CHECK(finest.block_count() == 1024);

  const auto pairs = uniform_partition(8, 2);
  REQUIRE(pairs.block_count() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(pairs.start(i) == 2 * i);
    CHECK(pairs.volume(i) == 2);
  }

  CHECK_THROWS_AS(uniform_partition(10, 3), IndivisibleBlock);
  CHECK_THROWS_AS(uniform_partition(8, 0), IndivisibleBlock);
  CHECK_THROWS_AS(uniform_partition(8, 16), IndivisibleBlock);
}

TEST_CASE("half-half partition layout") {
  const auto cg = half_half_partition(400);
  REQUIRE(cg.block_count() == 150);
  for (int i = 0; i < 100; ++i) CHECK(cg.volume(i) == 2);
  for (int i = 100; i < 150; ++i) CHECK(cg.volume(i) == 4);
  CHECK(cg.start(100) == 200);

  const auto small = half_half_partition(8);
  REQUIRE(small.block_count() == 3);
  CHECK(small.volume(0) == 2);
  CHECK(small.volume(1) == 2);
  CHECK(small.volume(2) == 4);

  const auto big = half_half_partition(1024);
  int total = 0;
  for (int v : big.volumes()) total += v;
  CHECK(total == 1024);

  CHECK_THROWS_AS(half_half_partition(4), IndivisibleBlock);
  CHECK_THROWS_AS(half_half_partition(10), IndivisibleBlock);
  CHECK_THROWS_AS(half_half_partition(12), IndivisibleBlock);
}

TEST_CASE("swapped half-half and small-d fallback") {
  const auto swapped = half_half_partition_swapped(8);
  REQUIRE(swapped.block_count() == 3);
  CHECK(swapped.volume(0) == 4);
  CHECK(swapped.volume(2) == 2);

  CHECK(dynamics_partition(400) == half_half_partition(400));
  CHECK(dynamics_partition(6) == uniform_partition(6, 2));
  CHECK(dynamics_partition(2) == uniform_partition(2, 2));
  const auto odd = mu2_partition_merged(5);
  REQUIRE(odd.block_count() == 2);
  CHECK(odd.volume(0) == 2);
  CHECK(odd.volume(1) == 3);
}

TEST_CASE("refine splits blocks and is identity at factor 1") {
  CHECK(refine(uniform_partition(8, 4), 2) == uniform_partition(8, 2));
  const auto cg = half_half_partition(16);
  CHECK(refine(cg, 1) == cg);
  CHECK_THROWS_AS(refine(cg, 4), IndivisibleBlock);  // size-2 blocks do not split by 4

  std::vector<int> expected(8, 1);
  expected.insert(expected.end(), 4, 2);
  CHECK(refine(cg, 2) == CoarseGraining(16, expected));
}

TEST_CASE("observational entropy of pure states") {
  const int d = 8;
  StateVector basis = StateVector::Zero(d);
  basis[0] = 1.0;

  CHECK(observational_entropy(basis, uniform_partition(d, 1)).total == doctest::Approx(0.0));
  CHECK(observational_entropy(basis, uniform_partition(d, d)).total ==
        doctest::Approx(std::log(static_cast<double>(d))).epsilon(1e-12));
  // state inside one block of volume V -> log V
  CHECK(observational_entropy(basis, uniform_partition(d, 2)).total ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  StateVector uniform = StateVector::Constant(d, Complex(1.0 / std::sqrt(8.0), 0.0));
  const OEResult r = observational_entropy(uniform, uniform_partition(d, 2));
  for (double p : r.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(std::log(8.0)).epsilon(1e-12));

  CHECK_THROWS_AS(observational_entropy(basis, uniform_partition(16, 2)),
                  DimensionMismatch);
}

TEST_CASE("decomposition total = shannon + boltzmann") {
  const SpinSpace s = SpinSpace::from_j(31.5);
  const auto psi = coherent_state(s, 1.1, 0.7);
  const auto cg = half_half_partition(s.dim);
  const OEResult r = observational_entropy(psi, cg);
  CHECK(r.total == r.shannon + r.boltzmann);  // exact as stored
  double psum = 0.0;
  for (double p : r.probs) psum += p;
  CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.total >= 0.0);
  CHECK(r.total <= std::log(static_cast<double>(s.dim)) + 1e-10);
}

TEST_CASE("mixed-state observational entropy") {
  const int d = 4;
  const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  for (int mu : {1, 2, 4})
    CHECK(observational_entropy(mixed, uniform_partition(d, mu)).total ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));

  StateVector basis = StateVector::Zero(d);
  basis[0] = 1.0;
  const auto cg = uniform_partition(d, 2);
  CHECK(observational_entropy(pure_density(basis), cg).total ==
        doctest::Approx(observational_entropy(basis, cg).total).epsilon(1e-12));

  ComplexMatrix half = ComplexMatrix::Zero(d, d);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  const OEResult r = observational_entropy(half, cg);
  CHECK(r.probs[0] == doctest::Approx(1.0));
  CHECK(r.probs[1] == doctest::Approx(0.0));
  CHECK(r.total == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const ComplexMatrix doubled = 2.0 * mixed;
  CHECK_THROWS_AS(observational_entropy(doubled, cg), NotDensityMatrix);
}

TEST_CASE("retrodicted state") {
  const int d = 6;
  StateVector basis = StateVector::Zero(d);
  basis[0] = 1.0;
  const auto cg = uniform_partition(d, 2);

  const ComplexMatrix rec = retrodicted_state(basis, cg);
  CHECK(rec(0, 0).real() == doctest::Approx(0.5));
  CHECK(rec(1, 1).real() == doctest::Approx(0.5));
  CHECK(rec(2, 2).real() == doctest::Approx(0.0));
  CHECK(std::abs(rec.trace() - Complex(1.0, 0.0)) < 1e-12);

  // roughest coarse-graining retrodicts the maximally mixed state
  const ComplexMatrix rough = retrodicted_state(basis, uniform_partition(d, d));
  CHECK(qkt_test::max_abs(rough - ComplexMatrix::Identity(d, d) / static_cast<double>(d)) <
        1e-14);

  // idempotence under the same coarse-graining
  const auto psi = random_state(d, 7, 0);
  const ComplexMatrix once = retrodicted_state(psi, cg);
  const ComplexMatrix twice = retrodicted_state(once, cg);
  CHECK(qkt_test::max_abs(twice - once) < 1e-12);
}

TEST_CASE("KL divergence") {
  const std::vector<double> p{1.0, 0.0};
  const std::vector<double> q{0.5, 0.5};
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
  CHECK(kl_divergence(p, q) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const std::vector<double> a{0.5, 0.5};
  const std::vector<double> b{0.25, 0.75};
  CHECK(kl_divergence(a, b) ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(kl_divergence(q, p), SupportMismatch);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(kl_divergence(p, wrong), DimensionMismatch);
}

TEST_CASE("Umegaki relative entropy") {
  const int d = 4;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.2;
  CHECK(umegaki_relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));

  // commuting diagonal case reduces to classical KL
  ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
  sigma(0, 0) = 0.25;
  sigma(1, 1) = 0.25;
  sigma(2, 2) = 0.25;
  sigma(3, 3) = 0.25;
  const std::vector<double> p{0.5, 0.3, 0.2, 0.0};
  const std::vector<double> q{0.25, 0.25, 0.25, 0.25};
  CHECK(umegaki_relative_entropy(rho, sigma) ==
        doctest::Approx(kl_divergence(p, q)).epsilon(1e-10));

  // support violation: sigma misses part of rho's support
  ComplexMatrix narrow = ComplexMatrix::Zero(d, d);
  narrow(0, 0) = 1.0;
  CHECK_THROWS_AS(umegaki_relative_entropy(rho, narrow), SupportMismatch);
}

TEST_CASE("prediction/retrodiction check on hand examples") {
  const int d = 4;
  StateVector basis = StateVector::Zero(d);
  basis[0] = 1.0;

  const auto finest = prediction_retrodiction_check(basis, uniform_partition(d, 1));
  CHECK(finest.oe_minus_vn == doctest::Approx(0.0));
  CHECK(finest.kl == doctest::Approx(0.0));
  CHECK(finest.umegaki == doctest::Approx(0.0));

  const auto pairs = prediction_retrodiction_check(basis, uniform_partition(d, 2));
  CHECK(pairs.oe_minus_vn == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(pairs.kl == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(pairs.umegaki == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("retrodiction identity for random pure states") {
  const int d = 64;
  for (int mu : {1, 2, 4, 8}) {
    const auto cg = uniform_partition(d, mu);
    for (std::uint64_t k = 0; k < 100; ++k) {
      const auto psi = random_state(d, 11, k);
      const auto res = prediction_retrodiction_check(psi, cg);
      CHECK(std::abs(res.oe_minus_vn - res.kl) <= 1e-8);
      CHECK(res.oe_minus_vn >= res.umegaki - 1e-8);
    }
  }
  // coherent state variant of the same identity
  const SpinSpace s = SpinSpace::from_dim(d);
  const auto res =
      prediction_retrodiction_check(coherent_state(s, 0.8, 1.9), uniform_partition(d, 4));
  CHECK(std::abs(res.oe_minus_vn - res.kl) <= 1e-8);
  CHECK(res.oe_minus_vn >= res.umegaki - 1e-8);
}

TEST_CASE("retrodiction check on a mixed state exercises the general joints") {
  const int d = 8;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 0.6;
  rho(1, 1) = 0.2;
  rho(2, 2) = 0.1;
  rho(4, 4) = 0.1;
  rho(1, 2) = rho(2, 1) = 0.1;  // coherence across a block boundary
  const auto cg = uniform_partition(d, 2);
  const auto res = prediction_retrodiction_check(rho, cg);
  CHECK(std::abs(res.oe_minus_vn - res.kl) <= 1e-8);
  CHECK(res.oe_minus_vn >= res.umegaki - 1e-8);
  // rho_rec is diagonal in the measurement basis, so Tr[rho log rho_rec]
  // sees only the diagonal of rho and the bound is saturated here
  CHECK(std::abs(res.oe_minus_vn - res.umegaki) <= 1e-8);
}

TEST_CASE("OE monotone under refinement") {
  const int d = 64;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto psi = random_state(d, 23, k);
    CoarseGraining cg = uniform_partition(d, 16);
    double prev = observational_entropy(psi, cg).total;
    while (cg.volume(0) > 1) {
      cg = refine(cg, 2);
      const double fine = observational_entropy(psi, cg).total;
      CHECK(prev >= fine - 1e-10);
      prev = fine;
    }
  }
}

TEST_CASE("OE bounded below by von Neumann entropy for mixed states") {
  const int d = 16;
  // random diagonal-dominant density matrix
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto a = random_state(d, 31, 2 * k);
    const auto b = random_state(d, 31, 2 * k + 1);
    const ComplexMatrix rho = 0.6 * pure_density(a) + 0.4 * pure_density(b);
    const double svn = von_neumann_entropy(rho);
    for (int mu : {2, 4, 8, 16})
      CHECK(svn <= observational_entropy(rho, uniform_partition(d, mu)).total + 1e-8);
  }
}

TEST_CASE("fast block-sum path equals the projector oracle") {
  for (int d : {8, 16, 64}) {
    std::vector<CoarseGraining> partitions;
    partitions.push_back(uniform_partition(d, 2));
    partitions.push_back(uniform_partition(d, d / 2));
    partitions.push_back(dynamics_partition(d));
    partitions.push_back(mu2_partition_merged(d));
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto psi = random_state(d, 47, k);
      for (const auto& cg : partitions) {
        const double fast = observational_entropy(psi, cg).total;
        CHECK(std::abs(fast - oe_projector_oracle(psi, cg)) <= 1e-12);
      }
    }
  }
}
