#include <random>

#include "doctest.h"
#include "soti/coupler.hpp"
#include "test_support.hpp"

using namespace soti;

namespace {

/// The canonical unitary written out entrywise: -(1/4) of the integer/2i
/// pattern with 0 in the entry-entry corner.
Eigen::MatrixXcd canonical_unitary_reference() {
  Eigen::MatrixXcd u(5, 5);
  const complexd ti(0.0, 2.0);
  u << 0, ti, ti, ti, ti,
      ti, -3, 1, 1, 1,
      ti, 1, -3, 1, 1,
      ti, 1, 1, -3, 1,
      ti, 1, 1, 1, -3;
  return -0.25 * u;
}

}  // namespace

TEST_CASE("star-graph hamiltonian and its spectrum") {
  const CouplerSpec spec{1.0, 0.5};
  const Eigen::MatrixXcd h = coupler_hamiltonian(spec);
  CHECK(hermiticity_violation(h) == 0.0);
  for (int j = 1; j <= 4; ++j) {
    CHECK(h(0, j) == complexd(1.0));
    for (int k = 1; k <= 4; ++k) CHECK(h(j, k) == complexd(0.0));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(4) == doctest::Approx(2.0).epsilon(1e-12));
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(es.eigenvalues()(i)) < 1e-12);

  CHECK_THROWS_AS(coupler_hamiltonian(CouplerSpec{0.0, 1.0}), SpecError);
  CHECK_THROWS_AS(coupler_hamiltonian(CouplerSpec{1.0, -1.0}), SpecError);
}

TEST_CASE("canonical-length unitary matches the closed-form matrix entrywise") {
  CouplerSpec spec{0.8, 0.0};
  spec.length_mm = spec.canonical_length();
  CHECK(spec.is_canonical());
  const Eigen::MatrixXcd u = coupler_unitary(spec);
  CHECK((u - canonical_unitary_reference()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("entry-port input fans out uniformly at canonical length") {
  CouplerSpec spec{1.3, 0.0};
  spec.length_mm = spec.canonical_length();
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(5);
  in(0) = 1.0;
  const Eigen::VectorXcd out = coupler_unitary(spec) * in;

  // equals (i/2)[0 1 1 1 1]^T up to a global phase; probabilities 1/4 each
  Eigen::VectorXcd reference(5);
  reference << 0, complexd(0, 0.5), complexd(0, 0.5), complexd(0, 0.5), complexd(0, 0.5);
  CHECK(std::abs(std::abs(reference.dot(out)) - 1.0) < 1e-12);
  CHECK(std::abs(out(0)) < 1e-12);
  for (int j = 1; j <= 4; ++j) CHECK(std::norm(out(j)) == doctest::Approx(0.25).epsilon(1e-12));
  // equal phases across the four outputs
  for (int j = 2; j <= 4; ++j) CHECK(std::abs(out(j) - out(1)) < 1e-12);
  CHECK(out.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupler unitary properties and the expm oracle") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uc(0.2, 2.0), ul(0.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const CouplerSpec spec{uc(rng), ul(rng)};
    const Eigen::MatrixXcd u = coupler_unitary(spec);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXcd oracle =
        test::expm(complexd(0, -spec.length_mm) * coupler_hamiltonian(spec));
    CHECK((u - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
  // L = 0 is the identity
  CHECK((coupler_unitary(CouplerSpec{1.0, 0.0}) - Eigen::MatrixXcd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("prepared superposition lands on the lattice corners") {
  const LatticeGeometry g{8, 8};
  CouplerSpec spec{1.0, 0.0};
  spec.length_mm = spec.canonical_length();

  const PreparedInjection prep = prepare_superposition(spec, g);
  CHECK(prep.uniform);
  CHECK(prep.entry_leakage < 1e-24);
  CHECK((prep.state.amplitudes - make_corner_superposition(g).amplitudes).norm() < 1e-12);
  for (int c : g.corner_sites()) CHECK(prep.state.amplitudes(c) == complexd(0.5, 0.0));
  CHECK(std::abs(prep.state.amplitudes.norm() - 1.0) < 1e-12);
}

TEST_CASE("off-canonical coupler length is flagged and leaks into the entry port") {
  CouplerSpec spec{1.0, 0.0};
  spec.length_mm = kPi / (6.0 * spec.coupling_strength);
  const LatticeGeometry g{8, 8};
  const PreparedInjection prep = prepare_superposition(spec, g);
  CHECK_FALSE(prep.uniform);
  CHECK(prep.entry_leakage == doctest::Approx(0.25).epsilon(1e-12));  // cos^2(pi/3)
  // the four lattice amplitudes are still mutually equal after renormalization
  const auto corners = g.corner_sites();
  for (int c : corners)
    CHECK(std::abs(prep.state.amplitudes(c) - prep.state.amplitudes(corners[0])) < 1e-12);
}
