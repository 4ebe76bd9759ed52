#include <random>

#include "doctest.h"
#include "soti/entanglement.hpp"
#include "test_support.hpp"

using namespace soti;

TEST_CASE("reference states") {
  CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(maximally_mixed()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(purity(maximally_mixed()) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("werner family against the closed forms") {
  for (double v : {0.2, 0.5, 0.8, 0.9}) {
    const TwoQubitState w = werner_state(v);
    const double c_expected = std::max(0.0, (3 * v - 1) / 2);
    const double p_expected = (1 + 3 * v * v) / 4;
    CHECK(concurrence(w) == doctest::Approx(c_expected).epsilon(1e-10));
    CHECK(purity(w) == doctest::Approx(p_expected).epsilon(1e-10));
    // direct matrix-product route for the purity
    CHECK((w.rho * w.rho).trace().real() == doctest::Approx(p_expected).epsilon(1e-12));
  }
  // v = 0.8 pinned numerically: (1 + 3 * 0.64) / 4
  CHECK(purity(werner_state(0.8)) == doctest::Approx(0.73).epsilon(1e-12));
  CHECK_THROWS_AS(werner_state(1.5), SpecError);
}

TEST_CASE("invalid density matrices are rejected") {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() * 0.25;
  m(0, 1) = complexd(0.3, 0.1);  // not hermitian
  CHECK_THROWS_AS(TwoQubitState{m}, SpecError);

  m = Eigen::Matrix4cd::Identity() * 0.3;  // trace 1.2
  CHECK_THROWS_AS(TwoQubitState{m}, SpecError);

  m = Eigen::Matrix4cd::Zero();  // negative eigenvalue
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(TwoQubitState{m}, SpecError);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> uv(0.4, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoQubitState state = werner_state(uv(rng));
    const double c0 = concurrence(state);
    Eigen::Matrix4cd local = Eigen::Matrix4cd::Zero();
    const Eigen::MatrixXcd ua = test::random_unitary(2, rng);
    const Eigen::MatrixXcd ub = test::random_unitary(2, rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        local.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
    const TwoQubitState rotated(local * state.rho * local.adjoint());
    CHECK(concurrence(rotated) == doctest::Approx(c0).epsilon(1e-10));
  }
}

TEST_CASE("white-noise channel") {
  SUBCASE("full visibility is the identity") {
    const TwoQubitState out = apply_white_noise(bell_phi_plus(), 1.0);
    CHECK((out.rho - bell_phi_plus().rho).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("bell at half visibility is the v = 1/2 werner state") {
    const TwoQubitState out = apply_white_noise(bell_phi_plus(), 0.5);
    CHECK(concurrence(out) == doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("concurrence and purity are monotone in the visibility") {
    double prev_c = -1, prev_p = 0;
    for (double v = 0.0; v <= 1.0; v += 0.05) {
      const TwoQubitState s = werner_state(v);
      CHECK(concurrence(s) >= prev_c - 1e-12);
      CHECK(purity(s) >= prev_p - 1e-12);
      prev_c = concurrence(s);
      prev_p = purity(s);
    }
  }
  SUBCASE("channel output is always a valid state") {
    for (double v : {0.0, 0.3, 0.7, 1.0}) CHECK_NOTHROW(apply_white_noise(bell_phi_plus(), v));
    CHECK_THROWS_AS(apply_white_noise(bell_phi_plus(), 1.2), SpecError);
  }
}

TEST_CASE("lattice channel ties visibility to confinement") {
  const Evolver ev(finite_hamiltonian(topological_scenario_spec()));
  const LatticeGeometry& g = ev.solution().geometry;
  const PhotonState inj = make_single_site(g, 0, 0);
  const ChannelModel model{1.0};

  const TwoQubitState out = lattice_channel(bell_phi_plus(), ev, inj, 0, 0.0, model);
  CHECK((out.rho - bell_phi_plus().rho).cwiseAbs().maxCoeff() < 1e-12);  // xi(0) = 1

  const TwoQubitState at11 = lattice_channel(bell_phi_plus(), ev, inj, 0, 11.0, model);
  CHECK(concurrence(at11) > 0.9);
}

TEST_CASE("entanglement sweep: ordering and thresholds") {
  SweepOptions opt;
  opt.disorder_realizations = 8;  // light ensemble for the unit suite
  opt.z_grid = {0, 5.5, 11.0};

  SUBCASE("default visibility map") {
    const SweepReport rep = entanglement_sweep(opt);
    CHECK(rep.ordering_holds);

    for (Scenario s : {Scenario::Topological, Scenario::TopologicalDisordered, Scenario::Trivial,
                       Scenario::UniformWalk}) {
      CHECK(rep.at(s, 0.0).concurrence == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(rep.at(s, 0.0).purity == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(rep.at(Scenario::Topological, 11.0).concurrence > 0.9);
    CHECK(rep.at(Scenario::TopologicalDisordered, 11.0).concurrence > 0.9);
    CHECK(rep.at(Scenario::Trivial, 11.0).concurrence < 0.9);
    CHECK(rep.at(Scenario::UniformWalk, 11.0).concurrence < 0.8);
  }

  SUBCASE("squared visibility map keeps the ordering") {
    opt.model.exponent = 2.0;
    const SweepReport rep = entanglement_sweep(opt);
    CHECK(rep.ordering_holds);
  }
}
