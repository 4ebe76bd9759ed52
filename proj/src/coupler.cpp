#include "soti/coupler.hpp"

#include <cmath>
#include <set>

namespace soti {

void CouplerSpec::validate() const {
  if (!(coupling_strength > 0)) throw SpecError("coupler coupling strength must be positive");
  if (length_mm < 0) throw SpecError("coupler length must be non-negative");
}

bool CouplerSpec::is_canonical(double tol) const {
  return std::abs(length_mm - canonical_length()) <= tol * canonical_length();
}

Eigen::MatrixXcd coupler_hamiltonian(const CouplerSpec& spec) {
  spec.validate();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(5, 5);
  for (int j = 1; j <= 4; ++j) {
    h(0, j) = spec.coupling_strength;
    h(j, 0) = spec.coupling_strength;
  }
  return h;
}

Eigen::MatrixXcd coupler_unitary(const CouplerSpec& spec) {
  spec.validate();
  // Bright subspace: |e> and |s> = (1/2) sum_j |j>, H = 2c sigma_x there;
  // everything orthogonal to |s> among the outputs is dark.
  const double theta = 2.0 * spec.coupling_strength * spec.length_mm;
  const double cs = std::cos(theta), sn = std::sin(theta);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(5, 5);
  u(0, 0) = cs;
  for (int j = 1; j <= 4; ++j) {
    u(0, j) = complexd(0.0, -sn) * 0.5;
    u(j, 0) = complexd(0.0, -sn) * 0.5;
    for (int k = 1; k <= 4; ++k) u(j, k) += (cs - 1.0) * 0.25;
  }
  return u;
}

PreparedInjection prepare_superposition(const CouplerSpec& spec, const LatticeGeometry& g) {
  const auto corners = g.corner_sites();
  if (corners.size() != 4 || std::set<int>(corners.begin(), corners.end()).size() != 4)
    throw SpecError("prepare_superposition needs four distinct corner sites");

  const Eigen::MatrixXcd u = coupler_unitary(spec);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(5);
  in(0) = 1.0;
  const Eigen::VectorXcd out = u * in;
  if (out.tail(4).norm() < 1e-12)
    throw SpecError("coupler transfers no amplitude into the output ports at this length");

  // hand the four output ports to the corners; the common output phase is a
  // global phase of the lattice state and is dropped
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(g.n_sites());
  for (int j = 0; j < 4; ++j) amps(corners[j]) = std::abs(out(j + 1));
  return PreparedInjection{PhotonState(std::move(amps)), spec.is_canonical(1e-12),
                           std::norm(out(0))};
}

}  // namespace soti
