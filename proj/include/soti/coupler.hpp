#pragma once

#include <Eigen/Dense>

#include "soti/dynamics.hpp"

namespace soti {

/// 1x4 star coupler: one entry waveguide coupled equally to four outputs.
struct CouplerSpec {
  double coupling_strength = 1.0;  // c, 1/mm
  double length_mm = 0.0;          // L

  void validate() const;
  /// L = pi / (4c): full transfer out of the entry port.
  double canonical_length() const { return kPi / (4.0 * coupling_strength); }
  bool is_canonical(double tol = 1e-12) const;
};

/// Star-graph Hamiltonian: H(0,j) = H(j,0) = c for j = 1..4, zero elsewhere.
Eigen::MatrixXcd coupler_hamiltonian(const CouplerSpec& spec);

/// U = exp(-i H L), in closed form through the two bright states at +-2c
/// (the three dark combinations of the outputs are stationary).
Eigen::MatrixXcd coupler_unitary(const CouplerSpec& spec);

struct PreparedInjection {
  PhotonState state;      // lattice state on the four corner sites
  bool uniform = true;    // canonical-length condition satisfied
  double entry_leakage = 0.0;  // |amplitude|^2 left in the entry port
};

/// Feed a single photon through the coupler and hand the four output ports to
/// the four lattice corners. At canonical length this is exactly amplitude
/// 1/2 per corner (common phase dropped) and coincides with
/// make_corner_superposition; off-canonical lengths are flagged non-uniform
/// and the residual entry amplitude is reported.
PreparedInjection prepare_superposition(const CouplerSpec& spec, const LatticeGeometry& g);

}  // namespace soti
