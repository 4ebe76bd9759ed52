#pragma once

#include <Eigen/Dense>
#include <vector>

#include "soti/spectrum.hpp"

namespace soti {

/// Single-photon amplitude vector over lattice sites, unit norm.
struct PhotonState {
  Eigen::VectorXcd amplitudes;

  explicit PhotonState(Eigen::VectorXcd a);
  int size() const { return static_cast<int>(amplitudes.size()); }
  Eigen::VectorXd intensities() const { return amplitudes.cwiseAbs2(); }
};

/// Coefficients of a state in the eigenbasis, plus the per-class split.
struct ModeDecomposition {
  Eigen::VectorXcd coefficients;
  double corner_weight = 0, edge_weight = 0, bulk_weight = 0;
  int dominant_mode = -1;          // index of the largest |c_j|^2
  double dominant_weight = 0;
};

/// Propagator in the eigenbasis of one finite lattice: exact spectral
/// evolution psi(z) = sum_j c_j e^{-i E_j z} |phi_j>, no step error. The
/// stored solution is classified so decompositions can be grouped.
class Evolver {
 public:
  explicit Evolver(const FiniteHamiltonian& h);
  explicit Evolver(EigenSolution classified);

  const EigenSolution& solution() const { return sol_; }

  PhotonState evolve(const PhotonState& psi0, double z_mm) const;
  ModeDecomposition decompose(const PhotonState& psi0) const;
  double energy_expectation(const PhotonState& psi) const;

  /// eta(z) = c_j / c_k * e^{-i (E_j - E_k) z} for each z. Throws if |c_k| is
  /// below 1e-12.
  std::vector<complexd> amplitude_ratio_trace(const PhotonState& psi0, int mode_j, int mode_k,
                                              const std::vector<double>& z_grid) const;

 private:
  EigenSolution sol_;
};

struct EvolutionResult {
  std::vector<double> distances_mm;
  std::vector<PhotonState> states;
  LatticeGeometry geometry;

  Eigen::VectorXd intensities_at(std::size_t idx) const { return states.at(idx).intensities(); }
};

EvolutionResult run_evolution(const Evolver& ev, const PhotonState& psi0,
                              const std::vector<double>& z_grid);

/// Convenience wrapper: diagonalize and evolve once.
PhotonState evolve(const FiniteHamiltonian& h, const PhotonState& psi0, double z_mm);

/// Fabricated sample distances, 10..30 mm step 5.
std::vector<double> default_z_grid();

// -- injections ----------------------------------------------------------

PhotonState make_single_site(const LatticeGeometry& g, int col, int row);

/// Equal-amplitude, equal-phase occupation of the four corner sites
/// (amplitude 1/2 each; the coupler's common output phase is dropped).
PhotonState make_corner_superposition(const LatticeGeometry& g);

/// Normalizes the given amplitudes; rejects vectors with vanishing or
/// non-finite norm.
PhotonState make_custom(Eigen::VectorXcd amplitudes);

// -- diagnostics ----------------------------------------------------------

/// Generalized return probability: fraction of intensity within Chebyshev
/// graph distance <= width of the injected site. width = 0 is the corner
/// formula xi = I_k / sum I.
double return_probability(const PhotonState& psi, const LatticeGeometry& g, int injected_site,
                          int width = 0);

std::vector<double> return_probability_trace(const EvolutionResult& result, int injected_site,
                                             int width = 0);

/// Intensities on the four corner sites (order of LatticeGeometry::corner_sites)
/// and the same normalized within the corner subspace.
struct CornerDistribution {
  std::array<double, 4> intensity{};
  std::array<double, 4> restricted{};
  double corner_sum = 0;
};

CornerDistribution corner_distribution(const PhotonState& psi, const LatticeGeometry& g);

}  // namespace soti
