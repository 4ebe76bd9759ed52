#pragma once

#include <Eigen/Dense>
#include <vector>

#include "soti/lattice.hpp"

namespace soti {

enum class StateClass { Corner, Edge, Bulk };

const char* to_string(StateClass c);

/// Full eigendecomposition of a finite lattice plus the per-state
/// corner/edge/bulk weights and labels. `states` columns are orthonormal and
/// ordered by ascending energy.
struct EigenSolution {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
  LatticeGeometry geometry;
  double onsite_energy = 0.0;

  std::vector<StateClass> classes;
  Eigen::VectorXd w_corner, w_edge, w_bulk;

  int n_states() const { return static_cast<int>(energies.size()); }
  double spectral_range() const { return energies(n_states() - 1) - energies(0); }
  std::vector<int> states_of_class(StateClass c) const;
};

struct ClassifyOptions {
  double corner_weight_threshold = 0.5;
  double edge_weight_threshold = 0.5;
  /// Eigenvalues closer than this (relative to the spectral range) form one
  /// degenerate cluster.
  double degeneracy_rel_tol = 1e-9;
};

/// Dense eigendecomposition; raw LAPACK eigenpairs (residual at machine
/// level), classified with the default thresholds. Rejects non-Hermitian
/// input; the non-Hermitian path is bic_non_hermitian_check.
EigenSolution eigendecompose(const FiniteHamiltonian& h);

/// Re-classify (and possibly rotate) the states of a solution. Inside each
/// numerically degenerate cluster the basis is rotated to diagonalize the
/// corner projector and then, on the corner-free remainder, the edge
/// projector; the per-state weights are otherwise basis-dependent garbage
/// under exact degeneracy (the C4 lattice has bulk states exactly degenerate
/// with corner states). Counts of each class are basis-independent.
EigenSolution classify_states(const EigenSolution& sol, const ClassifyOptions& opt = {});

/// Spatial density summed over eigenstates with energy inside
/// [e_lo, e_hi]; sums to the number of such states.
struct SpatialDistribution {
  double e_lo = 0, e_hi = 0;
  Eigen::VectorXd site_density;
  int state_count = 0;
  bool empty_window = false;
};

SpatialDistribution spatial_distribution(const EigenSolution& sol, double e_lo, double e_hi);

/// Window centred on the onsite energy with half-width
/// 1e-6 * spectral range, the "zero-energy" query.
SpatialDistribution zero_energy_distribution(const EigenSolution& sol);

struct FlowPoint {
  double ratio = 0;
  int corner_state_count = 0;
  double mean_corner_weight = 0;        // over the 4 states nearest the onsite energy
  std::vector<double> corner_energies;  // energies of corner-classified states
  double gap_around_zero = 0;           // finite-size gap bounding those states
};

struct SpectralFlow {
  std::vector<FlowPoint> points;
  /// First ratio at which the corner-state count drops below 4 (the
  /// finite-gap crossover), NaN if it never does.
  double crossover_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Corner-state energies and weights along a monotone t_a/t_b grid at fixed
/// t_b. Ratios may be negative (spectral plots only).
SpectralFlow spectral_flow(const std::vector<double>& ratios, double t_b, int nx_cells,
                           int ny_cells, const ClassifyOptions& opt = {});

struct BicReport {
  Eigen::VectorXcd energies;
  std::vector<StateClass> classes;        // from the right eigenvectors of H - i gamma D
  Eigen::VectorXd w_corner;
  double max_corner_imag = 0;             // max |Im E| over the 4 most corner-like states
  double median_bulk_imag = 0;
  std::vector<int> corner_state_indices;
};

/// Non-Hermitian protection check: add -i*gamma to every site except the four
/// corners and diagonalize. Corner-dominated eigenvalues staying nearly real
/// is the bound-state-in-continuum signature of the C4 corner modes.
BicReport bic_non_hermitian_check(const LatticeSpec& spec, double gamma);
BicReport bic_non_hermitian_check(const FiniteHamiltonian& h, double gamma);

}  // namespace soti
