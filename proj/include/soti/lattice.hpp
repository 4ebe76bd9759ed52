#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "soti/common.hpp"

namespace soti {

/// Evanescent-coupling law t(d) = amplitude * exp(-d / decay_length).
/// Distances are in micrometres, couplings in 1/mm.
struct CouplingLaw {
  double amplitude = 1.0;     // 1/mm
  double decay_length = 1.0;  // um

  double coupling(double separation_um) const;
  void validate() const;

  /// Default law: decay length is the least-squares fit of log t(d_a)/t(d_b)
  /// through the two working points (d_b = 11 um, ratio 0.08) and
  /// (d_b = 14 um, ratio 0.22) at d_a = 22 um; the amplitude sets the overall
  /// coupling scale at fabrication-typical separations.
  static CouplingLaw calibrated_default();
};

struct DisorderSpec {
  double level = 0.0;  // eta = delta d / mean d, dimensionless
  std::uint64_t seed = 0;
  int realization_count = 1;

  void validate() const;
};

/// Per-bond separations of one concrete (possibly disordered) lattice.
/// horizontal(r, c) is the bond between sites (c, r) and (c+1, r);
/// vertical(r, c) between (c, r) and (c, r+1).
struct BondTable {
  Eigen::ArrayXXd horizontal;  // n_rows x (n_cols - 1)
  Eigen::ArrayXXd vertical;    // (n_rows - 1) x n_cols
};

/// Geometry and couplings of one 2D extended-SSH lattice. A unit cell holds
/// four sites; column separations alternate d_a_x (intra-cell) and d_b_x
/// (inter-cell) starting with d_a_x, and likewise in y.
struct LatticeSpec {
  int nx_cells = 4;
  int ny_cells = 4;
  double d_a_x = 22.0;  // um
  double d_a_y = 22.0;
  double d_b_x = 9.0;
  double d_b_y = 9.0;
  CouplingLaw coupling_law = CouplingLaw::calibrated_default();
  double onsite_energy = 0.0;  // propagation constant beta, 1/mm
  std::optional<DisorderSpec> disorder;

  /// Present only on specs returned by apply_disorder: the realized bond
  /// separations, plus which realization they came from.
  std::optional<BondTable> realized_bonds;
  int realization_index = -1;

  int n_cols() const { return 2 * nx_cells; }
  int n_rows() const { return 2 * ny_cells; }
  int n_sites() const { return n_cols() * n_rows(); }
  bool is_clean() const { return !disorder.has_value() && !realized_bonds.has_value(); }

  void validate() const;

  /// Mean separation of the clean lattice over all bonds (the d-bar entering
  /// the disorder amplitude eta * d-bar).
  double mean_clean_separation() const;

  /// Clean bond table (before any disorder).
  BondTable clean_bonds() const;
};

struct Couplings {
  double t_a_x = 0, t_a_y = 0, t_b_x = 0, t_b_y = 0;  // 1/mm

  double ratio_x() const { return t_a_x / t_b_x; }
  double ratio_y() const { return t_a_y / t_b_y; }
};

/// Crystal momentum, each component wrapped into [-pi, pi).
struct BlochVector {
  double kx = 0, ky = 0;

  BlochVector() = default;
  BlochVector(double kx_, double ky_) : kx(wrap_pi(kx_)), ky(wrap_pi(ky_)) {}
};

enum class SymmetryClass { C4, C2, C1 };

const char* to_string(SymmetryClass s);

/// Site bookkeeping of a finite open-boundary lattice. Sites live on a
/// n_cols x n_rows grid; matrix row/column index is row * n_cols + col.
struct LatticeGeometry {
  int n_cols = 0;
  int n_rows = 0;

  int n_sites() const { return n_cols * n_rows; }
  int site_index(int col, int row) const { return row * n_cols + col; }
  std::pair<int, int> site_coords(int index) const {
    return {index % n_cols, index / n_cols};
  }
  bool is_corner(int col, int row) const {
    return (col == 0 || col == n_cols - 1) && (row == 0 || row == n_rows - 1);
  }
  bool is_boundary(int col, int row) const {
    return col == 0 || col == n_cols - 1 || row == 0 || row == n_rows - 1;
  }

  /// The four outermost sites, in the fixed order
  /// (0,0), (n_cols-1,0), (0,n_rows-1), (n_cols-1,n_rows-1).
  std::vector<int> corner_sites() const;
  /// Boundary sites excluding the four corners.
  std::vector<int> edge_sites() const;
  std::vector<int> bulk_sites() const;
};

/// Real-space tight-binding Hamiltonian with open boundaries. Couplings are
/// real and only between nearest-neighbour sites, so the matrix is real
/// symmetric; next-nearest couplings are a hard zero.
struct FiniteHamiltonian {
  Eigen::MatrixXd matrix;
  LatticeGeometry geometry;
  double onsite_energy = 0.0;
};

// -- operations ---------------------------------------------------------

/// Couplings from the four separation classes through the coupling law.
Couplings couplings_from_distances(const LatticeSpec& spec);

/// Momentum-space Hamiltonian of Eq-style entries
///   h12 = t_a_x + t_b_x e^{+i kx},  h13 = t_a_y + t_b_y e^{-i ky},
///   h24 = h13,                      h34 = h12,
/// on the sublattice basis (1,2,3,4) = (0,0),(1,0),(0,1),(1,1) within a cell.
/// The uniform onsite energy sits on the diagonal. Rejects disordered specs.
Eigen::Matrix4cd bloch_hamiltonian(const LatticeSpec& spec, const BlochVector& k);

/// Same matrix built directly from couplings (used for ratio sweeps that
/// bypass the distance law, including negative couplings).
Eigen::Matrix4cd bloch_from_couplings(const Couplings& t, double onsite, const BlochVector& k);

/// Finite open-boundary Hamiltonian. A spec with a DisorderSpec but no
/// realized bonds uses realization 0.
FiniteHamiltonian finite_hamiltonian(const LatticeSpec& spec);

/// Finite Hamiltonian from explicit couplings (clean, possibly negative t).
FiniteHamiltonian finite_from_couplings(int nx_cells, int ny_cells, const Couplings& t,
                                        double onsite = 0.0);

/// Uniform square lattice with arbitrary site counts (need not decompose into
/// 2x2 cells; a 21x21-site walk lattice is legal here).
FiniteHamiltonian uniform_finite_hamiltonian(int n_cols, int n_rows, double separation_um,
                                             const CouplingLaw& law, double onsite = 0.0);

/// Draw disorder realization `realization_index`: every bond separation d is
/// shifted by an independent uniform sample from [-eta*dbar, +eta*dbar].
/// Deterministic in (seed, realization_index); bonds are consumed in
/// horizontal-row-major then vertical-row-major order.
LatticeSpec apply_disorder(const LatticeSpec& spec, int realization_index);

/// C4 if x and y couplings coincide (relative tolerance 1e-12), C2 otherwise;
/// disordered specs are C1.
SymmetryClass symmetry_class(const LatticeSpec& spec);

/// Sublattice sign structure (+1 on even col+row, -1 on odd) as a vector of
/// diagonal entries; conjugating H - beta*I flips its sign on any bipartite
/// nearest-neighbour lattice.
Eigen::VectorXd chiral_signs(const LatticeGeometry& geometry);

/// Largest |entry| of H - H^dagger.
double hermiticity_violation(const Eigen::MatrixXcd& m);

}  // namespace soti
