#include "soti/lattice.hpp"

#include <cmath>

namespace soti {

double CouplingLaw::coupling(double separation_um) const {
  if (!(separation_um > 0.0)) throw SpecError("coupling law: separation must be positive");
  return amplitude * std::exp(-separation_um / decay_length);
}

void CouplingLaw::validate() const {
  if (!(amplitude > 0.0)) throw SpecError("coupling law: amplitude must be positive");
  if (!(decay_length > 0.0)) throw SpecError("coupling law: decay length must be positive");
}

CouplingLaw CouplingLaw::calibrated_default() {
  // Ratio anchors at intra-cell separation 22 um: the amplitude cancels in
  // t_a/t_b, so the two anchors over-determine the decay length alone;
  // least squares in log space.
  constexpr double delta1 = 22.0 - 11.0, ratio1 = 0.08;
  constexpr double delta2 = 22.0 - 14.0, ratio2 = 0.22;
  const double decay = (delta1 * delta1 + delta2 * delta2) /
                       (delta1 * std::log(1.0 / ratio1) + delta2 * std::log(1.0 / ratio2));
  return CouplingLaw{3.1, decay};
}

void DisorderSpec::validate() const {
  if (!(level >= 0.0) || !(level < 1.0)) throw SpecError("disorder level must be in [0, 1)");
  if (realization_count < 1) throw SpecError("disorder realization_count must be positive");
}

void LatticeSpec::validate() const {
  if (nx_cells < 1 || ny_cells < 1) throw SpecError("lattice needs at least one unit cell");
  for (double d : {d_a_x, d_a_y, d_b_x, d_b_y})
    if (!(d > 0.0)) throw SpecError("lattice separations must be positive");
  coupling_law.validate();
  if (disorder) disorder->validate();
  if (realized_bonds) {
    if (realized_bonds->horizontal.rows() != n_rows() ||
        realized_bonds->horizontal.cols() != n_cols() - 1 ||
        realized_bonds->vertical.rows() != n_rows() - 1 ||
        realized_bonds->vertical.cols() != n_cols())
      throw SpecError("realized bond table does not match lattice dimensions");
    if ((realized_bonds->horizontal <= 0.0).any() || (realized_bonds->vertical <= 0.0).any())
      throw SpecError("realized bond separations must be positive");
  }
}

BondTable LatticeSpec::clean_bonds() const {
  BondTable b;
  b.horizontal.resize(n_rows(), n_cols() - 1);
  b.vertical.resize(n_rows() - 1, n_cols());
  for (int r = 0; r < n_rows(); ++r)
    for (int c = 0; c + 1 < n_cols(); ++c) b.horizontal(r, c) = (c % 2 == 0) ? d_a_x : d_b_x;
  for (int r = 0; r + 1 < n_rows(); ++r)
    for (int c = 0; c < n_cols(); ++c) b.vertical(r, c) = (r % 2 == 0) ? d_a_y : d_b_y;
  return b;
}

double LatticeSpec::mean_clean_separation() const {
  const BondTable b = clean_bonds();
  const double total = b.horizontal.sum() + b.vertical.sum();
  const auto count = b.horizontal.size() + b.vertical.size();
  return total / static_cast<double>(count);
}

const char* to_string(SymmetryClass s) {
  switch (s) {
    case SymmetryClass::C4: return "C4";
    case SymmetryClass::C2: return "C2";
    case SymmetryClass::C1: return "C1";
  }
  return "?";
}

std::vector<int> LatticeGeometry::corner_sites() const {
  return {site_index(0, 0), site_index(n_cols - 1, 0), site_index(0, n_rows - 1),
          site_index(n_cols - 1, n_rows - 1)};
}

std::vector<int> LatticeGeometry::edge_sites() const {
  std::vector<int> out;
  for (int r = 0; r < n_rows; ++r)
    for (int c = 0; c < n_cols; ++c)
      if (is_boundary(c, r) && !is_corner(c, r)) out.push_back(site_index(c, r));
  return out;
}

std::vector<int> LatticeGeometry::bulk_sites() const {
  std::vector<int> out;
  for (int r = 0; r < n_rows; ++r)
    for (int c = 0; c < n_cols; ++c)
      if (!is_boundary(c, r)) out.push_back(site_index(c, r));
  return out;
}

Couplings couplings_from_distances(const LatticeSpec& spec) {
  spec.validate();
  const CouplingLaw& law = spec.coupling_law;
  return Couplings{law.coupling(spec.d_a_x), law.coupling(spec.d_a_y), law.coupling(spec.d_b_x),
                   law.coupling(spec.d_b_y)};
}

Eigen::Matrix4cd bloch_from_couplings(const Couplings& t, double onsite, const BlochVector& k) {
  const complexd h12 = t.t_a_x + t.t_b_x * std::exp(complexd(0.0, k.kx));
  const complexd h13 = t.t_a_y + t.t_b_y * std::exp(complexd(0.0, -k.ky));
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 1) = h12;
  h(0, 2) = h13;
  h(1, 3) = h13;  // h24
  h(2, 3) = h12;  // h34
  h(1, 0) = std::conj(h12);
  h(2, 0) = std::conj(h13);
  h(3, 1) = std::conj(h13);
  h(3, 2) = std::conj(h12);
  h.diagonal().setConstant(onsite);
  return h;
}

Eigen::Matrix4cd bloch_hamiltonian(const LatticeSpec& spec, const BlochVector& k) {
  if (!spec.is_clean())
    throw UnsupportedError("momentum space is undefined for a disordered lattice");
  return bloch_from_couplings(couplings_from_distances(spec), spec.onsite_energy, k);
}

namespace {

FiniteHamiltonian assemble(const LatticeGeometry& g, const BondTable& bonds,
                           const CouplingLaw& law, double onsite) {
  FiniteHamiltonian h;
  h.geometry = g;
  h.onsite_energy = onsite;
  h.matrix = Eigen::MatrixXd::Zero(g.n_sites(), g.n_sites());
  h.matrix.diagonal().setConstant(onsite);
  for (int r = 0; r < g.n_rows; ++r)
    for (int c = 0; c + 1 < g.n_cols; ++c) {
      const double t = law.coupling(bonds.horizontal(r, c));
      const int i = g.site_index(c, r), j = g.site_index(c + 1, r);
      h.matrix(i, j) = t;
      h.matrix(j, i) = t;
    }
  for (int r = 0; r + 1 < g.n_rows; ++r)
    for (int c = 0; c < g.n_cols; ++c) {
      const double t = law.coupling(bonds.vertical(r, c));
      const int i = g.site_index(c, r), j = g.site_index(c, r + 1);
      h.matrix(i, j) = t;
      h.matrix(j, i) = t;
    }
  return h;
}

}  // namespace

FiniteHamiltonian finite_hamiltonian(const LatticeSpec& spec) {
  spec.validate();
  const LatticeGeometry g{spec.n_cols(), spec.n_rows()};
  if (spec.realized_bonds)
    return assemble(g, *spec.realized_bonds, spec.coupling_law, spec.onsite_energy);
  if (spec.disorder && spec.disorder->level > 0.0)
    return finite_hamiltonian(apply_disorder(spec, 0));
  return assemble(g, spec.clean_bonds(), spec.coupling_law, spec.onsite_energy);
}

FiniteHamiltonian finite_from_couplings(int nx_cells, int ny_cells, const Couplings& t,
                                        double onsite) {
  if (nx_cells < 1 || ny_cells < 1) throw SpecError("lattice needs at least one unit cell");
  const LatticeGeometry g{2 * nx_cells, 2 * ny_cells};
  FiniteHamiltonian h;
  h.geometry = g;
  h.onsite_energy = onsite;
  h.matrix = Eigen::MatrixXd::Zero(g.n_sites(), g.n_sites());
  h.matrix.diagonal().setConstant(onsite);
  for (int r = 0; r < g.n_rows; ++r)
    for (int c = 0; c + 1 < g.n_cols; ++c) {
      const double v = (c % 2 == 0) ? t.t_a_x : t.t_b_x;
      h.matrix(g.site_index(c, r), g.site_index(c + 1, r)) = v;
      h.matrix(g.site_index(c + 1, r), g.site_index(c, r)) = v;
    }
  for (int r = 0; r + 1 < g.n_rows; ++r)
    for (int c = 0; c < g.n_cols; ++c) {
      const double v = (r % 2 == 0) ? t.t_a_y : t.t_b_y;
      h.matrix(g.site_index(c, r), g.site_index(c, r + 1)) = v;
      h.matrix(g.site_index(c, r + 1), g.site_index(c, r)) = v;
    }
  return h;
}

FiniteHamiltonian uniform_finite_hamiltonian(int n_cols, int n_rows, double separation_um,
                                             const CouplingLaw& law, double onsite) {
  if (n_cols < 1 || n_rows < 1) throw SpecError("uniform lattice needs positive site counts");
  const LatticeGeometry g{n_cols, n_rows};
  BondTable b;
  b.horizontal = Eigen::ArrayXXd::Constant(n_rows, n_cols - 1, separation_um);
  b.vertical = Eigen::ArrayXXd::Constant(n_rows - 1, n_cols, separation_um);
  return assemble(g, b, law, onsite);
}

LatticeSpec apply_disorder(const LatticeSpec& spec, int realization_index) {
  spec.validate();
  if (!spec.disorder) throw SpecError("apply_disorder: spec carries no DisorderSpec");
  if (realization_index < 0 || realization_index >= spec.disorder->realization_count)
    throw std::out_of_range("apply_disorder: realization index out of range");

  LatticeSpec out = spec;
  out.realization_index = realization_index;
  out.realized_bonds = spec.clean_bonds();
  const double eta = spec.disorder->level;
  if (eta == 0.0) return out;

  const double amp = eta * spec.mean_clean_separation();
  SplitMix64 rng(spec.disorder->seed ^
                 (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(realization_index + 1)));
  BondTable& b = *out.realized_bonds;
  for (Eigen::Index r = 0; r < b.horizontal.rows(); ++r)
    for (Eigen::Index c = 0; c < b.horizontal.cols(); ++c)
      b.horizontal(r, c) += amp * rng.symmetric();
  for (Eigen::Index r = 0; r < b.vertical.rows(); ++r)
    for (Eigen::Index c = 0; c < b.vertical.cols(); ++c)
      b.vertical(r, c) += amp * rng.symmetric();
  if ((b.horizontal <= 0.0).any() || (b.vertical <= 0.0).any())
    throw SpecError("disorder level drives a bond separation non-positive");
  return out;
}

SymmetryClass symmetry_class(const LatticeSpec& spec) {
  spec.validate();
  if (!spec.is_clean()) return SymmetryClass::C1;
  const Couplings t = couplings_from_distances(spec);
  const double scale = std::max({t.t_a_x, t.t_a_y, t.t_b_x, t.t_b_y});
  const double delta_a = std::abs(t.t_a_x - t.t_a_y);
  const double delta_b = std::abs(t.t_b_x - t.t_b_y);
  if (delta_a <= 1e-12 * scale && delta_b <= 1e-12 * scale) return SymmetryClass::C4;
  return SymmetryClass::C2;
}

Eigen::VectorXd chiral_signs(const LatticeGeometry& g) {
  Eigen::VectorXd s(g.n_sites());
  for (int r = 0; r < g.n_rows; ++r)
    for (int c = 0; c < g.n_cols; ++c) s(g.site_index(c, r)) = ((c + r) % 2 == 0) ? 1.0 : -1.0;
  return s;
}

double hermiticity_violation(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace soti
