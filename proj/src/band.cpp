#include "soti/band.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace soti {

const char* to_string(Hsp p) {
  switch (p) {
    case Hsp::Gamma: return "Gamma";
    case Hsp::X: return "X";
    case Hsp::Y: return "Y";
    case Hsp::M: return "M";
  }
  return "?";
}

BlochVector hsp_momentum(Hsp p) {
  switch (p) {
    case Hsp::Gamma: return {0.0, 0.0};
    case Hsp::X: return {kPi, 0.0};
    case Hsp::Y: return {0.0, kPi};
    case Hsp::M: return {kPi, kPi};
  }
  return {0.0, 0.0};
}

std::vector<BlochVector> default_k_path(int per_segment) {
  // Gamma -> X -> M -> Gamma, endpoints shared once.
  std::vector<BlochVector> path;
  auto leg = [&](BlochVector a, BlochVector b, bool include_last) {
    for (int i = 0; i < per_segment + (include_last ? 1 : 0); ++i) {
      const double s = static_cast<double>(i) / per_segment;
      path.emplace_back(a.kx + s * (b.kx - a.kx), a.ky + s * (b.ky - a.ky));
    }
  };
  leg({0, 0}, {kPi, 0}, false);
  leg({kPi, 0}, {kPi, kPi}, false);
  leg({kPi, kPi}, {0, 0}, true);
  return path;
}

BandStructure band_structure(const LatticeSpec& spec, const std::vector<BlochVector>& path) {
  if (!spec.is_clean()) throw UnsupportedError("band structure requires a clean lattice");
  BandStructure bs;
  bs.ks = path;
  bs.energies.reserve(path.size());
  bs.eigenvectors.reserve(path.size());
  for (const BlochVector& k : path) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(bloch_hamiltonian(spec, k));
    bs.energies.push_back(es.eigenvalues());
    bs.eigenvectors.push_back(es.eigenvectors());
  }
  return bs;
}

GapReport band_gap(const LatticeSpec& spec, int grid_size) {
  if (!spec.is_clean()) throw UnsupportedError("band gap requires a clean lattice");
  if (grid_size < 3) throw SpecError("band_gap: grid too small");
  const Couplings t = couplings_from_distances(spec);

  std::vector<BlochVector> sample;
  sample.reserve(static_cast<std::size_t>(grid_size) * grid_size + 4);
  for (int i = 0; i < grid_size; ++i)
    for (int j = 0; j < grid_size; ++j)
      sample.emplace_back(-kPi + 2.0 * kPi * i / grid_size, -kPi + 2.0 * kPi * j / grid_size);
  for (Hsp p : {Hsp::Gamma, Hsp::X, Hsp::Y, Hsp::M}) sample.push_back(hsp_momentum(p));

  GapReport rep;
  double gap12 = std::numeric_limits<double>::max();
  double gap23 = std::numeric_limits<double>::max();
  double emin = std::numeric_limits<double>::max(), emax = std::numeric_limits<double>::lowest();
  for (const BlochVector& k : sample) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(bloch_from_couplings(t, 0.0, k));
    const auto& e = es.eigenvalues();
    gap12 = std::min(gap12, e(1) - e(0));
    gap23 = std::min(gap23, e(2) - e(1));
    emin = std::min(emin, e(0));
    emax = std::max(emax, e(3));
  }
  rep.gap_size = gap12;
  rep.zero_gap_size = gap23;
  rep.spectral_range = emax - emin;
  rep.gap_ratio = rep.spectral_range > 0 ? gap12 / rep.spectral_range : 0.0;
  return rep;
}

Eigen::Matrix4cd rotation_rep(int order) {
  if (order != 2 && order != 4) throw SpecError("rotation order must be 2 or 4");
  Eigen::Matrix4cd r4 = Eigen::Matrix4cd::Zero();
  // sublattice cycle 1 -> 2 -> 4 -> 3 -> 1 (0-based: 0->1, 1->3, 3->2, 2->0)
  r4(1, 0) = 1;
  r4(3, 1) = 1;
  r4(0, 2) = 1;
  r4(2, 3) = 1;
  return order == 4 ? r4 : Eigen::Matrix4cd(r4 * r4);
}

namespace {

bool hsp_invariant_under(int order, Hsp p) {
  if (order == 2) return true;                      // C2 leaves all four HSPs invariant
  return p == Hsp::Gamma || p == Hsp::M;            // C4: only Gamma and M
}

/// Map a unimodular eigenvalue to its label p in Pi_p = exp(2 pi i (p-1)/n).
int eigenvalue_label(complexd lambda, int order) {
  const double angle = std::arg(lambda);
  const double step = 2.0 * kPi / order;
  int p = static_cast<int>(std::lround(angle / step));
  p = ((p % order) + order) % order;
  const complexd expected = std::exp(complexd(0.0, step * p));
  if (std::abs(lambda - expected) > 1e-8)
    throw NumericalError("rotation eigenvalue does not lie on the allowed lattice");
  return p + 1;
}

}  // namespace

RotationEigendata rotation_eigenvalues_at_hsp(const LatticeSpec& spec, Hsp point, int order,
                                              int occupied_band_count) {
  if (occupied_band_count < 1 || occupied_band_count > 4)
    throw SpecError("occupied band count must be in 1..4");
  if (!hsp_invariant_under(order, point))
    throw SymmetryMismatchError(std::string("point ") + to_string(point) +
                                " is not invariant under C" + std::to_string(order));
  const Eigen::Matrix4cd rep = rotation_rep(order);
  const Eigen::Matrix4cd h = bloch_hamiltonian(spec, hsp_momentum(point));

  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double comm = (h * rep - rep * h).cwiseAbs().maxCoeff();
  if (comm > 1e-8 * scale)
    throw SymmetryMismatchError(std::string("H(") + to_string(point) +
                                ") does not commute with C" + std::to_string(order) +
                                " representation");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  const Eigen::Vector4d energies = es.eigenvalues();
  const Eigen::Matrix4cd vectors = es.eigenvectors();

  // Resolve each degenerate H-eigenspace in the rotation eigenbasis, then
  // collect eigenvalue labels band by band (ascending energy; within a
  // cluster ordered by label for determinism).
  RotationEigendata out;
  out.point = point;
  out.rotation_order = order;
  out.occupied_band_count = occupied_band_count;
  out.counts.assign(order, 0);

  const double tol = 1e-9 * std::max(1.0, energies(3) - energies(0));
  std::vector<int> labels;
  int i = 0;
  while (i < 4) {
    int j = i;
    while (j + 1 < 4 && energies(j + 1) - energies(j) < tol) ++j;
    const int m = j - i + 1;
    const Eigen::MatrixXcd sub = vectors.middleCols(i, m);
    // restriction of the rotation to the eigenspace; unitary, hence normal
    const Eigen::MatrixXcd restricted = sub.adjoint() * rep * sub;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> rs(restricted);
    std::vector<int> cluster;
    for (int q = 0; q < m; ++q) cluster.push_back(eigenvalue_label(rs.eigenvalues()(q), order));
    std::sort(cluster.begin(), cluster.end());
    labels.insert(labels.end(), cluster.begin(), cluster.end());
    i = j + 1;
  }
  for (int b = 0; b < occupied_band_count; ++b) out.counts[labels[b] - 1] += 1;
  return out;
}

namespace {

int count_of(const RotationEigendata& d, int p) { return d.counts.at(p - 1); }

double quantize_half(double value, const char* what) {
  const double m = mod1(value);
  if (mod1_distance(m, 0.0) < 1e-6) return 0.0;
  if (mod1_distance(m, 0.5) < 1e-6) return 0.5;
  throw NumericalError(std::string(what) + " failed to quantize to {0, 1/2}");
}

}  // namespace

InvariantReport topological_indices(const LatticeSpec& spec) {
  const SymmetryClass sym = symmetry_class(spec);
  if (sym == SymmetryClass::C1)
    throw UnsupportedError("topological indices require a clean lattice");
  const GapReport gap = band_gap(spec);
  if (gap.gap_size < 1e-8)
    throw NumericalError("lattice is at the phase transition (gapless); indices undefined");

  constexpr int occupied = 1;  // the single band below the main gap
  InvariantReport rep;
  rep.symmetry = sym;

  if (sym == SymmetryClass::C4) {
    const auto gamma4 = rotation_eigenvalues_at_hsp(spec, Hsp::Gamma, 4, occupied);
    const auto m4 = rotation_eigenvalues_at_hsp(spec, Hsp::M, 4, occupied);
    const auto gamma2 = rotation_eigenvalues_at_hsp(spec, Hsp::Gamma, 2, occupied);
    const auto x2 = rotation_eigenvalues_at_hsp(spec, Hsp::X, 2, occupied);
    rep.indices["X1"] = count_of(x2, 1) - count_of(gamma2, 1);
    rep.indices["M1"] = count_of(m4, 1) - count_of(gamma4, 1);
    rep.indices["M2"] = count_of(m4, 2) - count_of(gamma4, 2);
    rep.p_x = rep.p_y = quantize_half(0.5 * rep.indices["X1"], "C4 polarization");
    rep.corner_index =
        mod1(0.25 * (rep.indices["X1"] + 2 * rep.indices["M1"] + 3 * rep.indices["M2"]));
  } else {
    const auto gamma2 = rotation_eigenvalues_at_hsp(spec, Hsp::Gamma, 2, occupied);
    const auto x2 = rotation_eigenvalues_at_hsp(spec, Hsp::X, 2, occupied);
    const auto y2 = rotation_eigenvalues_at_hsp(spec, Hsp::Y, 2, occupied);
    const auto m2 = rotation_eigenvalues_at_hsp(spec, Hsp::M, 2, occupied);
    rep.indices["X1"] = count_of(x2, 1) - count_of(gamma2, 1);
    rep.indices["Y1"] = count_of(y2, 1) - count_of(gamma2, 1);
    rep.indices["M1"] = count_of(m2, 1) - count_of(gamma2, 1);
    rep.p_x = quantize_half(-0.5 * (rep.indices["Y1"] + rep.indices["M1"]), "C2 polarization x");
    rep.p_y = quantize_half(-0.5 * (rep.indices["X1"] + rep.indices["M1"]), "C2 polarization y");
    rep.corner_index =
        mod1(0.25 * (-rep.indices["X1"] - rep.indices["Y1"] + rep.indices["M1"]));
  }
  rep.phase_label = (rep.p_x == 0.5 && rep.p_y == 0.5) ? "SOTI" : "trivial";
  return rep;
}

namespace {

/// Occupied-band frame at one k (columns = lowest `occ` eigenvectors).
Eigen::MatrixXcd occupied_frame(const Couplings& t, const BlochVector& k, int occ) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(bloch_from_couplings(t, 0.0, k));
  return es.eigenvectors().leftCols(occ);
}

Eigen::MatrixXcd unitarize(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double wilson_polarization_pass(const Couplings& t, char direction, int n, int occ,
                                std::vector<double>* phases_out) {
  std::vector<double> phases;
  phases.reserve(n);
  for (int it = 0; it < n; ++it) {
    const double k_perp = -kPi + 2.0 * kPi * it / n;
    std::vector<Eigen::MatrixXcd> frames;
    frames.reserve(n);
    for (int il = 0; il < n; ++il) {
      const double k_loop = -kPi + 2.0 * kPi * il / n;
      const BlochVector k = (direction == 'x') ? BlochVector{k_loop, k_perp}
                                               : BlochVector{k_perp, k_loop};
      frames.push_back(occupied_frame(t, k, occ));
    }
    // W = L_{n-1} ... L_0 with L_j = U_{j+1}^dag U_j, loop closed on frame 0.
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(occ, occ);
    for (int j = 0; j < n; ++j) {
      const Eigen::MatrixXcd& next = frames[(j + 1) % n];
      w = unitarize(next.adjoint() * frames[j]) * w;
    }
    phases.push_back(std::arg(Eigen::MatrixXcd(w).determinant()));
  }
  if (phases_out) *phases_out = phases;

  // Quantized phases sit right at the +-pi branch cut, so rows come out with
  // arbitrary signs; align every row to the branch of the first before
  // averaging (each row's phase is only defined mod 2 pi).
  double phase_sum = 0.0;
  for (double phi : phases) {
    const double aligned = phi + 2.0 * kPi * std::round((phases.front() - phi) / (2.0 * kPi));
    phase_sum += aligned;
  }
  double p = phase_sum / (2.0 * kPi * n);
  p = mod1(p);
  if (p >= 0.5) p -= 1.0;  // canonical branch [-1/2, 1/2)
  return p;
}

}  // namespace

WilsonLoopData wilson_loop_polarization(const LatticeSpec& spec, char direction, int grid_size,
                                        int occupied_band_count) {
  if (direction != 'x' && direction != 'y') throw SpecError("wilson loop: direction must be x or y");
  if (grid_size < 21) throw SpecError("wilson loop: grid_size must be at least 21");
  const GapReport gap = band_gap(spec);
  if (gap.gap_size < 1e-8)
    throw NumericalError("wilson loop undefined for a gapless lattice");
  const Couplings t = couplings_from_distances(spec);

  WilsonLoopData data;
  data.direction = direction;
  data.grid_size = grid_size;
  data.polarization = wilson_polarization_pass(t, direction, grid_size, occupied_band_count,
                                               &data.berry_phase_per_transverse_k);
  const double refined =
      wilson_polarization_pass(t, direction, 2 * grid_size, occupied_band_count, nullptr);
  data.refinement_delta = mod1_distance(data.polarization, refined);
  data.converged = data.refinement_delta < 1e-3;
  return data;
}

double chiral_violation(const Eigen::Matrix4cd& bloch) {
  Eigen::Vector4cd g;
  g << 1, -1, -1, 1;  // sublattice parity of sites 1..4
  const Eigen::Matrix4cd gamma = g.asDiagonal();
  return (gamma * bloch * gamma + bloch).cwiseAbs().maxCoeff();
}

ChiralCheck chiral_symmetry_check(const LatticeSpec& spec, int k_sample) {
  if (!spec.is_clean()) throw UnsupportedError("chiral check requires a clean lattice");
  const Couplings t = couplings_from_distances(spec);
  ChiralCheck out;
  for (int i = 0; i < k_sample; ++i)
    for (int j = 0; j < k_sample; ++j) {
      const BlochVector k(-kPi + 2.0 * kPi * i / k_sample, -kPi + 2.0 * kPi * j / k_sample);
      out.max_violation =
          std::max(out.max_violation, chiral_violation(bloch_from_couplings(t, 0.0, k)));
    }
  out.holds = out.max_violation < 1e-10;
  return out;
}

}  // namespace soti
