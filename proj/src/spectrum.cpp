#include "soti/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace soti {

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::Corner: return "corner";
    case StateClass::Edge: return "edge";
    case StateClass::Bulk: return "bulk";
  }
  return "?";
}

std::vector<int> EigenSolution::states_of_class(StateClass c) const {
  std::vector<int> out;
  for (int i = 0; i < n_states(); ++i)
    if (classes[i] == c) out.push_back(i);
  return out;
}

namespace {

Eigen::VectorXd site_mask(const LatticeGeometry& g, const std::vector<int>& sites) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(g.n_sites());
  for (int s : sites) m(s) = 1.0;
  return m;
}

void compute_weights(EigenSolution& sol) {
  const auto corner = site_mask(sol.geometry, sol.geometry.corner_sites());
  const auto edge = site_mask(sol.geometry, sol.geometry.edge_sites());
  const int n = sol.n_states();
  sol.w_corner.resize(n);
  sol.w_edge.resize(n);
  sol.w_bulk.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd p = sol.states.col(i).cwiseAbs2();
    sol.w_corner(i) = p.dot(corner);
    sol.w_edge(i) = p.dot(edge);
    sol.w_bulk(i) = 1.0 - sol.w_corner(i) - sol.w_edge(i);
  }
}

void assign_labels(EigenSolution& sol, const ClassifyOptions& opt) {
  const int n = sol.n_states();
  sol.classes.assign(n, StateClass::Bulk);
  for (int i = 0; i < n; ++i) {
    if (sol.w_corner(i) >= opt.corner_weight_threshold)
      sol.classes[i] = StateClass::Corner;
    else if (sol.w_edge(i) >= opt.edge_weight_threshold)
      sol.classes[i] = StateClass::Edge;
  }
}

/// Rotate the columns [begin, begin+m) of `states` so the projector onto
/// `sites` is diagonal in that block, largest weight first.
void rotate_cluster(Eigen::MatrixXd& states, int begin, int m, const std::vector<int>& sites) {
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(m, m);
  for (int s : sites) {
    const Eigen::RowVectorXd row = states.block(s, begin, 1, m);
    proj += row.transpose() * row;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
  Eigen::MatrixXd u(m, m);
  for (int q = 0; q < m; ++q) u.col(q) = es.eigenvectors().col(m - 1 - q);  // descending
  states.middleCols(begin, m) = states.middleCols(begin, m) * u;
}

}  // namespace

EigenSolution eigendecompose(const FiniteHamiltonian& h) {
  if (hermiticity_violation(h.matrix.cast<complexd>()) > 1e-12)
    throw UnsupportedError("eigendecompose expects a Hermitian matrix");
  EigenSolution sol;
  sol.geometry = h.geometry;
  sol.onsite_energy = h.onsite_energy;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
  sol.energies = es.eigenvalues();
  sol.states = es.eigenvectors();
  compute_weights(sol);
  assign_labels(sol, ClassifyOptions{});
  return sol;
}

EigenSolution classify_states(const EigenSolution& in, const ClassifyOptions& opt) {
  EigenSolution sol = in;
  const int n = sol.n_states();
  const double tol = opt.degeneracy_rel_tol * std::max(sol.spectral_range(), 1e-300);
  const auto corners = sol.geometry.corner_sites();
  const auto edges = sol.geometry.edge_sites();

  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && sol.energies(j + 1) - sol.energies(j) < tol) ++j;
    const int m = j - i + 1;
    if (m > 1) {
      rotate_cluster(sol.states, i, m, corners);
      // count corner-like directions, then optimize the remainder for edges
      int n_corner = 0;
      for (int q = i; q <= j; ++q) {
        const double w = [&] {
          double acc = 0;
          for (int s : corners) acc += sol.states(s, q) * sol.states(s, q);
          return acc;
        }();
        if (w >= opt.corner_weight_threshold)
          ++n_corner;
        else
          break;  // projector eigenvalues are sorted descending
      }
      if (m - n_corner > 1) rotate_cluster(sol.states, i + n_corner, m - n_corner, edges);
    }
    i = j + 1;
  }
  compute_weights(sol);
  assign_labels(sol, opt);
  return sol;
}

SpatialDistribution spatial_distribution(const EigenSolution& sol, double e_lo, double e_hi) {
  if (e_hi < e_lo) throw SpecError("spatial distribution: empty energy interval");
  SpatialDistribution d;
  d.e_lo = e_lo;
  d.e_hi = e_hi;
  d.site_density = Eigen::VectorXd::Zero(sol.geometry.n_sites());
  for (int i = 0; i < sol.n_states(); ++i) {
    const double e = sol.energies(i);
    if (e < e_lo || e > e_hi) continue;
    d.site_density += sol.states.col(i).cwiseAbs2();
    ++d.state_count;
  }
  d.empty_window = (d.state_count == 0);
  return d;
}

SpatialDistribution zero_energy_distribution(const EigenSolution& sol) {
  const double hw = 1e-6 * sol.spectral_range();
  return spatial_distribution(sol, sol.onsite_energy - hw, sol.onsite_energy + hw);
}

SpectralFlow spectral_flow(const std::vector<double>& ratios, double t_b, int nx_cells,
                           int ny_cells, const ClassifyOptions& opt) {
  if (ratios.size() < 2) throw SpecError("spectral flow needs at least two ratios");
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] <= ratios[i - 1]) throw SpecError("spectral flow: ratio grid must be increasing");
  if (!(t_b > 0)) throw SpecError("spectral flow: t_b must be positive");

  SpectralFlow flow;
  for (double r : ratios) {
    Couplings t;
    t.t_a_x = t.t_a_y = r * t_b;
    t.t_b_x = t.t_b_y = t_b;
    const FiniteHamiltonian h = finite_from_couplings(nx_cells, ny_cells, t);
    const EigenSolution sol = classify_states(eigendecompose(h), opt);

    FlowPoint pt;
    pt.ratio = r;
    for (int idx : sol.states_of_class(StateClass::Corner)) {
      pt.corner_energies.push_back(sol.energies(idx));
      ++pt.corner_state_count;
    }
    // the four most corner-dominant states, whatever their energies: this is
    // the quantity that melts across the finite-gap crossover
    std::vector<int> order(sol.n_states());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sol.w_corner(a) > sol.w_corner(b); });
    double w = 0;
    const int nn = std::min(4, sol.n_states());
    for (int q = 0; q < nn; ++q) w += sol.w_corner(order[q]);
    pt.mean_corner_weight = w / nn;
    // energy of the nearest non-corner state bounds the mid-gap region
    double bound = std::numeric_limits<double>::max();
    for (int q = 0; q < sol.n_states(); ++q)
      if (sol.classes[q] != StateClass::Corner)
        bound = std::min(bound, std::abs(sol.energies(q)));
    pt.gap_around_zero = (bound == std::numeric_limits<double>::max()) ? 0.0 : bound;
    flow.points.push_back(std::move(pt));
  }
  for (const FlowPoint& pt : flow.points)
    if (pt.ratio > 0 && pt.corner_state_count < 4) {
      flow.crossover_ratio = pt.ratio;
      break;
    }
  return flow;
}

BicReport bic_non_hermitian_check(const FiniteHamiltonian& h, double gamma) {
  if (gamma < 0) throw SpecError("bic check: gamma must be non-negative");
  const LatticeGeometry& g = h.geometry;
  const auto corners = g.corner_sites();

  Eigen::MatrixXcd hc = h.matrix.cast<complexd>();
  for (int s = 0; s < g.n_sites(); ++s) {
    if (std::find(corners.begin(), corners.end(), s) == corners.end())
      hc(s, s) -= complexd(0.0, gamma);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(hc);

  BicReport rep;
  rep.energies = es.eigenvalues();
  const int n = g.n_sites();
  rep.w_corner.resize(n);
  rep.classes.assign(n, StateClass::Bulk);
  const auto corner_mask = [&] {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
    for (int s : corners) m(s) = 1.0;
    return m;
  }();
  const auto edge_mask = [&] {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
    for (int s : g.edge_sites()) m(s) = 1.0;
    return m;
  }();
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd p = es.eigenvectors().col(i).cwiseAbs2();
    const double norm = p.sum();
    rep.w_corner(i) = p.dot(corner_mask) / norm;
    const double we = p.dot(edge_mask) / norm;
    if (rep.w_corner(i) >= 0.5)
      rep.classes[i] = StateClass::Corner;
    else if (we >= 0.5)
      rep.classes[i] = StateClass::Edge;
  }

  // the four most corner-like states are "the" corner modes regardless of
  // whether they cross the 0.5 threshold (they do deep in the SOTI phase)
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rep.w_corner(a) > rep.w_corner(b); });
  rep.corner_state_indices.assign(order.begin(), order.begin() + std::min(4, n));

  for (int idx : rep.corner_state_indices)
    rep.max_corner_imag = std::max(rep.max_corner_imag, std::abs(rep.energies(idx).imag()));

  std::vector<double> bulk_imag;
  for (int i = 0; i < n; ++i) {
    if (rep.classes[i] != StateClass::Bulk) continue;
    if (std::find(rep.corner_state_indices.begin(), rep.corner_state_indices.end(), i) !=
        rep.corner_state_indices.end())
      continue;
    bulk_imag.push_back(std::abs(rep.energies(i).imag()));
  }
  if (!bulk_imag.empty()) {
    std::sort(bulk_imag.begin(), bulk_imag.end());
    rep.median_bulk_imag = bulk_imag[bulk_imag.size() / 2];
  }
  return rep;
}

BicReport bic_non_hermitian_check(const LatticeSpec& spec, double gamma) {
  return bic_non_hermitian_check(finite_hamiltonian(spec), gamma);
}

}  // namespace soti
