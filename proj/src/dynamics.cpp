#include "soti/dynamics.hpp"

#include <cmath>

namespace soti {

PhotonState::PhotonState(Eigen::VectorXcd a) : amplitudes(std::move(a)) {
  const double n = amplitudes.norm();
  if (!std::isfinite(n) || n < 1e-300) throw SpecError("photon state is not normalizable");
  if (std::abs(n - 1.0) > 1e-12) amplitudes /= n;
}

Evolver::Evolver(const FiniteHamiltonian& h) : sol_(classify_states(eigendecompose(h))) {}

Evolver::Evolver(EigenSolution classified) : sol_(std::move(classified)) {}

PhotonState Evolver::evolve(const PhotonState& psi0, double z_mm) const {
  if (z_mm < 0) throw SpecError("evolution distance must be non-negative");
  if (psi0.size() != sol_.n_states()) throw SpecError("state size does not match lattice");
  Eigen::VectorXcd c = sol_.states.transpose() * psi0.amplitudes;
  for (int j = 0; j < c.size(); ++j) c(j) *= std::exp(complexd(0.0, -sol_.energies(j) * z_mm));
  return PhotonState(sol_.states * c);
}

ModeDecomposition Evolver::decompose(const PhotonState& psi0) const {
  if (psi0.size() != sol_.n_states()) throw SpecError("state size does not match lattice");
  ModeDecomposition d;
  d.coefficients = sol_.states.transpose() * psi0.amplitudes;
  for (int j = 0; j < d.coefficients.size(); ++j) {
    const double w = std::norm(d.coefficients(j));
    switch (sol_.classes[j]) {
      case StateClass::Corner: d.corner_weight += w; break;
      case StateClass::Edge: d.edge_weight += w; break;
      case StateClass::Bulk: d.bulk_weight += w; break;
    }
    if (w > d.dominant_weight) {
      d.dominant_weight = w;
      d.dominant_mode = j;
    }
  }
  return d;
}

double Evolver::energy_expectation(const PhotonState& psi) const {
  const Eigen::VectorXcd c = sol_.states.transpose() * psi.amplitudes;
  double e = 0;
  for (int j = 0; j < c.size(); ++j) e += sol_.energies(j) * std::norm(c(j));
  return e;
}

std::vector<complexd> Evolver::amplitude_ratio_trace(const PhotonState& psi0, int mode_j,
                                                     int mode_k,
                                                     const std::vector<double>& z_grid) const {
  const ModeDecomposition d = decompose(psi0);
  if (mode_j < 0 || mode_j >= sol_.n_states() || mode_k < 0 || mode_k >= sol_.n_states())
    throw std::out_of_range("amplitude ratio: mode index out of range");
  const complexd cj = d.coefficients(mode_j), ck = d.coefficients(mode_k);
  if (std::abs(ck) < 1e-12)
    throw NumericalError("amplitude ratio undefined: reference coefficient vanishes");
  const double de = sol_.energies(mode_j) - sol_.energies(mode_k);
  std::vector<complexd> eta;
  eta.reserve(z_grid.size());
  for (double z : z_grid) eta.push_back(cj / ck * std::exp(complexd(0.0, -de * z)));
  return eta;
}

EvolutionResult run_evolution(const Evolver& ev, const PhotonState& psi0,
                              const std::vector<double>& z_grid) {
  EvolutionResult res;
  res.distances_mm = z_grid;
  res.geometry = ev.solution().geometry;
  res.states.reserve(z_grid.size());
  for (double z : z_grid) res.states.push_back(ev.evolve(psi0, z));
  return res;
}

PhotonState evolve(const FiniteHamiltonian& h, const PhotonState& psi0, double z_mm) {
  return Evolver(h).evolve(psi0, z_mm);
}

std::vector<double> default_z_grid() { return {10.0, 15.0, 20.0, 25.0, 30.0}; }

PhotonState make_single_site(const LatticeGeometry& g, int col, int row) {
  if (col < 0 || col >= g.n_cols || row < 0 || row >= g.n_rows)
    throw std::out_of_range("injection site outside lattice");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(g.n_sites());
  a(g.site_index(col, row)) = 1.0;
  return PhotonState(std::move(a));
}

PhotonState make_corner_superposition(const LatticeGeometry& g) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(g.n_sites());
  for (int s : g.corner_sites()) a(s) = 0.5;
  return PhotonState(std::move(a));
}

PhotonState make_custom(Eigen::VectorXcd amplitudes) { return PhotonState(std::move(amplitudes)); }

double return_probability(const PhotonState& psi, const LatticeGeometry& g, int injected_site,
                          int width) {
  if (injected_site < 0 || injected_site >= g.n_sites())
    throw std::out_of_range("return probability: site outside lattice");
  if (width < 0) throw SpecError("return probability: width must be non-negative");
  const auto [c0, r0] = g.site_coords(injected_site);
  const Eigen::VectorXd in = psi.intensities();
  double numerator = 0;
  for (int r = std::max(0, r0 - width); r <= std::min(g.n_rows - 1, r0 + width); ++r)
    for (int c = std::max(0, c0 - width); c <= std::min(g.n_cols - 1, c0 + width); ++c)
      numerator += in(g.site_index(c, r));
  return numerator / in.sum();
}

std::vector<double> return_probability_trace(const EvolutionResult& result, int injected_site,
                                             int width) {
  std::vector<double> xi;
  xi.reserve(result.states.size());
  for (const PhotonState& s : result.states)
    xi.push_back(return_probability(s, result.geometry, injected_site, width));
  return xi;
}

CornerDistribution corner_distribution(const PhotonState& psi, const LatticeGeometry& g) {
  CornerDistribution d;
  const auto corners = g.corner_sites();
  const Eigen::VectorXd in = psi.intensities();
  for (int i = 0; i < 4; ++i) {
    d.intensity[i] = in(corners[i]);
    d.corner_sum += d.intensity[i];
  }
  for (int i = 0; i < 4; ++i)
    d.restricted[i] = d.corner_sum > 0 ? d.intensity[i] / d.corner_sum : 0.0;
  return d;
}

}  // namespace soti
