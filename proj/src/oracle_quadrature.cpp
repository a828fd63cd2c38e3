#include "gclone/oracle_quadrature.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gclone::oracle {

namespace {

void require_nodes(int nodes) {
  if (nodes < 3) throw std::domain_error("quadrature needs at least 3 nodes");
}

// |sum_t amp_t e^{i n_t theta}|^2 with n_t = (2t - copies)/2.
double dicke_intensity(std::span<const double> amp, int copies, double theta) {
  std::complex<double> s = 0.0;
  for (std::size_t t = 0; t < amp.size(); ++t) {
    const double n = 0.5 * (2.0 * static_cast<double>(t) - copies);
    s += amp[t] * std::polar(1.0, n * theta);
  }
  return std::norm(s);
}

double character(std::int64_t twice_j, double phi) {
  return std::sin((twice_j + 1.0) * phi) / std::sin(phi);
}

}  // namespace

int phase_exactness_nodes(int n_copies, int m_copies) { return 2 * (n_copies + m_copies) + 1; }

QuadratureResult phase_quadrature_fidelity(int n_copies, int m_copies,
                                           const equatorial::PreparedStateQubit& state,
                                           int nodes) {
  require_nodes(nodes);
  if (state.copies() != m_copies) throw std::domain_error("phase quadrature: wrong M");
  const auto bn = binomial_weights(n_copies);
  const auto bm = binomial_weights(m_copies);
  std::vector<double> seed_amp(bn.size());
  for (std::size_t t = 0; t < bn.size(); ++t) seed_amp[t] = std::sqrt(bn.weights()[t]);
  std::vector<double> prep_amp(bm.size());
  for (std::size_t t = 0; t < bm.size(); ++t) {
    prep_amp[t] = std::sqrt(state.coeffs()[t] * bm.weights()[t]);
  }

  CompensatedSum acc;
  for (int t = 0; t < nodes; ++t) {
    const double theta = 2.0 * std::numbers::pi * t / nodes - std::numbers::pi;
    acc += dicke_intensity(seed_amp, n_copies, theta) * dicke_intensity(prep_amp, m_copies, theta);
  }
  return {acc.value() / nodes, nodes < phase_exactness_nodes(n_copies, m_copies)};
}

int weyl_exactness_nodes(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4) {
  const auto twice_sum = j1.twice_value + j2.twice_value + j3.twice_value + j4.twice_value;
  return static_cast<int>(2 * twice_sum + 8);
}

QuadratureResult weyl_quadrature_char4(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4,
                                       int nodes) {
  require_nodes(nodes);
  CompensatedSum acc;
  for (int t = 0; t < nodes; ++t) {
    const double phi = std::numbers::pi * (t + 0.5) / nodes;
    const double s = std::sin(phi);
    acc += character(j1.twice_value, phi) * character(j2.twice_value, phi) *
           character(j3.twice_value, phi) * character(j4.twice_value, phi) * s * s;
  }
  return {2.0 * acc.value() / nodes, nodes < weyl_exactness_nodes(j1, j2, j3, j4)};
}

int su2_exactness_nodes(int n_copies, int m_copies) { return n_copies + m_copies + 2; }

QuadratureResult su2_quadrature_fidelity_ent(int n_copies, int m_copies,
                                             const entangled::PreparedStateEnt& state,
                                             int nodes) {
  require_nodes(nodes);
  if (state.copies() != m_copies) throw std::domain_error("su2 quadrature: wrong M");
  const auto blocks_n = irrep_spectrum(n_copies);
  const auto blocks_m = irrep_spectrum(m_copies);

  CompensatedSum acc;
  for (int t = 0; t < nodes; ++t) {
    const double phi = std::numbers::pi * (t + 0.5) / nodes;
    double seed = 0.0;
    for (const auto& b : blocks_n) seed += std::sqrt(b.weight) * character(b.j.twice_value, phi);
    double prep = 0.0;
    for (std::size_t i = 0; i < blocks_m.size(); ++i) {
      const auto& b = blocks_m[i];
      prep += std::sqrt(state.coeffs()[i] * b.weight) * character(b.j.twice_value, phi) /
              static_cast<double>(b.dim_rep);
    }
    const double s = std::sin(phi);
    acc += seed * seed * prep * prep * s * s;
  }
  return {2.0 * acc.value() / nodes, nodes < su2_exactness_nodes(n_copies, m_copies)};
}

}  // namespace gclone::oracle
