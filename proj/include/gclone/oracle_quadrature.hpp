#ifndef GCLONE_ORACLE_QUADRATURE_HPP
#define GCLONE_ORACLE_QUADRATURE_HPP

// Brute-force rectangle-rule integrals over the phase circle and over SU(2)
// conjugacy classes. The integrands are band-limited trigonometric
// polynomials, so the sums are exact once the node count passes the
// bandwidth. These routines build their integrands from the spin weights
// directly and share no code with the closed-form evaluators they check.

#include "gclone/entangled.hpp"
#include "gclone/equatorial.hpp"
#include "gclone/spin_core.hpp"

namespace gclone::oracle {

enum class QuadratureFamily { phase_circle, su2_class };

struct QuadratureSpec {
  int nodes = 3;
  QuadratureFamily family = QuadratureFamily::phase_circle;
};

struct QuadratureResult {
  double value = 0.0;
  bool under_resolved = false;  // node count below the exactness threshold
};

/// 2(N + M) + 1.
int phase_exactness_nodes(int n_copies, int m_copies);

/// (1/K) sum_t D_eta(theta_t) D_Phi(theta_t), theta_t = 2 pi t / K - pi.
QuadratureResult phase_quadrature_fidelity(int n_copies, int m_copies,
                                           const equatorial::PreparedStateQubit& state, int nodes);

/// 4 (j1 + j2 + j3 + j4) + 8.
int weyl_exactness_nodes(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4);

/// (2/pi) int_0^pi chi_{j1} chi_{j2} chi_{j3} chi_{j4} sin^2(phi) dphi on the
/// open midpoint grid phi_t = pi (t + 1/2) / K.
QuadratureResult weyl_quadrature_char4(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4,
                                       int nodes);

/// N + M + 2.
int su2_exactness_nodes(int n_copies, int m_copies);

/// Class-function quadrature of
/// |sum_j sqrt(c_j^N) chi_j|^2 |sum_j sqrt(p_j c_j^M) chi_j / d_j|^2.
QuadratureResult su2_quadrature_fidelity_ent(int n_copies, int m_copies,
                                             const entangled::PreparedStateEnt& state, int nodes);

}  // namespace gclone::oracle

#endif  // GCLONE_ORACLE_QUADRATURE_HPP
