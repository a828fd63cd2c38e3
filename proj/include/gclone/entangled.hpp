#ifndef GCLONE_ENTANGLED_HPP
#define GCLONE_ENTANGLED_HPP

// Economical covariant N -> M cloning of two-qubit maximally entangled
// states. Everything is expressed through the irrep weights c_j of the
// Schur-Weyl decomposition and SU(2) characters chi_j; Haar integrals of
// products of characters are evaluated through the Clebsch-Gordan series.

#include <cstdint>
#include <span>
#include <vector>

#include "gclone/spin_core.hpp"

namespace gclone::entangled {

/// Block weights p_j^{(M)} of a re-prepared state
/// |Phi> = (+)_j sqrt(p_j) |psi^{(j,M)}>, indexed over the irrep lattice
/// j = j_min, ..., M/2.
class PreparedStateEnt {
 public:
  PreparedStateEnt(int m_copies, std::vector<double> coeffs);

  int copies() const { return m_copies_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double at(SpinIndex j) const;

 private:
  int m_copies_;
  std::vector<double> coeffs_;
};

/// A class function sum_j alpha_j chi_j(g) with all j on one lattice.
class CharPolynomial {
 public:
  CharPolynomial(SpinIndex first, std::vector<double> coeffs);

  SpinIndex first() const { return first_; }
  std::span<const double> coeffs() const { return coeffs_; }
  SpinIndex spin_at(std::size_t i) const {
    return SpinIndex::from_twice(first_.twice_value + 2 * static_cast<std::int64_t>(i));
  }
  /// Value at the class angle phi (eigenvalues e^{+-i phi}), phi in (0, pi).
  double evaluate(double phi) const;

 private:
  SpinIndex first_;
  std::vector<double> coeffs_;
};

/// (sum_j sqrt(c_j^{(N)} c_j^{(M)}))^2. Requires M >= N, M = N (mod 2).
double eco_clone_fidelity_exact(int n_copies, int m_copies);

/// (2 b_{M,0} / M) (sum_j sqrt(b_{N,j} (2j+1)^4 / (N/2 + j + 1)))^2, with
/// b_{M,1/2} in place of b_{M,0} for odd M.
double eco_clone_fidelity_large_m(int n_copies, int m_copies);

/// (4N / M)^{3/2}.
double eco_clone_fidelity_large_n(int n_copies, int m_copies);

/// Integral over SU(2) of chi_{j1} chi_{j2} chi_{j3} chi_{j4}: the number of
/// spins J shared by j1 (x) j2 and j3 (x) j4.
std::int64_t cg_overlap_count(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4);

/// <eta|psi_g^{(x)N}> for the square-root seed: sum_j sqrt(c_j^{(N)}) chi_j.
CharPolynomial seed_overlap(int n_copies);

/// <Phi|psi_g^{(x)M}> = sum_j sqrt(p_j c_j^{(M)}) chi_j / d_j.
CharPolynomial prepared_overlap(const PreparedStateEnt& state);

/// Integral over SU(2) of a(g)^2 b(g)^2, via the Clebsch-Gordan series.
double haar_integral_of_squares(const CharPolynomial& a, const CharPolynomial& b);

/// Exact measure-and-prepare fidelity with the square-root measurement seed:
/// the Haar integral of |<eta|psi_g^N>|^2 |<Phi|psi_g^M>|^2.
double mp_fidelity_exact_ent(int n_copies, int m_copies, const PreparedStateEnt& state);

/// p_j = c_j^{(K)} for j <= K/2, K = reduced_copy_number(M, lambda).
PreparedStateEnt prepared_state_ansatz_ent(int m_copies, double lambda);

/// <Phi| rho_aver^{(M)} |Phi> = sum_j p_j c_j^{(M)} / d_j^2.
double avg_state_expectation_ent(int m_copies, const PreparedStateEnt& state);

/// (sum_j sqrt(c_j^{(N)}) d_j)^2.
double p_true_ent(int n_copies);

}  // namespace gclone::entangled

#endif  // GCLONE_ENTANGLED_HPP
