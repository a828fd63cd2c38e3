#ifndef GCLONE_EQUATORIAL_HPP
#define GCLONE_EQUATORIAL_HPP

// N -> M cloning of qubit states on the equator of the Bloch sphere:
// optimal economical cloner fidelity, its asymptotic forms, and exact
// measure-and-prepare fidelities through Fourier coefficients on the phase
// circle.

#include <span>
#include <vector>

#include "gclone/spin_core.hpp"

namespace gclone::equatorial {

/// Dicke-basis weights p_{M,m} of a re-prepared symmetric M-qubit state
/// |Phi> = sum_m sqrt(p_{M,m}) |M/2, m>.
class PreparedStateQubit {
 public:
  /// `coeffs[t]` is the weight at m = t - M/2, t = 0..M. Weights must be
  /// nonnegative and sum to one within 1e-12.
  PreparedStateQubit(int m_copies, std::vector<double> coeffs);

  int copies() const { return m_copies_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double at(SpinIndex m) const;

 private:
  int m_copies_;
  std::vector<double> coeffs_;
};

/// Fourier coefficients a_k, |k| <= bandwidth, of a trigonometric
/// polynomial sum_k a_k e^{i k theta}.
class FourierDensity {
 public:
  FourierDensity(int bandwidth, std::vector<double> coeffs);

  int bandwidth() const { return bandwidth_; }
  /// a_k; zero for |k| > bandwidth.
  double at(int k) const;
  std::span<const double> coeffs() const { return coeffs_; }

  double evaluate(double theta) const;
  /// Checks the represented function on a (4B+1)-point grid over the circle.
  bool nonnegative_on_grid(double tolerance = 1e-12) const;

 private:
  int bandwidth_;
  std::vector<double> coeffs_;  // index k + bandwidth
};

/// (sum_n sqrt(b_{N,n} b_{M,n}))^2. Requires M >= N and M = N (mod 2).
double clone_fidelity_exact(int n_copies, int m_copies);

/// b_{M,0} (sum_n sqrt(b_{N,n}))^2, with b_{M,1/2} standing in for b_{M,0}
/// when M is odd.
double clone_fidelity_large_m(int n_copies, int m_copies);

/// sqrt(4 M N) / (M + N).
double clone_fidelity_large_n(int n_copies, int m_copies);

/// Central binomial weight b_{M,0}, or b_{M,1/2} for odd M.
double central_binomial_weight(int m_copies);

/// Fourier coefficients of Tr[eta psi_theta^{(x)N}] for the phase-estimation
/// seed |eta> = sum_n |N/2, n>: the autocorrelation of sqrt(b_{N,.}).
FourierDensity outcome_density_fourier(int n_copies);

/// p_{M,m} = b_{K,m} on |m| <= K/2, K = reduced_copy_number(M, lambda).
PreparedStateQubit prepared_state_ansatz(int m_copies, double lambda);

/// |psi>^{(x)M}, the lambda = 1 member of the ansatz.
PreparedStateQubit naive_prepared_state(int m_copies);

/// Exact measure-and-prepare fidelity with the phase-estimation seed and
/// re-prepared state `state`. Evaluated as sum_k a_k c_{-k}, where c is the
/// autocorrelation of sqrt(p_{M,m} b_{M,m}); only lags |k| <= N contribute.
double mp_fidelity_exact(int n_copies, int m_copies, const PreparedStateQubit& state);

/// <Phi| rho_aver^{(M)} |Phi> = sum_m p_{M,m} b_{M,m}.
double avg_state_expectation(int m_copies, const PreparedStateQubit& state);

/// (sum_n sqrt(b_{N,n}))^2. A probability density on the circle, so it can
/// exceed one.
double p_true(int n_copies);

}  // namespace gclone::equatorial

#endif  // GCLONE_EQUATORIAL_HPP
