#ifndef GCLONE_PREP_OPTIMIZER_HPP
#define GCLONE_PREP_OPTIMIZER_HPP

// Optimal re-prepared state for the qubit phase-estimation seed, posed as
// the dominant eigenvector of a nonnegative banded matrix, plus lambda
// sweeps over the prepared-state ansatz and the relative cloning gap.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gclone/equatorial.hpp"

namespace gclone::prep {

enum class Family { qubit, entangled };

std::string to_string(Family family);
/// Accepts "qubit" or "entangled"; throws std::invalid_argument otherwise.
Family family_from_string(const std::string& name);

/// Symmetric banded matrix A with A_{m m'} = sqrt(b_{M,m} b_{M,m'}) a_{m'-m},
/// so that F = q^T A q for prepared amplitudes q_m = sqrt(p_{M,m}).
///
/// Only the diagonals |m - m'| <= bandwidth are stored; everything outside
/// the band is zero.
class QuadraticForm {
 public:
  QuadraticForm(std::size_t dimension, std::vector<std::vector<double>> upper_diagonals);

  std::size_t dimension() const { return dimension_; }
  std::size_t bandwidth() const { return diagonals_.empty() ? 0 : diagonals_.size() - 1; }
  double entry(std::size_t row, std::size_t col) const;
  double trace() const;

  /// out = A x.
  void apply(std::span<const double> x, std::span<double> out) const;
  /// Row-major dense copy, for small test problems.
  std::vector<double> to_dense() const;

 private:
  std::size_t dimension_;
  // diagonals_[k][t] = A_{t, t+k}
  std::vector<std::vector<double>> diagonals_;
};

QuadraticForm build_quadratic_form(int n_copies, int m_copies);

struct PowerIterationOptions {
  int max_iterations = 200000;
  double tolerance = 1e-13;  // on the change of the Rayleigh quotient
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

struct OptimalPreparation {
  double fidelity = 0.0;  // lambda_max(A)
  equatorial::PreparedStateQubit state;
  int iterations = 0;
  double residual = 0.0;  // ||A q - fidelity q||
};

/// Power iteration from the uniform positive vector. The Perron vector of
/// the nonnegative form is returned as weights p_m = q_m^2.
OptimalPreparation optimal_prepared_state(const QuadraticForm& form,
                                          const PowerIterationOptions& options = {});

struct LambdaRow {
  double lambda = 1.0;
  double fidelity = 0.0;
};

struct LambdaSweep {
  std::vector<LambdaRow> rows;  // ascending lambda
  std::size_t argmax = 0;       // smallest lambda among ties
  const LambdaRow& best() const { return rows.at(argmax); }
};

/// Exact measure-and-prepare fidelity of the lambda ansatz at each grid point.
LambdaSweep lambda_sweep(int n_copies, int m_copies, std::vector<double> grid, Family family);

/// Exact measure-and-prepare fidelity of the lambda ansatz for one lambda.
double ansatz_fidelity(int n_copies, int m_copies, double lambda, Family family);

/// Optimal cloner fidelity of the family (economical covariant for entangled).
double clone_fidelity(int n_copies, int m_copies, Family family);

/// 1, 2, 4, ... up to M.
std::vector<double> power_of_two_grid(int m_copies);

struct GapRow {
  int n_copies = 0;
  int m_copies = 0;
  double f_clon = 0.0;
  double f_est_proxy = 0.0;
  double delta = 0.0;
};

/// (F_clon - F_est) / F_clon with F_est bounded from below by the best of
/// the lambda sweep and, for qubits, the eigen-optimal prepared state.
GapRow relative_gap(int n_copies, int m_copies, Family family,
                    const std::vector<double>& grid = {},
                    const PowerIterationOptions& options = {});

/// Delta from the two fidelities; throws std::logic_error if f_est exceeds
/// f_clon by more than 1e-9 relative, clamps smaller excursions to zero.
double gap_from(double f_clon, double f_est);

}  // namespace gclone::prep

#endif  // GCLONE_PREP_OPTIMIZER_HPP
