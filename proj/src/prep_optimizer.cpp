#include "gclone/prep_optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "gclone/entangled.hpp"

namespace gclone::prep {

std::string to_string(Family family) {
  return family == Family::qubit ? "qubit" : "entangled";
}

Family family_from_string(const std::string& name) {
  if (name == "qubit") return Family::qubit;
  if (name == "entangled") return Family::entangled;
  throw std::invalid_argument("unknown family '" + name + "' (expected qubit or entangled)");
}

QuadraticForm::QuadraticForm(std::size_t dimension, std::vector<std::vector<double>> upper_diagonals)
    : dimension_(dimension), diagonals_(std::move(upper_diagonals)) {
  for (std::size_t k = 0; k < diagonals_.size(); ++k) {
    if (diagonals_[k].size() + k != dimension_) {
      throw std::invalid_argument("QuadraticForm: diagonal " + std::to_string(k) +
                                  " has the wrong length");
    }
  }
}

double QuadraticForm::entry(std::size_t row, std::size_t col) const {
  const auto lo = std::min(row, col);
  const auto k = std::max(row, col) - lo;
  return k < diagonals_.size() ? diagonals_[k][lo] : 0.0;
}

double QuadraticForm::trace() const {
  return diagonals_.empty() ? 0.0 : compensated_total(diagonals_[0]);
}

void QuadraticForm::apply(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < diagonals_.size(); ++k) {
    const auto& diag = diagonals_[k];
    if (k == 0) {
      for (std::size_t t = 0; t < diag.size(); ++t) out[t] += diag[t] * x[t];
      continue;
    }
    for (std::size_t t = 0; t < diag.size(); ++t) {
      out[t] += diag[t] * x[t + k];
      out[t + k] += diag[t] * x[t];
    }
  }
}

std::vector<double> QuadraticForm::to_dense() const {
  std::vector<double> dense(dimension_ * dimension_, 0.0);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) dense[r * dimension_ + c] = entry(r, c);
  }
  return dense;
}

QuadraticForm build_quadratic_form(int n_copies, int m_copies) {
  if (n_copies < 1 || m_copies < 1) {
    throw std::domain_error("build_quadratic_form: N and M must be positive");
  }
  const auto density = equatorial::outcome_density_fourier(n_copies);
  const auto amp = binomial_weights(m_copies).sqrt_weights();
  const auto dim = amp.size();
  const auto band = std::min<std::size_t>(static_cast<std::size_t>(n_copies), dim - 1);
  std::vector<std::vector<double>> diagonals(band + 1);
  for (std::size_t k = 0; k <= band; ++k) {
    const double a = density.at(static_cast<int>(k));
    diagonals[k].resize(dim - k);
    for (std::size_t t = 0; t + k < dim; ++t) diagonals[k][t] = amp[t] * amp[t + k] * a;
  }
  return QuadraticForm(dim, std::move(diagonals));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s.value();
}

double residual_norm(std::span<const double> aq, std::span<const double> q, double value) {
  double r = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double d = aq[i] - value * q[i];
    r += d * d;
  }
  return std::sqrt(r);
}

}  // namespace

OptimalPreparation optimal_prepared_state(const QuadraticForm& form,
                                          const PowerIterationOptions& options) {
  const auto dim = form.dimension();
  std::vector<double> q(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<double> aq(dim);

  form.apply(q, aq);
  double rayleigh = dot(q, aq);
  int iterations = 0;
  bool converged = false;
  while (iterations < options.max_iterations) {
    ++iterations;
    const double norm = std::sqrt(dot(aq, aq));
    if (norm == 0.0) break;
    for (std::size_t i = 0; i < dim; ++i) q[i] = aq[i] / norm;
    form.apply(q, aq);
    const double next = dot(q, aq);
    const double change = std::abs(next - rayleigh);
    rayleigh = next;
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  const double residual = residual_norm(aq, q, rayleigh);
  if (!converged) {
    throw ConvergenceError("power iteration did not converge after " +
                               std::to_string(iterations) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual, iterations);
  }

  // Nonnegative matrix and positive start keep q >= 0; normalize q^2 exactly.
  std::vector<double> weights(dim);
  for (std::size_t i = 0; i < dim; ++i) weights[i] = std::max(0.0, q[i]) * std::max(0.0, q[i]);
  const double total = compensated_total(weights);
  for (double& w : weights) w /= total;

  const int m_copies = static_cast<int>(dim) - 1;
  return OptimalPreparation{rayleigh, equatorial::PreparedStateQubit(m_copies, std::move(weights)),
                            iterations, residual};
}

double ansatz_fidelity(int n_copies, int m_copies, double lambda, Family family) {
  if (family == Family::qubit) {
    return equatorial::mp_fidelity_exact(n_copies, m_copies,
                                         equatorial::prepared_state_ansatz(m_copies, lambda));
  }
  return entangled::mp_fidelity_exact_ent(n_copies, m_copies,
                                          entangled::prepared_state_ansatz_ent(m_copies, lambda));
}

double clone_fidelity(int n_copies, int m_copies, Family family) {
  return family == Family::qubit ? equatorial::clone_fidelity_exact(n_copies, m_copies)
                                 : entangled::eco_clone_fidelity_exact(n_copies, m_copies);
}

LambdaSweep lambda_sweep(int n_copies, int m_copies, std::vector<double> grid, Family family) {
  if (grid.empty()) throw std::invalid_argument("lambda_sweep: empty lambda grid");
  std::sort(grid.begin(), grid.end());
  LambdaSweep sweep;
  sweep.rows.reserve(grid.size());
  for (double lambda : grid) {
    sweep.rows.push_back({lambda, ansatz_fidelity(n_copies, m_copies, lambda, family)});
  }
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    if (sweep.rows[i].fidelity > sweep.rows[sweep.argmax].fidelity) sweep.argmax = i;
  }
  return sweep;
}

std::vector<double> power_of_two_grid(int m_copies) {
  std::vector<double> grid;
  for (double lambda = 1.0; lambda <= m_copies; lambda *= 2.0) grid.push_back(lambda);
  if (grid.empty()) grid.push_back(1.0);
  return grid;
}

double gap_from(double f_clon, double f_est) {
  const double delta = (f_clon - f_est) / f_clon;
  if (delta < -1e-9) {
    throw std::logic_error("measure-and-prepare fidelity " + std::to_string(f_est) +
                           " exceeds the cloner bound " + std::to_string(f_clon));
  }
  return std::clamp(delta, 0.0, 1.0);
}

GapRow relative_gap(int n_copies, int m_copies, Family family, const std::vector<double>& grid,
                    const PowerIterationOptions& options) {
  GapRow row;
  row.n_copies = n_copies;
  row.m_copies = m_copies;
  row.f_clon = clone_fidelity(n_copies, m_copies, family);

  const auto sweep =
      lambda_sweep(n_copies, m_copies, grid.empty() ? power_of_two_grid(m_copies) : grid, family);
  row.f_est_proxy = sweep.best().fidelity;
  if (family == Family::qubit) {
    const auto optimal = optimal_prepared_state(build_quadratic_form(n_copies, m_copies), options);
    row.f_est_proxy = std::max(row.f_est_proxy, optimal.fidelity);
  }
  row.delta = gap_from(row.f_clon, row.f_est_proxy);
  return row;
}

}  // namespace gclone::prep
