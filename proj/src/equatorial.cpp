#include "gclone/equatorial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gclone::equatorial {

namespace {

void require_clone_pair(int n_copies, int m_copies, const char* what) {
  if (n_copies < 1 || m_copies < n_copies) {
    throw std::domain_error(std::string(what) + ": need 1 <= N <= M, got N = " +
                            std::to_string(n_copies) + ", M = " + std::to_string(m_copies));
  }
  if ((m_copies - n_copies) % 2 != 0) {
    throw std::domain_error(std::string(what) + ": M - N must be even, got N = " +
                            std::to_string(n_copies) + ", M = " + std::to_string(m_copies));
  }
}

void require_state_copies(int m_copies, const PreparedStateQubit& state, const char* what) {
  if (state.copies() != m_copies) {
    throw std::domain_error(std::string(what) + ": prepared state has M = " +
                            std::to_string(state.copies()) + ", expected " +
                            std::to_string(m_copies));
  }
}

double sum_sqrt_binomial(int n_copies) {
  const auto w = binomial_weights(n_copies);
  CompensatedSum s;
  for (double l : w.log_sqrt()) s += std::exp(l);
  return s.value();
}

}  // namespace

PreparedStateQubit::PreparedStateQubit(int m_copies, std::vector<double> coeffs)
    : m_copies_(m_copies), coeffs_(std::move(coeffs)) {
  if (m_copies_ < 1) throw std::domain_error("PreparedStateQubit: M must be positive");
  if (coeffs_.size() != static_cast<std::size_t>(m_copies_) + 1) {
    throw std::domain_error("PreparedStateQubit: expected M + 1 coefficients");
  }
  for (double p : coeffs_) {
    if (!(p >= 0.0)) throw std::domain_error("PreparedStateQubit: negative or NaN weight");
  }
  if (std::abs(compensated_total(coeffs_) - 1.0) > 1e-12) {
    throw std::domain_error("PreparedStateQubit: weights do not sum to one");
  }
}

double PreparedStateQubit::at(SpinIndex m) const {
  if (!on_dicke_lattice(m_copies_, m)) return 0.0;
  return coeffs_[static_cast<std::size_t>((m.twice_value + m_copies_) / 2)];
}

FourierDensity::FourierDensity(int bandwidth, std::vector<double> coeffs)
    : bandwidth_(bandwidth), coeffs_(std::move(coeffs)) {
  if (bandwidth_ < 0 || coeffs_.size() != 2 * static_cast<std::size_t>(bandwidth_) + 1) {
    throw std::domain_error("FourierDensity: expected 2B + 1 coefficients");
  }
}

double FourierDensity::at(int k) const {
  if (k < -bandwidth_ || k > bandwidth_) return 0.0;
  return coeffs_[static_cast<std::size_t>(k + bandwidth_)];
}

double FourierDensity::evaluate(double theta) const {
  // Real part only; the imaginary part cancels for even coefficient sequences.
  CompensatedSum s;
  for (int k = -bandwidth_; k <= bandwidth_; ++k) s += at(k) * std::cos(k * theta);
  return s.value();
}

bool FourierDensity::nonnegative_on_grid(double tolerance) const {
  const int nodes = 4 * bandwidth_ + 1;
  for (int t = 0; t < nodes; ++t) {
    const double theta = 2.0 * std::numbers::pi * t / nodes - std::numbers::pi;
    if (evaluate(theta) < -tolerance) return false;
  }
  return true;
}

double clone_fidelity_exact(int n_copies, int m_copies) {
  require_clone_pair(n_copies, m_copies, "clone_fidelity_exact");
  const auto bn = binomial_weights(n_copies);
  const auto bm = binomial_weights(m_copies);
  const auto shift = static_cast<std::size_t>((m_copies - n_copies) / 2);
  CompensatedSum s;
  for (std::size_t t = 0; t < bn.size(); ++t) {
    s += std::exp(bn.log_sqrt()[t] + bm.log_sqrt()[t + shift]);
  }
  return s.value() * s.value();
}

double central_binomial_weight(int m_copies) {
  return binomial_weights(m_copies).at(SpinIndex::from_twice(m_copies % 2));
}

double clone_fidelity_large_m(int n_copies, int m_copies) {
  require_clone_pair(n_copies, m_copies, "clone_fidelity_large_m");
  return central_binomial_weight(m_copies) * p_true(n_copies);
}

double clone_fidelity_large_n(int n_copies, int m_copies) {
  if (n_copies < 1 || m_copies < 1) {
    throw std::domain_error("clone_fidelity_large_n: N and M must be positive");
  }
  const double n = n_copies;
  const double m = m_copies;
  return std::sqrt(4.0 * m * n) / (m + n);
}

FourierDensity outcome_density_fourier(int n_copies) {
  const auto amp = binomial_weights(n_copies).sqrt_weights();
  const int len = n_copies + 1;
  std::vector<double> coeffs(2 * static_cast<std::size_t>(n_copies) + 1);
  for (int k = 0; k <= n_copies; ++k) {
    CompensatedSum s;
    for (int t = 0; t + k < len; ++t) s += amp[t] * amp[t + k];
    coeffs[n_copies + k] = s.value();
    coeffs[n_copies - k] = s.value();
  }
  return FourierDensity(n_copies, std::move(coeffs));
}

PreparedStateQubit prepared_state_ansatz(int m_copies, double lambda) {
  const int k = reduced_copy_number(m_copies, lambda).copies;
  const auto bk = binomial_weights(k);
  std::vector<double> coeffs(static_cast<std::size_t>(m_copies) + 1, 0.0);
  const auto offset = static_cast<std::size_t>((m_copies - k) / 2);
  for (std::size_t t = 0; t < bk.size(); ++t) coeffs[offset + t] = bk.weights()[t];
  return PreparedStateQubit(m_copies, std::move(coeffs));
}

PreparedStateQubit naive_prepared_state(int m_copies) {
  return prepared_state_ansatz(m_copies, 1.0);
}

double mp_fidelity_exact(int n_copies, int m_copies, const PreparedStateQubit& state) {
  if (n_copies < 1) throw std::domain_error("mp_fidelity_exact: N must be positive");
  require_state_copies(m_copies, state, "mp_fidelity_exact");

  const auto density = outcome_density_fourier(n_copies);
  const auto bm = binomial_weights(m_copies);
  std::vector<double> amp(bm.size());
  for (std::size_t t = 0; t < amp.size(); ++t) {
    amp[t] = std::sqrt(state.coeffs()[t]) * std::exp(bm.log_sqrt()[t]);
  }

  const int max_lag = std::min(n_copies, m_copies);
  const auto len = amp.size();
  CompensatedSum fidelity;
  for (int k = 0; k <= max_lag; ++k) {
    CompensatedSum lag;
    for (std::size_t t = 0; t + k < len; ++t) lag += amp[t] * amp[t + k];
    fidelity += (k == 0 ? 1.0 : 2.0) * density.at(k) * lag.value();
  }
  return fidelity.value();
}

double avg_state_expectation(int m_copies, const PreparedStateQubit& state) {
  require_state_copies(m_copies, state, "avg_state_expectation");
  const auto bm = binomial_weights(m_copies);
  CompensatedSum s;
  for (std::size_t t = 0; t < bm.size(); ++t) s += state.coeffs()[t] * bm.weights()[t];
  return s.value();
}

double p_true(int n_copies) {
  const double s = sum_sqrt_binomial(n_copies);
  return s * s;
}

}  // namespace gclone::equatorial
