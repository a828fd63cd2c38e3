#include "gclone/entangled.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gclone/equatorial.hpp"

namespace gclone::entangled {

namespace {

void require_clone_pair(int n_copies, int m_copies, const char* what) {
  if (n_copies < 1 || m_copies < n_copies) {
    throw std::domain_error(std::string(what) + ": need 1 <= N <= M, got N = " +
                            std::to_string(n_copies) + ", M = " + std::to_string(m_copies));
  }
  // Both sums run over the N-lattice of j; c_j^{(M)} lives there only when
  // M and N share parity.
  if ((m_copies - n_copies) % 2 != 0) {
    throw std::domain_error(std::string(what) + ": M - N must be even, got N = " +
                            std::to_string(n_copies) + ", M = " + std::to_string(m_copies));
  }
}

std::size_t irrep_count(int n_copies) { return static_cast<std::size_t>(n_copies / 2) + 1; }

// A_J = sum_{i,k} a_i a_k [J in j_i (x) j_k] for integer J = 0..j_cap.
std::vector<double> pair_spectrum(const CharPolynomial& poly, std::int64_t j_cap) {
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(j_cap) + 1);
  const auto coeffs = poly.coeffs();
  const auto size = static_cast<std::int64_t>(coeffs.size());
  for (std::int64_t i = 0; i < size; ++i) {
    if (coeffs[i] == 0.0) continue;
    const auto lo = std::max<std::int64_t>(0, i - j_cap);
    const auto hi = std::min<std::int64_t>(size - 1, i + j_cap);
    const auto ti = poly.spin_at(static_cast<std::size_t>(i)).twice_value;
    for (std::int64_t k = lo; k <= hi; ++k) {
      if (coeffs[k] == 0.0) continue;
      const auto tk = poly.spin_at(static_cast<std::size_t>(k)).twice_value;
      const auto j_lo = std::abs(ti - tk) / 2;
      const auto j_hi = std::min((ti + tk) / 2, j_cap);
      const double w = coeffs[i] * coeffs[k];
      for (auto j = j_lo; j <= j_hi; ++j) acc[static_cast<std::size_t>(j)] += w;
    }
  }
  std::vector<double> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back(a.value());
  return out;
}

}  // namespace

PreparedStateEnt::PreparedStateEnt(int m_copies, std::vector<double> coeffs)
    : m_copies_(m_copies), coeffs_(std::move(coeffs)) {
  if (m_copies_ < 1) throw std::domain_error("PreparedStateEnt: M must be positive");
  if (coeffs_.size() != irrep_count(m_copies_)) {
    throw std::domain_error("PreparedStateEnt: expected one weight per irrep block");
  }
  for (double p : coeffs_) {
    if (!(p >= 0.0)) throw std::domain_error("PreparedStateEnt: negative or NaN weight");
  }
  if (std::abs(compensated_total(coeffs_) - 1.0) > 1e-12) {
    throw std::domain_error("PreparedStateEnt: weights do not sum to one");
  }
}

double PreparedStateEnt::at(SpinIndex j) const {
  if (!on_irrep_lattice(m_copies_, j)) return 0.0;
  return coeffs_[static_cast<std::size_t>((j.twice_value - m_copies_ % 2) / 2)];
}

CharPolynomial::CharPolynomial(SpinIndex first, std::vector<double> coeffs)
    : first_(first), coeffs_(std::move(coeffs)) {
  if (first_.twice_value < 0) throw std::domain_error("CharPolynomial: negative spin");
}

double CharPolynomial::evaluate(double phi) const {
  const double s = std::sin(phi);
  CompensatedSum acc;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto dim = static_cast<double>(spin_at(i).twice_value + 1);
    acc += coeffs_[i] * std::sin(dim * phi) / s;
  }
  return acc.value();
}

double eco_clone_fidelity_exact(int n_copies, int m_copies) {
  require_clone_pair(n_copies, m_copies, "eco_clone_fidelity_exact");
  const auto cn = irrep_weights(n_copies);
  const auto cm = irrep_weights(m_copies);
  // Same parity, so block i of N and block i of M carry the same j.
  CompensatedSum s;
  for (std::size_t i = 0; i < cn.size(); ++i) {
    s += std::exp(cn.log_sqrt()[i] + cm.log_sqrt()[i]);
  }
  return s.value() * s.value();
}

double eco_clone_fidelity_large_m(int n_copies, int m_copies) {
  require_clone_pair(n_copies, m_copies, "eco_clone_fidelity_large_m");
  const auto bn = binomial_weights(n_copies);
  CompensatedSum s;
  for (int tj = n_copies % 2; tj <= n_copies; tj += 2) {
    const double d = tj + 1.0;
    const double b = bn.at(SpinIndex::from_twice(tj));
    s += std::sqrt(b * d * d * d * d / (0.5 * (n_copies + tj) + 1.0));
  }
  const double prefactor = 2.0 * equatorial::central_binomial_weight(m_copies) / m_copies;
  return prefactor * s.value() * s.value();
}

double eco_clone_fidelity_large_n(int n_copies, int m_copies) {
  if (n_copies < 1 || m_copies < 1) {
    throw std::domain_error("eco_clone_fidelity_large_n: N and M must be positive");
  }
  return std::pow(4.0 * n_copies / m_copies, 1.5);
}

std::int64_t cg_overlap_count(SpinIndex j1, SpinIndex j2, SpinIndex j3, SpinIndex j4) {
  const auto t1 = j1.twice_value, t2 = j2.twice_value, t3 = j3.twice_value, t4 = j4.twice_value;
  if (t1 < 0 || t2 < 0 || t3 < 0 || t4 < 0) {
    throw std::domain_error("cg_overlap_count: spins must be nonnegative");
  }
  if ((t1 + t2) % 2 != (t3 + t4) % 2) return 0;
  const auto lo = std::max(std::abs(t1 - t2), std::abs(t3 - t4));
  const auto hi = std::min(t1 + t2, t3 + t4);
  return hi < lo ? 0 : (hi - lo) / 2 + 1;
}

CharPolynomial seed_overlap(int n_copies) {
  return CharPolynomial(min_total_spin(n_copies), irrep_weights(n_copies).sqrt_weights());
}

CharPolynomial prepared_overlap(const PreparedStateEnt& state) {
  const int m = state.copies();
  const auto cm = irrep_weights(m);
  std::vector<double> coeffs(cm.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto dim = static_cast<double>(cm.index_at(i).twice_value + 1);
    coeffs[i] = std::sqrt(state.coeffs()[i]) * std::exp(cm.log_sqrt()[i]) / dim;
  }
  return CharPolynomial(min_total_spin(m), std::move(coeffs));
}

double haar_integral_of_squares(const CharPolynomial& a, const CharPolynomial& b) {
  // Products of two characters on one lattice decompose into integer spins
  // only, so the overlap runs over J = 0, 1, ..., min of the two maxima.
  const auto max_a = a.spin_at(a.coeffs().empty() ? 0 : a.coeffs().size() - 1).twice_value;
  const auto max_b = b.spin_at(b.coeffs().empty() ? 0 : b.coeffs().size() - 1).twice_value;
  const auto j_cap = std::min(max_a, max_b);
  const auto spec_a = pair_spectrum(a, j_cap);
  const auto spec_b = pair_spectrum(b, j_cap);
  CompensatedSum s;
  for (std::size_t j = 0; j < spec_a.size(); ++j) s += spec_a[j] * spec_b[j];
  return s.value();
}

double mp_fidelity_exact_ent(int n_copies, int m_copies, const PreparedStateEnt& state) {
  if (n_copies < 1) throw std::domain_error("mp_fidelity_exact_ent: N must be positive");
  if (state.copies() != m_copies) {
    throw std::domain_error("mp_fidelity_exact_ent: prepared state has M = " +
                            std::to_string(state.copies()) + ", expected " +
                            std::to_string(m_copies));
  }
  return haar_integral_of_squares(seed_overlap(n_copies), prepared_overlap(state));
}

PreparedStateEnt prepared_state_ansatz_ent(int m_copies, double lambda) {
  const int k = reduced_copy_number(m_copies, lambda).copies;
  const auto ck = irrep_weights(k);
  std::vector<double> coeffs(irrep_count(m_copies), 0.0);
  // K and M share parity, so block i of K is block i of M.
  for (std::size_t i = 0; i < ck.size(); ++i) coeffs[i] = ck.weights()[i];
  return PreparedStateEnt(m_copies, std::move(coeffs));
}

double avg_state_expectation_ent(int m_copies, const PreparedStateEnt& state) {
  if (state.copies() != m_copies) {
    throw std::domain_error("avg_state_expectation_ent: prepared state has the wrong M");
  }
  const auto cm = irrep_weights(m_copies);
  CompensatedSum s;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    const auto dim = static_cast<double>(cm.index_at(i).twice_value + 1);
    s += state.coeffs()[i] * cm.weights()[i] / (dim * dim);
  }
  return s.value();
}

double p_true_ent(int n_copies) {
  const auto cn = irrep_weights(n_copies);
  CompensatedSum s;
  for (std::size_t i = 0; i < cn.size(); ++i) {
    s += std::exp(cn.log_sqrt()[i]) * static_cast<double>(cn.index_at(i).twice_value + 1);
  }
  return s.value() * s.value();
}

}  // namespace gclone::entangled
