#include "gclone/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gclone {

namespace {

void require_positive(int n_copies, const char* what) {
  if (n_copies < 1) {
    throw std::domain_error(std::string(what) + ": number of copies must be positive, got " +
                            std::to_string(n_copies));
  }
}

// Exact C(n, k) for n <= 62; the running product C(n, i) * (n - i) fits in
// 128 bits for every intermediate i.
std::uint64_t exact_choose(int n, int k) {
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  }
  return static_cast<std::uint64_t>(c);
}

constexpr int kExactMultiplicityLimit = 62;

// log b_{N,k} for k = 0..N, built from ratios b_{k+1}/b_k = (N-k)/(k+1)
// walked outward from the mode and normalized so the weights sum to one.
std::vector<double> normalized_log_binomial(int n_copies) {
  const int n = n_copies;
  std::vector<double> logs(static_cast<std::size_t>(n) + 1);
  const int mode = n / 2;
  logs[mode] = 0.0;
  for (int k = mode; k < n; ++k) {
    logs[k + 1] = logs[k] + std::log1p(static_cast<double>(n - 2 * k - 1) / (k + 1));
  }
  for (int k = mode; k > 0; --k) {
    // b_{k-1}/b_k = k / (N - k + 1)
    logs[k - 1] = logs[k] + std::log1p(static_cast<double>(2 * k - n - 1) / (n - k + 1));
  }
  CompensatedSum total;
  for (double l : logs) total += std::exp(l);
  const double shift = std::log(total.value());
  for (double& l : logs) l -= shift;
  return logs;
}

}  // namespace

bool on_dicke_lattice(int n_copies, SpinIndex n) {
  const auto t = n.twice_value;
  return n_copies >= 0 && t >= -n_copies && t <= n_copies && (t - n_copies) % 2 == 0;
}

bool on_irrep_lattice(int n_copies, SpinIndex j) {
  const auto t = j.twice_value;
  return n_copies >= 0 && t >= 0 && t <= n_copies && (t - n_copies) % 2 == 0;
}

SpinIndex min_total_spin(int n_copies) { return SpinIndex::from_twice(n_copies % 2); }

WeightVector::WeightVector(int n_copies, SpinIndex first, std::vector<double> log_weights)
    : n_copies_(n_copies), first_(first) {
  weights_.reserve(log_weights.size());
  log_sqrt_.reserve(log_weights.size());
  for (double l : log_weights) {
    weights_.push_back(std::exp(l));
    log_sqrt_.push_back(0.5 * l);
  }
}

SpinIndex WeightVector::last() const {
  return index_at(weights_.empty() ? 0 : weights_.size() - 1);
}

double WeightVector::at(SpinIndex s) const {
  const auto offset = s.twice_value - first_.twice_value;
  if (offset < 0 || offset % 2 != 0) return 0.0;
  const auto i = static_cast<std::size_t>(offset / 2);
  return i < weights_.size() ? weights_[i] : 0.0;
}

std::vector<double> WeightVector::sqrt_weights() const {
  std::vector<double> out;
  out.reserve(log_sqrt_.size());
  for (double l : log_sqrt_) out.push_back(std::exp(l));
  return out;
}

double WeightVector::total() const { return compensated_total(weights_); }

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_binomial_weight(int n_copies, SpinIndex n) {
  require_positive(n_copies, "binomial_weight");
  if (!on_dicke_lattice(n_copies, n)) {
    throw std::domain_error("binomial_weight: n = " + std::to_string(n.value()) +
                            " is not on the Dicke lattice of N = " + std::to_string(n_copies));
  }
  const int k = static_cast<int>((n_copies + n.twice_value) / 2);
  return log_choose(n_copies, k) - n_copies * std::numbers::ln2;
}

double binomial_weight(int n_copies, SpinIndex n) {
  return std::exp(log_binomial_weight(n_copies, n));
}

WeightVector binomial_weights(int n_copies) {
  require_positive(n_copies, "binomial_weights");
  return WeightVector(n_copies, SpinIndex::from_twice(-n_copies),
                      normalized_log_binomial(n_copies));
}

double gaussian_weight(int n_copies, double x) {
  const double n = n_copies;
  return std::sqrt(2.0 / (std::numbers::pi * n)) * std::exp(-2.0 * x * x / n);
}

std::vector<IrrepBlock> irrep_spectrum(int n_copies) {
  require_positive(n_copies, "irrep_spectrum");
  const auto log_b = normalized_log_binomial(n_copies);

  std::vector<IrrepBlock> blocks;
  std::vector<double> log_c;
  for (int tj = n_copies % 2; tj <= n_copies; tj += 2) {
    const int k = (n_copies + tj) / 2;
    IrrepBlock block;
    block.j = SpinIndex::from_twice(tj);
    block.dim_rep = tj + 1;
    // m_j = (2j+1) / (N/2 + j + 1) * C(N, N/2 + j)
    const double log_ratio = std::log(tj + 1.0) - std::log(0.5 * (n_copies + tj) + 1.0);
    block.log_multiplicity = log_ratio + log_choose(n_copies, k);
    if (n_copies <= kExactMultiplicityLimit) {
      const unsigned __int128 num =
          static_cast<unsigned __int128>(exact_choose(n_copies, k)) * 2u * static_cast<unsigned>(tj + 1);
      block.multiplicity = static_cast<std::uint64_t>(num / static_cast<unsigned>(n_copies + tj + 2));
    }
    // c_j = (2j+1)^2 / (N/2 + j + 1) * b_{N,j}
    log_c.push_back(2.0 * std::log(tj + 1.0) - std::log(0.5 * (n_copies + tj) + 1.0) + log_b[k]);
    blocks.push_back(block);
  }

  // The identity sum_j c_j = 1 holds exactly; renormalize away rounding drift.
  CompensatedSum total;
  for (double l : log_c) total += std::exp(l);
  const double shift = std::log(total.value());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].log_weight = log_c[i] - shift;
    blocks[i].weight = std::exp(blocks[i].log_weight);
  }
  return blocks;
}

WeightVector irrep_weights(int n_copies) {
  const auto blocks = irrep_spectrum(n_copies);
  std::vector<double> logs;
  logs.reserve(blocks.size());
  for (const auto& b : blocks) logs.push_back(b.log_weight);
  return WeightVector(n_copies, min_total_spin(n_copies), std::move(logs));
}

ReducedCopies reduced_copy_number(int m_copies, double lambda) {
  require_positive(m_copies, "reduced_copy_number");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw std::domain_error("lambda must be a finite number >= 1, got " + std::to_string(lambda));
  }
  const int parity = m_copies % 2;
  const int minimum = parity == 0 ? 2 : 1;
  const double target = static_cast<double>(m_copies) / lambda;
  const auto steps = static_cast<long long>(std::floor((target - parity) / 2.0 + 0.5));
  long long k = parity + 2 * steps;
  ReducedCopies out;
  if (k < minimum) {
    out.clamped = true;
    k = minimum;
  }
  out.copies = static_cast<int>(std::min<long long>(k, m_copies));
  return out;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_total(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s += v;
  return s.value();
}

}  // namespace gclone
