#ifndef GCLONE_SPIN_CORE_HPP
#define GCLONE_SPIN_CORE_HPP

// Half-integer spin lattices, binomial weights and SU(2) irrep spectra of
// N-fold tensor powers of a qubit.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gclone {

/// A half-integer quantum number stored as twice its value, so that
/// n = -3/2 is held as -3. Parity checks on the lattice are then exact.
struct SpinIndex {
  std::int64_t twice_value = 0;

  static constexpr SpinIndex from_twice(std::int64_t twice) { return SpinIndex{twice}; }
  static constexpr SpinIndex from_integer(std::int64_t value) { return SpinIndex{2 * value}; }

  constexpr double value() const { return 0.5 * static_cast<double>(twice_value); }
  constexpr bool is_integer() const { return twice_value % 2 == 0; }

  friend constexpr auto operator<=>(const SpinIndex&, const SpinIndex&) = default;
};

/// Dicke label n of an N-qubit symmetric state: |2n| <= N and 2n = N (mod 2).
bool on_dicke_lattice(int n_copies, SpinIndex n);

/// Total-spin label j in the decomposition of N qubits: j_min <= j <= N/2
/// with 2j = N (mod 2).
bool on_irrep_lattice(int n_copies, SpinIndex j);

/// 0 for even N, 1/2 for odd N.
SpinIndex min_total_spin(int n_copies);

/// Probability weights over a spin lattice with stride one (twice stride two).
///
/// Entry i sits at SpinIndex{first.twice_value + 2 i}. Alongside each weight
/// the log of its square root is kept, so amplitudes can be formed without
/// taking sqrt of an underflowed probability.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(int n_copies, SpinIndex first, std::vector<double> log_weights);

  int n_copies() const { return n_copies_; }
  SpinIndex first() const { return first_; }
  SpinIndex last() const;
  std::size_t size() const { return weights_.size(); }

  SpinIndex index_at(std::size_t i) const {
    return SpinIndex::from_twice(first_.twice_value + 2 * static_cast<std::int64_t>(i));
  }
  /// Weight at a spin label, 0 outside the support or off-lattice.
  double at(SpinIndex s) const;

  std::span<const double> weights() const { return weights_; }
  /// log(sqrt(w_i)); -inf for zero weights.
  std::span<const double> log_sqrt() const { return log_sqrt_; }
  /// sqrt(w_i) computed as exp of the stored log.
  std::vector<double> sqrt_weights() const;

  double total() const;

 private:
  int n_copies_ = 0;
  SpinIndex first_{};
  std::vector<double> weights_;
  std::vector<double> log_sqrt_;
};

/// log C(n, k) via lgamma.
double log_choose(int n, int k);

/// log b_{N,n} = log(C(N, N/2 + n) / 2^N). Throws std::domain_error for
/// off-lattice or out-of-range n.
double log_binomial_weight(int n_copies, SpinIndex n);

/// b_{N,n} = C(N, N/2 + n) / 2^N.
double binomial_weight(int n_copies, SpinIndex n);

/// The full binomial distribution over n = -N/2, ..., N/2.
WeightVector binomial_weights(int n_copies);

/// Gaussian surrogate sqrt(2 / (pi N)) exp(-2 x^2 / N) of b_{N,x}.
double gaussian_weight(int n_copies, double x);

/// One total-spin sector of the N-qubit tensor power.
struct IrrepBlock {
  SpinIndex j;
  std::int64_t dim_rep = 0;                  // 2j + 1
  std::optional<std::uint64_t> multiplicity;  // exact when it fits (N <= 62)
  double log_multiplicity = 0.0;
  double weight = 0.0;                       // c_j = d_j m_j / 2^N
  double log_weight = 0.0;
};

/// Blocks j = j_min, ..., N/2 in ascending order.
std::vector<IrrepBlock> irrep_spectrum(int n_copies);

/// c_j^{(N)} as a WeightVector over the irrep lattice.
WeightVector irrep_weights(int n_copies);

/// Reduced copy number used by the lambda families of prepared states:
/// M / lambda rounded to the nearest K with K = M (mod 2), never below
/// 2 (even M) or 1 (odd M). Ties round up.
struct ReducedCopies {
  int copies = 0;
  bool clamped = false;  // M / lambda fell below the parity minimum
};
ReducedCopies reduced_copy_number(int m_copies, double lambda);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_total(std::span<const double> values);

}  // namespace gclone

#endif  // GCLONE_SPIN_CORE_HPP
