#ifndef GCLONE_REPORT_HPP
#define GCLONE_REPORT_HPP

// Sweeps over (N, M) that collect cloner, ansatz, naive and eigen-optimal
// fidelities into plot-ready CSV/JSON tables, and the second-order check of
// the slowly-varying-density approximation.

#include <optional>
#include <string>
#include <vector>

#include "gclone/prep_optimizer.hpp"

namespace gclone::report {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kWorkersEnv = "GCLONE_WORKERS";
inline constexpr const char* kCsvHeader =
    "family,N,M,lambda,f_clon,f_mp,f_naive,f_eig,ratio_naive,delta,wall_time_ms";

enum class OutputFormat { csv, json };
OutputFormat format_from_string(const std::string& name);

/// How lambda is chosen per (N, M): the argmax of an explicit grid, or the
/// power rule lambda = M^alpha with 0 < alpha < 1.
struct LambdaRule {
  enum class Kind { grid, power };
  Kind kind = Kind::grid;
  std::vector<double> grid;  // empty grid means powers of two up to M
  double alpha = 0.5;

  static LambdaRule explicit_grid(std::vector<double> grid);
  static LambdaRule power(double alpha);
  double lambda_for(int m_copies) const;  // power rule only
  std::string describe() const;
};

struct SweepConfig {
  prep::Family family = prep::Family::qubit;
  std::vector<int> n_values;
  std::vector<int> m_values;
  LambdaRule lambda_rule;
  OutputFormat output = OutputFormat::csv;
  std::string output_path;  // empty or "-" for stdout
  bool record_timing = true;
  prep::PowerIterationOptions power_options;

  /// Throws std::invalid_argument on a malformed configuration.
  void validate() const;
  /// FNV-1a over a canonical text form, hex encoded.
  std::string hash() const;
};

struct SweepRow {
  prep::Family family = prep::Family::qubit;
  int n_copies = 0;
  int m_copies = 0;
  double lambda = 1.0;
  double f_clon = 0.0;
  double f_mp = 0.0;
  double f_naive = 0.0;
  std::optional<double> f_eig;  // qubit family only
  double ratio_naive = 0.0;
  double delta = 0.0;
  double wall_time_ms = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepReport {
  std::string tool_version = kToolVersion;
  std::string config_hash;
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;  // skipped or clamped rows, not serialized
};

/// Worker count from GCLONE_WORKERS, defaulting to the hardware concurrency.
unsigned worker_count_from_env();

/// One row per admissible (N, M), ordered by (N, M). Inadmissible pairs are
/// skipped and described in `notes`.
SweepReport run_sweep(const SweepConfig& config, unsigned workers = worker_count_from_env());

/// Evaluates a single (N, M) pair.
SweepRow compute_row(prep::Family family, int n_copies, int m_copies, const LambdaRule& rule,
                     const prep::PowerIterationOptions& options, bool record_timing,
                     bool* clamped = nullptr);

std::string serialize_report(const SweepReport& report, OutputFormat format);
/// Parses the CSV body produced by serialize_report.
std::vector<SweepRow> parse_csv_rows(const std::string& text);
/// Parses the JSON document produced by serialize_report.
SweepReport parse_json_report(const std::string& text);

/// Rounds to the 12 significant digits used on output.
double round_to_output_precision(double value);

struct SqrtBinomialMoments {
  double zeroth = 0.0;  // sum_n sqrt(b_{N,n})
  double second = 0.0;  // sum_n n^2 sqrt(b_{N,n})
};
SqrtBinomialMoments sqrt_binomial_moments(int n_copies);

struct AppendixRow {
  int m_copies = 0;
  double f_exact = 0.0;
  double f_zeroth = 0.0;
  double f_second = 0.0;
  double gap_ratio = 0.0;  // |f_exact - f_zeroth| / f_exact
};

/// Compares the exact fidelity of the lambda ansatz with its small-angle
/// expansion: the seed density to second order in theta against a Gaussian
/// prepared-state density of width (1 + lambda) / M.
std::vector<AppendixRow> appendix_check(int n_copies, double lambda,
                                        const std::vector<int>& m_values);

std::string serialize_appendix(const std::vector<AppendixRow>& rows, OutputFormat format);

}  // namespace gclone::report

#endif  // GCLONE_REPORT_HPP
