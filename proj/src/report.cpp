#include "gclone/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gclone/entangled.hpp"
#include "gclone/equatorial.hpp"

namespace gclone::report {

using nlohmann::json;

OutputFormat format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

LambdaRule LambdaRule::explicit_grid(std::vector<double> grid) {
  LambdaRule rule;
  rule.kind = Kind::grid;
  rule.grid = std::move(grid);
  return rule;
}

LambdaRule LambdaRule::power(double alpha) {
  LambdaRule rule;
  rule.kind = Kind::power;
  rule.alpha = alpha;
  return rule;
}

double LambdaRule::lambda_for(int m_copies) const {
  return std::pow(static_cast<double>(m_copies), alpha);
}

std::string LambdaRule::describe() const {
  std::ostringstream out;
  out << std::setprecision(17);
  if (kind == Kind::power) {
    out << "power:" << alpha;
    return out.str();
  }
  out << "grid:";
  if (grid.empty()) out << "pow2";
  for (std::size_t i = 0; i < grid.size(); ++i) out << (i ? "," : "") << grid[i];
  return out.str();
}

void SweepConfig::validate() const {
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("N values must be positive, got " + std::to_string(n));
  }
  for (int m : m_values) {
    if (m < 1) throw std::invalid_argument("M values must be positive, got " + std::to_string(m));
  }
  if (lambda_rule.kind == LambdaRule::Kind::power) {
    if (!(lambda_rule.alpha > 0.0 && lambda_rule.alpha < 1.0)) {
      throw std::invalid_argument("power rule exponent must lie in (0, 1)");
    }
  } else {
    for (double l : lambda_rule.grid) {
      if (!(l >= 1.0) || !std::isfinite(l)) {
        throw std::invalid_argument("lambda grid values must be finite and >= 1");
      }
    }
  }
  if (power_options.max_iterations < 1 || !(power_options.tolerance > 0.0)) {
    throw std::invalid_argument("power iteration needs positive iterations and tolerance");
  }
}

std::string SweepConfig::hash() const {
  std::ostringstream canon;
  canon << std::setprecision(17) << "family=" << prep::to_string(family) << ";n=";
  for (int n : n_values) canon << n << ',';
  canon << ";m=";
  for (int m : m_values) canon << m << ',';
  canon << ";rule=" << lambda_rule.describe() << ";tol=" << power_options.tolerance
        << ";iter=" << power_options.max_iterations;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

unsigned worker_count_from_env() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepRow compute_row(prep::Family family, int n_copies, int m_copies, const LambdaRule& rule,
                     const prep::PowerIterationOptions& options, bool record_timing,
                     bool* clamped) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.family = family;
  row.n_copies = n_copies;
  row.m_copies = m_copies;
  row.f_clon = prep::clone_fidelity(n_copies, m_copies, family);

  if (rule.kind == LambdaRule::Kind::power) {
    row.lambda = rule.lambda_for(m_copies);
    row.f_mp = prep::ansatz_fidelity(n_copies, m_copies, row.lambda, family);
  } else {
    const auto sweep = prep::lambda_sweep(
        n_copies, m_copies, rule.grid.empty() ? prep::power_of_two_grid(m_copies) : rule.grid,
        family);
    row.lambda = sweep.best().lambda;
    row.f_mp = sweep.best().fidelity;
  }
  if (clamped) *clamped = reduced_copy_number(m_copies, row.lambda).clamped;
  row.f_naive = prep::ansatz_fidelity(n_copies, m_copies, 1.0, family);

  double f_est = row.f_mp;
  if (family == prep::Family::qubit) {
    const auto optimal =
        prep::optimal_prepared_state(prep::build_quadratic_form(n_copies, m_copies), options);
    row.f_eig = optimal.fidelity;
    constexpr double kSlack = 1e-9;
    if (optimal.fidelity < row.f_mp - kSlack || optimal.fidelity < row.f_naive - kSlack) {
      throw std::logic_error("eigen-optimal fidelity below an ansatz fidelity at N = " +
                             std::to_string(n_copies) + ", M = " + std::to_string(m_copies));
    }
    f_est = std::max(f_est, optimal.fidelity);
  }
  row.ratio_naive = row.f_naive / row.f_clon;
  row.delta = prep::gap_from(row.f_clon, f_est);
  if (record_timing) {
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

SweepReport run_sweep(const SweepConfig& config, unsigned workers) {
  config.validate();
  SweepReport report;
  report.config_hash = config.hash();

  auto n_values = config.n_values;
  auto m_values = config.m_values;
  std::sort(n_values.begin(), n_values.end());
  n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
  std::sort(m_values.begin(), m_values.end());
  m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());

  struct Task {
    int n;
    int m;
  };
  std::vector<Task> tasks;
  for (int n : n_values) {
    for (int m : m_values) {
      if (m < n) {
        report.notes.push_back("skipped N=" + std::to_string(n) + " M=" + std::to_string(m) +
                               ": M < N");
      } else if ((m - n) % 2 != 0) {
        report.notes.push_back("skipped N=" + std::to_string(n) + " M=" + std::to_string(m) +
                               ": M - N is odd");
      } else {
        tasks.push_back({n, m});
      }
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::vector<char> clamped(tasks.size(), 0);
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        bool was_clamped = false;
        rows[i] = compute_row(config.family, tasks[i].n, tasks[i].m, config.lambda_rule,
                              config.power_options, config.record_timing, &was_clamped);
        clamped[i] = was_clamped;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const auto count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, tasks.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < count; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (clamped[i]) {
      report.notes.push_back("clamped N=" + std::to_string(tasks[i].n) + " M=" +
                             std::to_string(tasks[i].m) +
                             ": M/lambda below the parity minimum, prepared state uses K = " +
                             std::to_string(reduced_copy_number(tasks[i].m, rows[i].lambda).copies));
    }
  }
  report.rows = std::move(rows);
  return report;
}

namespace {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  return v;
}

json row_to_json(const SweepRow& r) {
  json j;
  j["family"] = prep::to_string(r.family);
  j["N"] = r.n_copies;
  j["M"] = r.m_copies;
  j["lambda"] = round_to_output_precision(r.lambda);
  j["f_clon"] = round_to_output_precision(r.f_clon);
  j["f_mp"] = round_to_output_precision(r.f_mp);
  j["f_naive"] = round_to_output_precision(r.f_naive);
  j["f_eig"] = r.f_eig ? json(round_to_output_precision(*r.f_eig)) : json(nullptr);
  j["ratio_naive"] = round_to_output_precision(r.ratio_naive);
  j["delta"] = round_to_output_precision(r.delta);
  j["wall_time_ms"] = round_to_output_precision(r.wall_time_ms);
  return j;
}

SweepRow row_from_json(const json& j) {
  SweepRow r;
  r.family = prep::family_from_string(j.at("family").get<std::string>());
  r.n_copies = j.at("N").get<int>();
  r.m_copies = j.at("M").get<int>();
  r.lambda = j.at("lambda").get<double>();
  r.f_clon = j.at("f_clon").get<double>();
  r.f_mp = j.at("f_mp").get<double>();
  r.f_naive = j.at("f_naive").get<double>();
  if (!j.at("f_eig").is_null()) r.f_eig = j.at("f_eig").get<double>();
  r.ratio_naive = j.at("ratio_naive").get<double>();
  r.delta = j.at("delta").get<double>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

}  // namespace

double round_to_output_precision(double value) { return std::stod(format_number(value)); }

std::string serialize_report(const SweepReport& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    json doc;
    doc["metadata"] = {{"tool_version", report.tool_version},
                       {"config_hash", report.config_hash}};
    doc["rows"] = json::array();
    for (const auto& r : report.rows) doc["rows"].push_back(row_to_json(r));
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << prep::to_string(r.family) << ',' << r.n_copies << ',' << r.m_copies << ','
        << format_number(r.lambda) << ',' << format_number(r.f_clon) << ','
        << format_number(r.f_mp) << ',' << format_number(r.f_naive) << ','
        << (r.f_eig ? format_number(*r.f_eig) : std::string()) << ','
        << format_number(r.ratio_naive) << ',' << format_number(r.delta) << ','
        << format_number(r.wall_time_ms) << '\n';
  }
  return out.str();
}

std::vector<SweepRow> parse_csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("CSV report does not start with the expected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) {
      throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    }
    SweepRow r;
    r.family = prep::family_from_string(f[0]);
    r.n_copies = parse_int(f[1]);
    r.m_copies = parse_int(f[2]);
    r.lambda = parse_double(f[3]);
    r.f_clon = parse_double(f[4]);
    r.f_mp = parse_double(f[5]);
    r.f_naive = parse_double(f[6]);
    if (!f[7].empty()) r.f_eig = parse_double(f[7]);
    r.ratio_naive = parse_double(f[8]);
    r.delta = parse_double(f[9]);
    r.wall_time_ms = parse_double(f[10]);
    rows.push_back(r);
  }
  return rows;
}

SweepReport parse_json_report(const std::string& text) {
  const auto doc = json::parse(text);
  SweepReport report;
  report.tool_version = doc.at("metadata").at("tool_version").get<std::string>();
  report.config_hash = doc.at("metadata").at("config_hash").get<std::string>();
  for (const auto& j : doc.at("rows")) report.rows.push_back(row_from_json(j));
  return report;
}

SqrtBinomialMoments sqrt_binomial_moments(int n_copies) {
  const auto b = binomial_weights(n_copies);
  CompensatedSum zeroth, second;
  for (std::size_t t = 0; t < b.size(); ++t) {
    const double n = b.index_at(t).value();
    const double amp = std::exp(b.log_sqrt()[t]);
    zeroth += amp;
    second += n * n * amp;
  }
  return {zeroth.value(), second.value()};
}

std::vector<AppendixRow> appendix_check(int n_copies, double lambda,
                                        const std::vector<int>& m_values) {
  const auto moments = sqrt_binomial_moments(n_copies);
  std::vector<AppendixRow> rows;
  rows.reserve(m_values.size());
  for (int m : m_values) {
    if (m < n_copies) {
      throw std::domain_error("appendix_check: M = " + std::to_string(m) + " is below N");
    }
    AppendixRow row;
    row.m_copies = m;
    row.f_exact = equatorial::mp_fidelity_exact(n_copies, m,
                                                equatorial::prepared_state_ansatz(m, lambda));
    const double prefactor = std::sqrt(2.0 * lambda / (std::numbers::pi * m * (1.0 + lambda)));
    // <theta^2> under the Gaussian prepared-state density is (1 + lambda) / M.
    const double spread = (1.0 + lambda) / m;
    row.f_zeroth = prefactor * moments.zeroth * moments.zeroth;
    row.f_second = prefactor * moments.zeroth * (moments.zeroth - spread * moments.second);
    row.gap_ratio = std::abs(row.f_exact - row.f_zeroth) / row.f_exact;
    rows.push_back(row);
  }
  return rows;
}

std::string serialize_appendix(const std::vector<AppendixRow>& rows, OutputFormat format) {
  if (format == OutputFormat::json) {
    json doc = json::array();
    for (const auto& r : rows) {
      doc.push_back({{"M", r.m_copies},
                     {"f_exact", round_to_output_precision(r.f_exact)},
                     {"f_zeroth", round_to_output_precision(r.f_zeroth)},
                     {"f_second", round_to_output_precision(r.f_second)},
                     {"gap_ratio", round_to_output_precision(r.gap_ratio)}});
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "M,f_exact,f_zeroth,f_second,gap_ratio\n";
  for (const auto& r : rows) {
    out << r.m_copies << ',' << format_number(r.f_exact) << ',' << format_number(r.f_zeroth)
        << ',' << format_number(r.f_second) << ',' << format_number(r.gap_ratio) << '\n';
  }
  return out.str();
}

}  // namespace gclone::report
