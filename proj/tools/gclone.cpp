// gclone: command-line front end for the global cloning fidelity library.
//
// Exit status: 0 on success (empty sweeps included), 1 on a configuration or
// I/O error, 2 when power iteration fails to converge, 3 when oracle-check
// finds a disagreement above --tol.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gclone/entangled.hpp"
#include "gclone/equatorial.hpp"
#include "gclone/oracle_quadrature.hpp"
#include "gclone/prep_optimizer.hpp"
#include "gclone/report.hpp"

namespace {

using gclone::prep::Family;
using gclone::report::OutputFormat;

constexpr int kExitConfig = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitOracleMismatch = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes to --out or stdout; unwritable paths are configuration errors.
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

// Renders a small table of named columns as CSV or a JSON array of objects.
std::string render_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return out.str();
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto& cell = row[i];
      if (cell.empty()) {
        obj[columns[i]] = nullptr;
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used == cell.size()) {
          obj[columns[i]] = v;
          continue;
        }
      } catch (const std::exception&) {
      }
      obj[columns[i]] = cell;
    }
    doc.push_back(obj);
  }
  return doc.dump(2) + "\n";
}

struct CommonOptions {
  std::string family = "qubit";
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--family", opts.family, "qubit or entangled")
      ->check(CLI::IsMember({"qubit", "entangled"}));
  cmd->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global N -> M cloning fidelities versus measure-and-prepare protocols"};
  app.require_subcommand(1);

  // clone-fidelity
  CommonOptions clone_opts;
  int clone_n = 1, clone_m = 1;
  auto* clone_cmd = app.add_subcommand("clone-fidelity", "optimal cloner fidelity and its asymptotics");
  add_common(clone_cmd, clone_opts);
  clone_cmd->add_option("--n", clone_n, "input copies N")->required();
  clone_cmd->add_option("--m", clone_m, "output copies M")->required();

  // mp-fidelity
  CommonOptions mp_opts;
  int mp_n = 1, mp_m = 1;
  double mp_lambda = 1.0;
  auto* mp_cmd = app.add_subcommand("mp-fidelity", "exact measure-and-prepare fidelity of the lambda ansatz");
  add_common(mp_cmd, mp_opts);
  mp_cmd->add_option("--n", mp_n, "input copies N")->required();
  mp_cmd->add_option("--m", mp_m, "output copies M")->required();
  mp_cmd->add_option("--lambda", mp_lambda, "ansatz parameter lambda >= 1");

  // sweep
  CommonOptions sweep_opts;
  std::vector<int> sweep_n, sweep_m;
  std::string lambda_rule = "grid";
  std::vector<double> sweep_grid;
  double sweep_alpha = 0.5;
  double sweep_tol = 1e-13;
  bool no_timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate fidelities and relative gaps over (N, M)");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--n", sweep_n, "comma-separated N values")->delimiter(',')->required();
  sweep_cmd->add_option("--m", sweep_m, "comma-separated M values")->delimiter(',');
  sweep_cmd->add_option("--lambda-rule", lambda_rule, "grid (argmax over --grid) or power (lambda = M^alpha)")
      ->check(CLI::IsMember({"grid", "power"}));
  sweep_cmd->add_option("--grid", sweep_grid, "comma-separated lambda grid (default powers of two up to M)")
      ->delimiter(',');
  sweep_cmd->add_option("--alpha", sweep_alpha, "exponent of the power rule, in (0, 1)");
  sweep_cmd->add_option("--tol", sweep_tol, "power iteration tolerance on the Rayleigh quotient");
  sweep_cmd->add_flag("--no-timing", no_timing, "write 0 in wall_time_ms for byte-identical reports");

  // optimize-prep
  CommonOptions opt_opts;
  int opt_n = 1, opt_m = 1;
  double opt_tol = 1e-13;
  int opt_max_iter = 200000;
  std::string opt_state_out;
  auto* opt_cmd = app.add_subcommand("optimize-prep", "eigen-optimal prepared state (qubit family)");
  add_common(opt_cmd, opt_opts);
  opt_cmd->add_option("--n", opt_n, "input copies N")->required();
  opt_cmd->add_option("--m", opt_m, "output copies M")->required();
  opt_cmd->add_option("--tol", opt_tol, "tolerance on the Rayleigh quotient change");
  opt_cmd->add_option("--max-iter", opt_max_iter, "power iteration cap");
  opt_cmd->add_option("--state-out", opt_state_out, "write the optimal weights p_m as CSV");

  // appendix-check
  CommonOptions app_opts;
  int app_n = 4;
  double app_lambda = 16.0;
  std::vector<int> app_m;
  auto* app_cmd = app.add_subcommand("appendix-check", "exact fidelity vs small-angle expansion");
  add_common(app_cmd, app_opts);
  app_cmd->add_option("--n", app_n, "input copies N")->required();
  app_cmd->add_option("--lambda", app_lambda, "ansatz parameter lambda >= 1");
  app_cmd->add_option("--m", app_m, "comma-separated M values")->delimiter(',')->required();

  // oracle-check
  CommonOptions oc_opts;
  int oc_n = 1, oc_m = 1, oc_nodes = 0;
  double oc_lambda = 1.0, oc_tol = 1e-9;
  auto* oc_cmd = app.add_subcommand("oracle-check", "closed-form fidelity vs brute-force quadrature");
  add_common(oc_cmd, oc_opts);
  oc_cmd->add_option("--n", oc_n, "input copies N")->required();
  oc_cmd->add_option("--m", oc_m, "output copies M")->required();
  oc_cmd->add_option("--lambda", oc_lambda, "ansatz parameter lambda >= 1");
  oc_cmd->add_option("--nodes", oc_nodes, "quadrature nodes (default: exactness threshold)");
  oc_cmd->add_option("--tol", oc_tol, "allowed absolute disagreement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*clone_cmd) {
      const auto family = gclone::prep::family_from_string(clone_opts.family);
      const auto format = gclone::report::format_from_string(clone_opts.format);
      std::vector<std::string> row{clone_opts.family, std::to_string(clone_n), std::to_string(clone_m)};
      if (family == Family::qubit) {
        row.push_back(num(gclone::equatorial::clone_fidelity_exact(clone_n, clone_m)));
        row.push_back(num(gclone::equatorial::clone_fidelity_large_m(clone_n, clone_m)));
        row.push_back(num(gclone::equatorial::clone_fidelity_large_n(clone_n, clone_m)));
      } else {
        row.push_back(num(gclone::entangled::eco_clone_fidelity_exact(clone_n, clone_m)));
        row.push_back(num(gclone::entangled::eco_clone_fidelity_large_m(clone_n, clone_m)));
        row.push_back(num(gclone::entangled::eco_clone_fidelity_large_n(clone_n, clone_m)));
      }
      emit(render_table({"family", "N", "M", "f_clon", "f_clon_large_m", "f_clon_large_n"}, {row},
                        format),
           clone_opts.out);
    } else if (*mp_cmd) {
      const auto family = gclone::prep::family_from_string(mp_opts.family);
      const auto format = gclone::report::format_from_string(mp_opts.format);
      const auto reduced = gclone::reduced_copy_number(mp_m, mp_lambda);
      if (reduced.clamped) {
        std::cerr << "note: M/lambda is below the parity minimum; using K = " << reduced.copies << "\n";
      }
      double f_mp = 0.0, avg = 0.0, ptrue = 0.0;
      if (family == Family::qubit) {
        const auto state = gclone::equatorial::prepared_state_ansatz(mp_m, mp_lambda);
        f_mp = gclone::equatorial::mp_fidelity_exact(mp_n, mp_m, state);
        avg = gclone::equatorial::avg_state_expectation(mp_m, state);
        ptrue = gclone::equatorial::p_true(mp_n);
      } else {
        const auto state = gclone::entangled::prepared_state_ansatz_ent(mp_m, mp_lambda);
        f_mp = gclone::entangled::mp_fidelity_exact_ent(mp_n, mp_m, state);
        avg = gclone::entangled::avg_state_expectation_ent(mp_m, state);
        ptrue = gclone::entangled::p_true_ent(mp_n);
      }
      emit(render_table({"family", "N", "M", "lambda", "K", "f_mp", "avg_expectation", "p_true",
                         "f_product_approx"},
                        {{mp_opts.family, std::to_string(mp_n), std::to_string(mp_m), num(mp_lambda),
                          std::to_string(reduced.copies), num(f_mp), num(avg), num(ptrue),
                          num(avg * ptrue)}},
                        format),
           mp_opts.out);
    } else if (*sweep_cmd) {
      gclone::report::SweepConfig config;
      config.family = gclone::prep::family_from_string(sweep_opts.family);
      config.n_values = sweep_n;
      config.m_values = sweep_m;
      config.lambda_rule = lambda_rule == "power" ? gclone::report::LambdaRule::power(sweep_alpha)
                                                  : gclone::report::LambdaRule::explicit_grid(sweep_grid);
      config.output = gclone::report::format_from_string(sweep_opts.format);
      config.output_path = sweep_opts.out;
      config.record_timing = !no_timing;
      config.power_options.tolerance = sweep_tol;
      const auto report = gclone::report::run_sweep(config);
      for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
      emit(gclone::report::serialize_report(report, config.output), config.output_path);
    } else if (*opt_cmd) {
      const auto format = gclone::report::format_from_string(opt_opts.format);
      gclone::prep::PowerIterationOptions options;
      options.tolerance = opt_tol;
      options.max_iterations = opt_max_iter;
      const auto optimal =
          gclone::prep::optimal_prepared_state(gclone::prep::build_quadratic_form(opt_n, opt_m), options);
      std::vector<std::string> row{std::to_string(opt_n), std::to_string(opt_m), num(optimal.fidelity),
                                   std::to_string(optimal.iterations), num(optimal.residual)};
      if (opt_m >= opt_n && (opt_m - opt_n) % 2 == 0) {
        const double f_clon = gclone::equatorial::clone_fidelity_exact(opt_n, opt_m);
        row.push_back(num(f_clon));
        row.push_back(num(gclone::prep::gap_from(f_clon, optimal.fidelity)));
      } else {
        row.emplace_back();
        row.emplace_back();
      }
      emit(render_table({"N", "M", "f_eig", "iterations", "residual", "f_clon", "delta"}, {row}, format),
           opt_opts.out);
      if (!opt_state_out.empty()) {
        std::ostringstream state;
        state << "m,p\n";
        const auto coeffs = optimal.state.coeffs();
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
          state << num(0.5 * (2.0 * static_cast<double>(t) - opt_m)) << ',' << num(coeffs[t]) << '\n';
        }
        emit(state.str(), opt_state_out);
      }
    } else if (*app_cmd) {
      const auto format = gclone::report::format_from_string(app_opts.format);
      emit(gclone::report::serialize_appendix(gclone::report::appendix_check(app_n, app_lambda, app_m),
                                              format),
           app_opts.out);
    } else if (*oc_cmd) {
      const auto family = gclone::prep::family_from_string(oc_opts.family);
      const auto format = gclone::report::format_from_string(oc_opts.format);
      double exact = 0.0;
      gclone::oracle::QuadratureResult quad;
      int nodes = oc_nodes;
      if (family == Family::qubit) {
        const auto state = gclone::equatorial::prepared_state_ansatz(oc_m, oc_lambda);
        if (nodes <= 0) nodes = gclone::oracle::phase_exactness_nodes(oc_n, oc_m);
        exact = gclone::equatorial::mp_fidelity_exact(oc_n, oc_m, state);
        quad = gclone::oracle::phase_quadrature_fidelity(oc_n, oc_m, state, nodes);
      } else {
        const auto state = gclone::entangled::prepared_state_ansatz_ent(oc_m, oc_lambda);
        if (nodes <= 0) nodes = gclone::oracle::su2_exactness_nodes(oc_n, oc_m);
        exact = gclone::entangled::mp_fidelity_exact_ent(oc_n, oc_m, state);
        quad = gclone::oracle::su2_quadrature_fidelity_ent(oc_n, oc_m, state, nodes);
      }
      const double diff = std::abs(exact - quad.value);
      const bool pass = diff <= oc_tol;
      if (quad.under_resolved) std::cerr << "warning: node count below the exactness threshold\n";
      emit(render_table({"family", "N", "M", "lambda", "nodes", "f_exact", "f_quadrature", "abs_diff",
                         "under_resolved", "pass"},
                        {{oc_opts.family, std::to_string(oc_n), std::to_string(oc_m), num(oc_lambda),
                          std::to_string(nodes), num(exact), num(quad.value), num(diff),
                          quad.under_resolved ? "true" : "false", pass ? "true" : "false"}},
                        format),
           oc_opts.out);
      if (!pass) return kExitOracleMismatch;
    }
  } catch (const gclone::prep::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
