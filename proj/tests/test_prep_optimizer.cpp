#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gclone/entangled.hpp"
#include "gclone/prep_optimizer.hpp"

using namespace gclone;
using namespace gclone::prep;

namespace {

Eigen::MatrixXd dense(const QuadraticForm& form) {
  const auto n = static_cast<Eigen::Index>(form.dimension());
  const auto flat = form.to_dense();
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = flat[static_cast<std::size_t>(r * n + c)];
  return a;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(family_from_string("qubit") == Family::qubit);
  CHECK(family_from_string("entangled") == Family::entangled);
  CHECK(to_string(Family::entangled) == "entangled");
  CHECK_THROWS_AS(family_from_string("qutrit"), std::invalid_argument);
}

TEST_CASE("quadratic form for N = M = 1") {
  const auto form = build_quadratic_form(1, 1);
  REQUIRE(form.dimension() == 2);
  CHECK(form.entry(0, 0) == doctest::Approx(0.5));
  CHECK(form.entry(1, 1) == doctest::Approx(0.5));
  CHECK(form.entry(0, 1) == doctest::Approx(0.25));
  CHECK(form.entry(1, 0) == doctest::Approx(0.25));
}

TEST_CASE("quadratic form structure") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = n; m <= 21; m += 2) {
      const auto form = build_quadratic_form(n, m);
      CHECK(form.trace() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(form.bandwidth() <= static_cast<std::size_t>(n));
      const auto a = dense(form);
      CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(a.minCoeff() >= 0.0);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(build_quadratic_form(2, 4)));
  CHECK(solver.eigenvalues().minCoeff() >= -1e-14);
}

TEST_CASE("banded apply matches the dense product") {
  const auto form = build_quadratic_form(3, 17);
  const auto a = dense(form);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(a.rows(), -1.0, 2.0);
  std::vector<double> out(form.dimension());
  form.apply(std::span<const double>(x.data(), form.dimension()), out);
  const Eigen::VectorXd expected = a * x;
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(expected(Eigen::Index(i))));
}

TEST_CASE("optimal prepared state for N = M = 1") {
  const auto opt = optimal_prepared_state(build_quadratic_form(1, 1));
  CHECK(opt.fidelity == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(opt.state.coeffs()[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(opt.state.coeffs()[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("power iteration agrees with the dense eigensolver") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = n; m <= 33; m += 4) {
      const auto form = build_quadratic_form(n, m);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(form));
      const auto opt = optimal_prepared_state(form);
      CHECK(opt.fidelity == doctest::Approx(solver.eigenvalues().maxCoeff()).epsilon(1e-10));
      CHECK(opt.residual <= 1e-6);
    }
  }
}

TEST_CASE("optimizer state replays through the exact fidelity") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = n; m <= 64; m += 2) {
      const auto opt = optimal_prepared_state(build_quadratic_form(n, m));
      const double replay = equatorial::mp_fidelity_exact(n, m, opt.state);
      CHECK(std::abs(replay - opt.fidelity) <= 1e-10);
    }
  }
}

TEST_CASE("dominance chain naive <= ansatz <= eigen <= cloner") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = n; m <= 64; m += 2) {
      const double naive = ansatz_fidelity(n, m, 1.0, Family::qubit);
      const double best = lambda_sweep(n, m, power_of_two_grid(m), Family::qubit).best().fidelity;
      const double eig = optimal_prepared_state(build_quadratic_form(n, m)).fidelity;
      const double clon = clone_fidelity(n, m, Family::qubit);
      CHECK(naive <= best + 1e-9);
      CHECK(best <= eig + 1e-9);
      CHECK(eig <= clon + 1e-9);
    }
  }
}

TEST_CASE("lambda_sweep") {
  const auto sweep = lambda_sweep(2, 64, {8.0, 1.0, 4.0, 2.0}, Family::qubit);
  REQUIRE(sweep.rows.size() == 4);
  CHECK(sweep.rows.front().lambda == 1.0);
  CHECK(sweep.rows.back().lambda == 8.0);
  for (const auto& row : sweep.rows) CHECK(row.fidelity <= sweep.best().fidelity);
  // lambda = 2 and 3 both give K = 1 for M = 3, so the tie goes to 2.
  const auto tie = lambda_sweep(1, 3, {3.0, 2.0}, Family::qubit);
  CHECK(tie.rows[0].fidelity == tie.rows[1].fidelity);
  CHECK(tie.best().lambda == 2.0);
  CHECK_THROWS_AS(lambda_sweep(1, 3, {}, Family::qubit), std::invalid_argument);
  CHECK(power_of_two_grid(10) == std::vector<double>{1.0, 2.0, 4.0, 8.0});
}

TEST_CASE("relative gap") {
  CHECK(relative_gap(2, 4096, Family::qubit).delta <= 0.05);
  CHECK(relative_gap(2, 2048, Family::entangled).delta <= 0.10);
  // M = N: the cloner is the identity, measuring still loses fidelity
  for (int n : {1, 3, 6}) {
    const auto row = relative_gap(n, n, Family::qubit);
    CHECK(row.f_clon == doctest::Approx(1.0));
    CHECK(row.delta > 0.0);
    CHECK(row.delta < 1.0);
  }
  CHECK(relative_gap(1, 1, Family::qubit).delta == doctest::Approx(0.25));
  for (int n : {2, 4}) {
    double previous = 1.0;
    for (int m : {64, 256, 1024}) {
      const double delta = relative_gap(n, m, Family::qubit).delta;
      CHECK(delta <= previous + 1e-12);
      previous = delta;
    }
  }
}

TEST_CASE("gap_from") {
  CHECK(gap_from(0.5, 0.25) == doctest::Approx(0.5));
  CHECK(gap_from(0.5, 0.5 + 1e-12) == 0.0);
  CHECK_THROWS_AS(gap_from(0.5, 0.6), std::logic_error);
}

TEST_CASE("non-convergence is reported") {
  PowerIterationOptions opts;
  opts.max_iterations = 2;
  CHECK_THROWS_AS(optimal_prepared_state(build_quadratic_form(2, 64), opts), ConvergenceError);
}
