#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exact_oracle.hpp"
#include "gclone/entangled.hpp"

using namespace gclone;
using namespace gclone::entangled;
namespace ex = gclone::testing;

namespace {

SpinIndex half(int twice) { return SpinIndex::from_twice(twice); }

// Number of J in both j1 (x) j2 and j3 (x) j4, by enumeration.
std::int64_t count_common(int t1, int t2, int t3, int t4) {
  std::int64_t count = 0;
  for (int tj = 0; tj <= std::max(t1 + t2, t3 + t4); ++tj) {
    const bool in12 = tj >= std::abs(t1 - t2) && tj <= t1 + t2 && (tj - t1 - t2) % 2 == 0;
    const bool in34 = tj >= std::abs(t3 - t4) && tj <= t3 + t4 && (tj - t3 - t4) % 2 == 0;
    if (in12 && in34) ++count;
  }
  return count;
}

// (2/pi) int_0^pi f(phi) sin^2(phi) dphi on a fine midpoint grid.
template <class F>
double class_integral(F f, int nodes) {
  double s = 0.0;
  for (int t = 0; t < nodes; ++t) {
    const double phi = std::numbers::pi * (t + 0.5) / nodes;
    s += f(phi) * std::sin(phi) * std::sin(phi);
  }
  return 2.0 * s / nodes;
}

}  // namespace

TEST_CASE("economical cloner fidelity closed values") {
  CHECK(eco_clone_fidelity_exact(1, 3) == doctest::Approx(0.5).epsilon(1e-14));
  // c^(2) = (1/4, 3/4), c^(4) = (1/8, 9/16, 5/16)
  CHECK(eco_clone_fidelity_exact(2, 4) ==
        doctest::Approx(std::pow(std::sqrt(1.0 / 32.0) + std::sqrt(27.0 / 64.0), 2)).epsilon(1e-14));
  for (int n = 1; n <= 10; ++n) CHECK(eco_clone_fidelity_exact(n, n) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(eco_clone_fidelity_exact(2, 5), std::domain_error);
  CHECK_THROWS_AS(eco_clone_fidelity_exact(4, 2), std::domain_error);
}

TEST_CASE("economical cloner fidelity agrees with big-rational evaluation") {
  for (int n = 1; n <= 10; ++n) {
    for (int m = n; m <= 40; m += 2) {
      const double oracle = static_cast<double>(ex::eco_clone_fidelity_oracle(n, m));
      CHECK(eco_clone_fidelity_exact(n, m) == doctest::Approx(oracle).epsilon(1e-13));
    }
  }
}

TEST_CASE("economical cloner asymptotics") {
  for (auto [n, m] : {std::pair{2, 4096}, std::pair{1, 4097}}) {
    const double exact = eco_clone_fidelity_exact(n, m);
    CHECK(std::abs(eco_clone_fidelity_large_m(n, m) - exact) / exact <= 1e-2);
  }
  CHECK(eco_clone_fidelity_large_n(60, 600) == doctest::Approx(std::pow(0.4, 1.5)));
  CHECK(eco_clone_fidelity_large_n(60, 600) == doctest::Approx(0.25298).epsilon(1e-5));
}

TEST_CASE("cg_overlap_count hand values") {
  CHECK(cg_overlap_count(half(0), half(0), half(0), half(0)) == 1);
  CHECK(cg_overlap_count(half(1), half(1), half(1), half(1)) == 2);
  CHECK(cg_overlap_count(half(1), half(1), half(2), half(2)) == 2);
  CHECK(cg_overlap_count(half(1), half(0), half(2), half(0)) == 0);
  CHECK_THROWS_AS(cg_overlap_count(half(-1), half(1), half(0), half(0)), std::domain_error);
}

TEST_CASE("cg_overlap_count matches enumeration and character orthonormality") {
  for (int t1 = 0; t1 <= 8; ++t1)
    for (int t2 = 0; t2 <= 8; ++t2)
      for (int t3 = 0; t3 <= 8; ++t3)
        for (int t4 = 0; t4 <= 8; ++t4)
          CHECK(cg_overlap_count(half(t1), half(t2), half(t3), half(t4)) == count_common(t1, t2, t3, t4));
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= 12; ++b)
      CHECK(cg_overlap_count(half(a), half(b), half(0), half(0)) == (a == b ? 1 : 0));
}

TEST_CASE("CharPolynomial evaluates characters") {
  const CharPolynomial p(half(1), {1.0, 2.0});
  const double phi = 0.7;
  const double expected = std::sin(2 * phi) / std::sin(phi) + 2.0 * std::sin(4 * phi) / std::sin(phi);
  CHECK(p.evaluate(phi) == doctest::Approx(expected));
  CHECK(p.spin_at(1) == half(3));
}

TEST_CASE("seed overlap is normalized") {
  for (int n = 1; n <= 30; ++n) {
    const auto seed = seed_overlap(n);
    const double integral = class_integral([&](double phi) { return std::pow(seed.evaluate(phi), 2); }, 4 * n + 16);
    CHECK(std::abs(integral - 1.0) <= 1e-12);
    const CharPolynomial one(half(0), {1.0});
    CHECK(std::abs(haar_integral_of_squares(seed, one) - 1.0) <= 1e-12);
  }
}

TEST_CASE("PreparedStateEnt validates its weights") {
  CHECK_THROWS_AS(PreparedStateEnt(4, {0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(PreparedStateEnt(3, {0.5, 0.6}), std::domain_error);
  CHECK_NOTHROW(PreparedStateEnt(3, {0.5, 0.5}));
  CHECK(PreparedStateEnt(3, {0.25, 0.75}).at(half(3)) == doctest::Approx(0.75));
}

TEST_CASE("mp_fidelity_exact_ent") {
  CHECK(mp_fidelity_exact_ent(1, 1, prepared_state_ansatz_ent(1, 1.0)) == doctest::Approx(0.5).epsilon(1e-14));
  for (int n = 1; n <= 4; ++n) {
    for (int m = n; m <= 40; m += 2) {
      const double eco = eco_clone_fidelity_exact(n, m);
      for (double lambda : {1.0, 2.0, 4.0}) {
        const double f = mp_fidelity_exact_ent(n, m, prepared_state_ansatz_ent(m, lambda));
        CHECK(f > 0.0);
        CHECK(f <= eco + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(mp_fidelity_exact_ent(1, 3, prepared_state_ansatz_ent(5, 1.0)), std::domain_error);
}

TEST_CASE("mp_fidelity_exact_ent equals the literal quadruple character sum") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = n; m <= 16; m += 2) {
      const auto state = prepared_state_ansatz_ent(m, 2.0);
      const auto a = seed_overlap(n);
      const auto b = prepared_overlap(state);
      double total = 0.0;
      for (std::size_t i1 = 0; i1 < a.coeffs().size(); ++i1)
        for (std::size_t i2 = 0; i2 < a.coeffs().size(); ++i2)
          for (std::size_t i3 = 0; i3 < b.coeffs().size(); ++i3)
            for (std::size_t i4 = 0; i4 < b.coeffs().size(); ++i4)
              total += a.coeffs()[i1] * a.coeffs()[i2] * b.coeffs()[i3] * b.coeffs()[i4] *
                       double(count_common(int(a.spin_at(i1).twice_value), int(a.spin_at(i2).twice_value),
                                           int(b.spin_at(i3).twice_value), int(b.spin_at(i4).twice_value)));
      CHECK(mp_fidelity_exact_ent(n, m, state) == doctest::Approx(total).epsilon(1e-12));
    }
  }
}

TEST_CASE("lambda = 64 ansatz nearly reaches the economical cloner at M = 2048") {
  const double f = mp_fidelity_exact_ent(2, 2048, prepared_state_ansatz_ent(2048, 64.0));
  CHECK(f / eco_clone_fidelity_exact(2, 2048) >= 0.9);
}

TEST_CASE("prepared_state_ansatz_ent") {
  const auto s = prepared_state_ansatz_ent(2048, 64.0);
  const auto c32 = irrep_weights(32);
  for (int tj = 0; tj <= 2048; tj += 2) {
    if (tj > 32) {
      CHECK(s.at(half(tj)) == 0.0);
    } else {
      CHECK(s.at(half(tj)) == doctest::Approx(c32.at(half(tj))));
    }
  }
  const auto odd = prepared_state_ansatz_ent(9, 9.0);
  CHECK(odd.at(half(1)) == doctest::Approx(1.0));
  CHECK(odd.at(half(3)) == 0.0);
}

TEST_CASE("avg_state_expectation_ent") {
  CHECK(avg_state_expectation_ent(2, prepared_state_ansatz_ent(2, 1.0)) == doctest::Approx(0.125));
  const double avg = avg_state_expectation_ent(2048, prepared_state_ansatz_ent(2048, 64.0));
  const double target = 2.0 * binomial_weight(2048, SpinIndex::from_integer(0)) / 2048.0;
  CHECK(std::abs(avg - target) / target <= 0.05);
}

TEST_CASE("p_true_ent") {
  CHECK(p_true_ent(1) == doctest::Approx(4.0));
  CHECK(p_true_ent(2) == doctest::Approx(std::pow(0.5 + 3.0 * std::sqrt(0.75), 2)));
  CHECK(p_true_ent(2) == doctest::Approx(9.5981).epsilon(1e-4));
  CHECK(p_true_ent(20) > 10.0);
}

TEST_CASE("naive entangled copies lose a factor 2^{3/2}") {
  const double ratio =
      mp_fidelity_exact_ent(2, 2048, prepared_state_ansatz_ent(2048, 1.0)) / eco_clone_fidelity_exact(2, 2048);
  const double target = std::pow(2.0, -1.5);
  CHECK(std::abs(ratio - target) / target <= 0.05);
}
