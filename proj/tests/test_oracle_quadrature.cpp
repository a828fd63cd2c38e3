#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gclone/oracle_quadrature.hpp"

using namespace gclone;
using namespace gclone::oracle;

namespace {
SpinIndex half(int twice) { return SpinIndex::from_twice(twice); }
}  // namespace

TEST_CASE("phase quadrature reproduces the hand value") {
  const auto r = phase_quadrature_fidelity(1, 1, equatorial::naive_prepared_state(1), 9);
  CHECK(r.value == doctest::Approx(0.75).epsilon(1e-14));
  CHECK_FALSE(r.under_resolved);
}

TEST_CASE("phase quadrature is node independent past the threshold") {
  const auto state = equatorial::prepared_state_ansatz(64, 4.0);
  const int k0 = phase_exactness_nodes(2, 64);
  CHECK(k0 == 133);
  const double a = phase_quadrature_fidelity(2, 64, state, k0).value;
  const double b = phase_quadrature_fidelity(2, 64, state, 261).value;
  const double c = phase_quadrature_fidelity(2, 64, state, 2 * k0 + 7).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
  CHECK(a == doctest::Approx(c).epsilon(1e-13));
  CHECK(a == doctest::Approx(equatorial::mp_fidelity_exact(2, 64, state)).epsilon(1e-12));
  CHECK(phase_quadrature_fidelity(2, 64, state, 20).under_resolved);
}

TEST_CASE("phase quadrature against the closed form on random cases") {
  std::mt19937 rng(20241016);
  std::uniform_int_distribution<int> pick_n(1, 6);
  std::uniform_int_distribution<int> pick_m(0, 125);
  const double lambdas[] = {1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < 50; ++i) {
    const int n = pick_n(rng);
    const int m = n + 2 * pick_m(rng);
    const double lambda = lambdas[rng() % 4];
    const auto state = equatorial::prepared_state_ansatz(m, lambda);
    const auto r = phase_quadrature_fidelity(n, m, state, phase_exactness_nodes(n, m));
    CHECK(std::abs(r.value - equatorial::mp_fidelity_exact(n, m, state)) <= 1e-10);
  }
}

TEST_CASE("Weyl quadrature of four characters") {
  const auto r = weyl_quadrature_char4(half(1), half(1), half(1), half(1), 16);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_FALSE(r.under_resolved);
  CHECK(weyl_quadrature_char4(half(0), half(0), half(0), half(0), 8).value == doctest::Approx(1.0));
  CHECK(weyl_exactness_nodes(half(2), half(2), half(4), half(4)) == 32);
  for (int t1 = 0; t1 <= 6; ++t1)
    for (int t2 = 0; t2 <= 6; ++t2)
      for (int t3 = 0; t3 <= 6; ++t3)
        for (int t4 = 0; t4 <= 6; ++t4) {
          const int k = weyl_exactness_nodes(half(t1), half(t2), half(t3), half(t4));
          const auto r4 = weyl_quadrature_char4(half(t1), half(t2), half(t3), half(t4), k);
          CHECK(std::abs(r4.value - double(entangled::cg_overlap_count(half(t1), half(t2), half(t3), half(t4)))) <=
                1e-9);
        }
}

TEST_CASE("SU(2) quadrature of the entangled fidelity") {
  const auto one = entangled::prepared_state_ansatz_ent(1, 1.0);
  CHECK(su2_quadrature_fidelity_ent(1, 1, one, 64).value == doctest::Approx(0.5).epsilon(1e-13));
  const auto state = entangled::prepared_state_ansatz_ent(20, 2.0);
  const int k = su2_exactness_nodes(4, 20);
  const double a = su2_quadrature_fidelity_ent(4, 20, state, k).value;
  CHECK(a == doctest::Approx(su2_quadrature_fidelity_ent(4, 20, state, 2 * k).value).epsilon(1e-13));
  CHECK(su2_quadrature_fidelity_ent(4, 20, state, 5).under_resolved);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick_n(1, 4);
  std::uniform_int_distribution<int> pick_m(0, 10);
  const double lambdas[] = {1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < 50; ++i) {
    const int n = pick_n(rng);
    const int m = n + 2 * pick_m(rng);
    const auto s = entangled::prepared_state_ansatz_ent(m, lambdas[rng() % 4]);
    const double q = su2_quadrature_fidelity_ent(n, m, s, su2_exactness_nodes(n, m)).value;
    CHECK(std::abs(q - entangled::mp_fidelity_exact_ent(n, m, s)) <= 1e-9);
  }
}

TEST_CASE("too few nodes is an error") {
  CHECK_THROWS_AS(phase_quadrature_fidelity(1, 1, equatorial::naive_prepared_state(1), 2), std::domain_error);
  CHECK_THROWS_AS(weyl_quadrature_char4(half(0), half(0), half(0), half(0), 1), std::domain_error);
}
