/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gsteer/bmv.hpp"

using namespace gsteer;
using namespace gsteer::bmv;

TEST_CASE("gravitational phase: constructed unit case") {
  // d^2 + L^2 = 4 forces the geometric factor to 1 - 1/2.
  GravityParams gp{1.0, 1.0, 1.0, 1.0, std::sqrt(3.0), 2.0, 1.0};
  const auto r = gravitational_phase(gp);
  CHECK(r.delta_phi == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.theta == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gravitational phase vanishes with the arm length") {
  GravityParams gp{6.674e-11, 1e-14, 1e-14, 1e-6, 0.0, 1.0, 1.054571817e-34};
  CHECK(gravitational_phase(gp).theta == 0.0);
}

TEST_CASE("gravitational phase: SI case against 50-digit arithmetic") {
  GravityParams gp{6.674e-11, 3.2848e-16, 3.2848e-16, 1e-6, 1e-6, 1.0,
                   1.054571817e-34};
  const auto r = gravitational_phase(gp);
  const double frozen = 0.010000166402983959806;
  CHECK(std::abs(r.theta - frozen) / frozen < 1e-15);
  CHECK(std::abs(r.delta_phi - 2.1091787307794297e-36) / 2.1091787307794297e-36 <
        1e-15);
}

TEST_CASE("gravitational phase rejects d = 0") {
  GravityParams gp{1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS((void)gravitational_phase(gp), std::invalid_argument);
}

TEST_CASE("evolution unitary endpoints") {
  CHECK(max_abs(evolution_unitary(0.0) - identity(4)) == 0.0);
  const ComplexMatrix expect =
      Complex(0, 1) * kron(pauli_z(), pauli_z());
  CHECK(max_abs(evolution_unitary(std::numbers::pi / 2.0) - expect) < 1e-15);
}

TEST_CASE("evolution unitary applied to |++> reproduces the coupled state") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(0.0, 1.5);
  const StateVector plus_plus = kron(ket_plus(), ket_plus()).col(0);
  for (int rep = 0; rep < 100; ++rep) {
    const double theta = angle(rng);
    const StateVector evolved = evolution_unitary(theta) * plus_plus;
    CHECK((evolved - entangled_state(theta).vector()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("coupled state at theta = 0.1 written out") {
  const StateVector v = entangled_state(0.1).vector();
  const StateVector expect = std::cos(0.1) * kron(ket_plus(), ket_plus()).col(0) +
                             Complex(0, 1) * std::sin(0.1) *
                                 kron(ket_minus(), ket_minus()).col(0);
  CHECK((v - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("weak values at the closed-form anchor points") {
  const auto at_one = weak_values(1.0);
  CHECK(at_one.a_w == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_one.a_w_perp == doctest::Approx(-1.0).epsilon(1e-14));

  const auto at_08 = weak_values(0.8);
  CHECK(at_08.a_w == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(at_08.a_w_perp == doctest::Approx(-1.0 / 7.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)weak_values(1.0 / std::sqrt(2.0)), std::domain_error);
  CHECK_THROWS_AS((void)weak_values(0.3), std::domain_error);
}

TEST_CASE("weak value pair multiplies to -1 across the parameter range") {
  for (double eps = 0.7072; eps < 1.0; eps += 0.01) {
    const auto wv = weak_values(eps);
    CHECK(std::abs(wv.a_w * wv.a_w_perp + 1.0) < 1e-10);
  }
}

TEST_CASE("weak-value inversion is exact at the rational anchor") {
  CHECK(epsilon_for_weak_value(7.0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(epsilon_for_weak_value(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> aw(1.0, 1e5);
  for (int rep = 0; rep < 50; ++rep) {
    const double target = aw(rng);
    const double eps = epsilon_for_weak_value(target);
    CHECK(weak_values(eps).a_w == doctest::Approx(target).epsilon(1e-9));
  }
}

TEST_CASE("large amplification pushes the post-selection overlap to 1/a_w") {
  const double eps = epsilon_for_weak_value(1e4);
  const double s = std::sqrt(1.0 - eps * eps);
  // Frozen from 50-digit arithmetic: eps - s and alpha at a_w = 1e4.
  CHECK(eps - s == doctest::Approx(1.41421355530202729e-4).epsilon(1e-10));
  CHECK(alpha_overlap(eps) == doctest::Approx(9.999999950000000375e-5).epsilon(1e-12));
  // alpha * a_w -> 1 (not sqrt(2)); the budget arithmetic depends on this.
  CHECK(alpha_overlap(eps) * 1e4 == doctest::Approx(0.9999999950000000375).epsilon(1e-12));
}

TEST_CASE("parameter construction modes agree") {
  const auto via_eps = BmvParams::from_epsilon(1e-2, 0.8);
  const auto via_aw = BmvParams::from_weak_value(1e-2, 7.0);
  CHECK(via_eps.epsilon() == doctest::Approx(via_aw.epsilon()).epsilon(1e-14));
  const auto via_k = BmvParams::from_k(1e-2, 1.0);
  CHECK(via_k.weak_values().a_w == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(via_k.weak_values().k == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)BmvParams::from_epsilon(-0.1, 0.8), std::invalid_argument);
  CHECK_THROWS_AS((void)BmvParams::from_epsilon(0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)BmvParams::from_k(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("no interaction: both ensembles herald the unperturbed state") {
  const auto p = BmvParams::from_epsilon(0.0, 0.8);
  const auto predictions = quantum_predictions(p);
  CHECK(predictions.basis_a.probability(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(predictions.basis_a.probability(1) == doctest::Approx(0.5).epsilon(1e-12));
  const double alpha = alpha_overlap(0.8);
  const double beta = beta_overlap(0.8);
  CHECK(predictions.basis_b.probability(0) ==
        doctest::Approx(alpha * alpha).epsilon(1e-12));
  CHECK(predictions.basis_b.probability(1) ==
        doctest::Approx(beta * beta).epsilon(1e-12));
  for (int i : {0, 1}) {
    CHECK(max_abs(predictions.basis_a.conditional(i).matrix() -
                  projector_onto(ket_plus())) < 1e-12);
    CHECK(max_abs(predictions.basis_b.conditional(i).matrix() -
                  projector_onto(ket_plus())) < 1e-12);
  }
  for (double v : predictions.report.visibilities) {
    CHECK(std::abs(v - 1.0) < 1e-10);
  }
}

TEST_CASE("amplified herald at theta=0.1, eps=0.8 (frozen oracle)") {
  const auto p = BmvParams::from_epsilon(0.1, 0.8);
  const auto predictions = quantum_predictions(p);
  CHECK(predictions.basis_b.probability(0) ==
        doctest::Approx(0.029568042636204017).epsilon(1e-12));
  for (double v : predictions.report.visibilities) {
    CHECK(std::abs(v - 1.0) < 1e-10);
  }
}

TEST_CASE("unit amplification leaves the steered state balanced") {
  // k = 1: the conditional approaches (|+> + i|->)/sqrt2 up to O(theta^2).
  const auto p = BmvParams::from_k(1e-2, 1.0);
  const StateVector chi = chi_state(p.theta(), p.weak_values().a_w);
  const StateVector balanced =
      (ket_plus() + Complex(0, 1) * ket_minus()) / std::sqrt(2.0);
  CHECK((chi - balanced).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("quantum visibilities are unity over the parameter grid") {
  for (double theta = 1e-5; theta < 0.2; theta *= 10.0) {
    for (double eps = 0.72; eps <= 0.99; eps += 0.03) {
      const auto predictions =
          quantum_predictions(BmvParams::from_epsilon(theta, eps));
      for (double v : predictions.report.visibilities) {
        CHECK(std::abs(v - 1.0) < 1e-10);
      }
      CHECK(predictions.basis_a.probability(0) + predictions.basis_a.probability(1) ==
            doctest::Approx(1.0).epsilon(1e-10));
      CHECK(predictions.basis_b.probability(0) + predictions.basis_b.probability(1) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("herald probability identity: closed form vs 4x4 projection") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(1e-6, 1.5);
  std::uniform_real_distribution<double> eps_range(0.7072, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto p = BmvParams::from_epsilon(angle(rng), eps_range(rng));
    const auto predictions = quantum_predictions(p);
    const double alpha = alpha_overlap(p.epsilon());
    const double closed = alpha * alpha * chi_norm_sq(p.theta(), p.weak_values().a_w);
    CHECK(std::abs(predictions.basis_b.probability(0) - closed) < 1e-12);
    // Brute-force route: project the assembled 4x4 density matrix.
    const ComplexMatrix rho = entangled_state(p.theta()).density();
    const ComplexMatrix proj =
        kron(projector_onto(ket_epsilon(p.epsilon())), identity(2));
    const double dense = (proj * rho).trace().real();
    CHECK(std::abs(dense - closed) < 1e-12);
  }
}

TEST_CASE("outcome distribution is normalized and weighted by basis choice") {
  const auto p = BmvParams::from_k(1e-2, 1.0);
  const auto dist = outcome_distribution(p, 0.25);
  CHECK(dist[0] + dist[1] + dist[2] + dist[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist[0] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK_THROWS_AS((void)outcome_distribution(p, 0.0), std::invalid_argument);
}
