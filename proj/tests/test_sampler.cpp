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

#include "gsteer/sampler.hpp"

using namespace gsteer;
using namespace gsteer::mc;

namespace {

const criterion::DeviceModel kDevice{1e-4, 1e6, 86400.0, 0.5};
const criterion::DeviceModel kSharpDevice{1e-12, 1e6, 86400.0, 0.5};

bool reports_equal(const EstimateReport& a, const EstimateReport& b) {
  if (a.shots_used != b.shots_used) return false;
  for (int i = 0; i < 4; ++i) {
    const auto &pa = a.probabilities[i], &pb = b.probabilities[i];
    const auto &va = a.visibilities[i], &vb = b.visibilities[i];
    if (pa.trials != pb.trials || pa.successes != pb.successes) return false;
    if (va.trials != vb.trials || va.successes != vb.successes) return false;
    if (pa.value != pb.value || va.value != vb.value) return false;
    if (pa.std_error != pb.std_error || va.std_error != vb.std_error) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identical seeds give bit-identical streams and estimates") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const ModelSpec spec{Model::kQuantum, 0.0};
  const auto r1 = sample_and_estimate(spec, p, kDevice, 200000, 42);
  const auto r2 = sample_and_estimate(spec, p, kDevice, 200000, 42);
  CHECK(reports_equal(r1, r2));
  const auto r3 = sample_and_estimate(spec, p, kDevice, 200000, 43);
  CHECK(!reports_equal(r1, r3));

  const auto shots1 = sample_shots(spec, p, kDevice, 5000, 7);
  const auto shots2 = sample_shots(spec, p, kDevice, 5000, 7);
  REQUIRE(shots1.size() == shots2.size());
  for (std::size_t i = 0; i < shots1.size(); ++i) {
    CHECK(shots1[i].basis == shots2[i].basis);
    CHECK(shots1[i].outcome_a == shots2[i].outcome_a);
    CHECK(shots1[i].hit == shots2[i].hit);
  }
}

TEST_CASE("unbiased coin in the reference basis at zero coupling") {
  const auto p = bmv::BmvParams::from_epsilon(0.0, 0.8);
  const auto shots =
      sample_shots(ModelSpec{Model::kQuantum, 0.0}, p, kDevice, 100000, 11);
  std::uint64_t n_a = 0, zeros = 0;
  for (const auto& rec : shots) {
    if (rec.basis == Basis::kA) {
      ++n_a;
      zeros += rec.outcome_a == 0 ? 1 : 0;
    }
  }
  const double phat = static_cast<double>(zeros) / n_a;
  const double sigma = std::sqrt(0.25 / n_a);
  CHECK(std::abs(phat - 0.5) < 5.0 * sigma);
}

TEST_CASE("labels stay within the declared sets") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const auto shots =
      sample_shots(ModelSpec{Model::kClassical, 0.0}, p, kDevice, 2000, 3);
  for (const auto& rec : shots) {
    if (rec.basis == Basis::kA) {
      CHECK((rec.outcome_a_label() == "0" || rec.outcome_a_label() == "1"));
    } else {
      CHECK((rec.outcome_a_label() == "eps" || rec.outcome_a_label() == "eps_perp"));
    }
    CHECK((rec.outcome_b_label() == "hit" || rec.outcome_b_label() == "miss"));
  }
}

TEST_CASE("empirical distribution converges to the model distribution") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const ModelSpec spec{Model::kQuantum, 0.0};
  const auto exact = model_distribution(spec, p, kDevice.basis_choice_prob);
  for (const std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL}) {
    bool passed = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !passed; ++attempt) {
      const auto report = sample_and_estimate(spec, p, kDevice, n, 1000 + attempt);
      double tv = 0.0;
      for (int i = 0; i < 4; ++i) {
        tv += std::abs(report.probabilities[i].value - exact[i]);
      }
      tv /= 2.0;
      passed = tv <= 5.0 * std::sqrt(std::log(static_cast<double>(n)) /
                                     static_cast<double>(n));
    }
    CHECK(passed);
  }
}

TEST_CASE("quantum amplified-branch visibility estimates concentrate at 1") {
  // Sharp detector: no cross-talk contamination of the rare herald.
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const auto report = sample_and_estimate(ModelSpec{Model::kQuantum, 0.0}, p,
                                          kSharpDevice, 10000000, 5);
  const auto& cell = report.visibilities[2];
  REQUIRE(!cell.no_data);
  CHECK(cell.trials > 500);
  CHECK(std::abs(cell.value - 1.0) <= 3.0 * cell.std_error + 1e-12);
}

TEST_CASE("classical amplified-branch visibility estimates concentrate at 1/2") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const auto exact = classical::classical_visibilities(p).visibilities[2];
  const auto heralded = sample_heralded(ModelSpec{Model::kClassical, 0.0}, p,
                                        kSharpDevice, Basis::kB, 0, 200000, 17);
  REQUIRE(!heralded.visibility.no_data);
  CHECK(std::abs(heralded.visibility.value - exact) <=
        3.0 * heralded.visibility.std_error);
  CHECK(heralded.visibility.value == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("separation in visibility, agreement in probability") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const criterion::DeviceModel device{1e-4, 1e6, 86400.0, 0.5};
  const std::uint64_t raw = 300000, heralded = 200000;

  const auto qr = sample_and_estimate(ModelSpec{Model::kQuantum, 0.0}, p, device,
                                      raw, 21);
  const auto cr = sample_and_estimate(ModelSpec{Model::kClassical, 0.0}, p, device,
                                      raw, 22);
  for (int i = 0; i < 4; ++i) {
    const auto &qc = qr.probabilities[i], &cc = cr.probabilities[i];
    const double se = std::hypot(qc.std_error, cc.std_error);
    CHECK(std::abs(qc.value - cc.value) <= 3.0 * se + 1e-12);
  }

  const auto qh = sample_heralded(ModelSpec{Model::kQuantum, 0.0}, p, device,
                                  Basis::kB, 0, heralded, 23);
  const auto ch = sample_heralded(ModelSpec{Model::kClassical, 0.0}, p, device,
                                  Basis::kB, 0, heralded, 24);
  const double sep = std::abs(qh.visibility.value - ch.visibility.value) /
                     std::hypot(qh.visibility.std_error, ch.visibility.std_error);
  CHECK(sep > 10.0);
}

TEST_CASE("noisy model interpolates between the clean model and coin flips") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const auto dist = model_distribution(ModelSpec{Model::kNoisy, 1.0}, p, 0.5);
  // Fully depolarized: the amplified-basis outcome is a fair coin.
  CHECK(dist[2] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(dist[3] == doctest::Approx(0.25).epsilon(1e-12));
  const auto h = sample_heralded(ModelSpec{Model::kNoisy, 1.0}, p, kSharpDevice,
                                 Basis::kB, 0, 50000, 31);
  CHECK(std::abs(h.visibility.value - 0.5) <= 5.0 * h.visibility.std_error);
}

TEST_CASE("estimator edge cases") {
  std::vector<ShotRecord> shots;
  for (std::uint64_t i = 0; i < 500; ++i) {
    shots.push_back(ShotRecord{i, Basis::kA, 0, true});
  }
  const auto report = estimate(shots, 77);
  // Saturated cell: zero binomial spread, Wilson interval still open.
  CHECK(report.probabilities[0].value == doctest::Approx(1.0));
  CHECK(report.probabilities[0].std_error == doctest::Approx(0.0));
  CHECK(report.probabilities[0].wilson_high <= 1.0);
  CHECK(report.probabilities[0].wilson_low < 1.0);
  CHECK(report.visibilities[0].value == doctest::Approx(1.0));
  CHECK(report.visibilities[0].std_error == doctest::Approx(0.0));
  // Unvisited heralds are reported as missing data, not as zeros.
  CHECK(report.probabilities[2].no_data == false);
  CHECK(report.probabilities[2].value == doctest::Approx(0.0));
  CHECK(report.visibilities[2].no_data);
  CHECK(report.visibilities[3].no_data);

  CHECK_THROWS_AS((void)estimate({}, 0), std::invalid_argument);
}

TEST_CASE("daily-budget herald count supports a percent-level estimate") {
  // 864 heralds at V = 1/2: binomial spread sqrt(V(1-V)/864).
  std::vector<ShotRecord> shots;
  for (std::uint64_t i = 0; i < 864; ++i) {
    shots.push_back(ShotRecord{i, Basis::kB, 0, i % 2 == 0});
  }
  const auto report = estimate(shots, 0);
  CHECK(report.visibilities[2].std_error ==
        doctest::Approx(std::sqrt(0.25 / 864.0)).epsilon(1e-6));
  CHECK(report.visibilities[2].std_error < 0.018);
}

TEST_CASE("input validation") {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  CHECK_THROWS_AS(
      (void)sample_shots(ModelSpec{}, p, kDevice, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_heralded(ModelSpec{}, p, kDevice, Basis::kB, 2, 10, 1),
                  std::invalid_argument);
}
