/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/criterion.hpp"

#include <cmath>
#include <stdexcept>

namespace gsteer::criterion {

namespace {
constexpr double kBisectionTol = 1e-6;
}

void DeviceModel::validate() const {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("DeviceModel: gamma must lie in (0,1)");
  }
  if (!(shot_rate > 0.0)) {
    throw std::invalid_argument("DeviceModel: shot_rate must be positive");
  }
  if (!(duration > 0.0)) {
    throw std::invalid_argument("DeviceModel: duration must be positive");
  }
  if (!(basis_choice_prob > 0.0) || !(basis_choice_prob < 1.0)) {
    throw std::invalid_argument("DeviceModel: basis_choice_prob must lie in (0,1)");
  }
}

CriterionReport evaluate_criterion(const bmv::BmvParams& p, const DeviceModel& device) {
  return evaluate_criterion(p, device, DepolarizingNoise(0.0));
}

CriterionReport evaluate_criterion(const bmv::BmvParams& p, const DeviceModel& device,
                                   DepolarizingNoise noise) {
  device.validate();

  CriterionReport report;
  report.noise_q = noise.q;
  report.v_quantum = noise.q == 0.0
                         ? bmv::quantum_predictions(p).report.visibilities
                         : noisy_visibilities(p, noise).visibilities;
  report.v_classical = classical::classical_visibilities(p).visibilities;
  report.visibility_gap = report.v_quantum[2] - report.v_classical[2];
  report.prob_tv_distance =
      classical::probability_tv_distance(p, device.basis_choice_prob);
  report.distinguishable_by_probability = report.prob_tv_distance > device.gamma;
  report.distinguishable_by_visibility = report.visibility_gap > device.gamma;
  report.shift = expectation_shift(p);
  report.amplification_factor = p.weak_values().a_w;
  return report;
}

double expectation_shift(const bmv::BmvParams& p) {
  const double k = p.weak_values().k;
  return 1.0 - 1.0 / (1.0 + k * k);
}

double expectation_shift_exact(const bmv::BmvParams& p) {
  const auto predictions = bmv::quantum_predictions(p);
  const ComplexMatrix pi2 = bmv::declared_projectors(p)[2];
  const double v_steered = visibility(predictions.basis_b.conditional(0), pi2);
  const double v_initial =
      visibility(DensityMatrix(projector_onto(ket_plus())), pi2);
  return v_steered - v_initial;
}

double resolution_ceiling(const DeviceModel& device) {
  device.validate();
  return std::sqrt(2.0) / std::sqrt(device.gamma);
}

BudgetReport experiment_budget(const bmv::BmvParams& p, const DeviceModel& device) {
  const auto wv = p.weak_values();
  const double alpha = bmv::alpha_overlap(p.epsilon());
  const double herald = alpha * alpha * bmv::chi_norm_sq(p.theta(), wv.a_w);
  return experiment_budget(herald, device, wv.a_w);
}

BudgetReport experiment_budget(double herald_probability, const DeviceModel& device,
                               double a_w) {
  device.validate();
  if (!(herald_probability >= 0.0) || !(herald_probability <= 1.0)) {
    throw std::invalid_argument("experiment_budget: herald probability in [0,1]");
  }
  BudgetReport report;
  report.herald_probability = herald_probability;
  report.heralds_per_day =
      device.basis_choice_prob * herald_probability * device.shot_rate * device.duration;
  report.saving_factor = a_w;
  return report;
}

bmv::VisibilityReport noisy_visibilities(const bmv::BmvParams& p,
                                         DepolarizingNoise noise) {
  if (noise.q == 0.0) {
    // The noiseless branch keeps the vector-level steering path, which
    // stays exact for heralds far below the density-matrix roundoff floor.
    bmv::VisibilityReport report = bmv::quantum_predictions(p).report;
    report.model = "noisy";
    return report;
  }
  const DensityMatrix rho =
      depolarize(DensityMatrix::from_pure(bmv::entangled_state(p.theta())), noise);

  const std::vector<ComplexMatrix> basis_a{projector_onto(ket0()),
                                           projector_onto(ket1())};
  const std::vector<ComplexMatrix> basis_b{
      projector_onto(bmv::ket_epsilon(p.epsilon())),
      projector_onto(bmv::ket_epsilon_perp(p.epsilon()))};
  const auto ens_a = steer(rho, basis_a, {"0", "1"});
  const auto ens_b = steer(rho, basis_b, {"eps", "eps_perp"});
  const auto projectors = bmv::declared_projectors(p);

  bmv::VisibilityReport report;
  report.model = "noisy";
  report.heralding = {ens_a.probability(0), ens_a.probability(1),
                      ens_b.probability(0), ens_b.probability(1)};
  report.visibilities = {visibility(ens_a.conditional(0), projectors[0]),
                         visibility(ens_a.conditional(1), projectors[1]),
                         visibility(ens_b.conditional(0), projectors[2]),
                         visibility(ens_b.conditional(1), projectors[3])};
  return report;
}

NoisyFormulaComparison noisy_formula_comparison(const bmv::BmvParams& p,
                                                DepolarizingNoise noise) {
  NoisyFormulaComparison cmp;
  cmp.q = noise.q;
  cmp.exact_v0 = noisy_visibilities(p, noise).visibilities[0];
  cmp.candidate_inv = 1.0 / (1.0 + noise.q);
  cmp.candidate_linear = 1.0 - noise.q / 2.0;
  cmp.dev_inv = std::abs(cmp.exact_v0 - cmp.candidate_inv);
  cmp.dev_linear = std::abs(cmp.exact_v0 - cmp.candidate_linear);
  return cmp;
}

double decoherence_threshold(const bmv::BmvParams& p, const DeviceModel& device) {
  device.validate();
  const double v_classical = classical::classical_visibilities(p).visibilities[2];
  const auto margin = [&](double q) {
    return noisy_visibilities(p, DepolarizingNoise(q)).visibilities[2] - v_classical -
           device.gamma;
  };
  if (margin(0.0) <= 0.0) {
    return 0.0;
  }
  if (margin(1.0) > 0.0) {
    return 1.0;
  }
  double lo = 0.0, hi = 1.0;  // margin(lo) > 0 >= margin(hi); monotone in q
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace gsteer::criterion
