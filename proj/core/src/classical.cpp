/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace gsteer::classical {

namespace {

StateVector branch_ket(const PureState& joint, const StateVector& bra_a) {
  return conditional_ket(joint, bra_a, 2, 2);
}

}  // namespace

ComplexMatrix SeparableModel::assemble() const {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (const auto& c : components) {
    rho += c.weight * kron(c.state_a, c.state_b);
  }
  return rho;
}

DensityMatrix SeparableModel::state() const {
  return DensityMatrix(assemble());
}

TwoSettingProtocol bmv_protocol(const bmv::BmvParams& p) {
  return TwoSettingProtocol{
      bmv::entangled_state(p.theta()),
      {ket0(), ket1()},
      {bmv::ket_epsilon(p.epsilon()), bmv::ket_epsilon_perp(p.epsilon())},
      {"0", "1", "eps", "eps_perp"}};
}

SeparableModel build_separable_for(const TwoSettingProtocol& protocol) {
  SeparableModel model;
  double total = 0.0;
  const std::array<const StateVector*, 4> kets = {
      &protocol.basis_a[0], &protocol.basis_a[1], &protocol.basis_b[0],
      &protocol.basis_b[1]};
  for (const auto* a : kets) {
    StateVector cond = branch_ket(protocol.joint, *a);
    const double prob = cond.squaredNorm();
    if (prob <= 1e-14) {
      continue;  // unheralded branch contributes no component
    }
    Component c;
    c.weight = 0.5 * prob;  // half the weight per basis group
    c.state_a = projector_onto(*a);
    c.state_b = projector_onto(cond);
    total += c.weight;
    model.components.push_back(std::move(c));
  }
  if (model.components.empty()) {
    throw std::domain_error("build_separable_for: no heralded branches");
  }
  model.weight_deficit = std::abs(1.0 - total);
  for (auto& c : model.components) {
    c.weight /= total;
  }
  return model;
}

SeparableModel build_separable(const bmv::BmvParams& p) {
  return build_separable_for(bmv_protocol(p));
}

ClassicalSteering classical_steered_states(const SeparableModel& model,
                                           const TwoSettingProtocol& protocol) {
  const DensityMatrix rho = model.state();
  ClassicalSteering out;
  out.basis_a = steer(rho,
                      {projector_onto(protocol.basis_a[0]),
                       projector_onto(protocol.basis_a[1])},
                      {protocol.labels[0], protocol.labels[1]});
  out.basis_b = steer(rho,
                      {projector_onto(protocol.basis_b[0]),
                       projector_onto(protocol.basis_b[1])},
                      {protocol.labels[2], protocol.labels[3]});
  return out;
}

ClassicalSteering classical_steered_states(const SeparableModel& model,
                                           const bmv::BmvParams& p) {
  return classical_steered_states(model, bmv_protocol(p));
}

bmv::VisibilityReport classical_visibilities(const SeparableModel& model,
                                             const TwoSettingProtocol& protocol) {
  const auto steering = classical_steered_states(model, protocol);

  // Declared projectors: the normalized quantum conditionals of the protocol.
  std::array<ComplexMatrix, 4> projectors;
  const std::array<const StateVector*, 4> kets = {
      &protocol.basis_a[0], &protocol.basis_a[1], &protocol.basis_b[0],
      &protocol.basis_b[1]};
  for (std::size_t i = 0; i < 4; ++i) {
    const StateVector cond = branch_ket(protocol.joint, *kets[i]);
    if (cond.squaredNorm() <= 1e-14) {
      throw std::domain_error("classical_visibilities: zero-probability herald '" +
                              protocol.labels[i] + "'");
    }
    projectors[i] = projector_onto(cond);
  }

  bmv::VisibilityReport report;
  report.model = "classical";
  const std::array<const SteeringEnsemble*, 4> ens = {
      &steering.basis_a, &steering.basis_a, &steering.basis_b, &steering.basis_b};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t branch = i % 2;
    report.heralding[i] = ens[i]->probability(branch);
    if (!ens[i]->defined(branch)) {
      throw std::domain_error("classical_visibilities: zero-probability herald '" +
                              ens[i]->branches[branch].label + "'");
    }
    report.visibilities[i] = visibility(ens[i]->conditional(branch), projectors[i]);
  }
  return report;
}

bmv::VisibilityReport classical_visibilities(const bmv::BmvParams& p) {
  return classical_visibilities(build_separable(p), bmv_protocol(p));
}

double classical_visibility_limit(double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("classical_visibility_limit: k must be positive");
  }
  return 1.0 / (1.0 + k * k);
}

std::array<double, 4> classical_visibilities_formula(const bmv::BmvParams& p) {
  const double th = p.theta();
  const double e2 = p.epsilon() * p.epsilon();
  const auto wv = p.weak_values();
  const double al2 = bmv::alpha_overlap(p.epsilon()) * bmv::alpha_overlap(p.epsilon());
  const double be2 = bmv::beta_overlap(p.epsilon()) * bmv::beta_overlap(p.epsilon());
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const double n_eps = c2 + s2 * wv.a_w * wv.a_w;          // Tr of unnormalized chi
  const double n_perp = c2 + s2 * wv.a_w_perp * wv.a_w_perp;
  const double ov_pe = (c2 + s2 * wv.a_w) * (c2 + s2 * wv.a_w);        // |<phi+|chi~>|^2
  const double ov_me = (c2 - s2 * wv.a_w) * (c2 - s2 * wv.a_w);        // |<phi-|chi~>|^2
  const double ov_pp = (c2 + s2 * wv.a_w_perp) * (c2 + s2 * wv.a_w_perp);
  const double ov_mp = (c2 - s2 * wv.a_w_perp) * (c2 - s2 * wv.a_w_perp);

  // In the numerators the conditional norms cancel against the herald
  // weights, so the unnormalized overlaps ov_* appear directly.
  std::array<double, 4> v{};
  v[0] = (0.25 + 0.5 * e2 * al2 * ov_pe + 0.5 * (1.0 - e2) * be2 * ov_pp) /
         (0.25 + 0.5 * e2 * al2 * n_eps + 0.5 * (1.0 - e2) * be2 * n_perp);
  v[1] = (0.25 + 0.5 * (1.0 - e2) * al2 * ov_me + 0.5 * e2 * be2 * ov_mp) /
         (0.25 + 0.5 * (1.0 - e2) * al2 * n_eps + 0.5 * e2 * be2 * n_perp);
  v[2] = (0.25 * e2 * ov_pe / n_eps + 0.25 * (1.0 - e2) * ov_me / n_eps +
          0.5 * al2 * n_eps) /
         (0.25 + 0.5 * al2 * n_eps);
  v[3] = (0.25 * (1.0 - e2) * ov_pp / n_perp + 0.25 * e2 * ov_mp / n_perp +
          0.5 * be2 * n_perp) /
         (0.25 + 0.5 * be2 * n_perp);
  return v;
}

std::array<double, 4> simulation_distribution(const bmv::BmvParams& p,
                                              double basis_choice_prob) {
  if (!(basis_choice_prob > 0.0) || !(basis_choice_prob < 1.0)) {
    throw std::invalid_argument("simulation_distribution: basis_choice_prob in (0,1)");
  }
  const double al = bmv::alpha_overlap(p.epsilon());
  const double be = bmv::beta_overlap(p.epsilon());
  const double pa = 1.0 - basis_choice_prob;
  return {pa / 2.0, pa / 2.0, basis_choice_prob * al * al, basis_choice_prob * be * be};
}

double probability_tv_distance(const bmv::BmvParams& p, double basis_choice_prob) {
  const auto q = bmv::outcome_distribution(p, basis_choice_prob);
  const auto c = simulation_distribution(p, basis_choice_prob);
  double tv = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    tv += std::abs(q[i] - c[i]);
  }
  return tv / 2.0;
}

}  // namespace gsteer::classical
