/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/bmv.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsteer::bmv {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

void GravityParams::validate() const {
  if (!(G > 0.0) || !(m1 > 0.0) || !(m2 > 0.0) || !(tau > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("GravityParams: G, m1, m2, tau, hbar must be positive");
  }
  if (!(d > 0.0)) {
    throw std::invalid_argument("GravityParams: arm separation d must be positive");
  }
  if (L < 0.0) {
    throw std::invalid_argument("GravityParams: arm length L must be non-negative");
  }
}

PhaseResult gravitational_phase(const GravityParams& gp) {
  gp.validate();
  const double geometric = 1.0 / gp.d - 1.0 / std::sqrt(gp.d * gp.d + gp.L * gp.L);
  const double delta_phi = gp.G * gp.m1 * gp.m2 * geometric;
  return PhaseResult{delta_phi, delta_phi * gp.tau / (2.0 * gp.hbar)};
}

BmvParams::BmvParams(double theta, double epsilon) : theta_(theta), epsilon_(epsilon) {
  if (!(theta >= 0.0) || !(theta < kHalfPi)) {
    throw std::invalid_argument("BmvParams: theta must lie in [0, pi/2)");
  }
  if (!(epsilon > kInvSqrt2) || !(epsilon <= 1.0)) {
    throw std::invalid_argument("BmvParams: epsilon must lie in (1/sqrt2, 1]");
  }
}

BmvParams BmvParams::from_epsilon(double theta, double epsilon) {
  return BmvParams(theta, epsilon);
}

BmvParams BmvParams::from_weak_value(double theta, double a_w) {
  return BmvParams(theta, epsilon_for_weak_value(a_w));
}

BmvParams BmvParams::from_k(double theta, double k) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("BmvParams::from_k: theta must be positive");
  }
  return from_weak_value(theta, k / theta);
}

WeakValuePair BmvParams::weak_values() const {
  WeakValuePair wv = bmv::weak_values(epsilon_);
  wv.k = theta_ * wv.a_w;
  return wv;
}

WeakValuePair weak_values(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw std::invalid_argument("weak_values: epsilon must lie in (0, 1]");
  }
  const double s = std::sqrt(1.0 - epsilon * epsilon);
  const double denom = epsilon - s;
  if (denom <= 0.0) {
    throw std::domain_error("weak_values: post-selection orthogonal to |+> (epsilon <= 1/sqrt2)");
  }
  const double a_w = (epsilon + s) / denom;
  return WeakValuePair{a_w, -1.0 / a_w, 0.0};
}

double epsilon_for_weak_value(double a_w) {
  if (!(a_w >= 1.0)) {
    throw std::invalid_argument("epsilon_for_weak_value: weak value must be >= 1");
  }
  if (std::isinf(a_w)) {
    throw std::invalid_argument("epsilon_for_weak_value: weak value must be finite");
  }
  // a_w = (eps + s)/(eps - s) with s = sqrt(1 - eps^2) inverts to
  // eps = (a_w + 1)/sqrt(2 (a_w^2 + 1)).
  return (a_w + 1.0) / std::sqrt(2.0 * (a_w * a_w + 1.0));
}

ComplexMatrix evolution_unitary(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("evolution_unitary: theta must be finite");
  }
  const ComplexMatrix zz = kron(pauli_z(), pauli_z());
  return std::cos(theta) * identity(4) + Complex(0.0, 1.0) * std::sin(theta) * zz;
}

PureState entangled_state(double theta) {
  const StateVector pp = kron(ket_plus(), ket_plus()).col(0);
  const StateVector mm = kron(ket_minus(), ket_minus()).col(0);
  StateVector v = std::cos(theta) * pp + Complex(0.0, 1.0) * std::sin(theta) * mm;
  return PureState(std::move(v));
}

StateVector ket_epsilon(double epsilon) {
  StateVector v(2);
  v << epsilon, -std::sqrt(1.0 - epsilon * epsilon);
  return v;
}

StateVector ket_epsilon_perp(double epsilon) {
  StateVector v(2);
  v << std::sqrt(1.0 - epsilon * epsilon), epsilon;
  return v;
}

StateVector phi_state(double theta, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("phi_state: sign must be +1 or -1");
  }
  StateVector v = std::cos(theta) * ket_plus() +
                  Complex(0.0, sign * std::sin(theta)) * ket_minus();
  return v;
}

double chi_norm_sq(double theta, double a_w) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * c + s * s * a_w * a_w;
}

StateVector chi_state(double theta, double a_w) {
  StateVector v = std::cos(theta) * ket_plus() +
                  Complex(0.0, std::sin(theta) * a_w) * ket_minus();
  return v / std::sqrt(chi_norm_sq(theta, a_w));
}

double alpha_overlap(double epsilon) {
  return (epsilon - std::sqrt(1.0 - epsilon * epsilon)) * kInvSqrt2;
}

double beta_overlap(double epsilon) {
  return (epsilon + std::sqrt(1.0 - epsilon * epsilon)) * kInvSqrt2;
}

std::array<ComplexMatrix, 4> declared_projectors(const BmvParams& p) {
  const auto wv = p.weak_values();
  return {projector_onto(phi_state(p.theta(), +1)),
          projector_onto(phi_state(p.theta(), -1)),
          projector_onto(chi_state(p.theta(), wv.a_w)),
          projector_onto(chi_state(p.theta(), wv.a_w_perp))};
}

QuantumPredictions quantum_predictions(const BmvParams& p) {
  const PureState psi = entangled_state(p.theta());

  QuantumPredictions out;
  out.basis_a = steer(psi, {ket0(), ket1()}, {"0", "1"});
  out.basis_b = steer(psi,
                      {ket_epsilon(p.epsilon()), ket_epsilon_perp(p.epsilon())},
                      {"eps", "eps_perp"});

  const auto projectors = declared_projectors(p);
  out.report.model = "quantum";
  out.report.heralding = {out.basis_a.probability(0), out.basis_a.probability(1),
                          out.basis_b.probability(0), out.basis_b.probability(1)};
  out.report.visibilities = {
      visibility(out.basis_a.conditional(0), projectors[0]),
      visibility(out.basis_a.conditional(1), projectors[1]),
      visibility(out.basis_b.conditional(0), projectors[2]),
      visibility(out.basis_b.conditional(1), projectors[3])};
  return out;
}

std::array<double, 4> outcome_distribution(const BmvParams& p,
                                           double basis_choice_prob) {
  if (!(basis_choice_prob > 0.0) || !(basis_choice_prob < 1.0)) {
    throw std::invalid_argument("outcome_distribution: basis_choice_prob in (0,1)");
  }
  const auto wv = p.weak_values();
  const double a = alpha_overlap(p.epsilon());
  const double b = beta_overlap(p.epsilon());
  const double p_eps = a * a * chi_norm_sq(p.theta(), wv.a_w);
  const double p_perp = b * b * chi_norm_sq(p.theta(), wv.a_w_perp);
  const double pa = 1.0 - basis_choice_prob;
  return {pa / 2.0, pa / 2.0, basis_choice_prob * p_eps, basis_choice_prob * p_perp};
}

}  // namespace gsteer::bmv
