/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_BMV_HPP
#define GSTEER_BMV_HPP

#include <array>
#include <string>

#include "gsteer/quantum.hpp"

namespace gsteer::bmv {

/// SI quantities of the two-mass interferometer. Exists only to produce the
/// coupling phase theta; all protocol-level code works in theta directly.
struct GravityParams {
  double G;     // m^3 kg^-1 s^-2
  double m1;    // kg
  double m2;    // kg
  double d;     // arm separation, m
  double L;     // arm length, m
  double tau;   // interaction time, s
  double hbar;  // J s

  void validate() const;
};

struct PhaseResult {
  double delta_phi;  // J
  double theta;      // rad, = delta_phi * tau / (2 hbar)
};

/// delta_phi = G m1 m2 (1/d - 1/sqrt(d^2 + L^2)); L = 0 gives theta = 0.
PhaseResult gravitational_phase(const GravityParams& gp);

struct WeakValuePair {
  double a_w;       // <eps|Z|+> / <eps|+>
  double a_w_perp;  // = -1 / a_w
  double k;         // theta * a_w; 0 until paired with a coupling phase
};

/// Protocol parameters: coupling phase theta in [0, pi/2) and steering
/// parameter epsilon in (1/sqrt2, 1]. epsilon may be given directly, derived
/// from a target weak value, or from the amplification coefficient k.
class BmvParams {
 public:
  static BmvParams from_epsilon(double theta, double epsilon);
  static BmvParams from_weak_value(double theta, double a_w);
  static BmvParams from_k(double theta, double k);

  double theta() const { return theta_; }
  double epsilon() const { return epsilon_; }
  WeakValuePair weak_values() const;

 private:
  BmvParams(double theta, double epsilon);
  double theta_;
  double epsilon_;
};

/// a_w(epsilon) closed form. Rejects epsilon = 1/sqrt2 (orthogonal
/// post-selection) and anything outside (1/sqrt2, 1].
WeakValuePair weak_values(double epsilon);

/// Analytic inversion: the epsilon whose weak value equals a_w (a_w >= 1).
double epsilon_for_weak_value(double a_w);

/// U = cos(theta) I4 + i sin(theta) Z(x)Z.
ComplexMatrix evolution_unitary(double theta);

/// cos(theta)|+>|+> + i sin(theta)|->|->.
PureState entangled_state(double theta);

// Closed-form single-qubit states of the protocol.
StateVector ket_epsilon(double epsilon);        // eps|0> - sqrt(1-eps^2)|1>
StateVector ket_epsilon_perp(double epsilon);   // sqrt(1-eps^2)|0> + eps|1>
StateVector phi_state(double theta, int sign);  // cos|+> +/- i sin|->
StateVector chi_state(double theta, double a_w);  // normalized amplified state
double chi_norm_sq(double theta, double a_w);     // cos^2 + sin^2 a_w^2
double alpha_overlap(double epsilon);             // <eps|+>
double beta_overlap(double epsilon);              // <eps_perp|+>

/// The four declared projectors P0..P3 (reference states of the two
/// steering bases) for a given parameter point.
std::array<ComplexMatrix, 4> declared_projectors(const BmvParams& p);

struct VisibilityReport {
  std::string model;
  std::array<double, 4> visibilities{};
  std::array<double, 4> heralding{};  // branch probabilities, per-basis normalized
};

struct QuantumPredictions {
  SteeringEnsemble basis_a;  // {|0>,|1>}
  SteeringEnsemble basis_b;  // {|eps>,|eps_perp>}
  VisibilityReport report;
};

/// Steer the evolved state in both bases and evaluate all four visibilities
/// against the declared projectors (each equals 1 for the unitary model).
QuantumPredictions quantum_predictions(const BmvParams& p);

/// Joint (basis, outcome) distribution over the four herald events with the
/// given probability of selecting the amplified basis.
std::array<double, 4> outcome_distribution(const BmvParams& p,
                                           double basis_choice_prob = 0.5);

}  // namespace gsteer::bmv

#endif
