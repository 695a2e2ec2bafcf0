/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_OSCILLATOR_HPP
#define GSTEER_OSCILLATOR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "gsteer/quantum.hpp"

namespace gsteer::osc {

/// Resonator-plus-atom scenario: H = omega a^dag a + g (a + a^dag) sigma_z,
/// with the weak-coupling regime enforced as g/omega <= max_lambda.
struct OscillatorParams {
  double omega;     // rad/s
  double g;         // rad/s
  double t;         // s
  double theta_v;   // steering-basis angle, in (0, pi/4)
  double nbar = 0.0;
  double max_lambda = 0.1;

  double lambda() const { return g / omega; }
  void validate() const;
};

/// eta(t) = lambda (e^{-i omega t} - 1); |eta| <= 2 lambda.
Complex displaced_amplitude(const OscillatorParams& p);

/// <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta).
Complex coherent_overlap(Complex alpha, Complex beta);

/// Finite linear combination of coherent amplitudes with the Gaussian
/// overlap kernel as inner product. Exact closed-form algebra; the truncated
/// Fock representation exists only as a test oracle.
struct CoherentSuperposition {
  struct Term {
    Complex coeff;
    Complex alpha;
  };
  std::vector<Term> terms;

  Complex overlap(const CoherentSuperposition& other) const;  // <this|other>
  Complex overlap_with_coherent(Complex beta) const;          // <this|beta>
  double norm() const;
  CoherentSuperposition normalized() const;
};

struct CatPair {
  CoherentSuperposition plus;   // c+ (|eta> + |-eta>)
  CoherentSuperposition minus;  // c- (|eta> - |-eta>)
  double c_plus;
  double c_minus;
};

/// Even/odd cat states. eta = 0 leaves the odd cat undefined (degenerate).
CatPair cat_states(Complex eta);

/// Joint state after the interaction and the atom-side Hadamard:
/// amp_L |cat+>|L> + amp_R |cat->|R> with amp_{L,R} = 1/(2 c_{+,-}).
struct EvolvedState {
  CoherentSuperposition cat_plus;
  CoherentSuperposition cat_minus;
  double amp_l;
  double amp_r;
};
EvolvedState evolved_joint_state(const OscillatorParams& p);

struct SteeringBasisV {
  CoherentSuperposition v;       // sin(theta_v)|cat+> + cos(theta_v)|cat->
  CoherentSuperposition v_perp;  // cos(theta_v)|cat+> - sin(theta_v)|cat->
};
SteeringBasisV steering_basis_v(double theta_v, Complex eta);

struct OscillatorVisibility {
  double heralding_prob;
  double visibility;  // = 1 on the zero-temperature pure-state path
  double k_factor;    // (V - V_classical) / gamma on the amplified branch
  bool observable;    // heralding above the floor
  std::array<double, 4> v_classical;  // separable comparator, all four branches
};

/// Conditional atom state given the <v| herald, its visibility against the
/// declared projector, and the separable-comparator deficit scaled by the
/// device resolution. The comparator reuses the two-setting construction on
/// the effective qubit pair {|cat+>,|cat->} (x) {|L>,|R>}.
/// lambda = 0 collapses to a product state: visibility 1, k_factor 0.
OscillatorVisibility oscillator_visibility(const OscillatorParams& p, double gamma,
                                           double herald_floor = 1e-30);

struct ThermalVisibility {
  double heralding_prob;
  double visibility;
  double quadrature_delta;  // |V at order n - V at order 2n|
  int order;                // finer order actually used
};

/// Thermal-state average of the conditional-atom visibility via 2-D
/// Gauss-Hermite quadrature (default 32 per axis, self-checked against the
/// doubled order; fails loudly if the two differ by more than 1e-8).
ThermalVisibility thermal_visibility(const OscillatorParams& p, int order = 32);

struct McEstimate {
  double value;
  double std_error;
};

/// Monte Carlo secondary estimator over the thermal amplitude, for error
/// bars and as a cross-check of the quadrature path.
McEstimate thermal_visibility_mc(const OscillatorParams& p, int n_samples,
                                 std::uint64_t seed);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
Quadrature gauss_hermite(int order);

}  // namespace gsteer::osc

#endif
