/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_CLASSICAL_HPP
#define GSTEER_CLASSICAL_HPP

#include <array>
#include <string>
#include <vector>

#include "gsteer/bmv.hpp"
#include "gsteer/quantum.hpp"

namespace gsteer::classical {

/// One product component of the separable mediator state.
struct Component {
  double weight;
  ComplexMatrix state_a;  // rank-1 projector on A
  ComplexMatrix state_b;  // rank-1 projector on B
};

/// Convex mixture of product states that mirrors the two-setting herald
/// statistics: half the weight on the components matched to each basis.
struct SeparableModel {
  std::vector<Component> components;
  /// |1 - raw weight sum| before renormalization. Analytically zero for the
  /// canonical construction; kept as a diagnostic.
  double weight_deficit = 0.0;

  ComplexMatrix assemble() const;
  DensityMatrix state() const;
};

/// A two-setting steering protocol on a pair of qubits: the joint pure state
/// plus two orthonormal measurement bases on side A. The declared check
/// projectors on B are the normalized quantum conditionals.
struct TwoSettingProtocol {
  PureState joint;
  std::array<StateVector, 2> basis_a;
  std::array<StateVector, 2> basis_b;
  std::array<std::string, 4> labels;
};

TwoSettingProtocol bmv_protocol(const bmv::BmvParams& p);

SeparableModel build_separable(const bmv::BmvParams& p);
SeparableModel build_separable_for(const TwoSettingProtocol& protocol);

struct ClassicalSteering {
  SteeringEnsemble basis_a;
  SteeringEnsemble basis_b;
};

/// Exact 4x4 steering of the assembled separable state in both bases.
ClassicalSteering classical_steered_states(const SeparableModel& model,
                                           const TwoSettingProtocol& protocol);
ClassicalSteering classical_steered_states(const SeparableModel& model,
                                           const bmv::BmvParams& p);

/// The four separable-model visibilities against the declared projectors,
/// from exact steering (no small-phase approximations anywhere).
bmv::VisibilityReport classical_visibilities(const SeparableModel& model,
                                             const TwoSettingProtocol& protocol);
bmv::VisibilityReport classical_visibilities(const bmv::BmvParams& p);

/// Small-k limit of the amplified-branch visibility: 1/(1+k^2).
double classical_visibility_limit(double k);

/// Literal transcription of the closed-form visibility ratios, used as an
/// independent route to cross-check the exact steering path.
std::array<double, 4> classical_visibilities_formula(const bmv::BmvParams& p);

/// Herald distribution of the probability-faking product model |+>|+>:
/// the closest a fixed product state comes to the quantum herald statistics.
std::array<double, 4> simulation_distribution(const bmv::BmvParams& p,
                                              double basis_choice_prob = 0.5);

/// Total-variation distance between the quantum herald distribution and the
/// product-model simulation above. O(theta^2) at fixed k.
double probability_tv_distance(const bmv::BmvParams& p,
                               double basis_choice_prob = 0.5);

}  // namespace gsteer::classical

#endif
