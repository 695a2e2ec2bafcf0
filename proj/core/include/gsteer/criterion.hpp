/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_CRITERION_HPP
#define GSTEER_CRITERION_HPP

#include <array>

#include "gsteer/bmv.hpp"
#include "gsteer/classical.hpp"

namespace gsteer::criterion {

/// Detector and schedule constraints of one experimental campaign.
struct DeviceModel {
  double gamma;                   // squared pointer-state overlap, in (0,1)
  double shot_rate;               // runs per second
  double duration;                // total wall time, s
  double basis_choice_prob = 0.5; // probability of selecting the amplified basis

  void validate() const;
};

struct CriterionReport {
  std::array<double, 4> v_quantum{};
  std::array<double, 4> v_classical{};
  double visibility_gap = 0.0;   // quantum minus classical on the amplified branch
  double prob_tv_distance = 0.0;
  bool distinguishable_by_probability = false;
  bool distinguishable_by_visibility = false;
  double shift = 0.0;            // expectation displacement on the amplified projector
  double amplification_factor = 0.0;  // the weak value a_w
  double noise_q = 0.0;
};

/// Compare the unitary-mediator and separable-mediator predictions under the
/// device's resolution gamma. Both sides come from exact 4x4 algebra.
CriterionReport evaluate_criterion(const bmv::BmvParams& p, const DeviceModel& device);

/// Same comparison with the joint state passed through a depolarizing
/// channel before measurement.
CriterionReport evaluate_criterion(const bmv::BmvParams& p, const DeviceModel& device,
                                   DepolarizingNoise noise);

/// Displacement of the amplified-projector expectation between the steered
/// and initial states, in the weak-coupling closed form 1 - 1/(1+k^2).
double expectation_shift(const bmv::BmvParams& p);

/// The same displacement evaluated from the exact steered state. Agrees with
/// the closed form to O(theta^2 k^2) and to 1e-10 for theta <= 1e-5.
double expectation_shift_exact(const bmv::BmvParams& p);

/// Largest usable weak value at resolution gamma: sqrt(2/gamma).
double resolution_ceiling(const DeviceModel& device);

struct BudgetReport {
  double heralds_per_day;     // expected amplified-branch heralds over `duration`
  double saving_factor;       // coupling-strength saving, = a_w
  double herald_probability;  // per-run amplified herald probability
};

/// Event budget with the exact herald probability derived from the params.
BudgetReport experiment_budget(const bmv::BmvParams& p, const DeviceModel& device);

/// Event budget with an externally supplied herald probability.
BudgetReport experiment_budget(double herald_probability, const DeviceModel& device,
                               double a_w);

/// Visibilities of the depolarized joint state, by exact steering.
/// Monotone non-increasing in q; {1,...} at q=0 and {1/2,...} at q=1.
bmv::VisibilityReport noisy_visibilities(const bmv::BmvParams& p,
                                         DepolarizingNoise noise);

/// The exact reference-branch noisy visibility next to the two closed-form
/// candidates in circulation, so disagreements are data instead of folklore.
struct NoisyFormulaComparison {
  double q;
  double exact_v0;          // exact steering result for the first branch
  double candidate_inv;     // 1/(1+q)
  double candidate_linear;  // 1 - q/2
  double dev_inv;
  double dev_linear;
};
NoisyFormulaComparison noisy_formula_comparison(const bmv::BmvParams& p,
                                                DepolarizingNoise noise);

/// Largest decoherence degree q at which the noisy quantum visibility still
/// exceeds the classical one by more than gamma, bisected to 1e-6.
/// Returns 0 when no q qualifies.
double decoherence_threshold(const bmv::BmvParams& p, const DeviceModel& device);

}  // namespace gsteer::criterion

#endif
