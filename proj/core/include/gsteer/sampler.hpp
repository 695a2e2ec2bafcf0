/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_SAMPLER_HPP
#define GSTEER_SAMPLER_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "gsteer/criterion.hpp"

namespace gsteer::mc {

enum class Model { kQuantum, kClassical, kNoisy };

struct ModelSpec {
  Model model = Model::kQuantum;
  double q = 0.0;  // depolarization degree, used by kNoisy only
};

enum class Basis : std::uint8_t { kA = 0, kB = 1 };

/// One run of the two-setting protocol. outcome_a is the *declared* detector
/// outcome (after resolution cross-talk); hit records whether the matched
/// check projector on side B clicked.
struct ShotRecord {
  std::uint64_t run_index;
  Basis basis;
  std::uint8_t outcome_a;  // 0/1 within the chosen basis
  bool hit;

  std::string_view basis_label() const { return basis == Basis::kA ? "a" : "b"; }
  std::string_view outcome_a_label() const;
  std::string_view outcome_b_label() const { return hit ? "hit" : "miss"; }
};

struct CellEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double value = 0.0;      // empirical frequency
  double std_error = 0.0;  // binomial standard error at the MLE
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  bool no_data = true;
};

/// Frequencies of the four herald events plus the per-herald check-projector
/// hit rates, with uncertainties. Cells with no events are flagged, never
/// reported as 0 +- 0.
struct EstimateReport {
  std::array<CellEstimate, 4> probabilities;
  std::array<CellEstimate, 4> visibilities;
  std::uint64_t shots_used = 0;
  std::uint64_t seed = 0;
};

/// Herald branch probabilities per model. The separable mediator is granted
/// exact herald faking (its component weights are pinned to the quantum
/// values by construction), so the distributions of the quantum and
/// classical streams coincide; the models differ in the conditional states.
std::array<double, 4> model_distribution(const ModelSpec& model,
                                         const bmv::BmvParams& p,
                                         double basis_choice_prob = 0.5);

/// Draw n_shots runs. Per shot: basis b with probability
/// device.basis_choice_prob; true outcome from the model's herald branch
/// probabilities; declared outcome flipped within the basis with probability
/// device.gamma (detector cross-talk); B tests the projector matched to the
/// declared outcome against the true branch's conditional state.
/// Deterministic in (model, params, device, n_shots, seed) and independent of
/// scheduling: shots are generated in fixed blocks with derived substreams.
std::vector<ShotRecord> sample_shots(const ModelSpec& model, const bmv::BmvParams& p,
                                     const criterion::DeviceModel& device,
                                     std::uint64_t n_shots, std::uint64_t seed);

void sample_shots(const ModelSpec& model, const bmv::BmvParams& p,
                  const criterion::DeviceModel& device, std::uint64_t n_shots,
                  std::uint64_t seed,
                  const std::function<void(const ShotRecord&)>& sink);

EstimateReport estimate(std::span<const ShotRecord> shots, std::uint64_t seed);

/// Streaming variant: accumulates counts without materializing records.
EstimateReport sample_and_estimate(const ModelSpec& model, const bmv::BmvParams& p,
                                   const criterion::DeviceModel& device,
                                   std::uint64_t n_shots, std::uint64_t seed);

/// Heralded-equivalent sampling: draw n_draws runs already conditioned on a
/// declared outcome (the rare branch is the one worth paying for), so the
/// visibility estimate sees n_draws events instead of n_draws * p.
struct HeraldedEstimate {
  CellEstimate visibility;
  std::uint64_t draws = 0;
};
HeraldedEstimate sample_heralded(const ModelSpec& model, const bmv::BmvParams& p,
                                 const criterion::DeviceModel& device, Basis basis,
                                 int declared_outcome, std::uint64_t n_draws,
                                 std::uint64_t seed);

}  // namespace gsteer::mc

#endif
