/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "gsteer/rng.hpp"

namespace gsteer::mc {

namespace {

struct ModelTables {
  // Joint probability of (basis, true outcome), in cell order a0 a1 b0 b1.
  std::array<double, 4> joint;
  // Within-basis probability of outcome 0.
  std::array<double, 2> outcome0_given_basis;
  // hit[basis][true outcome][declared outcome] = Tr(P_declared rho_true).
  double hit[2][2][2];
};

ModelTables build_tables(ModelSpec model, const bmv::BmvParams& p,
                         const criterion::DeviceModel& device) {
  device.validate();
  if (model.model == Model::kNoisy && model.q == 0.0) {
    model.model = Model::kQuantum;  // keep the exact vector-level path
  }
  const auto projectors = bmv::declared_projectors(p);

  std::array<DensityMatrix, 4> conditionals = [&] {
    switch (model.model) {
      case Model::kQuantum: {
        const auto q = bmv::quantum_predictions(p);
        return std::array<DensityMatrix, 4>{
            q.basis_a.conditional(0), q.basis_a.conditional(1),
            q.basis_b.conditional(0), q.basis_b.conditional(1)};
      }
      case Model::kClassical: {
        const auto c = classical::classical_steered_states(
            classical::build_separable(p), p);
        return std::array<DensityMatrix, 4>{
            c.basis_a.conditional(0), c.basis_a.conditional(1),
            c.basis_b.conditional(0), c.basis_b.conditional(1)};
      }
      case Model::kNoisy: {
        const DensityMatrix rho = depolarize(
            DensityMatrix::from_pure(bmv::entangled_state(p.theta())),
            DepolarizingNoise(model.q));
        const auto ens_a = steer(rho,
                                 {projector_onto(ket0()), projector_onto(ket1())});
        const auto ens_b =
            steer(rho, {projector_onto(bmv::ket_epsilon(p.epsilon())),
                        projector_onto(bmv::ket_epsilon_perp(p.epsilon()))});
        return std::array<DensityMatrix, 4>{
            ens_a.conditional(0), ens_a.conditional(1), ens_b.conditional(0),
            ens_b.conditional(1)};
      }
    }
    throw std::logic_error("unknown model");
  }();

  ModelTables t;
  t.joint = model_distribution(model, p, device.basis_choice_prob);
  const double pa = t.joint[0] + t.joint[1];
  const double pb = t.joint[2] + t.joint[3];
  t.outcome0_given_basis = {t.joint[0] / pa, t.joint[2] / pb};
  for (int basis = 0; basis < 2; ++basis) {
    for (int truth = 0; truth < 2; ++truth) {
      for (int declared = 0; declared < 2; ++declared) {
        t.hit[basis][truth][declared] = visibility(
            conditionals[2 * basis + truth], projectors[2 * basis + declared]);
      }
    }
  }
  return t;
}

CellEstimate make_cell(std::uint64_t successes, std::uint64_t trials) {
  CellEstimate cell;
  cell.trials = trials;
  cell.successes = successes;
  if (trials == 0) {
    cell.no_data = true;
    return cell;
  }
  cell.no_data = false;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  cell.value = phat;
  cell.std_error = std::sqrt(phat * (1.0 - phat) / n);
  // Wilson interval at z = 1; stays informative for rare-event cells where
  // the binomial standard error collapses to zero.
  const double z2 = 1.0;
  const double center = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) /
                      (1.0 + z2 / n);
  cell.wilson_low = std::max(0.0, center - half);
  cell.wilson_high = std::min(1.0, center + half);
  return cell;
}

struct Counts {
  std::array<std::uint64_t, 4> cell{};
  std::array<std::uint64_t, 4> hits{};
  std::uint64_t shots = 0;
};

template <typename PerShot>
void run_stream(const ModelTables& t, const criterion::DeviceModel& device,
                std::uint64_t n_shots, std::uint64_t seed, PerShot&& per_shot) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t block = 0; block * kShotBlock < n_shots; ++block) {
    auto rng = substream(seed, block);
    const std::uint64_t begin = block * kShotBlock;
    const std::uint64_t end = std::min(n_shots, begin + kShotBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      // Fixed draw order per shot keeps the stream independent of outcomes.
      const double u_basis = unit(rng);
      const double u_branch = unit(rng);
      const double u_flip = unit(rng);
      const double u_hit = unit(rng);

      const int basis = u_basis < device.basis_choice_prob ? 1 : 0;
      const int truth = u_branch < t.outcome0_given_basis[basis] ? 0 : 1;
      const int declared = u_flip < device.gamma ? 1 - truth : truth;
      const bool hit = u_hit < t.hit[basis][truth][declared];

      ShotRecord rec{i, basis == 0 ? Basis::kA : Basis::kB,
                     static_cast<std::uint8_t>(declared), hit};
      per_shot(rec);
    }
  }
}

}  // namespace

std::string_view ShotRecord::outcome_a_label() const {
  if (basis == Basis::kA) {
    return outcome_a == 0 ? "0" : "1";
  }
  return outcome_a == 0 ? "eps" : "eps_perp";
}

std::array<double, 4> model_distribution(const ModelSpec& model,
                                         const bmv::BmvParams& p,
                                         double basis_choice_prob) {
  if (model.model == Model::kNoisy && model.q == 0.0) {
    return bmv::outcome_distribution(p, basis_choice_prob);
  }
  switch (model.model) {
    case Model::kQuantum:
    case Model::kClassical:
      // The separable mediator's component weights equal the quantum herald
      // probabilities by construction, so both streams share one herald law.
      return bmv::outcome_distribution(p, basis_choice_prob);
    case Model::kNoisy: {
      const DensityMatrix rho = depolarize(
          DensityMatrix::from_pure(bmv::entangled_state(p.theta())),
          DepolarizingNoise(model.q));
      const auto ens_a =
          steer(rho, {projector_onto(ket0()), projector_onto(ket1())});
      const auto ens_b =
          steer(rho, {projector_onto(bmv::ket_epsilon(p.epsilon())),
                      projector_onto(bmv::ket_epsilon_perp(p.epsilon()))});
      const double pa = 1.0 - basis_choice_prob;
      return {pa * ens_a.probability(0), pa * ens_a.probability(1),
              basis_choice_prob * ens_b.probability(0),
              basis_choice_prob * ens_b.probability(1)};
    }
  }
  throw std::logic_error("unknown model");
}

void sample_shots(const ModelSpec& model, const bmv::BmvParams& p,
                  const criterion::DeviceModel& device, std::uint64_t n_shots,
                  std::uint64_t seed,
                  const std::function<void(const ShotRecord&)>& sink) {
  if (n_shots == 0) {
    throw std::invalid_argument("sample_shots: n_shots must be positive");
  }
  const ModelTables t = build_tables(model, p, device);
  run_stream(t, device, n_shots, seed, [&](const ShotRecord& rec) { sink(rec); });
}

std::vector<ShotRecord> sample_shots(const ModelSpec& model, const bmv::BmvParams& p,
                                     const criterion::DeviceModel& device,
                                     std::uint64_t n_shots, std::uint64_t seed) {
  std::vector<ShotRecord> out;
  out.reserve(n_shots);
  sample_shots(model, p, device, n_shots, seed,
               [&](const ShotRecord& rec) { out.push_back(rec); });
  return out;
}

EstimateReport estimate(std::span<const ShotRecord> shots, std::uint64_t seed) {
  if (shots.empty()) {
    throw std::invalid_argument("estimate: empty shot stream");
  }
  Counts counts;
  for (const auto& rec : shots) {
    const std::size_t idx =
        2 * static_cast<std::size_t>(rec.basis) + rec.outcome_a;
    ++counts.cell[idx];
    counts.hits[idx] += rec.hit ? 1 : 0;
    ++counts.shots;
  }
  EstimateReport report;
  report.shots_used = counts.shots;
  report.seed = seed;
  for (std::size_t i = 0; i < 4; ++i) {
    report.probabilities[i] = make_cell(counts.cell[i], counts.shots);
    report.visibilities[i] = make_cell(counts.hits[i], counts.cell[i]);
  }
  return report;
}

EstimateReport sample_and_estimate(const ModelSpec& model, const bmv::BmvParams& p,
                                   const criterion::DeviceModel& device,
                                   std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) {
    throw std::invalid_argument("sample_and_estimate: n_shots must be positive");
  }
  const ModelTables t = build_tables(model, p, device);
  Counts counts;
  run_stream(t, device, n_shots, seed, [&](const ShotRecord& rec) {
    const std::size_t idx = 2 * static_cast<std::size_t>(rec.basis) + rec.outcome_a;
    ++counts.cell[idx];
    counts.hits[idx] += rec.hit ? 1 : 0;
    ++counts.shots;
  });
  EstimateReport report;
  report.shots_used = counts.shots;
  report.seed = seed;
  for (std::size_t i = 0; i < 4; ++i) {
    report.probabilities[i] = make_cell(counts.cell[i], counts.shots);
    report.visibilities[i] = make_cell(counts.hits[i], counts.cell[i]);
  }
  return report;
}

HeraldedEstimate sample_heralded(const ModelSpec& model, const bmv::BmvParams& p,
                                 const criterion::DeviceModel& device, Basis basis,
                                 int declared_outcome, std::uint64_t n_draws,
                                 std::uint64_t seed) {
  if (n_draws == 0) {
    throw std::invalid_argument("sample_heralded: n_draws must be positive");
  }
  if (declared_outcome != 0 && declared_outcome != 1) {
    throw std::invalid_argument("sample_heralded: declared_outcome must be 0 or 1");
  }
  const ModelTables t = build_tables(model, p, device);
  const int b = static_cast<int>(basis);
  const int d = declared_outcome;

  // P(true | declared) from the branch law and the cross-talk rate.
  const double p0 = t.outcome0_given_basis[b];
  const std::array<double, 2> within{p0, 1.0 - p0};
  const double w_same = within[d] * (1.0 - device.gamma);
  const double w_flip = within[1 - d] * device.gamma;
  const double p_true_same = w_same / (w_same + w_flip);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t block = 0; block * kShotBlock < n_draws; ++block) {
    auto rng = substream(seed, block);
    const std::uint64_t begin = block * kShotBlock;
    const std::uint64_t end = std::min(n_draws, begin + kShotBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u_truth = unit(rng);
      const double u_hit = unit(rng);
      const int truth = u_truth < p_true_same ? d : 1 - d;
      hits += u_hit < t.hit[b][truth][d] ? 1 : 0;
    }
  }
  HeraldedEstimate out;
  out.draws = n_draws;
  out.visibility = make_cell(hits, n_draws);
  return out;
}

}  // namespace gsteer::mc
