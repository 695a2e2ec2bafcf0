/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gsteer/classical.hpp"
#include "gsteer/criterion.hpp"
#include "gsteer/oscillator.hpp"
#include "gsteer/sampler.hpp"

using nlohmann::json;

namespace gsteer::io {

namespace {

const std::vector<KeySpec> kProtoKeys = {
    {"theta", "coupling phase in radians", "", false},
    {"epsilon", "steering parameter in (1/sqrt2, 1]", "", false},
    {"a_w", "target weak value (>= 1)", "", false},
    {"k", "amplification coefficient theta*a_w", "", false},
    {"G", "gravitational constant, m^3 kg^-1 s^-2", "6.67430e-11", false},
    {"m1", "first mass, kg (supplying it activates SI mode)", "", false},
    {"m2", "second mass, kg", "", false},
    {"d", "arm separation, m", "", false},
    {"L", "arm length, m", "", false},
    {"tau", "interaction time, s", "", false},
    {"hbar", "reduced Planck constant, J s", "1.054571817e-34", false},
};

const std::vector<KeySpec> kDeviceKeys = {
    {"gamma", "detector resolution (squared pointer overlap)", "1e-4", false},
    {"rate", "runs per second", "1e6", false},
    {"duration", "total wall time, s", "86400", false},
    {"basis_prob", "probability of selecting the amplified basis", "0.5", false},
};

std::vector<KeySpec> concat(std::initializer_list<std::vector<KeySpec>> groups,
                            std::initializer_list<KeySpec> extra = {}) {
  std::vector<KeySpec> out;
  for (const auto& g : groups) {
    out.insert(out.end(), g.begin(), g.end());
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

const std::map<std::string, std::vector<KeySpec>>& schemas() {
  static const std::map<std::string, std::vector<KeySpec>> s = {
      {"bmv", concat({kProtoKeys})},
      {"classical", concat({kProtoKeys})},
      {"criterion", concat({kProtoKeys, kDeviceKeys},
                           {{"q", "depolarization degree in [0,1]", "0", false}})},
      {"sweep",
       concat({}, {{"theta", "theta grid (list or min:max:logN|linN)", "", true},
                   {"k", "k values (comma list)", "1", false},
                   {"gamma", "detector resolution", "1e-4", false},
                   {"basis_prob", "amplified-basis selection probability", "0.5",
                    false}})},
      {"decoherence",
       concat({kProtoKeys},
              {{"gamma", "detector resolution", "1e-4", false},
               {"q", "depolarization grid (list or min:max:linN)", "0:1:lin21",
                false}})},
      {"resolution",
       concat({}, {{"gamma", "detector resolution", "1e-4", false}})},
      {"budget",
       concat({kProtoKeys, kDeviceKeys},
              {{"p_herald", "amplified-branch herald probability (overrides the "
                            "exact path)",
                "", false}})},
      {"oscillator",
       concat({}, {{"omega", "oscillator angular frequency, rad/s", "1.0", false},
                   {"g", "gravitational coupling, rad/s", "0.05", false},
                   {"t", "evolution time, s", "3.141592653589793", false},
                   {"theta_v", "steering-basis angle, rad", "0.1", false},
                   {"nbar", "thermal occupation", "0", false},
                   {"gamma", "detector resolution", "1e-4", false},
                   {"mc_samples", "Monte Carlo cross-check samples (0 = off)", "0",
                    false},
                   {"seed", "Monte Carlo seed", "1", false}})},
      {"montecarlo",
       concat({kProtoKeys, kDeviceKeys},
              {{"model", "quantum | classical | noisy", "quantum", false},
               {"q", "depolarization degree for the noisy model", "0", false},
               {"shots", "raw protocol runs", "1000000", false},
               {"heralded", "extra heralded-equivalent draws on the amplified "
                            "branch (0 = off)",
                "0", false},
               {"seed", "stream seed", "1", false}})},
  };
  return s;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': cannot parse '" + value +
                                "' as a number");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': cannot parse '" + value +
                                "' as an integer");
  }
}

bool has(const RunConfig& c, const std::string& key) {
  auto it = c.params.find(key);
  return it != c.params.end() && !it->second.empty();
}

double num(const RunConfig& c, const std::string& key) {
  return to_double(key, c.params.at(key));
}

/// theta from the direct key or from the SI quantities when SI mode is on.
double resolve_theta(const RunConfig& c, json* derived) {
  const bool si_mode = has(c, "m1") || has(c, "m2") || has(c, "d") || has(c, "tau");
  if (si_mode) {
    for (const char* k : {"m1", "m2", "d", "tau"}) {
      if (!has(c, k)) {
        throw std::invalid_argument(
            "SI mode needs m1, m2, d and tau (L defaults to 0)");
      }
    }
    bmv::GravityParams gp{num(c, "G"),   num(c, "m1"),
                          num(c, "m2"),  num(c, "d"),
                          has(c, "L") ? num(c, "L") : 0.0,
                          num(c, "tau"), num(c, "hbar")};
    const auto phase = bmv::gravitational_phase(gp);
    if (derived) {
      (*derived)["delta_phi"] = phase.delta_phi;
      (*derived)["theta"] = phase.theta;
    }
    return phase.theta;
  }
  if (!has(c, "theta")) {
    throw std::invalid_argument("missing 'theta' (or the SI keys m1,m2,d,tau)");
  }
  return num(c, "theta");
}

bmv::BmvParams resolve_params(RunConfig& c, json* derived) {
  const double theta = resolve_theta(c, derived);
  const int given = (has(c, "epsilon") ? 1 : 0) + (has(c, "a_w") ? 1 : 0) +
                    (has(c, "k") ? 1 : 0);
  if (given > 1) {
    throw std::invalid_argument("give at most one of epsilon, a_w, k");
  }
  if (given == 0) {
    c.params["k"] = "1";  // resolved default, echoed for reproducibility
  }
  bmv::BmvParams p = [&] {
    if (has(c, "epsilon")) {
      return bmv::BmvParams::from_epsilon(theta, num(c, "epsilon"));
    }
    if (has(c, "a_w")) {
      return bmv::BmvParams::from_weak_value(theta, num(c, "a_w"));
    }
    return bmv::BmvParams::from_k(theta, num(c, "k"));
  }();
  if (derived) {
    const auto wv = p.weak_values();
    (*derived)["epsilon"] = p.epsilon();
    (*derived)["a_w"] = wv.a_w;
    (*derived)["k"] = wv.k;
  }
  return p;
}

criterion::DeviceModel resolve_device(const RunConfig& c) {
  criterion::DeviceModel device{num(c, "gamma"), num(c, "rate"), num(c, "duration"),
                                num(c, "basis_prob")};
  device.validate();
  return device;
}

json cell_to_json(const mc::CellEstimate& cell) {
  json j;
  j["trials"] = cell.trials;
  if (cell.no_data) {
    j["status"] = "no data";
    return j;
  }
  j["status"] = "ok";
  j["successes"] = cell.successes;
  j["value"] = cell.value;
  j["std_error"] = cell.std_error;
  j["wilson_low"] = cell.wilson_low;
  j["wilson_high"] = cell.wilson_high;
  return j;
}

// ---- scenario runners ----

json run_bmv(RunConfig& c, json& derived) {
  const auto p = resolve_params(c, &derived);
  const auto predictions = bmv::quantum_predictions(p);
  json r;
  r["heralding"] = predictions.report.heralding;
  r["visibilities"] = predictions.report.visibilities;
  r["concurrence"] = concurrence(bmv::entangled_state(p.theta()));
  r["herald_closed_form"] = bmv::alpha_overlap(p.epsilon()) *
                            bmv::alpha_overlap(p.epsilon()) *
                            bmv::chi_norm_sq(p.theta(), p.weak_values().a_w);
  return r;
}

json run_classical(RunConfig& c, json& derived) {
  const auto p = resolve_params(c, &derived);
  const auto model = classical::build_separable(p);
  const auto report = classical::classical_visibilities(p);
  const auto formula = classical::classical_visibilities_formula(p);
  json r;
  r["visibilities"] = report.visibilities;
  r["visibilities_formula"] = formula;
  r["heralding"] = report.heralding;
  r["limit_amplified"] = classical::classical_visibility_limit(p.weak_values().k);
  r["weight_deficit"] = model.weight_deficit;
  r["ppt_min_eigenvalue"] = ppt_min_eigenvalue(model.state());
  r["prob_tv_distance"] = classical::probability_tv_distance(p);
  return r;
}

json criterion_to_json(const criterion::CriterionReport& report) {
  json r;
  r["v_quantum"] = report.v_quantum;
  r["v_classical"] = report.v_classical;
  r["visibility_gap"] = report.visibility_gap;
  r["prob_tv_distance"] = report.prob_tv_distance;
  r["distinguishable_by_probability"] = report.distinguishable_by_probability;
  r["distinguishable_by_visibility"] = report.distinguishable_by_visibility;
  r["shift"] = report.shift;
  r["amplification_factor"] = report.amplification_factor;
  r["noise_q"] = report.noise_q;
  return r;
}

json run_criterion(RunConfig& c, json& derived) {
  const auto p = resolve_params(c, &derived);
  const auto device = resolve_device(c);
  const auto report =
      criterion::evaluate_criterion(p, device, DepolarizingNoise(num(c, "q")));
  return criterion_to_json(report);
}

json run_sweep(const RunConfig& c, json& derived) {
  const auto thetas = parse_grid(c.params.at("theta"));
  const auto ks = parse_grid(c.params.at("k"));
  criterion::DeviceModel device{num(c, "gamma"), 1e6, 86400.0, num(c, "basis_prob")};
  device.validate();
  derived["points"] = thetas.size() * ks.size();

  // Row-major over (theta, k): k varies fastest, so CSV diffs stay local.
  // Points are evaluated in parallel; rows land in grid order regardless of
  // completion order.
  std::vector<std::pair<double, double>> points;
  for (const double theta : thetas) {
    for (const double k : ks) {
      points.emplace_back(theta, k);
    }
  }
  std::vector<json> evaluated(points.size());
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            points.size());
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < points.size(); i += workers) {
        const auto [theta, k] = points[i];
        const auto p = bmv::BmvParams::from_k(theta, k);
        const auto report = criterion::evaluate_criterion(p, device);
        evaluated[i] = json::array(
            {theta, k, p.epsilon(), report.amplification_factor,
             report.v_quantum[0], report.v_quantum[1], report.v_quantum[2],
             report.v_quantum[3], report.v_classical[0], report.v_classical[1],
             report.v_classical[2], report.v_classical[3], report.visibility_gap,
             report.prob_tv_distance, report.shift,
             report.distinguishable_by_visibility ? 1.0 : 0.0,
             report.distinguishable_by_probability ? 1.0 : 0.0});
      }
    }));
  }
  for (auto& f : futures) {
    f.get();
  }
  json rows = json::array();
  for (auto& row : evaluated) {
    rows.push_back(std::move(row));
  }
  json r;
  r["columns"] = {"theta", "k", "epsilon", "a_w", "v_q0", "v_q1", "v_q2", "v_q3",
                  "v_c0", "v_c1", "v_c2", "v_c3", "visibility_gap",
                  "prob_tv_distance", "shift", "flag_visibility",
                  "flag_probability"};
  r["rows"] = std::move(rows);
  r["plot"] = {{"x", "theta"}, {"y", "visibility_gap"}, {"xscale", "log"}};
  return r;
}

json run_decoherence(RunConfig& c, json& derived) {
  const auto p = resolve_params(c, &derived);
  const auto qs = parse_grid(c.params.at("q"));
  criterion::DeviceModel device{num(c, "gamma"), 1e6, 86400.0, 0.5};
  device.validate();

  json rows = json::array();
  for (const double q : qs) {
    const auto vis = criterion::noisy_visibilities(p, DepolarizingNoise(q));
    const auto cmp = criterion::noisy_formula_comparison(p, DepolarizingNoise(q));
    rows.push_back(json::array({q, vis.visibilities[0], vis.visibilities[1],
                                vis.visibilities[2], vis.visibilities[3],
                                cmp.candidate_inv, cmp.candidate_linear,
                                cmp.dev_inv, cmp.dev_linear}));
  }
  json r;
  r["columns"] = {"q", "v0", "v1", "v2", "v3", "candidate_inv",
                  "candidate_linear", "dev_inv", "dev_linear"};
  r["rows"] = std::move(rows);
  r["threshold_q"] = criterion::decoherence_threshold(p, device);
  r["plot"] = {{"x", "q"}, {"y", "v2"}, {"xscale", "linear"}};
  return r;
}

json run_resolution(const RunConfig& c, json& derived) {
  criterion::DeviceModel device{num(c, "gamma"), 1e6, 86400.0, 0.5};
  device.validate();
  const double ceiling = criterion::resolution_ceiling(device);
  json r;
  r["max_weak_value"] = ceiling;
  // Matched regime: coupling phase at the resolution floor, weak value at
  // the ceiling.
  const double theta = std::sqrt(device.gamma);
  const auto p = bmv::BmvParams::from_weak_value(theta, ceiling);
  derived["theta"] = theta;
  derived["epsilon"] = p.epsilon();
  derived["k"] = p.weak_values().k;
  r["matched_shift"] = criterion::expectation_shift(p);
  r["matched_shift_exact"] = criterion::expectation_shift_exact(p);
  r["gamma"] = device.gamma;
  return r;
}

json run_budget(RunConfig& c, json& derived) {
  const auto device = resolve_device(c);
  json r;
  if (has(c, "p_herald")) {
    const double p_herald = num(c, "p_herald");
    const double a_w = has(c, "a_w") ? num(c, "a_w") : 0.0;
    const auto b = criterion::experiment_budget(p_herald, device, a_w);
    r["heralds_per_day"] = b.heralds_per_day;
    r["saving_factor"] = b.saving_factor;
    r["herald_probability"] = b.herald_probability;
  } else {
    const auto p = resolve_params(c, &derived);
    const auto b = criterion::experiment_budget(p, device);
    r["heralds_per_day"] = b.heralds_per_day;
    r["saving_factor"] = b.saving_factor;
    r["herald_probability"] = b.herald_probability;
    r["heralds_before_basis_factor"] =
        b.herald_probability * device.shot_rate * device.duration;
  }
  return r;
}

json run_oscillator(const RunConfig& c, json& derived) {
  osc::OscillatorParams p{num(c, "omega"), num(c, "g"),     num(c, "t"),
                          num(c, "theta_v"), num(c, "nbar")};
  p.validate();
  const Complex eta = osc::displaced_amplitude(p);
  derived["lambda"] = p.lambda();
  derived["eta_re"] = eta.real();
  derived["eta_im"] = eta.imag();

  json r;
  const auto vis = osc::oscillator_visibility(p, num(c, "gamma"));
  r["heralding_prob"] = vis.heralding_prob;
  r["visibility"] = vis.visibility;
  r["k_factor"] = vis.k_factor;
  r["observable"] = vis.observable;
  r["v_classical"] = vis.v_classical;
  if (std::norm(eta) > 0.0) {
    const auto cats = osc::cat_states(eta);
    r["c_plus"] = cats.c_plus;
    r["c_minus"] = cats.c_minus;
    r["branch_weight_l"] = 1.0 / (4.0 * cats.c_plus * cats.c_plus);
    r["branch_weight_r"] = 1.0 / (4.0 * cats.c_minus * cats.c_minus);
  }
  if (p.nbar > 0.0) {
    const auto thermal = osc::thermal_visibility(p);
    r["thermal_visibility"] = thermal.visibility;
    r["thermal_heralding"] = thermal.heralding_prob;
    r["quadrature_delta"] = thermal.quadrature_delta;
    r["quadrature_order"] = thermal.order;
    const auto n_mc = to_u64("mc_samples", c.params.at("mc_samples"));
    if (n_mc > 0) {
      const auto est = osc::thermal_visibility_mc(p, static_cast<int>(n_mc),
                                                  to_u64("seed", c.params.at("seed")));
      r["thermal_mc_value"] = est.value;
      r["thermal_mc_std_error"] = est.std_error;
    }
  }
  return r;
}

json run_montecarlo(RunConfig& c, json& derived) {
  const auto p = resolve_params(c, &derived);
  const auto device = resolve_device(c);
  const std::string model_name = c.params.at("model");
  mc::ModelSpec spec;
  if (model_name == "quantum") {
    spec.model = mc::Model::kQuantum;
  } else if (model_name == "classical") {
    spec.model = mc::Model::kClassical;
  } else if (model_name == "noisy") {
    spec.model = mc::Model::kNoisy;
    spec.q = num(c, "q");
  } else {
    throw std::invalid_argument("model must be quantum, classical or noisy");
  }
  const auto shots = to_u64("shots", c.params.at("shots"));
  const auto seed = to_u64("seed", c.params.at("seed"));
  const auto report = mc::sample_and_estimate(spec, p, device, shots, seed);

  json r;
  r["shots_used"] = report.shots_used;
  r["seed"] = report.seed;
  const std::array<const char*, 4> names{"a0", "a1", "b_eps", "b_eps_perp"};
  for (std::size_t i = 0; i < 4; ++i) {
    r["probabilities"][names[i]] = cell_to_json(report.probabilities[i]);
    r["visibilities"][names[i]] = cell_to_json(report.visibilities[i]);
  }
  const auto heralded = to_u64("heralded", c.params.at("heralded"));
  if (heralded > 0) {
    const auto h = mc::sample_heralded(spec, p, device, mc::Basis::kB, 0, heralded,
                                       seed + 0x9e3779b9ULL);
    r["heralded_visibility"] = cell_to_json(h.visibility);
    r["heralded_draws"] = h.draws;
  }
  r["exact_distribution"] = mc::model_distribution(spec, p, device.basis_choice_prob);
  return r;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      flatten(node[i], prefix + "." + std::to_string(i), out);
    }
  } else if (node.is_number_float()) {
    out.emplace_back(prefix, format_number(node.get<double>()));
  } else if (node.is_boolean()) {
    out.emplace_back(prefix, node.get<bool>() ? "1" : "0");
  } else if (node.is_string()) {
    out.emplace_back(prefix, node.get<std::string>());
  } else if (node.is_number()) {
    out.emplace_back(prefix, node.dump());
  }
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : schemas()) {
      n.push_back(name);
    }
    return n;
  }();
  return names;
}

const std::vector<KeySpec>& scenario_schema(const std::string& scenario) {
  const auto it = schemas().find(scenario);
  if (it == schemas().end()) {
    std::string msg = "unknown scenario '" + scenario + "'; valid scenarios:";
    for (const auto& n : scenario_names()) {
      msg += " " + n;
    }
    throw std::invalid_argument(msg);
  }
  return it->second;
}

void validate_config(RunConfig& config) {
  const auto& schema = scenario_schema(config.scenario);
  for (const auto& [key, value] : config.params) {
    const bool known = std::any_of(schema.begin(), schema.end(),
                                   [&](const KeySpec& s) { return s.key == key; });
    if (!known) {
      std::string msg =
          "unknown key '" + key + "' for scenario '" + config.scenario + "'; valid keys:";
      for (const auto& s : schema) {
        msg += " " + s.key;
      }
      throw std::invalid_argument(msg);
    }
  }
  for (const auto& s : schema) {
    if (config.params.find(s.key) == config.params.end()) {
      if (s.required) {
        throw std::invalid_argument("scenario '" + config.scenario +
                                    "' requires key '" + s.key + "' (" + s.doc + ")");
      }
      if (!s.fallback.empty()) {
        config.params[s.key] = s.fallback;
      }
    }
  }
  if (config.format != "json" && config.format != "csv" && config.format != "svg") {
    throw std::invalid_argument("format must be json, csv or svg");
  }
}

json run_scenario(const RunConfig& config) {
  RunConfig resolved = config;
  validate_config(resolved);

  json derived = json::object();
  json results;
  if (resolved.scenario == "bmv") {
    results = run_bmv(resolved, derived);
  } else if (resolved.scenario == "classical") {
    results = run_classical(resolved, derived);
  } else if (resolved.scenario == "criterion") {
    results = run_criterion(resolved, derived);
  } else if (resolved.scenario == "sweep") {
    results = run_sweep(resolved, derived);
  } else if (resolved.scenario == "decoherence") {
    results = run_decoherence(resolved, derived);
  } else if (resolved.scenario == "resolution") {
    results = run_resolution(resolved, derived);
  } else if (resolved.scenario == "budget") {
    results = run_budget(resolved, derived);
  } else if (resolved.scenario == "oscillator") {
    results = run_oscillator(resolved, derived);
  } else if (resolved.scenario == "montecarlo") {
    results = run_montecarlo(resolved, derived);
  } else {
    throw std::invalid_argument("unhandled scenario '" + resolved.scenario + "'");
  }

  json report;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["scenario"] = resolved.scenario;
  report["config"] = resolved.params;
  report["derived"] = derived;
  report["results"] = results;
  return report;
}

std::string emit_json(const json& report) {
  return report.dump(2) + "\n";
}

std::string emit_csv(const json& report) {
  std::ostringstream out;
  const json& results = report.at("results");
  if (results.contains("columns") && results.contains("rows")) {
    const auto& columns = results.at("columns");
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i].get<std::string>();
    }
    out << "\n";
    for (const auto& row : results.at("rows")) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "");
        out << (row[i].is_number_float() ? format_number(row[i].get<double>())
                                         : row[i].dump());
      }
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(results, "", cells);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << (i ? "," : "") << cells[i].first;
  }
  out << "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << (i ? "," : "") << cells[i].second;
  }
  out << "\n";
  return out.str();
}

std::string emit_svg(const json& report) {
  const json& results = report.at("results");
  if (!results.contains("columns") || !results.contains("rows") ||
      !results.contains("plot")) {
    throw std::invalid_argument("svg output needs a sweep-style table");
  }
  const auto& columns = results.at("columns");
  const auto& plot = results.at("plot");
  const std::string x_name = plot.at("x").get<std::string>();
  const std::string y_name = plot.at("y").get<std::string>();
  const bool logx = plot.value("xscale", "linear") == std::string("log");

  std::ptrdiff_t xi = -1, yi = -1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == x_name) xi = static_cast<std::ptrdiff_t>(i);
    if (columns[i] == y_name) yi = static_cast<std::ptrdiff_t>(i);
  }
  if (xi < 0 || yi < 0) {
    throw std::invalid_argument("svg plot columns not present in table");
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& row : results.at("rows")) {
    double x = row[xi].get<double>();
    if (logx) {
      if (x <= 0.0) continue;
      x = std::log10(x);
    }
    pts.emplace_back(x, row[yi].get<double>());
  }
  if (pts.empty()) {
    throw std::invalid_argument("svg output needs at least one point");
  }
  std::sort(pts.begin(), pts.end());
  double xmin = pts.front().first, xmax = pts.back().first;
  double ymin = pts.front().second, ymax = pts.front().second;
  for (const auto& [x, y] : pts) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  constexpr double w = 640, h = 420, ml = 70, mr = 20, mt = 20, mb = 50;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  const auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
      << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_name
      << (logx ? " (log10)" : "") << "</text>\n";
  out << "  <text x=\"16\" y=\"" << (mt + h - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (mt + h - mb) / 2 << ")\">" << y_name << "</text>\n";
  for (const double frac : {0.0, 0.5, 1.0}) {
    const double xv = xmin + frac * (xmax - xmin);
    const double yv = ymin + frac * (ymax - ymin);
    out << "  <text x=\"" << px(xv) << "\" y=\"" << h - mb + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(xv)
        << "</text>\n";
    out << "  <text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(yv)
        << "</text>\n";
  }
  out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) {
    out << px(x) << "," << py(y) << " ";
  }
  out << "\"/>\n";
  for (const auto& [x, y] : pts) {
    out << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
        << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string write_report(const json& report, const RunConfig& config) {
  std::string rendered;
  if (config.format == "json") {
    rendered = emit_json(report);
  } else if (config.format == "csv") {
    rendered = emit_csv(report);
  } else if (config.format == "svg") {
    rendered = emit_svg(report);
  } else {
    throw std::invalid_argument("format must be json, csv or svg");
  }

  if (config.output_path.empty()) {
    std::fputs(rendered.c_str(), stdout);
    return {};
  }
  std::filesystem::path path(config.output_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open output file '" + path.string() + "'");
  }
  out << rendered;
  if (!out) {
    throw std::ios_base::failure("write failed for '" + path.string() + "'");
  }
  return path.string();
}

bool check_report(const std::string& json_text, std::string* diagnostic) {
  json stored;
  try {
    stored = json::parse(json_text);
  } catch (const std::exception& e) {
    if (diagnostic) *diagnostic = std::string("parse error: ") + e.what();
    return false;
  }
  RunConfig config;
  try {
    config.scenario = stored.at("scenario").get<std::string>();
    for (const auto& [key, value] : stored.at("config").items()) {
      config.params[key] = value.get<std::string>();
    }
  } catch (const std::exception& e) {
    if (diagnostic) *diagnostic = std::string("malformed report: ") + e.what();
    return false;
  }
  const json recomputed = run_scenario(config);
  if (recomputed.at("results") != stored.at("results") ||
      recomputed.at("derived") != stored.at("derived")) {
    if (diagnostic) *diagnostic = "recomputed results differ from stored results";
    return false;
  }
  return true;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) {
    throw std::invalid_argument("empty grid specification");
  }
  const auto colon1 = spec.find(':');
  if (colon1 == std::string::npos) {
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      values.push_back(to_double("grid", item));
    }
    if (values.empty()) {
      throw std::invalid_argument("empty grid list '" + spec + "'");
    }
    return values;
  }
  const auto colon2 = spec.find(':', colon1 + 1);
  if (colon2 == std::string::npos) {
    throw std::invalid_argument("grid '" + spec + "' must be min:max:logN or min:max:linN");
  }
  const double lo = to_double("grid min", spec.substr(0, colon1));
  const double hi = to_double("grid max", spec.substr(colon1 + 1, colon2 - colon1 - 1));
  const std::string scale = spec.substr(colon2 + 1);
  bool log_scale;
  std::string count_str;
  if (scale.rfind("log", 0) == 0) {
    log_scale = true;
    count_str = scale.substr(3);
  } else if (scale.rfind("lin", 0) == 0) {
    log_scale = false;
    count_str = scale.substr(3);
  } else {
    throw std::invalid_argument("grid scale must start with 'log' or 'lin'");
  }
  const auto n = to_u64("grid count", count_str);
  if (n < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  if (log_scale && (lo <= 0.0 || hi <= 0.0)) {
    throw std::invalid_argument("log grid endpoints must be positive");
  }
  std::vector<double> values(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = log_scale ? std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo)))
                          : lo + f * (hi - lo);
  }
  return values;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open config file '" + path + "'");
  }
  const auto trim = [](std::string s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    const auto end = s.find_last_not_of(" \t\r\n");
    return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
  };
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                  ": empty key or value");
    }
    out[key] = value;
  }
  return out;
}

}  // namespace gsteer::io
