/*
 * Copyright 2026 The Fairlens Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairlens/synth/generator.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairlens/core/error.h"
#include "fairlens/core/io.h"
#include "fairlens/core/rng.h"

namespace fairlens::synth {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double draw(const FeatureSpec& f, Rng& rng) {
  switch (f.family) {
    case Distribution::kUniform:
      return rng.uniform(f.a, f.b);
    case Distribution::kLognormal:
      return std::exp(f.a + f.b * rng.normal());
    case Distribution::kBeta:
      return rng.beta(f.a, f.b);
  }
  return 0.0;
}

double standardise(const FeatureSpec& f, double x) {
  switch (f.family) {
    case Distribution::kUniform:
      return (x - (f.a + f.b) / 2.0) / ((f.b - f.a) / std::sqrt(12.0));
    case Distribution::kLognormal:
      return (std::log(x) - f.a) / f.b;
    case Distribution::kBeta: {
      const double s = f.a + f.b;
      const double mean = f.a / s;
      const double sd = std::sqrt(f.a * f.b / (s * s * (s + 1.0)));
      return (x - mean) / sd;
    }
  }
  return 0.0;
}

// Intercept b with mean_i [eta + (1 - 2 eta) sigmoid(b + s_i)] = target.
double solve_intercept(const std::vector<double>& slopes, double eta,
                       double target) {
  const auto rate = [&](double b) {
    double total = 0.0;
    for (const double s : slopes) total += sigmoid(b + s);
    return eta + (1.0 - 2.0 * eta) * total / static_cast<double>(slopes.size());
  };
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kLognormal:
      return "lognormal";
    case Distribution::kBeta:
      return "beta";
  }
  return "?";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "lognormal") return Distribution::kLognormal;
  if (name == "beta") return Distribution::kBeta;
  throw Error("unknown distribution '" + std::string(name) + "'");
}

void SynthConfig::validate() const {
  if (n_rows < 1) throw Error("n_rows must be at least 1");
  if (features.empty()) throw Error("at least one feature is required");
  if (groups.empty()) throw Error("at least one group is required");
  std::vector<std::string> feature_names;
  for (const auto& f : features) {
    feature_names.push_back(f.name);
    if (!std::isfinite(f.a) || !std::isfinite(f.b) || !std::isfinite(f.weight)) {
      throw Error("feature '" + f.name + "' has non-finite parameters");
    }
    switch (f.family) {
      case Distribution::kUniform:
        if (!(f.a < f.b)) throw Error("uniform feature '" + f.name + "' needs lo < hi");
        break;
      case Distribution::kLognormal:
        if (!(f.b > 0.0)) throw Error("lognormal feature '" + f.name + "' needs sigma > 0");
        break;
      case Distribution::kBeta:
        if (!(f.a > 0.0 && f.b > 0.0)) {
          throw Error("beta feature '" + f.name + "' needs alpha, beta > 0");
        }
        break;
    }
  }
  if (std::find(feature_names.begin(), feature_names.end(), label_column) !=
          feature_names.end() ||
      std::find(feature_names.begin(), feature_names.end(), group_column) !=
          feature_names.end() ||
      label_column == group_column) {
    throw Error("label, group and feature column names must be distinct");
  }
  double total = 0.0;
  std::vector<std::string> names;
  for (const auto& g : groups) {
    names.push_back(g.name);
    if (!(g.proportion >= 0.0)) throw Error("group proportions must be >= 0");
    total += g.proportion;
    if (!(g.noise_rate >= 0.0 && g.noise_rate < 0.5)) {
      throw Error("noise rate for group '" + g.name + "' must lie in [0, 0.5)");
    }
    for (const auto& [feature, shift] : g.coefficient_shift) {
      if (std::find(feature_names.begin(), feature_names.end(), feature) ==
          feature_names.end()) {
        throw Error("coefficient shift names unknown feature '" + feature + "'");
      }
      if (!std::isfinite(shift)) throw Error("coefficient shifts must be finite");
    }
    if (g.outcome_target &&
        !(*g.outcome_target > g.noise_rate &&
          *g.outcome_target < 1.0 - g.noise_rate)) {
      throw Error("outcome target for group '" + g.name +
                  "' is unreachable with its noise rate");
    }
  }
  if (std::fabs(total - 1.0) > 1e-9) throw Error("group proportions must sum to 1");
  CategorySet(names, unspecified);  // validates names and the unspecified entry
}

CsvSchema SynthConfig::schema() const {
  CsvSchema s;
  s.label_column = label_column;
  s.group_column = group_column;
  for (const auto& g : groups) s.categories.push_back(g.name);
  s.unspecified = unspecified;
  return s;
}

SynthResult generate(const SynthConfig& config) {
  config.validate();
  const size_t n = config.n_rows;
  const size_t p = config.features.size();
  const size_t num_groups = config.groups.size();

  // Exact quotas by largest remainder, then shuffled.
  std::vector<size_t> quota(num_groups);
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t g = 0; g < num_groups; ++g) {
    const double exact = config.groups[g].proportion * static_cast<double>(n);
    quota[g] = static_cast<size_t>(std::floor(exact));
    assigned += quota[g];
    remainders.emplace_back(-(exact - std::floor(exact)), g);
  }
  std::sort(remainders.begin(), remainders.end());
  for (size_t i = 0; assigned < n; ++i, ++assigned) {
    ++quota[remainders[i % num_groups].second];
  }
  std::vector<GroupCode> codes;
  codes.reserve(n);
  for (size_t g = 0; g < num_groups; ++g) {
    codes.insert(codes.end(), quota[g], static_cast<GroupCode>(g));
  }
  Rng group_rng(derive_seed(config.seed, "synth-groups"));
  group_rng.shuffle(std::span<GroupCode>(codes));

  std::vector<double> values(n * p);
  Rng feature_rng(derive_seed(config.seed, "synth-features"));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < p; ++j) {
      values[i * p + j] = draw(config.features[j], feature_rng);
    }
  }

  // Per-row linear score without the intercept.
  std::vector<double> slope(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const GroupSpec& g = config.groups[codes[i]];
    for (size_t j = 0; j < p; ++j) {
      const FeatureSpec& f = config.features[j];
      double w = f.weight;
      if (auto it = g.coefficient_shift.find(f.name); it != g.coefficient_shift.end()) {
        w += it->second;
      }
      if (w != 0.0) slope[i] += w * standardise(f, values[i * p + j]);
    }
  }

  GroundTruth truth;
  truth.group_intercepts.assign(num_groups, config.intercept);
  for (size_t g = 0; g < num_groups; ++g) {
    const GroupSpec& spec = config.groups[g];
    if (!spec.outcome_target) continue;
    std::vector<double> member_slopes;
    for (size_t i = 0; i < n; ++i) {
      if (codes[i] == g) member_slopes.push_back(slope[i]);
    }
    if (member_slopes.empty()) continue;
    truth.group_intercepts[g] =
        solve_intercept(member_slopes, spec.noise_rate, *spec.outcome_target);
  }

  std::vector<uint8_t> labels(n);
  truth.true_probability.resize(n);
  truth.noise_flipped.resize(n);
  truth.groups = codes;
  Rng label_rng(derive_seed(config.seed, "synth-labels"));
  for (size_t i = 0; i < n; ++i) {
    const GroupSpec& g = config.groups[codes[i]];
    const double prob = sigmoid(truth.group_intercepts[codes[i]] + slope[i]);
    truth.true_probability[i] = prob;
    uint8_t y = label_rng.uniform() < prob ? 1 : 0;
    const bool flip = label_rng.uniform() < g.noise_rate;
    if (flip) y = 1 - y;
    labels[i] = y;
    truth.noise_flipped[i] = flip ? 1 : 0;
  }

  std::vector<std::string> feature_names;
  for (const auto& f : config.features) feature_names.push_back(f.name);
  std::vector<std::string> group_names;
  for (const auto& g : config.groups) group_names.push_back(g.name);
  GroupColumn column{config.group_column,
                     CategorySet(group_names, config.unspecified), codes};
  return SynthResult{TabularDataset(std::move(feature_names), std::move(values),
                                    std::move(labels), std::move(column)),
                     std::move(truth)};
}

namespace {

std::vector<FeatureSpec> behavioural_features(double scale) {
  return {
      {"night_play_share", Distribution::kBeta, 2.0, 5.0, 0.9 * scale},
      {"deposit_frequency", Distribution::kLognormal, 1.5, 0.7, 1.1 * scale},
      {"bet_volatility", Distribution::kLognormal, 0.0, 0.6, 0.5 * scale},
      {"stake_intensity", Distribution::kLognormal, 2.0, 0.8, 0.9 * scale},
      {"withdrawal_reversal_rate", Distribution::kBeta, 1.2, 6.0, 0.7 * scale},
  };
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"operator1-like", "operator2-like", "null"};
}

SynthConfig preset(std::string_view name) {
  SynthConfig c;
  c.unspecified = "U";
  if (name == "operator1-like") {
    c.n_rows = 4340;
    c.features = behavioural_features(1.5);
    c.groups = {{"F", 0.206, 0.0, {}, 0.204},
                {"M", 0.326, 0.0, {}, 0.244},
                {"U", 0.468, 0.0, {}, 0.168}};
    return c;
  }
  if (name == "operator2-like") {
    c.n_rows = 18275;
    c.features = behavioural_features(1.5);
    // Planted bias: M risk is driven by bet volatility rather than deposits,
    // and M labels carry extra noise.
    c.groups = {{"F", 0.365, 0.0, {}, 0.171},
                {"M", 0.104, 0.05,
                 {{"bet_volatility", 2.5}, {"deposit_frequency", -2.0}}, 0.187},
                {"U", 0.531, 0.0, {}, 0.223}};
    return c;
  }
  if (name == "null") {
    // One shared intercept and a single dominant feature: labels are close
    // to a threshold rule that a group-blind model learns equally well for
    // every group.
    c.n_rows = 20000;
    c.features = behavioural_features(0.0);
    for (auto& f : c.features) f.weight = 0.3;
    c.features[1].weight = 15.0;
    c.groups = {{"F", 0.4, 0.0, {}, std::nullopt},
                {"M", 0.4, 0.0, {}, std::nullopt},
                {"U", 0.2, 0.0, {}, std::nullopt}};
    return c;
  }
  throw Error("unknown preset '" + std::string(name) + "'");
}

std::string ground_truth_to_csv(const SynthResult& result,
                                const SynthConfig& config) {
  std::string out = "row,true_probability," + csv_escape(config.group_column) +
                    ",noise_flipped\n";
  const auto& t = result.truth;
  for (size_t i = 0; i < t.true_probability.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(t.true_probability[i], 17) +
           ',' + csv_escape(config.groups[t.groups[i]].name) + ',' +
           (t.noise_flipped[i] ? '1' : '0') + '\n';
  }
  return out;
}

Json synth_config_to_json(const SynthConfig& config) {
  Json features = Json::array();
  for (const auto& f : config.features) {
    features.push_back(Json{{"name", f.name},
                            {"distribution", distribution_name(f.family)},
                            {"params", {f.a, f.b}},
                            {"weight", f.weight}});
  }
  Json groups = Json::array();
  for (const auto& g : config.groups) {
    Json j{{"name", g.name},
           {"proportion", g.proportion},
           {"noise_rate", g.noise_rate},
           {"coefficient_shift", g.coefficient_shift}};
    if (g.outcome_target) j["outcome_target"] = *g.outcome_target;
    groups.push_back(std::move(j));
  }
  return Json{{"n_rows", config.n_rows},
              {"features", std::move(features)},
              {"groups", std::move(groups)},
              {"unspecified", config.unspecified},
              {"group_column", config.group_column},
              {"label_column", config.label_column},
              {"intercept", config.intercept}};
}

SynthConfig synth_config_from_json(const Json& value,
                                   const std::string& pointer) {
  StrictObject obj(value, pointer);
  SynthConfig c;
  if (obj.has("preset")) {
    try {
      c = preset(obj.string("preset"));
    } catch (const JsonSchemaError&) {
      throw;
    } catch (const Error& e) {
      throw JsonSchemaError(obj.child_pointer("preset"), e.what());
    }
  } else {
    obj.maybe("preset");
  }
  if (obj.has("n_rows")) c.n_rows = obj.unsigned_integer("n_rows");
  if (obj.has("unspecified")) c.unspecified = obj.string("unspecified");
  if (obj.has("group_column")) c.group_column = obj.string("group_column");
  if (obj.has("label_column")) c.label_column = obj.string("label_column");
  if (obj.has("intercept")) c.intercept = obj.number("intercept");
  if (obj.has("features")) {
    c.features.clear();
    const std::string fp = obj.child_pointer("features");
    const Json& arr = json_array(obj.at("features"), fp);
    for (size_t i = 0; i < arr.size(); ++i) {
      StrictObject f(arr[i], json_pointer_append(fp, std::to_string(i)));
      FeatureSpec spec;
      spec.name = f.string("name");
      try {
        spec.family = parse_distribution(f.string("distribution"));
      } catch (const JsonSchemaError&) {
        throw;
      } catch (const Error& e) {
        throw JsonSchemaError(f.child_pointer("distribution"), e.what());
      }
      const Json& params = json_array(f.at("params"), f.child_pointer("params"));
      if (params.size() != 2) {
        throw JsonSchemaError(f.child_pointer("params"), "expected two numbers");
      }
      spec.a = json_number(params[0], f.child_pointer("params") + "/0");
      spec.b = json_number(params[1], f.child_pointer("params") + "/1");
      if (f.has("weight")) spec.weight = f.number("weight");
      f.finish();
      c.features.push_back(std::move(spec));
    }
  }
  if (obj.has("groups")) {
    c.groups.clear();
    const std::string gp = obj.child_pointer("groups");
    const Json& arr = json_array(obj.at("groups"), gp);
    for (size_t i = 0; i < arr.size(); ++i) {
      StrictObject g(arr[i], json_pointer_append(gp, std::to_string(i)));
      GroupSpec spec;
      spec.name = g.string("name");
      spec.proportion = g.number("proportion");
      if (g.has("noise_rate")) spec.noise_rate = g.number("noise_rate");
      if (const Json* shifts = g.maybe("coefficient_shift")) {
        StrictObject s(*shifts, g.child_pointer("coefficient_shift"));
        for (const auto& [k, unused] : shifts->items()) {
          spec.coefficient_shift[k] = s.number(k);
        }
        s.finish();
      }
      if (g.has("outcome_target")) spec.outcome_target = g.number("outcome_target");
      g.finish();
      c.groups.push_back(std::move(spec));
    }
  }
  obj.finish();
  try {
    c.validate();
  } catch (const JsonSchemaError&) {
    throw;
  } catch (const Error& e) {
    throw JsonSchemaError(pointer.empty() ? "/" : pointer, e.what());
  }
  return c;
}

}  // namespace fairlens::synth
