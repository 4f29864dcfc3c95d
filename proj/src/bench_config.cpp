// Copyright 2026 The qgsa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "bench_internal.hpp"
#include "qgsa/bench.hpp"

namespace qgsa::bench {

using nlohmann::json;

std::string optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kQgsaIdeal: return "qgsa_ideal";
    case OptimizerKind::kQgsaPractical: return "qgsa_practical";
    case OptimizerKind::kGradientDescent: return "gd";
    case OptimizerKind::kCoordinateDescent: return "rcd";
    case OptimizerKind::kSpsa: return "spsa";
  }
  return "unknown";
}

OptimizerKind optimizer_from_name(const std::string& name) {
  if (name == "qgsa_ideal") return OptimizerKind::kQgsaIdeal;
  if (name == "qgsa_practical") return OptimizerKind::kQgsaPractical;
  if (name == "gd") return OptimizerKind::kGradientDescent;
  if (name == "rcd") return OptimizerKind::kCoordinateDescent;
  if (name == "spsa") return OptimizerKind::kSpsa;
  throw std::runtime_error("unknown optimizer '" + name +
                           "' (expected qgsa_ideal, qgsa_practical, gd, rcd or spsa)");
}

std::string loss_name(LossKind kind) {
  return kind == LossKind::kQuantumHinge ? "qh" : "mse";
}

LossKind loss_from_name(const std::string& name) {
  if (name == "qh") return LossKind::kQuantumHinge;
  if (name == "mse") return LossKind::kMse;
  throw std::runtime_error("unknown loss '" + name + "' (expected qh or mse)");
}

namespace {

void check_keys(const json& object, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end()) {
      throw std::runtime_error("unknown key '" + key + "' in " + where);
    }
  }
}

double require_positive(const json& object, const char* key, double fallback,
                        const std::string& where) {
  if (!object.contains(key)) {
    return fallback;
  }
  const double value = object.at(key).get<double>();
  if (!(value > 0.0)) {
    throw std::runtime_error(std::string(key) + " must be positive in " + where);
  }
  return value;
}

DatasetSpec parse_dataset(const json& object) {
  check_keys(object, {"type", "path", "classes", "n_per_class", "d", "seed"}, "dataset");
  DatasetSpec spec;
  const std::string type = object.at("type").get<std::string>();
  if (type == "iris") {
    spec.type = DatasetSpec::Type::kIris;
    spec.path = object.at("path").get<std::string>();
    if (object.contains("classes")) {
      const auto classes = object.at("classes");
      if (!classes.is_array() || classes.size() != 2) {
        throw std::runtime_error("dataset.classes must list exactly two class names");
      }
      spec.class_pos = classes.at(0).get<std::string>();
      spec.class_neg = classes.at(1).get<std::string>();
    }
  } else if (type == "feature_csv") {
    spec.type = DatasetSpec::Type::kFeatureCsv;
    spec.path = object.at("path").get<std::string>();
  } else if (type == "synthetic") {
    spec.type = DatasetSpec::Type::kSynthetic;
    spec.n_per_class = object.value("n_per_class", std::uint64_t{100});
    spec.d = object.value("d", std::uint64_t{4});
    spec.seed = object.value("seed", std::uint64_t{7});
    if (spec.n_per_class == 0) {
      throw std::runtime_error("dataset.n_per_class must be positive");
    }
  } else {
    throw std::runtime_error("unknown dataset type '" + type +
                             "' (expected iris, feature_csv or synthetic)");
  }
  return spec;
}

void parse_hyperparameters(const json& object, RunConfig& config) {
  check_keys(object,
             {"alpha", "gamma", "a", "lipschitz", "distribution", "floor", "max_resamples",
              "reuse_mu", "spsa"},
             "hyperparameters");
  config.run.alpha0 = require_positive(object, "alpha", config.run.alpha0, "hyperparameters");
  if (object.contains("gamma")) {
    config.run.qgsa.gamma = object.at("gamma").get<double>();
    if (config.run.qgsa.gamma < 0.0) {
      throw std::runtime_error("gamma must be non-negative");
    }
  }
  if (object.contains("a")) {
    config.run.qgsa.a = object.at("a").get<double>();
    if (!(config.run.qgsa.a > 1.0)) {
      throw std::runtime_error("the step-size divisor a must exceed 1");
    }
  }
  if (object.contains("lipschitz")) {
    config.run.qgsa.lipschitz = object.at("lipschitz").get<double>();
    if (config.run.qgsa.lipschitz < 0.0) {
      throw std::runtime_error("lipschitz must be non-negative (0 = default bound)");
    }
  }
  if (object.contains("distribution")) {
    const std::string name = object.at("distribution").get<std::string>();
    if (name == "uniform") {
      config.run.qgsa.distribution = DirectionDistribution::kUniform;
    } else if (name == "truncated_gaussian") {
      config.run.qgsa.distribution = DirectionDistribution::kTruncatedGaussian;
    } else {
      throw std::runtime_error("unknown distribution '" + name + "'");
    }
  }
  if (object.contains("floor")) {
    config.run.qgsa.floor = object.at("floor").get<double>();
    if (config.run.qgsa.floor < 0.0) {
      throw std::runtime_error("floor must be non-negative");
    }
  }
  if (object.contains("max_resamples")) {
    config.run.qgsa.max_resamples = object.at("max_resamples").get<int>();
    if (config.run.qgsa.max_resamples < 0) {
      throw std::runtime_error("max_resamples must be non-negative");
    }
  }
  if (object.contains("reuse_mu")) {
    config.run.qgsa.reuse_mu = object.at("reuse_mu").get<bool>();
  }
  if (object.contains("spsa")) {
    const json& spsa = object.at("spsa");
    check_keys(spsa, {"a", "alpha_exp", "c", "gamma_exp", "A"}, "hyperparameters.spsa");
    config.run.spsa.a = require_positive(spsa, "a", config.run.spsa.a, "spsa");
    config.run.spsa.alpha_exp =
        require_positive(spsa, "alpha_exp", config.run.spsa.alpha_exp, "spsa");
    config.run.spsa.c = require_positive(spsa, "c", config.run.spsa.c, "spsa");
    config.run.spsa.gamma_exp =
        require_positive(spsa, "gamma_exp", config.run.spsa.gamma_exp, "spsa");
    if (spsa.contains("A")) {
      config.run.spsa.stability = spsa.at("A").get<double>();
      if (config.run.spsa.stability < 0.0) {
        throw std::runtime_error("the SPSA stability constant A must be non-negative");
      }
    }
  }
}

void parse_evaluator(const json& object, RunConfig& config) {
  check_keys(object, {"mode", "n_mu", "n_g", "epsilon", "delta"}, "evaluator");
  const std::string mode = object.at("mode").get<std::string>();
  if (mode == "exact") {
    config.run.eval.sampled = false;
  } else if (mode == "sampled") {
    config.run.eval.sampled = true;
  } else {
    throw std::runtime_error("evaluator.mode must be exact or sampled");
  }
  if (object.contains("epsilon") || object.contains("delta")) {
    if (!object.contains("epsilon") || !object.contains("delta")) {
      throw std::runtime_error("evaluator epsilon and delta must come together");
    }
    const std::uint64_t n =
        shots_for_precision(object.at("epsilon").get<double>(), object.at("delta").get<double>());
    config.run.eval.n_mu = n;
    config.run.eval.n_g = n;
  }
  if (object.contains("n_mu")) {
    config.run.eval.n_mu = object.at("n_mu").get<std::uint64_t>();
  }
  if (object.contains("n_g")) {
    config.run.eval.n_g = object.at("n_g").get<std::uint64_t>();
  }
  if (config.run.eval.sampled && (config.run.eval.n_mu == 0 || config.run.eval.n_g == 0)) {
    throw std::runtime_error("sampled evaluation needs positive shot counts");
  }
}

void parse_termination(const json& object, RunConfig& config) {
  check_keys(object, {"stall_limit", "alpha_floor", "grad_epsilon"}, "termination");
  if (object.contains("stall_limit")) {
    config.run.termination.stall_limit = object.at("stall_limit").get<std::uint64_t>();
  }
  if (object.contains("alpha_floor")) {
    config.run.termination.alpha_floor = object.at("alpha_floor").get<double>();
    if (config.run.termination.alpha_floor < 0.0) {
      throw std::runtime_error("alpha_floor must be non-negative");
    }
  }
  if (object.contains("grad_epsilon")) {
    config.run.termination.grad_epsilon = object.at("grad_epsilon").get<double>();
    if (config.run.termination.grad_epsilon < 0.0) {
      throw std::runtime_error("grad_epsilon must be non-negative");
    }
  }
}

void parse_pricing(const json& value, RunConfig& config) {
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    const auto profile = find_profile(name);
    if (!profile) {
      throw std::runtime_error("unknown pricing profile '" + name +
                               "'; use a builtin name or a {file, name} object");
    }
    config.pricing = *profile;
    return;
  }
  check_keys(value, {"file", "name"}, "pricing_profile");
  const std::filesystem::path file = value.at("file").get<std::string>();
  const std::string name = value.at("name").get<std::string>();
  for (const PricingProfile& profile : load_profiles(file)) {
    if (profile.name == name) {
      config.pricing = profile;
      return;
    }
  }
  throw std::runtime_error("pricing profile '" + name + "' not found in " + file.string());
}

}  // namespace

namespace {

RunConfig parse_config(const json& doc);

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
}

namespace {

RunConfig parse_config(const json& doc) {
  check_keys(doc,
             {"name", "dataset", "layers", "loss", "risk", "optimizer", "hyperparameters",
              "iterations", "seeds", "init_seed", "evaluator", "pricing_profile", "termination",
              "track_mu"},
             "config");

  RunConfig config;
  config.pricing = builtin_profiles().front();
  config.name = doc.at("name").get<std::string>();
  if (config.name.empty() ||
      !std::all_of(config.name.begin(), config.name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
      })) {
    throw std::runtime_error("config name must be nonempty and use [A-Za-z0-9_-] only");
  }
  config.dataset = parse_dataset(doc.at("dataset"));
  config.layers = doc.value("layers", 3);
  if (config.layers < 1) {
    throw std::runtime_error("layers must be positive");
  }
  if (doc.contains("loss")) {
    config.loss = loss_from_name(doc.at("loss").get<std::string>());
  }
  if (doc.contains("risk")) {
    const std::string risk = doc.at("risk").get<std::string>();
    if (risk == "sum") {
      config.mean_risk = false;
    } else if (risk == "mean") {
      config.mean_risk = true;
    } else {
      throw std::runtime_error("risk must be sum or mean");
    }
  }
  config.run.optimizer = optimizer_from_name(doc.at("optimizer").get<std::string>());
  if (doc.contains("hyperparameters")) {
    parse_hyperparameters(doc.at("hyperparameters"), config);
  }
  config.run.iterations = doc.at("iterations").get<std::uint64_t>();
  const auto& seeds = doc.at("seeds");
  if (!seeds.is_array() || seeds.empty()) {
    throw std::runtime_error("seeds must be a nonempty array");
  }
  for (const auto& seed : seeds) {
    config.seeds.push_back(seed.get<std::uint64_t>());
  }
  config.init_seed = doc.value("init_seed", std::uint64_t{1});
  if (doc.contains("evaluator")) {
    parse_evaluator(doc.at("evaluator"), config);
  }
  if (doc.contains("pricing_profile")) {
    parse_pricing(doc.at("pricing_profile"), config);
  }
  if (doc.contains("termination")) {
    parse_termination(doc.at("termination"), config);
  }
  config.run.track_mu = doc.value("track_mu", false);
  return config;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return from_json_text(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

BenchProblem make_problem(const RunConfig& config) {
  Dataset data = [&] {
    switch (config.dataset.type) {
      case DatasetSpec::Type::kIris:
        return load_iris(config.dataset.path, config.dataset.class_pos,
                         config.dataset.class_neg);
      case DatasetSpec::Type::kFeatureCsv:
        return load_feature_csv(config.dataset.path);
      case DatasetSpec::Type::kSynthetic:
      default:
        return synth_crack(config.dataset.n_per_class, config.dataset.d, config.dataset.seed);
    }
  }();
  BenchProblem result;
  result.dataset_name = data.name();
  result.n_examples = data.size();
  ClassifierModel model = build_model(static_cast<int>(data.feature_count()), config.layers);
  result.param_count = static_cast<std::size_t>(model.param_count());
  result.problem = std::make_unique<ClassificationProblem>(std::move(model), std::move(data),
                                                           config.loss, config.mean_risk);
  return result;
}

std::vector<double> initial_theta(std::size_t param_count, std::uint64_t init_seed) {
  Rng rng(init_seed);
  std::vector<double> theta(param_count, 0.0);
  for (double& value : theta) {
    value = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return theta;
}

}  // namespace qgsa::bench
