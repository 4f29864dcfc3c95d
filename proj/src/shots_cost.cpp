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

#include "qgsa/shots_cost.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qgsa {

void ExecutionLedger::record(std::string_view label, std::uint64_t circuits,
                             std::uint64_t shots) {
  events_.push_back({std::string(label), circuits, shots});
  circuits_ += circuits;
  shots_ += shots;
}

void ExecutionLedger::merge(const ExecutionLedger& other) {
  for (const Event& event : other.events()) {
    record(event.label, event.circuits, event.shots);
  }
}

namespace {

std::uint64_t hoeffding_count(double precision, double delta, double range, const char* what) {
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw std::invalid_argument("outcome range must be positive");
  }
  const double scale = (range / 2.0) * (range / 2.0);
  const double bound = scale * std::log(2.0 / delta) / (2.0 * precision * precision);
  // A hair of slack so values that are integers up to roundoff do not get
  // bumped to the next count.
  return static_cast<std::uint64_t>(std::ceil(bound * (1.0 - 1e-12)));
}

}  // namespace

std::uint64_t shots_for_precision(double epsilon, double delta, double range) {
  return hoeffding_count(epsilon, delta, range, "epsilon");
}

std::uint64_t shots_for_descent(double gap, double delta, double range) {
  if (gap == 0.0) {
    throw std::invalid_argument("objective gap must be nonzero");
  }
  return hoeffding_count(std::abs(gap), delta, range, "gap");
}

double cost(const ExecutionLedger& ledger, const PricingProfile& profile) {
  return static_cast<double>(ledger.circuits()) * profile.per_circuit +
         static_cast<double>(ledger.shots()) * profile.per_shot;
}

const std::vector<PricingProfile>& builtin_profiles() {
  static const std::vector<PricingProfile> profiles = {
      {"IonQ - Harmony", 0.3, 0.01},
      {"IonQ - Aria", 0.3, 0.03},
      {"OQC - Lucy", 0.3, 0.00035},
      {"Rigetti - Aspen-M", 0.3, 0.00035},
  };
  return profiles;
}

std::optional<PricingProfile> find_profile(std::string_view name) {
  for (const PricingProfile& profile : builtin_profiles()) {
    if (profile.name == name) {
      return profile;
    }
  }
  return std::nullopt;
}

std::vector<PricingProfile> load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open pricing file " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid pricing JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("pricing file must hold a JSON array");
  }
  std::vector<PricingProfile> profiles;
  for (const auto& entry : doc) {
    PricingProfile profile;
    try {
      profile.name = entry.at("name").get<std::string>();
      profile.per_circuit = entry.at("per_circuit").get<double>();
      profile.per_shot = entry.at("per_shot").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("invalid pricing entry: " + std::string(e.what()));
    }
    if (profile.per_circuit < 0.0 || profile.per_shot < 0.0) {
      throw std::runtime_error("prices must be non-negative in profile '" + profile.name + "'");
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

}  // namespace qgsa
