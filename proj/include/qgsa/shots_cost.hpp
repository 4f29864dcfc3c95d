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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgsa {

/// Circuit/shot delta produced by one operation, before it is folded into a
/// ledger.
struct LedgerDelta {
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;

  LedgerDelta& operator+=(const LedgerDelta& other) {
    circuits += other.circuits;
    shots += other.shots;
    return *this;
  }
};

/// Exact count of circuits executed and shots fired. Totals always equal the
/// sum of the recorded event deltas and never decrease.
class ExecutionLedger {
 public:
  struct Event {
    std::string label;
    std::uint64_t circuits = 0;
    std::uint64_t shots = 0;
  };

  void record(std::string_view label, std::uint64_t circuits, std::uint64_t shots);
  void record(std::string_view label, const LedgerDelta& delta) {
    record(label, delta.circuits, delta.shots);
  }

  /// Associative fold of another ledger's events into this one.
  void merge(const ExecutionLedger& other);

  std::uint64_t circuits() const { return circuits_; }
  std::uint64_t shots() const { return shots_; }
  const std::vector<Event>& events() const { return events_; }

 private:
  std::uint64_t circuits_ = 0;
  std::uint64_t shots_ = 0;
  std::vector<Event> events_;
};

/// Hoeffding count for estimating an expectation to precision epsilon with
/// confidence 1 - delta: ceil(ln(2/delta) / (2 epsilon^2)) at the default
/// outcome range 2 (values in [-1, 1]); other ranges scale by (range/2)^2.
std::uint64_t shots_for_precision(double epsilon, double delta, double range = 2.0);

/// Same bound with the precision set to the objective gap between the two
/// points being compared. The gap must be nonzero.
std::uint64_t shots_for_descent(double gap, double delta, double range = 2.0);

struct PricingProfile {
  std::string name;
  double per_circuit = 0.0;  // USD
  double per_shot = 0.0;     // USD
};

/// circuits * per_circuit + shots * per_shot, in USD.
double cost(const ExecutionLedger& ledger, const PricingProfile& profile);

/// The four published tariff rows.
const std::vector<PricingProfile>& builtin_profiles();

/// Builtin profile by exact name, or nullopt (caller supplies a custom one).
std::optional<PricingProfile> find_profile(std::string_view name);

/// Loads a JSON array of {"name", "per_circuit", "per_shot"} objects.
std::vector<PricingProfile> load_profiles(const std::filesystem::path& path);

}  // namespace qgsa
