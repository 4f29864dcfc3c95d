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

#include "qgsa/observable.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace qgsa {

namespace {

bool valid_letters(const std::string& letters) {
  return std::all_of(letters.begin(), letters.end(), [](char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
  });
}

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// Replaces the UTF-8 minus sign (U+2212) with '-' and strips whitespace.
std::string canonicalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
      continue;
    }
    if (!std::isspace(c)) {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

}  // namespace

Observable::Observable(int n_qubits, std::vector<PauliTerm> terms, double c_star)
    : n_qubits_(n_qubits), c_star_(c_star) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("observable qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (terms.empty()) {
    throw std::invalid_argument("observable requires at least one term");
  }
  if (c_star < 0.0) {
    throw std::invalid_argument("c_star must be non-negative");
  }
  // Merge duplicate letter strings, keeping first-seen order.
  std::map<std::string, std::size_t> seen;
  for (PauliTerm& term : terms) {
    if (term.letters.size() != static_cast<std::size_t>(n_qubits)) {
      throw std::invalid_argument("term '" + term.letters + "' does not act on " +
                                  std::to_string(n_qubits) + " qubits");
    }
    if (!valid_letters(term.letters)) {
      throw std::invalid_argument("term '" + term.letters + "' contains an invalid letter");
    }
    const auto [it, inserted] = seen.emplace(term.letters, terms_.size());
    if (inserted) {
      terms_.push_back(std::move(term));
    } else {
      terms_[it->second].coefficient += term.coefficient;
    }
  }
}

Observable Observable::parse(std::string_view text) {
  const std::string body = canonicalize(text);
  if (body.empty()) {
    throw std::runtime_error("empty observable text");
  }
  std::vector<PauliTerm> terms;
  std::size_t pos = 0;
  double sign = 1.0;
  if (body[pos] == '+' || body[pos] == '-') {
    sign = body[pos] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  while (pos < body.size()) {
    errno = 0;
    char* end = nullptr;
    const double magnitude = std::strtod(body.c_str() + pos, &end);
    if (end == body.c_str() + pos || errno == ERANGE || !std::isfinite(magnitude)) {
      throw std::runtime_error("expected a coefficient at '" + body.substr(pos) + "'");
    }
    pos = static_cast<std::size_t>(end - body.c_str());
    if (pos >= body.size() || body[pos] != '*') {
      throw std::runtime_error("expected '*' after the coefficient in '" + body + "'");
    }
    ++pos;
    std::size_t letters_end = pos;
    while (letters_end < body.size() && body[letters_end] != '+' && body[letters_end] != '-') {
      ++letters_end;
    }
    std::string letters = body.substr(pos, letters_end - pos);
    if (letters.empty() || !valid_letters(letters)) {
      throw std::runtime_error("expected Pauli letters after '*' in '" + body + "'");
    }
    terms.push_back({sign * magnitude, std::move(letters)});
    pos = letters_end;
    if (pos < body.size()) {
      sign = body[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
  }
  if (terms.empty()) {
    throw std::runtime_error("no terms in observable text");
  }
  const std::size_t width = terms.front().letters.size();
  for (const PauliTerm& term : terms) {
    if (term.letters.size() != width) {
      throw std::runtime_error("terms act on differing qubit counts");
    }
  }
  return Observable(static_cast<int>(width), std::move(terms));
}

std::string Observable::format() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double c = terms_[i].coefficient;
    if (i == 0) {
      out += format_double(c);
    } else {
      out += c < 0.0 ? " - " : " + ";
      out += format_double(std::abs(c));
    }
    out += "*";
    out += terms_[i].letters;
  }
  return out;
}

double Observable::coeff_abs_sum() const {
  double total = 0.0;
  for (const PauliTerm& term : terms_) {
    total += std::abs(term.coefficient);
  }
  return total;
}

double Observable::max_abs_coeff() const {
  double best = 0.0;
  for (const PauliTerm& term : terms_) {
    best = std::max(best, std::abs(term.coefficient));
  }
  return best;
}

Observable normalize(const Observable& obs) {
  const double divisor = obs.max_abs_coeff();
  if (divisor == 0.0) {
    throw std::invalid_argument("cannot normalize an all-zero observable");
  }
  std::vector<PauliTerm> scaled = obs.terms();
  for (PauliTerm& term : scaled) {
    term.coefficient /= divisor;
  }
  // The divisor accumulates so that normalizing twice records the same
  // overall scaling as normalizing once.
  return Observable(obs.n_qubits(), std::move(scaled), obs.c_star() * divisor);
}

double expval(const Observable& obs, const StateVector& state) {
  if (obs.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("observable and state qubit counts differ");
  }
  double total = 0.0;
  for (const PauliTerm& term : obs.terms()) {
    total += term.coefficient * expval_pauli(state, term.letters);
  }
  return total;
}

SampledExpval sample_expval_obs(const Observable& obs, const StateVector& state,
                                std::uint64_t shots_per_term, Rng& rng) {
  if (obs.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("observable and state qubit counts differ");
  }
  SampledExpval result;
  for (const PauliTerm& term : obs.terms()) {
    result.estimate += term.coefficient * sample_expval(state, term.letters, shots_per_term, rng);
    ++result.terms_executed;
  }
  return result;
}

}  // namespace qgsa
