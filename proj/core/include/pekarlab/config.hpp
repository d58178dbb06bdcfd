// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pekarlab {

/// Malformed key=value input. `line` is 1-based; 0 when no line applies.
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(const std::string& msg, int line_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
        line(line_) {}
};

/// Requested state space exceeds the configured memory budget.
struct BudgetError : std::runtime_error {
  std::size_t dimension;
  BudgetError(const std::string& msg, std::size_t dim)
      : std::runtime_error(msg + " (hybrid dimension " + std::to_string(dim) + ")"),
        dimension(dim) {}
};

enum class CouplingForm { InverseK, Zero };

std::string to_string(CouplingForm f);
CouplingForm coupling_form_from_string(const std::string& s);

/// Discretization and physics parameters. All quantities are in
/// strong-coupling units; see units.hpp for conversions.
struct ModelConfig {
  int dim = 1;                // spatial dimension, 1 or 3
  double L = 6.283185307179586476925287;  // box side length
  int M = 8;                  // grid points per axis (even)
  int nmax = 2;               // max total phonon occupation
  double alpha = 2.0;         // coupling parameter, alpha >= alpha0
  double alpha0 = 1.0;        // lower bound entering uniform constants
  double lambda_cut = 0.0;    // A/B momentum split; 0 = auto (half grid radius)
  CouplingForm coupling_form = CouplingForm::InverseK;
  double prop_tol = 1e-10;    // propagator local tolerance, in (0, 1e-4]
  std::uint64_t seed = 1234;

  void validate() const;      // throws ConfigError on violated invariants

  // Flat key=value serialization; keys match field names exactly.
  std::string to_key_values() const;
  static ModelConfig from_key_values(const std::string& text);
};

/// One parsed key=value line.
struct KeyValue {
  std::string value;
  int line = 0;
};

using KeyValueMap = std::map<std::string, KeyValue>;

/// Parses "key = value" lines. '#' starts a comment; blank lines ignored.
/// Duplicate keys and lines without '=' are errors (with line numbers).
KeyValueMap parse_key_values(const std::string& text);

// Typed lookups. Key absent -> default; unparseable -> ConfigError.
double kv_get_double(const KeyValueMap& kv, const std::string& key, double def);
int kv_get_int(const KeyValueMap& kv, const std::string& key, int def);
std::uint64_t kv_get_u64(const KeyValueMap& kv, const std::string& key, std::uint64_t def);
std::string kv_get_string(const KeyValueMap& kv, const std::string& key, const std::string& def);
bool kv_get_bool(const KeyValueMap& kv, const std::string& key, bool def);
std::vector<double> kv_get_double_list(const KeyValueMap& kv, const std::string& key,
                                       const std::vector<double>& def);

ModelConfig model_config_from_kv(const KeyValueMap& kv);

}  // namespace pekarlab
