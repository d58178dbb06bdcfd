// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "pekarlab/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pekarlab/io.hpp"

namespace pekarlab {

std::string to_string(CouplingForm f) {
  switch (f) {
    case CouplingForm::InverseK: return "inv_k";
    case CouplingForm::Zero: return "zero";
  }
  return "inv_k";
}

CouplingForm coupling_form_from_string(const std::string& s) {
  if (s == "inv_k") return CouplingForm::InverseK;
  if (s == "zero") return CouplingForm::Zero;
  throw ConfigError("unknown coupling_form '" + s + "' (expected inv_k or zero)");
}

void ModelConfig::validate() const {
  if (dim != 1 && dim != 3) throw ConfigError("dim must be 1 or 3");
  if (M < 2 || M % 2 != 0) throw ConfigError("M must be even and >= 2");
  if (nmax < 0) throw ConfigError("nmax must be >= 0");
  if (L <= 0) throw ConfigError("L must be positive");
  if (!(alpha0 > 0)) throw ConfigError("alpha0 must be positive");
  if (!(alpha >= alpha0)) throw ConfigError("alpha must satisfy alpha >= alpha0");
  if (!(prop_tol > 0) || prop_tol > 1e-4) throw ConfigError("prop_tol must be in (0, 1e-4]");
  if (lambda_cut < 0) throw ConfigError("lambda_cut must be >= 0 (0 selects the default)");
}

static std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

KeyValueMap parse_key_values(const std::string& text) {
  KeyValueMap out;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (out.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
    out[key] = KeyValue{value, lineno};
  }
  return out;
}

double kv_get_double(const KeyValueMap& kv, const std::string& key, double def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second.value, &pos);
    if (pos != it->second.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "'", it->second.line);
  }
}

int kv_get_int(const KeyValueMap& kv, const std::string& key, int def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  int v = 0;
  const auto& s = it->second.value;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("invalid integer for '" + key + "'", it->second.line);
  return v;
}

std::uint64_t kv_get_u64(const KeyValueMap& kv, const std::string& key, std::uint64_t def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  std::uint64_t v = 0;
  const auto& s = it->second.value;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("invalid integer for '" + key + "'", it->second.line);
  return v;
}

std::string kv_get_string(const KeyValueMap& kv, const std::string& key, const std::string& def) {
  auto it = kv.find(key);
  return it == kv.end() ? def : it->second.value;
}

bool kv_get_bool(const KeyValueMap& kv, const std::string& key, bool def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  const auto& v = it->second.value;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("invalid boolean for '" + key + "'", it->second.line);
}

std::vector<double> kv_get_double_list(const KeyValueMap& kv, const std::string& key,
                                       const std::vector<double>& def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  std::vector<double> out;
  std::istringstream is(it->second.value);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("invalid list entry for '" + key + "'", it->second.line);
    }
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'", it->second.line);
  return out;
}

ModelConfig model_config_from_kv(const KeyValueMap& kv) {
  ModelConfig c;
  c.dim = kv_get_int(kv, "dim", c.dim);
  c.L = kv_get_double(kv, "L", c.L);
  c.M = kv_get_int(kv, "M", c.M);
  c.nmax = kv_get_int(kv, "nmax", c.nmax);
  c.alpha = kv_get_double(kv, "alpha", c.alpha);
  c.alpha0 = kv_get_double(kv, "alpha0", c.alpha0);
  c.lambda_cut = kv_get_double(kv, "lambda_cut", c.lambda_cut);
  c.coupling_form = coupling_form_from_string(
      kv_get_string(kv, "coupling_form", to_string(c.coupling_form)));
  c.prop_tol = kv_get_double(kv, "prop_tol", c.prop_tol);
  c.seed = kv_get_u64(kv, "seed", c.seed);
  return c;
}

std::string ModelConfig::to_key_values() const {
  std::ostringstream os;
  os << "dim = " << dim << "\n"
     << "L = " << format_double(L) << "\n"
     << "M = " << M << "\n"
     << "nmax = " << nmax << "\n"
     << "alpha = " << format_double(alpha) << "\n"
     << "alpha0 = " << format_double(alpha0) << "\n"
     << "lambda_cut = " << format_double(lambda_cut) << "\n"
     << "coupling_form = " << to_string(coupling_form) << "\n"
     << "prop_tol = " << format_double(prop_tol) << "\n"
     << "seed = " << seed << "\n";
  return os.str();
}

ModelConfig ModelConfig::from_key_values(const std::string& text) {
  ModelConfig c = model_config_from_kv(parse_key_values(text));
  c.validate();
  return c;
}

}  // namespace pekarlab
