//
// Copyright 2026 The mpcgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "mpcgen/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mpcgen/errors.h"
#include "mpcgen/tcp_transport.h"

namespace mpcgen {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double ParseDouble(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ParameterError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

std::uint64_t ParseUnsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ParameterError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParameterError(key + ": expected true or false, got '" + value + "'");
}

std::string FormatDouble(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "epsilon", "delta",   "sigma",   "classes",   "seed",   "noise_bin_means",
      "frac_bits", "bins",  "holders", "party1",    "party2", "party3",
      "timeout_s", "n_syn", "log1p",   "detpr_k",   "test_fraction"};
  return keys;
}

void SetConfigValue(Config& c, const std::string& key, const std::string& raw) {
  const std::string value = Trim(raw);
  if (key == "epsilon") {
    c.epsilon = ParseDouble(key, value);
  } else if (key == "delta") {
    c.delta = ParseDouble(key, value);
  } else if (key == "sigma") {
    if (value.empty() || value == "auto") {
      c.sigma.reset();
    } else {
      c.sigma = ParseDouble(key, value);
    }
  } else if (key == "classes") {
    c.classes = ParseUnsigned(key, value);
  } else if (key == "seed") {
    c.seed = ParseUnsigned(key, value);
  } else if (key == "noise_bin_means") {
    c.noise_bin_means = ParseBool(key, value);
  } else if (key == "frac_bits") {
    c.frac_bits = static_cast<int>(ParseUnsigned(key, value));
  } else if (key == "bins") {
    c.bins = ParseUnsigned(key, value);
  } else if (key == "holders") {
    c.holders = ParseUnsigned(key, value);
  } else if (key == "party1" || key == "party2" || key == "party3") {
    Endpoint::Parse(value);  // validates
    c.parties[key[5] - '1'] = value;
  } else if (key == "timeout_s") {
    c.timeout_s = ParseDouble(key, value);
  } else if (key == "n_syn") {
    c.n_syn = ParseUnsigned(key, value);
  } else if (key == "log1p") {
    c.log1p = ParseBool(key, value);
  } else if (key == "detpr_k") {
    c.detpr_k = ParseUnsigned(key, value);
  } else if (key == "test_fraction") {
    c.test_fraction = ParseDouble(key, value);
  } else {
    throw ParameterError("unknown config key '" + key + "'");
  }
}

void ApplyConfigText(Config& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      SetConfigValue(config, Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ParameterError& e) {
      throw ParameterError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

Config ParseConfig(const std::string& text) {
  Config config;
  ApplyConfigText(config, text);
  return config;
}

void LoadConfigFile(Config& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ApplyConfigText(config, buf.str());
}

void ValidateConfig(const Config& c) {
  if (!(c.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (!(c.delta > 0 && c.delta < 1)) throw ParameterError("delta must lie in (0, 1)");
  if (c.sigma && !(*c.sigma >= 0 && std::isfinite(*c.sigma))) {
    throw ParameterError("sigma must be a finite non-negative number");
  }
  if (c.classes == 1) throw ParameterError("need at least two classes");
  if (c.bins != 4) throw ParameterError("only bins = 4 is supported");
  if (c.frac_bits < 8 || c.frac_bits > 24) throw ParameterError("frac_bits must lie in [8, 24]");
  if (c.holders < 1) throw ParameterError("need at least one data holder");
  if (!(c.timeout_s > 0)) throw ParameterError("timeout_s must be positive");
  if (c.detpr_k < 1) throw ParameterError("detpr_k must be at least 1");
  if (!(c.test_fraction > 0 && c.test_fraction < 1)) {
    throw ParameterError("test_fraction must lie in (0, 1)");
  }
}

std::string FormatConfig(const Config& c) {
  std::ostringstream out;
  out << "epsilon = " << FormatDouble(c.epsilon) << "\n"
      << "delta = " << FormatDouble(c.delta) << "\n"
      << "sigma = " << (c.sigma ? FormatDouble(*c.sigma) : "auto") << "\n"
      << "classes = " << c.classes << "\n"
      << "seed = " << c.seed << "\n"
      << "noise_bin_means = " << (c.noise_bin_means ? "true" : "false") << "\n"
      << "frac_bits = " << c.frac_bits << "\n"
      << "bins = " << c.bins << "\n"
      << "holders = " << c.holders << "\n"
      << "party1 = " << c.parties[0] << "\n"
      << "party2 = " << c.parties[1] << "\n"
      << "party3 = " << c.parties[2] << "\n"
      << "timeout_s = " << FormatDouble(c.timeout_s) << "\n"
      << "n_syn = " << c.n_syn << "\n"
      << "log1p = " << (c.log1p ? "true" : "false") << "\n"
      << "detpr_k = " << c.detpr_k << "\n"
      << "test_fraction = " << FormatDouble(c.test_fraction) << "\n";
  return out.str();
}

}  // namespace mpcgen
