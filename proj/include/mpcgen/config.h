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

#ifndef MPCGEN_CONFIG_H_
#define MPCGEN_CONFIG_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mpcgen {

// Run manifest. The file format is one `key = value` per line; `#` starts a
// comment. Every key can also be set from the command line.
struct Config {
  double epsilon = 1.0;  // "inf" disables noise
  double delta = 1e-5;
  // Explicit noise scale; overrides the (epsilon, delta) calibration.
  std::optional<double> sigma;
  std::size_t classes = 0;  // 0: inferred from the labels
  std::uint64_t seed = 1;
  bool noise_bin_means = true;
  int frac_bits = 16;
  std::size_t bins = 4;  // only 4 is supported
  std::size_t holders = 1;
  std::array<std::string, 3> parties = {"127.0.0.1:7101", "127.0.0.1:7102",
                                        "127.0.0.1:7103"};
  double timeout_s = 60;
  std::size_t n_syn = 0;  // 0: as many rows as the training set
  bool log1p = false;
  std::size_t detpr_k = 50;
  double test_fraction = 0.2;
};

// Names accepted by SetConfigValue, in FormatConfig order.
const std::vector<std::string>& ConfigKeys();

// Throws ParameterError for unknown keys or unparsable values.
void SetConfigValue(Config& config, const std::string& key, const std::string& value);
// Applies the lines of `text` on top of `config`; keys not mentioned keep
// their values. ParameterError messages carry the line number.
void ApplyConfigText(Config& config, const std::string& text);
Config ParseConfig(const std::string& text);
// As ApplyConfigText; IngestionError if the file cannot be read.
void LoadConfigFile(Config& config, const std::filesystem::path& path);
// Range checks across keys. Throws ParameterError.
void ValidateConfig(const Config& config);

std::string FormatConfig(const Config& config);

}  // namespace mpcgen

#endif  // MPCGEN_CONFIG_H_
