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

// Command-line front end. Exit codes: 0 success, 2 parameter error,
// 3 ingestion error, 4 protocol, transport or integrity error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpcgen/cohort.h"
#include "mpcgen/config.h"
#include "mpcgen/errors.h"
#include "mpcgen/generator.h"
#include "mpcgen/metrics.h"
#include "mpcgen/pipeline.h"
#include "mpcgen/sharing.h"

namespace mpcgen {
namespace {

namespace fs = std::filesystem;

constexpr int kExitParameter = 2;
constexpr int kExitIngestion = 3;
constexpr int kExitProtocol = 4;

// `--config FILE` plus one `--<key>` flag per config key; flags win.
class ConfigFlags {
 public:
  void Attach(CLI::App* app) {
    app->add_option("--config", file_, "key = value run manifest");
    for (const std::string& key : ConfigKeys()) {
      options_[key] = app->add_option("--" + key, values_[key], "config override");
    }
  }

  Config Resolve() const {
    Config config;
    if (!file_.empty()) LoadConfigFile(config, file_);
    for (const auto& [key, option] : options_) {
      if (option->count() > 0) SetConfigValue(config, key, values_.at(key));
    }
    ValidateConfig(config);
    return config;
  }

 private:
  std::string file_;
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

fs::path ShareFileName(const fs::path& dir, std::size_t holder, int party) {
  return dir / ("holder" + std::to_string(holder) + "_party" + std::to_string(party) +
                ".shares");
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << text;
}

std::vector<std::string> ReadGeneNames(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open gene list " + path.string());
  std::vector<std::string> names;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

CohortTable ReadCohort(const std::string& path, const Config& config) {
  return ReadCohortCsv(path, IngestOptions{config.classes, config.log1p});
}

// Innermost exception of a nested chain decides the exit code; every level's
// message is printed.
int Report(const std::exception& e, int depth = 0) {
  std::cerr << (depth == 0 ? "error: " : "  caused by: ") << e.what() << "\n";
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    return Report(inner, depth + 1);
  }
  if (dynamic_cast<const ParameterError*>(&e)) return kExitParameter;
  if (dynamic_cast<const IngestionError*>(&e)) return kExitIngestion;
  return kExitProtocol;
}

int Main(int argc, char** argv) {
  CLI::App app("Three-server secure synthetic data generation");
  app.require_subcommand(1);

  // share
  struct {
    std::string input, out_dir = ".";
    std::size_t holder = 0, row_offset = 0;
    bool reproducible = false;
    ConfigFlags flags;
  } share;
  CLI::App* share_cmd = app.add_subcommand("share", "Secret-share a holder's cohort CSV");
  share_cmd->add_option("--input", share.input, "cohort CSV")->required();
  share_cmd->add_option("--out-dir", share.out_dir, "directory for the three share files");
  share_cmd->add_option("--holder", share.holder, "holder index, used in file names");
  share_cmd->add_option("--row-offset", share.row_offset,
                        "global index of this holder's first row");
  share_cmd->add_flag("--reproducible", share.reproducible,
                      "derive share randomness from the config seed (testing only)");
  share.flags.Attach(share_cmd);

  // server
  struct {
    int party = 1;
    std::vector<std::string> shares;
    std::string release = "release.json", genes;
    bool reproducible = false;
    ConfigFlags flags;
  } server;
  CLI::App* server_cmd = app.add_subcommand("server", "Run one server over TCP");
  server_cmd->add_option("--party", server.party, "1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  server_cmd->add_option("--shares", server.shares, "this party's share files, holder order")
      ->required();
  server_cmd->add_option("--release", server.release, "release JSON written by party 1");
  server_cmd->add_option("--genes", server.genes, "gene names, one per line");
  server_cmd->add_flag("--reproducible", server.reproducible,
                       "derive the handshake seed from the config seed (testing only)");
  server.flags.Attach(server_cmd);

  // run-local
  struct {
    std::string input, synthetic = "synthetic.csv", report = "report.json", release;
    bool tcp = false;
    ConfigFlags flags;
  } local;
  CLI::App* local_cmd =
      app.add_subcommand("run-local", "Split, share, run all three servers, generate, score");
  local_cmd->add_option("--input", local.input, "cohort CSV")->required();
  local_cmd->add_option("--synthetic", local.synthetic, "synthetic CSV output");
  local_cmd->add_option("--report", local.report, "metrics report output");
  local_cmd->add_option("--release", local.release, "also write the release JSON");
  local_cmd->add_flag("--tcp", local.tcp, "servers talk over loopback TCP");
  local.flags.Attach(local_cmd);

  // generate
  struct {
    std::string release, out = "synthetic.csv";
    std::size_t rows = 0;
    std::uint64_t seed = 1;
  } gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Sample a synthetic cohort from a release");
  gen_cmd->add_option("--release", gen.release, "release JSON")->required();
  gen_cmd->add_option("--out", gen.out, "synthetic CSV output");
  gen_cmd->add_option("--rows", gen.rows, "rows to sample (default: n of the release)");
  gen_cmd->add_option("--seed", gen.seed, "sampling seed");

  // evaluate
  struct {
    std::string train, test, synthetic, release, report;
    ConfigFlags flags;
  } eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score a synthetic cohort");
  eval_cmd->add_option("--train", eval.train, "real rows the generator saw")->required();
  eval_cmd->add_option("--test", eval.test, "held-out real rows for TSTR")->required();
  eval_cmd->add_option("--synthetic", eval.synthetic, "synthetic CSV")->required();
  eval_cmd->add_option("--release", eval.release, "release JSON, for the echoed DP fields");
  eval_cmd->add_option("--report", eval.report, "report output (default: stdout)");
  eval.flags.Attach(eval_cmd);

  // calibrate
  struct {
    double epsilon = 1, delta = 1e-5;
    std::size_t d = 1;
  } cal;
  CLI::App* cal_cmd = app.add_subcommand("calibrate", "Print the Gaussian noise scale");
  cal_cmd->add_option("--epsilon", cal.epsilon)->required();
  cal_cmd->add_option("--delta", cal.delta);
  cal_cmd->add_option("--d", cal.d, "number of genes")->required();

  // cohort
  DeskCohortOptions desk;
  std::string desk_out = "cohort.csv";
  CLI::App* desk_cmd = app.add_subcommand("cohort", "Write a desk-scale Gaussian-mixture cohort");
  desk_cmd->add_option("--rows", desk.rows);
  desk_cmd->add_option("--genes", desk.genes);
  desk_cmd->add_option("--classes", desk.classes);
  desk_cmd->add_option("--seed", desk.seed);
  desk_cmd->add_option("--out", desk_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  }

  try {
    if (*share_cmd) {
      const Config config = share.flags.Resolve();
      const CohortTable table = ReadCohort(share.input, config);
      const FixedPointCodec codec(config.frac_bits);
      const auto parts =
          share.reproducible ? ShareRows(table, share.row_offset, config.seed, codec)
                             : ShareRows(table, share.row_offset, RandomSeed(), codec);
      fs::create_directories(share.out_dir);
      const ShareFileHeader header{64, static_cast<std::uint32_t>(config.frac_bits),
                                   static_cast<std::uint32_t>(table.rows()),
                                   static_cast<std::uint32_t>(table.d() + 1)};
      for (int p = 0; p < 3; ++p) {
        WriteShareFile(ShareFileName(share.out_dir, share.holder, p + 1), header, parts[p]);
      }
      std::string genes;
      for (const auto& name : table.gene_names) genes += name + "\n";
      WriteText(fs::path(share.out_dir) / "genes.txt", genes);
      std::cout << "wrote " << table.rows() << " rows x " << table.d() << " genes for holder "
                << share.holder << " to " << share.out_dir << "\n";
    } else if (*server_cmd) {
      const Config config = server.flags.Resolve();
      const PartyId self(server.party);
      std::vector<SharedMatrix> submissions;
      for (const auto& path : server.shares) {
        ShareFile file = ReadShareFile(path, self);
        if (static_cast<int>(file.header.fractional_bits) != config.frac_bits) {
          throw IngestionError(path + ": share file uses " +
                               std::to_string(file.header.fractional_bits) +
                               " fractional bits, config says " +
                               std::to_string(config.frac_bits));
        }
        submissions.push_back(std::move(file.cells));
      }
      if (submissions.empty()) throw ParameterError("no share files given");
      const std::size_t d = submissions.front().cols() - 1;
      if (config.classes < 2) throw ParameterError("server needs classes >= 2 in the config");
      const DPParams dp = ResolveNoise(config, d);
      const ServerOptions options{.classes = config.classes,
                                  .sigma = dp.sigma,
                                  .noise_bin_means = config.noise_bin_means};
      const Seed own_seed = server.reproducible ? PartySeed(config.seed, self) : RandomSeed();
      auto out = RunServerProcess(self, submissions, options, config, own_seed);
      if (out) {
        std::vector<std::string> names;
        if (!server.genes.empty()) {
          names = ReadGeneNames(server.genes);
        } else {
          for (std::size_t g = 0; g < d; ++g) names.push_back("gene" + std::to_string(g + 1));
        }
        if (names.size() != d) throw IngestionError("gene list does not match the share files");
        WriteReleaseJson(server.release, ReleaseFile{dp, names, std::move(*out)});
        std::cout << "release written to " << server.release << "\n";
      }
    } else if (*local_cmd) {
      const Config config = local.flags.Resolve();
      const CohortTable cohort = ReadCohort(local.input, config);
      const EndToEndResult r = RunEndToEnd(
          cohort, config, local.tcp ? TransportKind::kTcp : TransportKind::kLocal);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      WriteCohortCsv(local.synthetic, r.synthetic);
      WriteText(local.report, FormatReport(r.report));
      if (!local.release.empty()) WriteReleaseJson(local.release, r.release);
      std::cout << FormatReport(r.report);
    } else if (*gen_cmd) {
      const ReleaseFile release = ReadReleaseJson(gen.release);
      const std::size_t rows = gen.rows > 0 ? gen.rows : release.marginals.n;
      if (rows == 0) throw ParameterError("release has n = 0; pass --rows");
      WriteCohortCsv(gen.out, Synthesize(release, rows, gen.seed));
      std::cout << "wrote " << rows << " synthetic rows to " << gen.out << "\n";
    } else if (*eval_cmd) {
      const Config config = eval.flags.Resolve();
      const CohortTable train = ReadCohort(eval.train, config);
      const CohortTable test = ReadCohort(eval.test, config);
      const CohortTable syn = ReadCohort(eval.synthetic, config);
      DPParams dp;
      if (!eval.release.empty()) {
        dp = ReadReleaseJson(eval.release).dp;
      } else {
        dp = ResolveNoise(config, train.d());
      }
      std::vector<std::string> warnings;
      const std::string report = FormatReport(Evaluate(train, test, syn, config, dp, &warnings));
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      if (eval.report.empty()) {
        std::cout << report;
      } else {
        WriteText(eval.report, report);
      }
    } else if (*cal_cmd) {
      const DPParams p = Calibrate(cal.epsilon, cal.delta, cal.d);
      std::printf("sensitivity %.6f\nsigma %.6f\n", p.sensitivity, p.sigma);
    } else if (*desk_cmd) {
      WriteCohortCsv(desk_out, GenerateDeskCohort(desk));
      std::cout << "wrote " << desk.rows << " rows to " << desk_out << "\n";
    }
  } catch (const std::exception& e) {
    return Report(e);
  }
  return 0;
}

}  // namespace
}  // namespace mpcgen

int main(int argc, char** argv) { return mpcgen::Main(argc, argv); }
