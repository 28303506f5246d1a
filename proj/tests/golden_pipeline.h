// Copyright 2026 The ktok Authors
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

// The toy end-to-end run whose outputs are checked into tests/golden.
// Set KTOK_UPDATE_GOLDEN=1 when running cli_test to rewrite them.

#ifndef KTOK_TESTS_GOLDEN_PIPELINE_H_
#define KTOK_TESTS_GOLDEN_PIPELINE_H_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ktok/cli.h"

namespace ktok::testing {

namespace fs = std::filesystem;

inline fs::path ToyDir() { return fs::path(KTOK_SOURCE_DIR) / "data" / "toy"; }
inline fs::path GoldenDir() {
  return fs::path(KTOK_SOURCE_DIR) / "tests" / "golden";
}

inline std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct PipelineResult {
  int exit_code = 0;
  std::string log;
  std::vector<std::string> files;
};

// Writes every output into `out_dir` and lists them in a fixed order.
inline PipelineResult RunGoldenPipeline(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const std::string toy = ToyDir().string();
  const std::string o = out_dir.string();
  auto at = [&](const std::string& name) { return (out_dir / name).string(); };
  std::vector<std::vector<std::string>> steps;
  for (const std::string type : {"drug", "disease"}) {
    steps.push_back({"build-vocab", "--concepts",
                     toy + "/" + type + "_concepts.tsv", "--semantic-type", type,
                     "--out", at(type + ".vocab"), "--corpus-out",
                     at(type + ".corpus")});
  }
  const std::vector<std::string> pool = {
      "--base",     toy + "/base_vocab.txt", "--drug",     at("drug.vocab"),
      "--disease",  at("disease.vocab"),     "--corpus-c", at("drug.corpus"),
      "--corpus-c", at("disease.corpus"),    "--min-freq", "50"};
  for (const std::string theta : {"0", "0.035", "0.065", "1"}) {
    std::vector<std::string> args = {"tokenize"};
    args.insert(args.end(), pool.begin(), pool.end());
    args.insert(args.end(), {"--fertility-threshold", theta, "--out",
                             at("tokens_theta_" + theta + ".txt"),
                             toy + "/sentences.txt"});
    steps.push_back(args);
  }
  {
    std::vector<std::string> args = {"--trace", "tokenize"};
    args.insert(args.end(), pool.begin(), pool.end());
    args.insert(args.end(), {"--fertility-threshold", "0.065", "--out",
                             at("trace_theta_0.065.jsonl"),
                             toy + "/sentences.txt"});
    steps.push_back(args);
  }
  steps.push_back({"init-embeddings", "--base-emb",
                   toy + "/base_embeddings.txt", "--base-vocab",
                   toy + "/base_vocab.txt", "--drug", at("drug.vocab"),
                   "--disease", at("disease.vocab"), "--out-emb",
                   at("embeddings.txt"), "--out-backoff", at("backoff.tsv")});

  PipelineResult r;
  std::ostringstream log;
  for (const auto& args : steps) {
    r.exit_code = RunCli(args, log, log);
    if (r.exit_code != 0) break;
  }
  r.log = log.str();
  r.files = {"drug.vocab",
             "drug.vocab.freq",
             "drug.corpus",
             "disease.vocab",
             "disease.vocab.freq",
             "disease.corpus",
             "tokens_theta_0.txt",
             "tokens_theta_0.035.txt",
             "tokens_theta_0.065.txt",
             "tokens_theta_1.txt",
             "trace_theta_0.065.jsonl",
             "backoff.tsv",
             "embeddings.txt"};
  return r;
}

}  // namespace ktok::testing

#endif  // KTOK_TESTS_GOLDEN_PIPELINE_H_
