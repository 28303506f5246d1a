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

#include "ktok/cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ktok/analysis.h"
#include "ktok/corpus.h"
#include "ktok/embedding.h"
#include "ktok/errors.h"
#include "ktok/io_util.h"
#include "ktok/learner.h"
#include "ktok/optimizer.h"
#include "ktok/pool.h"
#include "ktok/tokenizer.h"

namespace ktok {
namespace {

// Flags shared by every command that assembles a tokenizer pool.
struct PoolArgs {
  std::string base;
  std::string drug;
  std::string disease;
  std::vector<std::string> learned;
  std::vector<std::string> corpus_c;
  std::uint64_t min_freq = kDefaultMinFreq;
  double threshold = 1.0;
  std::string probability = "product";
};

void AddVocabArgs(CLI::App* cmd, PoolArgs& a) {
  cmd->add_option("--base", a.base, "Default tokenizer vocabulary")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--drug", a.drug, "Learned drug vocabulary")
      ->check(CLI::ExistingFile);
  cmd->add_option("--disease", a.disease, "Learned disease vocabulary")
      ->check(CLI::ExistingFile);
  cmd->add_option("--learned", a.learned,
                  "Further learned vocabularies, lowest priority last")
      ->check(CLI::ExistingFile);
}

void AddPoolArgs(CLI::App* cmd, PoolArgs& a) {
  AddVocabArgs(cmd, a);
  cmd->add_option("--corpus-c", a.corpus_c,
                  "Substring corpus file(s); several are merged")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--min-freq", a.min_freq,
                  "Per-piece corpus count an augmented candidate needs")
      ->capture_default_str();
  cmd->add_option("--probability", a.probability,
                  "Segmentation probability: product or sum")
      ->check(CLI::IsMember({"product", "sum"}))
      ->capture_default_str();
}

std::vector<LearnedVocab> LoadLearned(const PoolArgs& a) {
  std::vector<std::string> paths;
  if (!a.drug.empty()) paths.push_back(a.drug);
  if (!a.disease.empty()) paths.push_back(a.disease);
  paths.insert(paths.end(), a.learned.begin(), a.learned.end());
  std::vector<LearnedVocab> learned;
  for (const auto& p : paths) learned.push_back(LoadLearnedVocab(p));
  return learned;
}

TokenizerPool LoadPool(const PoolArgs& a) {
  Tokenizer base = LoadVocab(std::filesystem::path(a.base));
  std::vector<SubstringCorpus> parts;
  for (const auto& p : a.corpus_c) parts.push_back(LoadCorpus(p));
  SubstringCorpus merged =
      parts.size() == 1 ? std::move(parts.front()) : MergeCorpora(parts);
  merged.label = "C";
  const auto learned = LoadLearned(a);
  return BuildPool(base, learned, std::move(merged), a.min_freq, a.threshold);
}

ScoringOptions Scoring(const PoolArgs& a) {
  ScoringOptions o;
  o.mode = a.probability == "sum" ? ProbabilityMode::kSum
                                  : ProbabilityMode::kProduct;
  return o;
}

// Writes to --out when given, else to the command's stdout.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(OpenForWrite(path));
      path_ = path;
    }
    stream_ = file_ ? file_.get() : &fallback;
  }

  std::ostream& stream() { return *stream_; }

  void Close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failure on '" + path_ + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_ = "<stdout>";
};

std::vector<std::vector<std::string>> ReadSentences(const std::string& path) {
  auto in = OpenForRead(path);
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) sentences.push_back(SplitWords(line));
  if (in.bad()) throw IoError(path + ": read failure");
  return sentences;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"ktok: knowledge-infused subword tokenization toolkit", "ktok"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  std::uint64_t seed = 0;
  bool trace = false;
  app.add_option("--seed", seed, "Accepted for reproducibility; unused");
  app.add_flag("--trace", trace, "Emit per-sentence trace records");

  // build-vocab
  auto* build = app.add_subcommand(
      "build-vocab", "Learn a semantic-type subword vocabulary");
  build->fallthrough();
  std::string concepts_path, type_name, vocab_out, freq_out, corpus_out;
  LearnerConfig learner;
  std::size_t max_substring = kDefaultMaxSubstringLength;
  build->add_option("--concepts", concepts_path, "Concept lexicon TSV")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--semantic-type", type_name, "Semantic type id")
      ->required();
  build->add_option("--budget", learner.budget_alpha,
                    "Maximum merges per concept")
      ->capture_default_str();
  build->add_option("--min-pair-count", learner.min_pair_count,
                    "Minimum pair frequency to merge")
      ->capture_default_str();
  build->add_option("--prefix-syllable-len", learner.prefix_syllable_len,
                    "Prefix length above which syllable splitting applies")
      ->capture_default_str();
  build->add_option("--max-substring-len", max_substring,
                    "Longest substring counted in the corpus")
      ->capture_default_str();
  build->add_option("--out", vocab_out, "Vocabulary file to write")->required();
  build->add_option("--freq-out", freq_out,
                    "Subword frequency file (default: <out>.freq)");
  build->add_option("--corpus-out", corpus_out,
                    "Also write the full substring corpus");

  // tokenize
  auto* tokenize =
      app.add_subcommand("tokenize", "Tokenize one sentence per line");
  tokenize->fallthrough();
  PoolArgs tok_args;
  std::string input_path, tok_out;
  AddPoolArgs(tokenize, tok_args);
  tokenize
      ->add_option("--fertility-threshold", tok_args.threshold,
                   "Sentence fallback threshold (presets 0, 0.035, 0.065, 1)")
      ->capture_default_str();
  tokenize->add_option("--out", tok_out, "Output file (default stdout)");
  tokenize->add_option("input", input_path, "Input text")
      ->required()
      ->check(CLI::ExistingFile);

  // init-embeddings
  auto* init = app.add_subcommand(
      "init-embeddings", "Average base embeddings for new subwords");
  init->fallthrough();
  PoolArgs init_args;
  std::string base_emb, emb_out, backoff_out;
  init->add_option("--base-emb", base_emb, "Base embedding file")
      ->required()
      ->check(CLI::ExistingFile);
  init->add_option("--base-vocab", init_args.base, "Default vocabulary")
      ->required()
      ->check(CLI::ExistingFile);
  init->add_option("--drug", init_args.drug, "Learned drug vocabulary")
      ->check(CLI::ExistingFile);
  init->add_option("--disease", init_args.disease, "Learned disease vocabulary")
      ->check(CLI::ExistingFile);
  init->add_option("--learned", init_args.learned, "Further learned vocabularies")
      ->check(CLI::ExistingFile);
  init->add_option("--out-emb", emb_out, "Expanded embedding file")->required();
  init->add_option("--out-backoff", backoff_out, "Back-off dictionary TSV")
      ->required();

  // pool-info
  auto* info = app.add_subcommand("pool-info", "Vocabulary sizes and overlap");
  info->fallthrough();
  PoolArgs info_args;
  AddVocabArgs(info, info_args);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Tokenizer-level reports");
  analyze->require_subcommand(1);
  analyze->fallthrough();

  auto* fertility =
      analyze->add_subcommand("fertility", "Mean word fertility per BIO class");
  fertility->fallthrough();
  PoolArgs fert_args;
  std::string bio_path, fert_out;
  AddPoolArgs(fertility, fert_args);
  fertility->add_option("--bio", bio_path, "word<TAB>label file")
      ->required()
      ->check(CLI::ExistingFile);
  fertility->add_option("--out", fert_out, "Report file (default stdout)");

  auto* audit =
      analyze->add_subcommand("audit", "Which tokenizer each word selects");
  audit->fallthrough();
  PoolArgs audit_args;
  std::string words_path, audit_out;
  std::vector<std::string> reference_ids;
  AddPoolArgs(audit, audit_args);
  audit->add_option("--words", words_path, "One word or concept per line")
      ->required()
      ->check(CLI::ExistingFile);
  audit->add_option("--reference", reference_ids,
                    "Tokenizer ids counted as correct selections");
  audit->add_option("--out", audit_out, "Report file (default stdout)");

  auto* sweep = analyze->add_subcommand(
      "sweep", "Gating statistics across fertility thresholds");
  sweep->fallthrough();
  PoolArgs sweep_args;
  std::string sweep_input, sweep_out;
  std::vector<double> thetas = {0.0, 0.035, 0.065, 1.0};
  AddPoolArgs(sweep, sweep_args);
  sweep->add_option("--input", sweep_input, "One sentence per line")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--thetas", thetas, "Thresholds in [0, 1]")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "Report file (default stdout)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("ktok");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) {
      learner.Validate();
      const SemanticType type(type_name);
      const auto concepts = LoadConcepts(concepts_path, type);
      const SubstringCorpus corpus = BuildSubstringCorpus(concepts, max_substring);
      const LearnedVocab vocab = LearnVocab(concepts, corpus, learner);
      SaveLearnedVocab(vocab, std::filesystem::path(vocab_out));
      SaveLearnedFrequencies(
          vocab, std::filesystem::path(freq_out.empty() ? vocab_out + ".freq"
                                                        : freq_out));
      if (!corpus_out.empty()) {
        SaveCorpus(corpus, std::filesystem::path(corpus_out));
      }
      out << "concepts\t" << concepts.size() << "\nsubwords\t"
          << vocab.subwords.size() << "\nsubstrings\t" << corpus.distinct()
          << '\n';
    } else if (*tokenize) {
      const TokenizerPool pool = LoadPool(tok_args);
      auto in = OpenForRead(input_path);
      Output sink(tok_out, out);
      TokenizeCorpus(in, pool, trace ? OutputMode::kTrace : OutputMode::kPieces,
                     sink.stream(), Scoring(tok_args), input_path);
      sink.Close();
    } else if (*init) {
      const Tokenizer base = LoadVocab(std::filesystem::path(init_args.base));
      const auto learned = LoadLearned(init_args);
      SubstringCorpus unused;
      const TokenizerPool pool = BuildPool(base, learned, unused);
      const BackoffDictionary backoff = BuildBackoff(pool);
      for (const std::string& s : backoff.unmatched) {
        err << "ktok: warning: '" << s << "' has no default segmentation; "
            << "mapped to " << base.unk_token() << '\n';
      }
      const EmbeddingMatrix base_matrix =
          LoadEmbeddings(std::filesystem::path(base_emb));
      const EmbeddingMatrix expanded = InitEmbeddings(base_matrix, backoff);
      SaveBackoff(backoff, std::filesystem::path(backoff_out));
      SaveEmbeddings(expanded, std::filesystem::path(emb_out));
      out << "base_rows\t" << base_matrix.rows() << "\nnew_rows\t"
          << backoff.entries.size() << "\nunmatched\t"
          << backoff.unmatched.size() << '\n';
    } else if (*info) {
      const Tokenizer base = LoadVocab(std::filesystem::path(info_args.base));
      const auto learned = LoadLearned(info_args);
      SubstringCorpus unused;
      const TokenizerPool pool = BuildPool(base, learned, unused);
      out << "tokenizer\tsize\tnew_vs_default\tlearned_size\n";
      out << base.id() << '\t' << base.size() << "\t0\t0\n";
      std::vector<std::set<std::string>> added;
      for (std::size_t i = 0; i < pool.augmented.size(); ++i) {
        const Tokenizer& t = pool.augmented[i];
        added.emplace_back(t.tokens().begin() + base.size(), t.tokens().end());
        out << t.id() << '\t' << t.size() << '\t' << added.back().size() << '\t'
            << learned[i].subwords.size() << '\n';
      }
      for (std::size_t i = 0; i < added.size(); ++i) {
        for (std::size_t j = i + 1; j < added.size(); ++j) {
          std::size_t shared = 0;
          for (const auto& s : added[i]) shared += added[j].count(s);
          out << "overlap\t" << pool.augmented[i].id() << '\t'
              << pool.augmented[j].id() << '\t' << shared << '\n';
        }
      }
      out << "default_covers_alphabet\t"
          << (base.CoversAlphabet() ? "yes" : "no") << '\n';
    } else if (*fertility) {
      const TokenizerPool pool = LoadPool(fert_args);
      std::vector<AnnotatedToken> tokens;
      for (auto& sentence : LoadBio(std::filesystem::path(bio_path))) {
        tokens.insert(tokens.end(), sentence.begin(), sentence.end());
      }
      Output sink(fert_out, out);
      WriteFertilityReport(FertilityByClass(tokens, pool, Scoring(fert_args)),
                           sink.stream());
      sink.Close();
    } else if (*audit) {
      const TokenizerPool pool = LoadPool(audit_args);
      std::vector<std::string> words;
      for (auto& sentence : ReadSentences(words_path)) {
        words.insert(words.end(), sentence.begin(), sentence.end());
      }
      Output sink(audit_out, out);
      WriteAudit(AuditSelection(words, pool, reference_ids, Scoring(audit_args)),
                 sink.stream());
      sink.Close();
    } else if (*sweep) {
      const TokenizerPool pool = LoadPool(sweep_args);
      const auto sentences = ReadSentences(sweep_input);
      Output sink(sweep_out, out);
      WriteSweep(ThresholdSweep(sentences, pool, thetas, Scoring(sweep_args)),
                 sink.stream());
      sink.Close();
    }
  } catch (const Error& e) {
    err << "ktok: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "ktok: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ktok
