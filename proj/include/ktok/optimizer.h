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

// Per-word segmentation selection and per-sentence fertility gating.
//
// Every pool member segments a word. Each segmentation is scored with a
// unigram probability p over the merged substring corpus and an entropy
// term H = p ln p; the eligible candidate with the smallest H wins. An
// augmented candidate is eligible only when every piece occurs at least
// `min_freq` times in the corpus. At sentence level the relative fertility
// reduction (F_B - F_K) / F_B is compared with the pool threshold, and the
// whole sentence falls back to the default tokenizer when it is exceeded.

#ifndef KTOK_OPTIMIZER_H_
#define KTOK_OPTIMIZER_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ktok/corpus.h"
#include "ktok/pool.h"
#include "ktok/tokenizer.h"

namespace ktok {

enum class ProbabilityMode {
  kProduct,  // p = prod of per-piece probabilities
  kSum,      // p = sum of per-piece probabilities, clamped below 1
};

struct ScoringOptions {
  ProbabilityMode mode = ProbabilityMode::kProduct;
  // Add-one smoothing over (total + distinct substrings). Off: count / total.
  bool smoothing = true;
};

// Upper clamp on p keeps H strictly negative.
inline constexpr double kProbabilityEpsilon = 1e-12;

struct Score {
  double probability = 0.0;
  double entropy = 0.0;
};

// Pieces are looked up with the continuation marker stripped. Throws
// ConfigError when the corpus total is zero.
Score ScoreSegmentation(std::span<const std::string> pieces,
                        const SubstringCorpus& corpus_c,
                        std::string_view marker = "##",
                        const ScoringOptions& options = {});

// Fills seg.probability and seg.entropy.
void ScoreInPlace(Segmentation& seg, const SubstringCorpus& corpus_c,
                  std::string_view marker = "##",
                  const ScoringOptions& options = {});

struct WordChoice {
  std::string word;
  // One segmentation per pool member, default first.
  std::vector<Segmentation> candidates;
  // Ids of eligible candidates, in pool order.
  std::vector<std::string> eligible;
  std::string chosen;

  const Segmentation& chosen_segmentation() const;
  const Segmentation& default_segmentation() const { return candidates.front(); }
  bool IsEligible(std::string_view id) const;
};

// An augmented segmentation qualifies when it has no unk piece and every
// piece reaches `pool.min_freq` in the corpus.
bool IsEligibleCandidate(const Segmentation& seg, const TokenizerPool& pool);

WordChoice OptimizeWord(std::string_view word, const TokenizerPool& pool,
                        const ScoringOptions& options = {});

struct FertilityReport {
  std::vector<std::size_t> default_per_word;
  std::vector<std::size_t> optimized_per_word;
  std::size_t default_total = 0;
  std::size_t optimized_total = 0;
  // (F_B - F_K) / F_B; 0 for an empty sentence.
  double reduction = 0.0;
};

FertilityReport MakeFertilityReport(std::span<const WordChoice> words);

struct SentenceOutput {
  std::vector<WordChoice> words;
  bool gated = false;
  std::vector<std::string> final_pieces;
  FertilityReport report;
};

// Gated iff the sentence is non-empty and its reduction exceeds `threshold`.
SentenceOutput GateSentence(std::vector<WordChoice> words, double threshold);

SentenceOutput OptimizeSentence(std::span<const std::string> words,
                                const TokenizerPool& pool,
                                const ScoringOptions& options = {});

enum class OutputMode { kPieces, kTrace };

// Space-separated final pieces.
std::string FormatPieces(const SentenceOutput& out);
// One JSON object describing every candidate, the choice and the gating.
std::string FormatTrace(const SentenceOutput& out, std::size_t line_no);

// Reads one sentence per line, splits words, and hands each result to
// `sink` in input order. Returns the number of lines processed.
std::size_t TokenizeCorpus(
    std::istream& in, const TokenizerPool& pool,
    const std::function<void(std::size_t line_no, const SentenceOutput&)>& sink,
    const ScoringOptions& options = {},
    const std::string& source = "<input>");

// Convenience wrapper writing FormatPieces or FormatTrace lines to `out`.
std::size_t TokenizeCorpus(std::istream& in, const TokenizerPool& pool,
                           OutputMode mode, std::ostream& out,
                           const ScoringOptions& options = {},
                           const std::string& source = "<input>");

}  // namespace ktok

#endif  // KTOK_OPTIMIZER_H_
