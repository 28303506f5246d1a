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

// Learns a semantic-type subword vocabulary from a concept lexicon:
//
//   1. BpeLearn merges adjacent symbol pairs across all concepts, each
//      concept accepting at most `budget_alpha` merges.
//   2. Every concept is re-decoded by greedy longest match over the symbols
//      it produced during merging (GreedyDecode).
//   3. Long word-initial pieces are split at syllable boundaries
//      (SyllableSplit).
//
// Only pieces emitted by step 2/3 survive into the LearnedVocab.

#ifndef KTOK_LEARNER_H_
#define KTOK_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ktok/corpus.h"

namespace ktok {

struct LearnerConfig {
  std::size_t budget_alpha = 20;
  std::uint64_t min_pair_count = 2;
  std::size_t prefix_syllable_len = 4;
  std::string continuation_marker = "##";
  std::string vowels = "aeiou";

  // Throws ConfigError on out-of-range values.
  void Validate() const;
};

using SymbolPair = std::pair<std::string, std::string>;

struct MergeTable {
  // Global merge order.
  std::vector<SymbolPair> merges;
  // Final symbol sequence of each concept, marker on every non-initial piece.
  std::map<std::string, std::vector<std::string>> segmentation;
  // Every symbol a concept held at any step, in the form it had at its
  // position: bare at offset 0, marked elsewhere.
  std::map<std::string, std::set<std::string>> candidates;
  // Number of merge steps that changed each concept.
  std::map<std::string, std::size_t> merges_applied;
};

struct LearnedVocab {
  SemanticType semantic_type;
  std::set<std::string> subwords;
  // Marker-stripped corpus count per subword; 0 when absent from the corpus.
  std::map<std::string, std::uint64_t> frequencies;
};

// Frequency-weighted BPE. Each step merges the most frequent adjacent pair
// over concepts that still have budget (ties go to the lexicographically
// smallest (left, right)); stops when the best count falls below
// `min_pair_count` or no concept can merge further. Duplicate surfaces are
// combined before counting.
MergeTable BpeLearn(std::span<const ConceptEntry> concepts,
                    const LearnerConfig& config);

// Longest candidate at each cursor, bare form at offset 0 and marked form
// after. Throws DecodeError when nothing matches.
std::vector<std::string> GreedyDecode(std::string_view word,
                                      const std::set<std::string>& candidates,
                                      std::string_view marker);

// Breaks a word-initial piece longer than `prefix_syllable_len` before every
// consonant that is directly followed by a vowel (never at offset 0).
std::vector<std::string> SyllableSplit(std::string_view subword,
                                       const LearnerConfig& config);

// Decode + syllable split pieces for one concept given its candidates.
std::vector<std::string> DecodeConcept(std::string_view word,
                                       const std::set<std::string>& candidates,
                                       const LearnerConfig& config);

LearnedVocab LearnVocab(std::span<const ConceptEntry> concepts,
                        const SubstringCorpus& corpus,
                        const LearnerConfig& config);

// `#ktok-vocab v1 type=<id>` then one subword per line in sorted order.
void SaveLearnedVocab(const LearnedVocab& vocab, std::ostream& out);
void SaveLearnedVocab(const LearnedVocab& vocab,
                      const std::filesystem::path& path);
// Companion frequency table in the corpus TSV format.
void SaveLearnedFrequencies(const LearnedVocab& vocab, std::ostream& out);
void SaveLearnedFrequencies(const LearnedVocab& vocab,
                            const std::filesystem::path& path);

// Reads a learned-vocab file; the header is required. Frequencies are left
// empty unless a corpus is supplied to LookupFrequencies.
LearnedVocab LoadLearnedVocab(std::istream& in,
                              const std::string& source = "<input>");
LearnedVocab LoadLearnedVocab(const std::filesystem::path& path);

void LookupFrequencies(LearnedVocab& vocab, const SubstringCorpus& corpus,
                       std::string_view marker);

}  // namespace ktok

#endif  // KTOK_LEARNER_H_
