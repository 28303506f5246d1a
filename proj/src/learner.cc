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

#include "ktok/learner.h"

#include <istream>
#include <ostream>
#include <unordered_map>

#include "ktok/errors.h"
#include "ktok/io_util.h"
#include "ktok/subword.h"

namespace ktok {
namespace {

constexpr std::string_view kVocabMagic = "#ktok-vocab v1 type=";

// Working state of one (deduplicated) concept during merging.
struct WorkWord {
  std::string surface;
  std::uint64_t frequency = 0;
  std::vector<std::string> symbols;
  std::set<std::string> candidates;
  std::size_t merges = 0;
  bool active = true;
};

// Pair counts with an ordered view for "most frequent, then smallest pair".
class PairCensus {
 public:
  void Adjust(const SymbolPair& pair, std::uint64_t delta, bool add) {
    auto it = counts_.find(pair);
    std::uint64_t old = it == counts_.end() ? 0 : it->second;
    std::uint64_t now = add ? old + delta : old - delta;
    if (old > 0) ranking_.erase({old, pair});
    if (now > 0) {
      counts_[pair] = now;
      ranking_.insert({now, pair});
    } else if (it != counts_.end()) {
      counts_.erase(it);
    }
  }

  bool empty() const { return ranking_.empty(); }
  const std::pair<std::uint64_t, SymbolPair>& best() const {
    return *ranking_.begin();
  }

 private:
  struct ByCountThenPair {
    bool operator()(const std::pair<std::uint64_t, SymbolPair>& a,
                    const std::pair<std::uint64_t, SymbolPair>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };

  std::map<SymbolPair, std::uint64_t> counts_;
  std::set<std::pair<std::uint64_t, SymbolPair>, ByCountThenPair> ranking_;
};

std::string Positioned(const std::string& symbol, std::size_t index,
                       std::string_view marker) {
  return index == 0 ? symbol : std::string(marker) + symbol;
}

bool IsLetter(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace

void LearnerConfig::Validate() const {
  if (budget_alpha < 1) throw ConfigError("budget_alpha must be >= 1");
  if (min_pair_count < 1) throw ConfigError("min_pair_count must be >= 1");
  if (prefix_syllable_len < 1) {
    throw ConfigError("prefix_syllable_len must be >= 1");
  }
  if (continuation_marker.empty()) {
    throw ConfigError("continuation marker must be non-empty");
  }
}

MergeTable BpeLearn(std::span<const ConceptEntry> concepts,
                    const LearnerConfig& config) {
  config.Validate();
  if (concepts.empty()) throw EmptyInputError("no concepts to learn from");
  const std::string_view marker = config.continuation_marker;

  std::vector<WorkWord> words;
  std::unordered_map<std::string, std::size_t> by_surface;
  for (const ConceptEntry& c : concepts) {
    if (c.surface.empty()) continue;
    auto [it, inserted] = by_surface.try_emplace(c.surface, words.size());
    if (!inserted) {
      words[it->second].frequency += c.frequency;
      continue;
    }
    WorkWord w;
    w.surface = c.surface;
    w.frequency = c.frequency;
    for (std::size_t i = 0; i < c.surface.size(); ++i) {
      w.symbols.emplace_back(1, c.surface[i]);
      w.candidates.insert(Positioned(w.symbols.back(), i, marker));
    }
    words.push_back(std::move(w));
  }
  if (words.empty()) throw EmptyInputError("no non-empty concepts");

  PairCensus census;
  std::map<SymbolPair, std::set<std::size_t>> holders;
  auto count_pairs = [&](std::size_t idx, bool add) {
    const WorkWord& w = words[idx];
    for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
      SymbolPair pair{w.symbols[i], w.symbols[i + 1]};
      if (add) holders[pair].insert(idx);
      census.Adjust(pair, w.frequency, add);
    }
  };
  for (std::size_t idx = 0; idx < words.size(); ++idx) {
    words[idx].active = words[idx].symbols.size() >= 2;
    if (words[idx].active) count_pairs(idx, true);
  }

  MergeTable table;
  std::set<SymbolPair> recorded;
  while (!census.empty()) {
    const auto [count, pair] = census.best();
    if (count < config.min_pair_count) break;
    if (recorded.insert(pair).second) table.merges.push_back(pair);
    const std::string merged = pair.first + pair.second;

    const std::set<std::size_t> affected = holders[pair];
    for (std::size_t idx : affected) {
      WorkWord& w = words[idx];
      if (!w.active) continue;
      count_pairs(idx, false);
      std::vector<std::string> next;
      next.reserve(w.symbols.size());
      bool changed = false;
      for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        if (i + 1 < w.symbols.size() && w.symbols[i] == pair.first &&
            w.symbols[i + 1] == pair.second) {
          w.candidates.insert(Positioned(merged, next.size(), marker));
          next.push_back(merged);
          ++i;
          changed = true;
        } else {
          next.push_back(std::move(w.symbols[i]));
        }
      }
      w.symbols = std::move(next);
      if (changed) ++w.merges;
      w.active = w.merges < config.budget_alpha && w.symbols.size() >= 2;
      if (w.active) count_pairs(idx, true);
    }
  }

  for (WorkWord& w : words) {
    std::vector<std::string> seg;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
      seg.push_back(Positioned(w.symbols[i], i, marker));
    }
    table.segmentation[w.surface] = std::move(seg);
    table.merges_applied[w.surface] = w.merges;
    table.candidates[w.surface] = std::move(w.candidates);
  }
  return table;
}

std::vector<std::string> GreedyDecode(std::string_view word,
                                      const std::set<std::string>& candidates,
                                      std::string_view marker) {
  auto result = LongestMatch(
      word,
      [&](std::string_view piece) {
        return candidates.find(std::string(piece)) != candidates.end();
      },
      marker);
  if (result.failed_at) throw DecodeError(std::string(word), *result.failed_at);
  return std::move(result.pieces);
}

std::vector<std::string> SyllableSplit(std::string_view subword,
                                       const LearnerConfig& config) {
  if (subword.size() <= config.prefix_syllable_len) {
    return {std::string(subword)};
  }
  auto is_vowel = [&](char c) {
    return config.vowels.find(c) != std::string::npos;
  };
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < subword.size(); ++i) {
    const char c = subword[i];
    if (IsLetter(c) && !is_vowel(c) && is_vowel(subword[i + 1])) {
      pieces.emplace_back(subword.substr(start, i - start));
      start = i;
    }
  }
  pieces.emplace_back(subword.substr(start));
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    pieces[i].insert(0, config.continuation_marker);
  }
  return pieces;
}

std::vector<std::string> DecodeConcept(std::string_view word,
                                       const std::set<std::string>& candidates,
                                       const LearnerConfig& config) {
  std::vector<std::string> decoded =
      GreedyDecode(word, candidates, config.continuation_marker);
  std::vector<std::string> pieces = SyllableSplit(decoded.front(), config);
  pieces.insert(pieces.end(), std::make_move_iterator(decoded.begin() + 1),
                std::make_move_iterator(decoded.end()));
  return pieces;
}

LearnedVocab LearnVocab(std::span<const ConceptEntry> concepts,
                        const SubstringCorpus& corpus,
                        const LearnerConfig& config) {
  MergeTable table = BpeLearn(concepts, config);
  LearnedVocab vocab;
  vocab.semantic_type = concepts.front().semantic_type;
  for (const auto& [surface, candidates] : table.candidates) {
    for (std::string& piece : DecodeConcept(surface, candidates, config)) {
      vocab.subwords.insert(std::move(piece));
    }
  }
  LookupFrequencies(vocab, corpus, config.continuation_marker);
  return vocab;
}

void LookupFrequencies(LearnedVocab& vocab, const SubstringCorpus& corpus,
                       std::string_view marker) {
  vocab.frequencies.clear();
  for (const std::string& s : vocab.subwords) {
    vocab.frequencies[s] = corpus.Count(StripMarker(s, marker));
  }
}

void SaveLearnedVocab(const LearnedVocab& vocab, std::ostream& out) {
  out << kVocabMagic << vocab.semantic_type.name() << '\n';
  for (const std::string& s : vocab.subwords) out << s << '\n';
}

void SaveLearnedVocab(const LearnedVocab& vocab,
                      const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveLearnedVocab(vocab, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

void SaveLearnedFrequencies(const LearnedVocab& vocab, std::ostream& out) {
  SubstringCorpus table;
  for (const auto& [s, f] : vocab.frequencies) table.Add(s, f);
  SaveCorpus(table, out);
}

void SaveLearnedFrequencies(const LearnedVocab& vocab,
                            const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveLearnedFrequencies(vocab, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

LearnedVocab LoadLearnedVocab(std::istream& in, const std::string& source) {
  std::string raw;
  if (!std::getline(in, raw)) throw EmptyInputError(source + ": empty vocab file");
  std::string_view header = ChompCr(raw);
  if (!header.starts_with(kVocabMagic)) {
    throw ParseError(source, 1, "expected '#ktok-vocab v1 type=<id>' header");
  }
  LearnedVocab vocab;
  try {
    vocab.semantic_type =
        SemanticType(std::string(header.substr(kVocabMagic.size())));
  } catch (const ConfigError& e) {
    throw ParseError(source, 1, e.what());
  }
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = ChompCr(raw);
    if (line.empty()) throw ParseError(source, line_no, "empty subword");
    if (!vocab.subwords.emplace(line).second) {
      throw ParseError(source, line_no,
                       "duplicate subword '" + std::string(line) + "'");
    }
  }
  if (in.bad()) throw IoError(source + ": read failure");
  return vocab;
}

LearnedVocab LoadLearnedVocab(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return LoadLearnedVocab(in, path.string());
}

}  // namespace ktok
