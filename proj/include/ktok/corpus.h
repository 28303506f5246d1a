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

// Concept lexicon ingestion and substring-frequency corpora.

#ifndef KTOK_CORPUS_H_
#define KTOK_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ktok {

// Identifier of a semantic grouping such as "drug" or "disease".
class SemanticType {
 public:
  SemanticType() = default;
  // Throws ConfigError unless `name` is non-empty and made of [a-z0-9_-].
  explicit SemanticType(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const SemanticType&, const SemanticType&) = default;
  friend auto operator<=>(const SemanticType&, const SemanticType&) = default;

 private:
  std::string name_;
};

struct ConceptEntry {
  std::string surface;
  std::uint64_t frequency = 1;
  SemanticType semantic_type;

  friend bool operator==(const ConceptEntry&, const ConceptEntry&) = default;
};

// Lowercases ASCII, drops every byte outside [a-z0-9-] and whitespace,
// collapses whitespace runs to one space and trims both ends.
std::string Normalize(std::string_view raw);

// Splits a raw text line into normalised words. ASCII punctuation separates
// words; non-ASCII bytes are dropped as in Normalize.
std::vector<std::string> SplitWords(std::string_view line);

// Reads `surface<TAB>frequency` lines. '#' lines and blank lines are skipped.
// Multi-word surfaces become one entry per word; duplicates are summed and
// entries keep first-occurrence order.
std::vector<ConceptEntry> LoadConcepts(std::istream& in,
                                       const SemanticType& type,
                                       const std::string& source = "<input>");
std::vector<ConceptEntry> LoadConcepts(const std::filesystem::path& path,
                                       const SemanticType& type);

// Frequency map over character substrings.
struct SubstringCorpus {
  std::map<std::string, std::uint64_t, std::less<>> entries;
  std::uint64_t total = 0;
  std::string label;

  // Count of `key`, 0 when absent.
  std::uint64_t Count(std::string_view key) const;
  std::size_t distinct() const { return entries.size(); }

  // Adds `count` to `key` and to the total.
  void Add(std::string_view key, std::uint64_t count);

  friend bool operator==(const SubstringCorpus& a, const SubstringCorpus& b) {
    return a.entries == b.entries && a.total == b.total;
  }
};

inline constexpr std::size_t kDefaultMaxSubstringLength = 24;

// Counts every contiguous substring (overlaps included, up to
// `max_substring_length` characters) of every concept, weighted by its
// frequency. All concepts must share one semantic type.
SubstringCorpus BuildSubstringCorpus(
    std::span<const ConceptEntry> concepts,
    std::size_t max_substring_length = kDefaultMaxSubstringLength);

// Pointwise sum; the result is labelled "C".
SubstringCorpus MergeCorpora(std::span<const SubstringCorpus> parts);

// `#ktok-corpus v1 total=<N>` followed by `substring<TAB>count` lines sorted
// by count descending, then substring ascending.
void SaveCorpus(const SubstringCorpus& corpus, std::ostream& out);
void SaveCorpus(const SubstringCorpus& corpus,
                const std::filesystem::path& path);
SubstringCorpus LoadCorpus(std::istream& in,
                           const std::string& source = "<input>");
SubstringCorpus LoadCorpus(const std::filesystem::path& path);

}  // namespace ktok

#endif  // KTOK_CORPUS_H_
