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

#include "ktok/corpus.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <utility>

#include "ktok/errors.h"
#include "ktok/io_util.h"

namespace ktok {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool IsKept(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
}

char ToLowerAscii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

constexpr std::string_view kCorpusMagic = "#ktok-corpus v1 total=";

}  // namespace

SemanticType::SemanticType(std::string name) : name_(std::move(name)) {
  const bool valid =
      !name_.empty() && std::all_of(name_.begin(), name_.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '-';
      });
  if (!valid) throw ConfigError("invalid semantic type '" + name_ + "'");
}

std::string Normalize(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    c = ToLowerAscii(c);
    if (!IsKept(c)) continue;
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> SplitWords(std::string_view line) {
  std::string spaced(line);
  for (char& c : spaced) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && !IsKept(ToLowerAscii(c)) && !IsSpace(c)) c = ' ';
  }
  const std::string normalized = Normalize(spaced);
  std::vector<std::string> words;
  for (std::string_view w : SplitOn(normalized, ' ')) {
    if (!w.empty()) words.emplace_back(w);
  }
  return words;
}

std::vector<ConceptEntry> LoadConcepts(std::istream& in,
                                       const SemanticType& type,
                                       const std::string& source) {
  std::vector<ConceptEntry> entries;
  std::unordered_map<std::string, std::size_t> index;
  std::string raw;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = ChompCr(raw);
    if (line.empty() || line.front() == '#') continue;
    saw_data = true;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(source, line_no, "missing tab separator");
    }
    const auto freq = ParseUint(line.substr(tab + 1));
    if (!freq) {
      throw ParseError(source, line_no,
                       "non-numeric frequency '" +
                           std::string(line.substr(tab + 1)) + "'");
    }
    if (*freq == 0) throw ParseError(source, line_no, "frequency must be >= 1");
    const std::string surface = Normalize(line.substr(0, tab));
    for (std::string_view word : SplitOn(surface, ' ')) {
      if (word.empty()) continue;
      auto [it, inserted] = index.try_emplace(std::string(word), entries.size());
      if (inserted) {
        entries.push_back({std::string(word), *freq, type});
      } else {
        entries[it->second].frequency += *freq;
      }
    }
  }
  if (in.bad()) throw IoError(source + ": read failure after line " +
                              std::to_string(line_no));
  if (!saw_data) throw EmptyInputError(source + ": no concept lines");
  return entries;
}

std::vector<ConceptEntry> LoadConcepts(const std::filesystem::path& path,
                                       const SemanticType& type) {
  auto in = OpenForRead(path);
  return LoadConcepts(in, type, path.string());
}

std::uint64_t SubstringCorpus::Count(std::string_view key) const {
  auto it = entries.find(key);
  return it == entries.end() ? 0 : it->second;
}

void SubstringCorpus::Add(std::string_view key, std::uint64_t count) {
  auto it = entries.find(key);
  if (it == entries.end()) {
    entries.emplace(std::string(key), count);
  } else {
    it->second += count;
  }
  total += count;
}

SubstringCorpus BuildSubstringCorpus(std::span<const ConceptEntry> concepts,
                                     std::size_t max_substring_length) {
  if (concepts.empty()) throw EmptyInputError("no concepts to count");
  if (max_substring_length == 0) {
    throw ConfigError("substring length cap must be >= 1");
  }
  SubstringCorpus corpus;
  corpus.label = concepts.front().semantic_type.name();
  for (const ConceptEntry& c : concepts) {
    if (c.semantic_type != concepts.front().semantic_type) {
      throw ConfigError("mixed semantic types in one sub-corpus: '" +
                        concepts.front().semantic_type.name() + "' and '" +
                        c.semantic_type.name() + "'");
    }
    const std::string_view word = c.surface;
    for (std::size_t begin = 0; begin < word.size(); ++begin) {
      const std::size_t max_len =
          std::min(max_substring_length, word.size() - begin);
      for (std::size_t len = 1; len <= max_len; ++len) {
        corpus.Add(word.substr(begin, len), c.frequency);
      }
    }
  }
  return corpus;
}

SubstringCorpus MergeCorpora(std::span<const SubstringCorpus> parts) {
  if (parts.empty()) throw EmptyInputError("no corpora to merge");
  SubstringCorpus merged;
  merged.label = "C";
  for (const SubstringCorpus& part : parts) {
    for (const auto& [key, count] : part.entries) merged.Add(key, count);
  }
  return merged;
}

void SaveCorpus(const SubstringCorpus& corpus, std::ostream& out) {
  std::vector<std::pair<std::string_view, std::uint64_t>> rows(
      corpus.entries.begin(), corpus.entries.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  out << kCorpusMagic << corpus.total << '\n';
  for (const auto& [key, count] : rows) out << key << '\t' << count << '\n';
}

void SaveCorpus(const SubstringCorpus& corpus,
                const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveCorpus(corpus, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

SubstringCorpus LoadCorpus(std::istream& in, const std::string& source) {
  std::string raw;
  if (!std::getline(in, raw)) throw EmptyInputError(source + ": empty corpus file");
  std::string_view header = ChompCr(raw);
  if (!header.starts_with(kCorpusMagic)) {
    throw ParseError(source, 1, "expected '#ktok-corpus v1 total=<N>' header");
  }
  const auto declared = ParseUint(header.substr(kCorpusMagic.size()));
  if (!declared) throw ParseError(source, 1, "bad total in header");

  SubstringCorpus corpus;
  corpus.label = "C";
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = ChompCr(raw);
    const auto fields = SplitOn(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(source, line_no, "expected substring<TAB>count");
    }
    if (fields[0].empty()) throw ParseError(source, line_no, "empty substring");
    const auto count = ParseUint(fields[1]);
    if (!count) throw ParseError(source, line_no, "non-numeric count");
    if (corpus.entries.contains(fields[0])) {
      throw ParseError(source, line_no,
                       "duplicate substring '" + std::string(fields[0]) + "'");
    }
    corpus.Add(fields[0], *count);
  }
  if (in.bad()) throw IoError(source + ": read failure");
  if (corpus.total != *declared) {
    throw ParseError(source, 1,
                     "header total " + std::to_string(*declared) +
                         " does not match sum of counts " +
                         std::to_string(corpus.total));
  }
  return corpus;
}

SubstringCorpus LoadCorpus(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return LoadCorpus(in, path.string());
}

}  // namespace ktok
