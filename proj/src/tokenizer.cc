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

#include "ktok/tokenizer.h"

#include <istream>
#include <ostream>
#include <utility>

#include "ktok/errors.h"
#include "ktok/io_util.h"
#include "ktok/subword.h"

namespace ktok {
namespace {

constexpr std::string_view kVocabMagic = "#ktok-vocab v1 type=";

}  // namespace

Tokenizer::Tokenizer(std::string id, std::vector<std::string> tokens,
                     TokenizerOptions options, bool has_header)
    : id_(std::move(id)),
      tokens_(std::move(tokens)),
      options_(std::move(options)),
      has_header_(has_header) {
  lookup_.reserve(tokens_.size());
  for (const std::string& t : tokens_) {
    if (!lookup_.insert(t).second) {
      throw ConfigError("duplicate token '" + t + "' in vocabulary '" + id_ +
                        "'");
    }
  }
  if (!lookup_.contains(options_.unk_token)) {
    throw ConfigError("vocabulary '" + id_ + "' lacks unk token '" +
                      options_.unk_token + "'");
  }
}

Segmentation Tokenizer::Tokenize(std::string_view word) const {
  Segmentation seg;
  seg.source_id = id_;
  if (word.empty() || word.size() > options_.max_input_chars_per_word) {
    seg.pieces = {options_.unk_token};
    return seg;
  }
  auto result = LongestMatch(
      word, [this](std::string_view p) { return Contains(p); },
      options_.continuation_marker);
  if (result.failed_at) {
    seg.pieces = {options_.unk_token};
  } else {
    seg.pieces = std::move(result.pieces);
  }
  return seg;
}

std::optional<std::vector<std::string>> Tokenizer::TokenizeContinuation(
    std::string_view core) const {
  if (core.empty() || core.size() > options_.max_input_chars_per_word) {
    return std::nullopt;
  }
  auto result = LongestMatch(
      core, [this](std::string_view p) { return Contains(p); },
      options_.continuation_marker, /*continuation_start=*/true);
  if (result.failed_at) return std::nullopt;
  return std::move(result.pieces);
}

bool Tokenizer::CoversAlphabet() const {
  auto covered = [&](char c) {
    const std::string bare(1, c);
    return Contains(bare) && Contains(options_.continuation_marker + bare);
  };
  for (char c = 'a'; c <= 'z'; ++c) {
    if (!covered(c)) return false;
  }
  for (char c = '0'; c <= '9'; ++c) {
    if (!covered(c)) return false;
  }
  return true;
}

Tokenizer Augment(const Tokenizer& base, const LearnedVocab& learned) {
  std::vector<std::string> tokens = base.tokens();
  for (const std::string& s : learned.subwords) {
    if (!base.Contains(s)) tokens.push_back(s);
  }
  return Tokenizer(learned.semantic_type.name(), std::move(tokens),
                   base.options(), /*has_header=*/true);
}

Tokenizer LoadVocab(std::istream& in, const std::string& source,
                    const std::string& default_id, TokenizerOptions options) {
  std::string id = default_id;
  bool has_header = false;
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = ChompCr(raw);
    if (line_no == 1 && line.starts_with(kVocabMagic)) {
      id = std::string(line.substr(kVocabMagic.size()));
      has_header = true;
      continue;
    }
    if (line.empty()) throw ParseError(source, line_no, "empty token");
    if (!seen.emplace(line).second) {
      throw ParseError(source, line_no,
                       "duplicate token '" + std::string(line) + "'");
    }
    tokens.emplace_back(line);
  }
  if (in.bad()) throw IoError(source + ": read failure");
  if (!seen.contains(options.unk_token)) {
    throw ParseError(source, 0,
                     "missing unk token '" + options.unk_token + "'");
  }
  return Tokenizer(std::move(id), std::move(tokens), std::move(options),
                   has_header);
}

Tokenizer LoadVocab(const std::filesystem::path& path,
                    const std::string& default_id, TokenizerOptions options) {
  auto in = OpenForRead(path);
  return LoadVocab(in, path.string(), default_id, std::move(options));
}

void SaveVocab(const Tokenizer& t, std::ostream& out) {
  if (t.has_header()) out << kVocabMagic << t.id() << '\n';
  for (const std::string& token : t.tokens()) out << token << '\n';
}

void SaveVocab(const Tokenizer& t, const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveVocab(t, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace ktok
