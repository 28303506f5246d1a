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

#ifndef KTOK_TOKENIZER_H_
#define KTOK_TOKENIZER_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ktok/learner.h"

namespace ktok {

struct TokenizerOptions {
  std::string unk_token = "[UNK]";
  std::size_t max_input_chars_per_word = 100;
  std::string continuation_marker = "##";
};

// A word segmentation produced by one tokenizer. `probability` and `entropy`
// are filled in by scoring.
struct Segmentation {
  std::vector<std::string> pieces;
  std::string source_id;
  double probability = 0.0;
  double entropy = 0.0;

  std::size_t fertility() const { return pieces.size(); }
};

// Greedy longest-match (WordPiece-style) tokenizer over a fixed vocabulary.
// Immutable after construction.
class Tokenizer {
 public:
  // Throws ConfigError on duplicate tokens or when the unk token is missing.
  Tokenizer(std::string id, std::vector<std::string> tokens,
            TokenizerOptions options = {}, bool has_header = false);

  const std::string& id() const { return id_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const TokenizerOptions& options() const { return options_; }
  const std::string& unk_token() const { return options_.unk_token; }
  const std::string& marker() const { return options_.continuation_marker; }
  bool has_header() const { return has_header_; }
  std::size_t size() const { return tokens_.size(); }

  bool Contains(std::string_view token) const {
    return lookup_.contains(std::string(token));
  }

  // Whole word maps to [unk] when it is too long or cannot be covered.
  Segmentation Tokenize(std::string_view word) const;

  // Like Tokenize, but the first piece is matched in continuation form.
  // Returns nullopt instead of unk on failure.
  std::optional<std::vector<std::string>> TokenizeContinuation(
      std::string_view core) const;

  // True when every a-z and 0-9 is present both bare and marked.
  bool CoversAlphabet() const;

 private:
  std::string id_;
  std::vector<std::string> tokens_;
  std::unordered_set<std::string> lookup_;
  TokenizerOptions options_;
  bool has_header_;
};

inline Segmentation TokenizeWord(const Tokenizer& t, std::string_view word) {
  return t.Tokenize(word);
}

// Base vocabulary followed by the learned subwords it lacks. The result is
// named after the learned semantic type; `base` is untouched.
Tokenizer Augment(const Tokenizer& base, const LearnedVocab& learned);

// Accepts `#ktok-vocab v1 type=<id>` files and plain one-token-per-line
// vocabularies (then `default_id` names the tokenizer).
Tokenizer LoadVocab(std::istream& in, const std::string& source = "<input>",
                    const std::string& default_id = "base",
                    TokenizerOptions options = {});
Tokenizer LoadVocab(const std::filesystem::path& path,
                    const std::string& default_id = "base",
                    TokenizerOptions options = {});
void SaveVocab(const Tokenizer& t, std::ostream& out);
void SaveVocab(const Tokenizer& t, const std::filesystem::path& path);

}  // namespace ktok

#endif  // KTOK_TOKENIZER_H_
