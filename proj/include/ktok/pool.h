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

#ifndef KTOK_POOL_H_
#define KTOK_POOL_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ktok/corpus.h"
#include "ktok/learner.h"
#include "ktok/tokenizer.h"

namespace ktok {

inline constexpr std::uint64_t kDefaultMinFreq = 1000;

// The default tokenizer plus one augmented tokenizer per semantic type, the
// merged substring corpus used for scoring, and the selection thresholds.
// Augmented tokenizers are kept in priority order (ties favour earlier ones,
// and the default before all of them).
struct TokenizerPool {
  Tokenizer default_tokenizer;
  std::vector<Tokenizer> augmented;
  SubstringCorpus corpus_c;
  std::uint64_t min_freq = kDefaultMinFreq;
  double fertility_threshold = 1.0;

  const std::string& default_id() const { return default_tokenizer.id(); }
  std::size_t size() const { return 1 + augmented.size(); }

  // All tokenizers, default first. Pointers stay valid while the pool lives.
  std::vector<const Tokenizer*> members() const;
  const Tokenizer* Find(std::string_view id) const;
};

// Throws ConfigError on a repeated semantic type, a type that clashes with
// the default tokenizer id, or a NaN threshold.
TokenizerPool BuildPool(const Tokenizer& base,
                        std::span<const LearnedVocab> learned,
                        SubstringCorpus corpus_c,
                        std::uint64_t min_freq = kDefaultMinFreq,
                        double fertility_threshold = 1.0);

}  // namespace ktok

#endif  // KTOK_POOL_H_
