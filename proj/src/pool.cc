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

#include "ktok/pool.h"

#include <cmath>
#include <set>
#include <utility>

#include "ktok/errors.h"

namespace ktok {

std::vector<const Tokenizer*> TokenizerPool::members() const {
  std::vector<const Tokenizer*> all;
  all.reserve(size());
  all.push_back(&default_tokenizer);
  for (const Tokenizer& t : augmented) all.push_back(&t);
  return all;
}

const Tokenizer* TokenizerPool::Find(std::string_view id) const {
  for (const Tokenizer* t : members()) {
    if (t->id() == id) return t;
  }
  return nullptr;
}

TokenizerPool BuildPool(const Tokenizer& base,
                        std::span<const LearnedVocab> learned,
                        SubstringCorpus corpus_c, std::uint64_t min_freq,
                        double fertility_threshold) {
  if (std::isnan(fertility_threshold)) {
    throw ConfigError("fertility threshold is NaN");
  }
  std::set<std::string> seen = {base.id()};
  std::vector<Tokenizer> augmented;
  augmented.reserve(learned.size());
  for (const LearnedVocab& v : learned) {
    if (!seen.insert(v.semantic_type.name()).second) {
      throw ConfigError("semantic type '" + v.semantic_type.name() +
                        "' appears twice in the pool");
    }
    augmented.push_back(Augment(base, v));
  }
  return TokenizerPool{base, std::move(augmented), std::move(corpus_c),
                       min_freq, fertility_threshold};
}

}  // namespace ktok
