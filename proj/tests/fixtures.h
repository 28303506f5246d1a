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

// Hand-built vocabularies and corpora shared by several test binaries.

#ifndef KTOK_TESTS_FIXTURES_H_
#define KTOK_TESTS_FIXTURES_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ktok/corpus.h"
#include "ktok/learner.h"
#include "ktok/pool.h"
#include "ktok/tokenizer.h"

namespace ktok::testing {

// [UNK] plus every a-z and 0-9 in bare and continuation form.
inline std::vector<std::string> AlphabetTokens() {
  std::vector<std::string> tokens = {"[UNK]"};
  auto add = [&](char c) {
    tokens.push_back(std::string(1, c));
    tokens.push_back("##" + std::string(1, c));
  };
  for (char c = 'a'; c <= 'z'; ++c) add(c);
  for (char c = '0'; c <= '9'; ++c) add(c);
  return tokens;
}

inline Tokenizer MakeTokenizer(const std::string& id,
                               const std::vector<std::string>& extra,
                               bool with_alphabet = true) {
  std::vector<std::string> tokens =
      with_alphabet ? AlphabetTokens() : std::vector<std::string>{"[UNK]"};
  std::set<std::string> seen(tokens.begin(), tokens.end());
  for (const auto& t : extra) {
    if (seen.insert(t).second) tokens.push_back(t);
  }
  return Tokenizer(id, tokens);
}

inline LearnedVocab MakeLearned(const std::string& type,
                                std::set<std::string> subwords) {
  LearnedVocab v;
  v.semantic_type = SemanticType(type);
  v.subwords = std::move(subwords);
  return v;
}

inline SubstringCorpus MakeCorpus(
    const std::map<std::string, std::uint64_t>& counts) {
  SubstringCorpus c;
  c.label = "C";
  for (const auto& [k, v] : counts) c.Add(k, v);
  return c;
}

// Default vocabulary that splits "meropenem" into me ##rop ##ene ##m.
inline Tokenizer MeropenemBase() {
  return MakeTokenizer("base", {"me", "##rop", "##ene", "##m"});
}

// Drug vocabulary contributing ##enem.
inline LearnedVocab MeropenemDrug() { return MakeLearned("drug", {"##enem"}); }

// Every piece of both candidates clears min_freq 1000, and ##enem is far
// more probable than ##ene followed by ##m.
inline SubstringCorpus MeropenemCorpus() {
  return MakeCorpus({{"me", 5000},
                     {"rop", 1500},
                     {"ene", 3000},
                     {"m", 20000},
                     {"enem", 1200},
                     {"filler", 69300}});
}

inline TokenizerPool MeropenemPool(double threshold = 1.0,
                                   std::uint64_t min_freq = 1000) {
  const std::vector<LearnedVocab> learned = {MeropenemDrug()};
  return BuildPool(MeropenemBase(), learned, MeropenemCorpus(), min_freq,
                   threshold);
}

}  // namespace ktok::testing

#endif  // KTOK_TESTS_FIXTURES_H_
