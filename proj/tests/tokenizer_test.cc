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

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "ktok/errors.h"
#include "ktok/optimizer.h"
#include "ktok/pool.h"
#include "ktok/subword.h"
#include "ktok/tokenizer.h"
#include "oracles.h"

namespace ktok {
namespace {

using ::ktok::testing::MakeLearned;
using ::ktok::testing::MakeTokenizer;
using ::ktok::testing::MeropenemBase;
using ::ktok::testing::MeropenemDrug;
using Pieces = std::vector<std::string>;

TEST(TokenizeTest, MeropenemWithBaseVocabulary) {
  EXPECT_EQ(MeropenemBase().Tokenize("meropenem").pieces,
            (Pieces{"me", "##rop", "##ene", "##m"}));
}

TEST(TokenizeTest, SingleCharacter) {
  EXPECT_EQ(MakeTokenizer("base", {}).Tokenize("a").pieces, Pieces{"a"});
}

TEST(TokenizeTest, UncoverableWordIsUnk) {
  const Tokenizer t("base", {"[UNK]", "q", "##a"});
  const Segmentation seg = t.Tokenize("qz");
  EXPECT_EQ(seg.pieces, Pieces{"[UNK]"});
  EXPECT_EQ(seg.source_id, "base");
}

TEST(TokenizeTest, OverlongWordIsUnk) {
  TokenizerOptions opts;
  opts.max_input_chars_per_word = 5;
  const Tokenizer t("base", testing::AlphabetTokens(), opts);
  EXPECT_EQ(t.Tokenize("abcde").fertility(), 5u);
  EXPECT_EQ(t.Tokenize("abcdef").pieces, Pieces{"[UNK]"});
}

TEST(TokenizeTest, EmptyWordIsUnk) {
  EXPECT_EQ(MakeTokenizer("base", {}).Tokenize("").pieces, Pieces{"[UNK]"});
}

TEST(TokenizeTest, BareTokensNeverMatchMidWord) {
  // "ab" exists only bare, so the second position must use ##b.
  const Tokenizer t = MakeTokenizer("base", {"ab"});
  EXPECT_EQ(t.Tokenize("aab").pieces, (Pieces{"a", "##a", "##b"}));
}

TEST(TokenizeTest, ContinuationFormStartsMarked) {
  const Tokenizer t = MakeTokenizer("base", {"##pen", "pene"});
  EXPECT_EQ(t.TokenizeContinuation("penem"),
            (Pieces{"##pen", "##e", "##m"}));
  const Tokenizer bare("base", {"[UNK]", "q"});
  EXPECT_FALSE(bare.TokenizeContinuation("q").has_value());
}

TEST(TokenizeTest, ConstructorRejectsDuplicatesAndMissingUnk) {
  EXPECT_THROW(Tokenizer("b", {"[UNK]", "a", "a"}), ConfigError);
  EXPECT_THROW(Tokenizer("b", {"a"}), ConfigError);
}

TEST(TokenizeTest, AlphabetCoverage) {
  EXPECT_TRUE(MakeTokenizer("b", {}).CoversAlphabet());
  EXPECT_FALSE(Tokenizer("b", {"[UNK]", "a"}).CoversAlphabet());
}

TEST(TokenizeTest, ReconstructionAgainstOracle) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::string> extra;
    const std::vector<std::string> alphabet = testing::AlphabetTokens();
    std::set<std::string> vocab(alphabet.begin(), alphabet.end());
    const int n = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int i = 0; i < n; ++i) {
      std::string s = testing::RandomWord(rng, 2, 5, 5);
      if (rng() % 2) s = "##" + s;
      if (vocab.insert(s).second) extra.push_back(s);
    }
    const Tokenizer t = MakeTokenizer("base", extra);
    for (int k = 0; k < 20; ++k) {
      const std::string word = testing::RandomWord(rng, 1, 14, 5);
      const Pieces pieces = t.Tokenize(word).pieces;
      ASSERT_EQ(JoinStripped(pieces, "##"), word);
      for (const std::string& p : pieces) ASSERT_TRUE(t.Contains(p));
      ASSERT_EQ(pieces, *testing::OracleLongestMatch(word, vocab, "##"));
    }
  }
}

TEST(AugmentTest, EmptyLearnedIsIdentityOnTokenization) {
  const Tokenizer base = MeropenemBase();
  const Tokenizer aug = Augment(base, MakeLearned("drug", {}));
  EXPECT_EQ(aug.tokens(), base.tokens());
  EXPECT_EQ(aug.id(), "drug");
  EXPECT_EQ(aug.Tokenize("meropenem").pieces,
            base.Tokenize("meropenem").pieces);
}

TEST(AugmentTest, MeropenemWithLearnedSuffix) {
  const Tokenizer aug = Augment(MeropenemBase(), MeropenemDrug());
  EXPECT_EQ(aug.Tokenize("meropenem").pieces,
            (Pieces{"me", "##rop", "##enem"}));
}

TEST(AugmentTest, VocabularyIsUnionAndBaseUnchanged) {
  const Tokenizer base = MeropenemBase();
  const std::vector<std::string> before = base.tokens();
  const LearnedVocab learned = MakeLearned("drug", {"##enem", "me", "zz"});
  const Tokenizer aug = Augment(base, learned);
  EXPECT_EQ(base.tokens(), before);
  EXPECT_EQ(aug.size(), base.size() + 2);
  for (const std::string& t : base.tokens()) EXPECT_TRUE(aug.Contains(t));
  for (const std::string& t : learned.subwords) EXPECT_TRUE(aug.Contains(t));
  EXPECT_EQ(aug.tokens().back(), "zz");
}

TEST(AugmentTest, Idempotent) {
  const LearnedVocab learned = MakeLearned("drug", {"##enem", "xy"});
  const Tokenizer once = Augment(MeropenemBase(), learned);
  const Tokenizer twice = Augment(once, learned);
  EXPECT_EQ(once.tokens(), twice.tokens());
}

TEST(AugmentTest, DisjointLearnedTokensLeaveBaseSegmentationsAlone) {
  // Learned pieces use letters the probe words never contain.
  const Tokenizer base = MakeTokenizer("base", {"ab", "##bc", "##ca"});
  const Tokenizer aug =
      Augment(base, MakeLearned("drug", {"xyz", "##zx", "##xx"}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::string w = testing::RandomWord(rng, 1, 12, 3);
    ASSERT_EQ(aug.Tokenize(w).pieces, base.Tokenize(w).pieces) << w;
  }
}

TEST(PoolTest, ZeroLearnedFallsBackToDefault) {
  const TokenizerPool pool =
      BuildPool(MeropenemBase(), {}, testing::MeropenemCorpus());
  EXPECT_EQ(pool.size(), 1u);
  const WordChoice c = OptimizeWord("meropenem", pool);
  EXPECT_EQ(c.chosen, "base");
  EXPECT_EQ(c.chosen_segmentation().pieces,
            MeropenemBase().Tokenize("meropenem").pieces);
}

TEST(PoolTest, MembersInOrder) {
  const std::vector<LearnedVocab> learned = {MakeLearned("drug", {"##enem"}),
                                             MakeLearned("disease", {"##itis"})};
  const TokenizerPool pool =
      BuildPool(MeropenemBase(), learned, testing::MeropenemCorpus());
  ASSERT_EQ(pool.size(), 3u);
  const auto m = pool.members();
  EXPECT_EQ(m[0]->id(), "base");
  EXPECT_EQ(m[1]->id(), "drug");
  EXPECT_EQ(m[2]->id(), "disease");
  EXPECT_EQ(pool.Find("disease"), m[2]);
  EXPECT_EQ(pool.Find("gene"), nullptr);
}

TEST(PoolTest, RejectsDuplicateTypes) {
  const std::vector<LearnedVocab> dup = {MakeLearned("drug", {}),
                                         MakeLearned("drug", {"x"})};
  EXPECT_THROW(BuildPool(MeropenemBase(), dup, testing::MeropenemCorpus()),
               ConfigError);
  const std::vector<LearnedVocab> clash = {MakeLearned("base", {})};
  EXPECT_THROW(BuildPool(MeropenemBase(), clash, testing::MeropenemCorpus()),
               ConfigError);
}

TEST(VocabFileTest, RoundTripWithoutHeader) {
  const std::string text = "[UNK]\na\n##b\nme\n";
  std::istringstream in(text);
  const Tokenizer t = LoadVocab(in);
  EXPECT_FALSE(t.has_header());
  EXPECT_EQ(t.id(), "base");
  std::ostringstream out;
  SaveVocab(t, out);
  EXPECT_EQ(out.str(), text);
}

TEST(VocabFileTest, RoundTripWithHeader) {
  const std::string text = "#ktok-vocab v1 type=drug\n[UNK]\n##enem\n";
  std::istringstream in(text);
  const Tokenizer t = LoadVocab(in);
  EXPECT_TRUE(t.has_header());
  EXPECT_EQ(t.id(), "drug");
  std::ostringstream out;
  SaveVocab(t, out);
  EXPECT_EQ(out.str(), text);
}

TEST(VocabFileTest, DuplicateLineReportsLineNumber) {
  std::istringstream in("[UNK]\n##ol\na\n##ol\n");
  try {
    LoadVocab(in, "v.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("##ol"), std::string::npos);
  }
}

TEST(VocabFileTest, MissingUnkAndEmptyLines) {
  std::istringstream no_unk("a\nb\n");
  EXPECT_THROW(LoadVocab(no_unk), ParseError);
  std::istringstream blank("[UNK]\n\na\n");
  EXPECT_THROW(LoadVocab(blank), ParseError);
}

TEST(VocabFileTest, CrLfLinesAreAccepted) {
  std::istringstream in("[UNK]\r\na\r\n");
  const Tokenizer t = LoadVocab(in);
  EXPECT_TRUE(t.Contains("a"));
}

TEST(VocabFileTest, MissingPathNamesFile) {
  try {
    LoadVocab(std::filesystem::path("/nonexistent/vocab.txt"));
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/vocab.txt"),
              std::string::npos);
  }
}

}  // namespace
}  // namespace ktok
