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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ktok/errors.h"
#include "oracles.h"

namespace ktok {
namespace {

const SemanticType kDrug("drug");
const SemanticType kDisease("disease");

std::vector<ConceptEntry> Load(const std::string& text,
                               const SemanticType& type = kDrug) {
  std::istringstream in(text);
  return LoadConcepts(in, type);
}

TEST(NormalizeTest, FoldsCaseAndTrims) {
  EXPECT_EQ(Normalize("AtenoLOL "), "atenolol");
}

TEST(NormalizeTest, DropsCharactersOutsideWhitelist) {
  // "β" is two UTF-8 bytes outside [a-z0-9-]; "!" is punctuation.
  EXPECT_EQ(Normalize("β-blocker!!"), "-blocker");
}

TEST(NormalizeTest, EmptyAndWhitespace) {
  EXPECT_EQ(Normalize(""), "");
  EXPECT_EQ(Normalize(" \t\n "), "");
  EXPECT_EQ(Normalize("  Mitral \t  Valve  "), "mitral valve");
  EXPECT_EQ(Normalize("a ! b"), "a b");
}

TEST(NormalizeTest, Idempotent) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 2000; ++i) {
    std::string raw(static_cast<std::size_t>(byte(rng) % 24), ' ');
    for (char& c : raw) c = static_cast<char>(byte(rng));
    const std::string once = Normalize(raw);
    ASSERT_EQ(Normalize(once), once);
  }
}

TEST(SplitWordsTest, PunctuationSeparatesWords) {
  EXPECT_EQ(SplitWords("Meropenem, 1g IV."),
            (std::vector<std::string>{"meropenem", "1g", "iv"}));
  EXPECT_EQ(SplitWords("beta-blocker"),
            (std::vector<std::string>{"beta-blocker"}));
  EXPECT_TRUE(SplitWords("  ... ").empty());
}

TEST(SemanticTypeTest, RejectsBadIdentifiers) {
  EXPECT_THROW(SemanticType(""), ConfigError);
  EXPECT_THROW(SemanticType("Drug"), ConfigError);
  EXPECT_THROW(SemanticType("dr ug"), ConfigError);
  EXPECT_EQ(SemanticType("sign_or_symptom").name(), "sign_or_symptom");
}

TEST(LoadConceptsTest, SingleLine) {
  EXPECT_EQ(Load("atenolol\t3\n"),
            (std::vector<ConceptEntry>{{"atenolol", 3, kDrug}}));
}

TEST(LoadConceptsTest, MultiWordConceptSplits) {
  EXPECT_EQ(Load("Mitral Valve\t2\n", kDisease),
            (std::vector<ConceptEntry>{{"mitral", 2, kDisease},
                                       {"valve", 2, kDisease}}));
}

TEST(LoadConceptsTest, DuplicatesAreSummed) {
  EXPECT_EQ(Load("atenolol\t3\natenolol\t4"),
            (std::vector<ConceptEntry>{{"atenolol", 7, kDrug}}));
  // Also when the duplicate only appears after normalisation.
  EXPECT_EQ(Load("Atenolol\t1\n# comment\nATENOLOL!\t2\n"),
            (std::vector<ConceptEntry>{{"atenolol", 3, kDrug}}));
}

TEST(LoadConceptsTest, MalformedLinesReportLineNumber) {
  try {
    Load("atenolol\t3\nno-tab-here\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    Load("# header\natenolol\tthree\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(Load("atenolol\t0\n"), ParseError);
}

TEST(LoadConceptsTest, EmptyInput) {
  EXPECT_THROW(Load(""), EmptyInputError);
  EXPECT_THROW(Load("# only a comment\n"), EmptyInputError);
}

TEST(LoadConceptsTest, MissingFileNamesPath) {
  try {
    LoadConcepts(std::filesystem::path("/nonexistent/lexicon.tsv"), kDrug);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/lexicon.tsv"),
              std::string::npos);
  }
}

TEST(SubstringCorpusTest, TwoCharacterWord) {
  const std::vector<ConceptEntry> c = {{"ab", 1, kDrug}};
  const SubstringCorpus corpus = BuildSubstringCorpus(c);
  EXPECT_EQ(corpus.entries.size(), 3u);
  EXPECT_EQ(corpus.Count("a"), 1u);
  EXPECT_EQ(corpus.Count("b"), 1u);
  EXPECT_EQ(corpus.Count("ab"), 1u);
  EXPECT_EQ(corpus.total, 3u);
  EXPECT_EQ(corpus.label, "drug");
}

TEST(SubstringCorpusTest, OverlappingOccurrencesCount) {
  const std::vector<ConceptEntry> c = {{"aa", 2, kDrug}};
  const SubstringCorpus corpus = BuildSubstringCorpus(c);
  EXPECT_EQ(corpus.Count("a"), 4u);
  EXPECT_EQ(corpus.Count("aa"), 2u);
  EXPECT_EQ(corpus.total, 6u);
}

TEST(SubstringCorpusTest, LinearInFrequency) {
  const std::vector<ConceptEntry> split = {{"ab", 1, kDrug}, {"ab", 1, kDrug}};
  const std::vector<ConceptEntry> merged = {{"ab", 2, kDrug}};
  EXPECT_EQ(BuildSubstringCorpus(split), BuildSubstringCorpus(merged));
  EXPECT_EQ(BuildSubstringCorpus(merged).Count("a"), 2u);
}

TEST(SubstringCorpusTest, MatchesPositionalEnumeration) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::vector<ConceptEntry> concepts;
    std::vector<std::pair<std::string, std::uint64_t>> plain;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      std::string w = testing::RandomWord(rng, 1, 30, 4);
      const std::uint64_t f = 1 + rng() % 5;
      concepts.push_back({w, f, kDrug});
      plain.emplace_back(w, f);
    }
    const SubstringCorpus corpus = BuildSubstringCorpus(concepts, 24);
    const auto expected = testing::OracleSubstrings(plain, 24);
    ASSERT_EQ(corpus.entries.size(), expected.size());
    std::uint64_t sum = 0;
    for (const auto& [k, v] : expected) {
      ASSERT_EQ(corpus.Count(k), v) << k;
      sum += v;
    }
    ASSERT_EQ(corpus.total, sum);
  }
}

TEST(SubstringCorpusTest, DistinctCharactersGiveTriangularCount) {
  for (std::size_t len = 1; len <= 20; ++len) {
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + i));
    const std::vector<ConceptEntry> c = {{w, 1, kDrug}};
    const SubstringCorpus corpus = BuildSubstringCorpus(c);
    EXPECT_EQ(corpus.distinct(), len * (len + 1) / 2);
    EXPECT_EQ(corpus.total, len * (len + 1) / 2);
  }
}

TEST(SubstringCorpusTest, LengthCapApplies) {
  const std::vector<ConceptEntry> c = {{"abcdef", 1, kDrug}};
  const SubstringCorpus corpus = BuildSubstringCorpus(c, 2);
  EXPECT_EQ(corpus.Count("abc"), 0u);
  EXPECT_EQ(corpus.Count("ab"), 1u);
  EXPECT_EQ(corpus.total, 6u + 5u);
}

TEST(SubstringCorpusTest, Errors) {
  EXPECT_THROW(BuildSubstringCorpus({}), EmptyInputError);
  const std::vector<ConceptEntry> mixed = {{"a", 1, kDrug}, {"b", 1, kDisease}};
  EXPECT_THROW(BuildSubstringCorpus(mixed), ConfigError);
}

SubstringCorpus FromMap(std::map<std::string, std::uint64_t> m) {
  SubstringCorpus c;
  for (const auto& [k, v] : m) c.Add(k, v);
  return c;
}

TEST(MergeCorporaTest, PointwiseSum) {
  const std::vector<SubstringCorpus> parts = {FromMap({{"a", 1}}),
                                              FromMap({{"a", 2}, {"b", 1}})};
  const SubstringCorpus merged = MergeCorpora(parts);
  EXPECT_EQ(merged, FromMap({{"a", 3}, {"b", 1}}));
  EXPECT_EQ(merged.label, "C");
  EXPECT_EQ(merged.total, 4u);
}

TEST(MergeCorporaTest, IdentityCommutativityAssociativity) {
  const SubstringCorpus x = FromMap({{"ol", 4}, {"olol", 2}});
  const SubstringCorpus y = FromMap({{"ol", 1}, {"enem", 9}});
  const SubstringCorpus z = FromMap({{"x", 3}});
  EXPECT_EQ(MergeCorpora(std::vector{x}), x);
  EXPECT_EQ(MergeCorpora(std::vector{x, y}), MergeCorpora(std::vector{y, x}));
  EXPECT_EQ(MergeCorpora(std::vector{MergeCorpora(std::vector{x, y}), z}),
            MergeCorpora(std::vector{x, MergeCorpora(std::vector{y, z})}));
  EXPECT_THROW(MergeCorpora({}), EmptyInputError);
}

TEST(MergeCorporaTest, MergedCountIsSumOfParts) {
  const auto drug = Load("atenolol\t3\ntimolol\t1\n");
  const auto disease = Load("colitis\t2\n", kDisease);
  const SubstringCorpus cd = BuildSubstringCorpus(drug);
  const SubstringCorpus cs = BuildSubstringCorpus(disease);
  const SubstringCorpus c = MergeCorpora(std::vector{cd, cs});
  for (const auto& [k, v] : c.entries) {
    ASSERT_EQ(v, cd.Count(k) + cs.Count(k));
  }
  EXPECT_EQ(c.total, cd.total + cs.total);
}

TEST(CorpusFileTest, SortedByCountThenSubstring) {
  std::ostringstream out;
  SaveCorpus(FromMap({{"b", 2}, {"a", 2}, {"ab", 5}}), out);
  EXPECT_EQ(out.str(), "#ktok-corpus v1 total=9\nab\t5\na\t2\nb\t2\n");
}

TEST(CorpusFileTest, RoundTrip) {
  const auto drug = Load("atenolol\t3\ntimolol\t1\nmeropenem\t2\n");
  std::ostringstream first;
  SaveCorpus(BuildSubstringCorpus(drug), first);
  std::istringstream in(first.str());
  std::ostringstream second;
  SaveCorpus(LoadCorpus(in), second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(CorpusFileTest, Errors) {
  auto load = [](const std::string& s) {
    std::istringstream in(s);
    return LoadCorpus(in);
  };
  EXPECT_THROW(load(""), EmptyInputError);
  EXPECT_THROW(load("a\t1\n"), ParseError);
  EXPECT_THROW(load("#ktok-corpus v1 total=2\na\t1\n"), ParseError);
  EXPECT_THROW(load("#ktok-corpus v1 total=2\na\t1\na\t1\n"), ParseError);
  EXPECT_THROW(load("#ktok-corpus v1 total=1\n\t1\n"), ParseError);
  EXPECT_THROW(load("#ktok-corpus v1 total=1\na\tx\n"), ParseError);
}

}  // namespace
}  // namespace ktok
