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

#include "ktok/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "ktok/errors.h"
#include "ktok/subword.h"

namespace ktok {
namespace {

// Rounds to 12 significant digits so traces do not depend on the last bits
// of the platform's log().
double ForTrace(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

Score ScoreSegmentation(std::span<const std::string> pieces,
                        const SubstringCorpus& corpus_c,
                        std::string_view marker,
                        const ScoringOptions& options) {
  if (corpus_c.total == 0) throw ConfigError("scoring corpus is empty");
  const double denom =
      options.smoothing
          ? static_cast<double>(corpus_c.total) +
                static_cast<double>(corpus_c.distinct())
          : static_cast<double>(corpus_c.total);
  const bool product = options.mode == ProbabilityMode::kProduct;
  double p = product ? 1.0 : 0.0;
  for (const std::string& piece : pieces) {
    const double count =
        static_cast<double>(corpus_c.Count(StripMarker(piece, marker)));
    const double q = (options.smoothing ? count + 1.0 : count) / denom;
    p = product ? p * q : p + q;
  }
  p = std::clamp(p, std::numeric_limits<double>::min(),
                 1.0 - kProbabilityEpsilon);
  return {p, p * std::log(p)};
}

void ScoreInPlace(Segmentation& seg, const SubstringCorpus& corpus_c,
                  std::string_view marker, const ScoringOptions& options) {
  const Score s = ScoreSegmentation(seg.pieces, corpus_c, marker, options);
  seg.probability = s.probability;
  seg.entropy = s.entropy;
}

const Segmentation& WordChoice::chosen_segmentation() const {
  for (const Segmentation& s : candidates) {
    if (s.source_id == chosen) return s;
  }
  return candidates.front();
}

bool WordChoice::IsEligible(std::string_view id) const {
  return std::find(eligible.begin(), eligible.end(), id) != eligible.end();
}

bool IsEligibleCandidate(const Segmentation& seg, const TokenizerPool& pool) {
  const Tokenizer& base = pool.default_tokenizer;
  for (const std::string& piece : seg.pieces) {
    if (piece == base.unk_token()) return false;
    if (pool.corpus_c.Count(StripMarker(piece, base.marker())) <
        pool.min_freq) {
      return false;
    }
  }
  return true;
}

WordChoice OptimizeWord(std::string_view word, const TokenizerPool& pool,
                        const ScoringOptions& options) {
  WordChoice choice;
  choice.word = std::string(word);
  const std::string& marker = pool.default_tokenizer.marker();
  double best = std::numeric_limits<double>::infinity();
  for (const Tokenizer* t : pool.members()) {
    Segmentation seg = t->Tokenize(word);
    ScoreInPlace(seg, pool.corpus_c, marker, options);
    const bool is_default = t == &pool.default_tokenizer;
    if (is_default || IsEligibleCandidate(seg, pool)) {
      choice.eligible.push_back(t->id());
      // Strict comparison: earlier pool members win ties.
      if (seg.entropy < best) {
        best = seg.entropy;
        choice.chosen = t->id();
      }
    }
    choice.candidates.push_back(std::move(seg));
  }
  return choice;
}

FertilityReport MakeFertilityReport(std::span<const WordChoice> words) {
  FertilityReport r;
  for (const WordChoice& w : words) {
    const std::size_t fb = w.default_segmentation().fertility();
    const std::size_t fk = w.chosen_segmentation().fertility();
    r.default_per_word.push_back(fb);
    r.optimized_per_word.push_back(fk);
    r.default_total += fb;
    r.optimized_total += fk;
  }
  if (r.default_total > 0) {
    r.reduction = (static_cast<double>(r.default_total) -
                   static_cast<double>(r.optimized_total)) /
                  static_cast<double>(r.default_total);
  }
  return r;
}

SentenceOutput GateSentence(std::vector<WordChoice> words, double threshold) {
  SentenceOutput out;
  out.words = std::move(words);
  out.report = MakeFertilityReport(out.words);
  out.gated = !out.words.empty() && out.report.reduction > threshold;
  for (const WordChoice& w : out.words) {
    const Segmentation& seg =
        out.gated ? w.default_segmentation() : w.chosen_segmentation();
    out.final_pieces.insert(out.final_pieces.end(), seg.pieces.begin(),
                            seg.pieces.end());
  }
  return out;
}

SentenceOutput OptimizeSentence(std::span<const std::string> words,
                                const TokenizerPool& pool,
                                const ScoringOptions& options) {
  std::vector<WordChoice> choices;
  choices.reserve(words.size());
  for (const std::string& w : words) {
    choices.push_back(OptimizeWord(w, pool, options));
  }
  return GateSentence(std::move(choices), pool.fertility_threshold);
}

std::string FormatPieces(const SentenceOutput& out) {
  std::string line;
  for (const std::string& p : out.final_pieces) {
    if (!line.empty()) line.push_back(' ');
    line += p;
  }
  return line;
}

std::string FormatTrace(const SentenceOutput& out, std::size_t line_no) {
  using nlohmann::ordered_json;
  ordered_json words = ordered_json::array();
  for (const WordChoice& w : out.words) {
    ordered_json candidates = ordered_json::array();
    for (const Segmentation& s : w.candidates) {
      candidates.push_back({{"id", s.source_id},
                            {"pieces", s.pieces},
                            {"p", ForTrace(s.probability)},
                            {"H", ForTrace(s.entropy)},
                            {"eligible", w.IsEligible(s.source_id)}});
    }
    words.push_back({{"word", w.word},
                     {"candidates", std::move(candidates)},
                     {"chosen", w.chosen}});
  }
  ordered_json record = {{"line", line_no},
                         {"words", std::move(words)},
                         {"F_B", out.report.default_total},
                         {"F_K", out.report.optimized_total},
                         {"F_th", ForTrace(out.report.reduction)},
                         {"gated", out.gated},
                         {"pieces", out.final_pieces}};
  return record.dump();
}

std::size_t TokenizeCorpus(
    std::istream& in, const TokenizerPool& pool,
    const std::function<void(std::size_t, const SentenceOutput&)>& sink,
    const ScoringOptions& options, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> words = SplitWords(line);
    sink(line_no, OptimizeSentence(words, pool, options));
  }
  if (in.bad()) {
    throw IoError(source + ": read failure after line " +
                  std::to_string(line_no));
  }
  return line_no;
}

std::size_t TokenizeCorpus(std::istream& in, const TokenizerPool& pool,
                           OutputMode mode, std::ostream& out,
                           const ScoringOptions& options,
                           const std::string& source) {
  return TokenizeCorpus(
      in, pool,
      [&](std::size_t line_no, const SentenceOutput& s) {
        out << (mode == OutputMode::kTrace ? FormatTrace(s, line_no)
                                           : FormatPieces(s))
            << '\n';
        if (!out) {
          throw IoError("write failure at input line " +
                        std::to_string(line_no));
        }
      },
      options, source);
}

}  // namespace ktok
