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

#include "ktok/analysis.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include "ktok/corpus.h"
#include "ktok/errors.h"
#include "ktok/io_util.h"

namespace ktok {

bool IsValidBioLabel(std::string_view label) {
  if (label == "O") return true;
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
         label[1] == '-';
}

std::string BioClass(std::string_view label) {
  if (label == "O") return "O";
  return std::string(label.substr(2));
}

std::vector<std::vector<AnnotatedToken>> LoadBio(std::istream& in,
                                                 const std::string& source) {
  std::vector<std::vector<AnnotatedToken>> sentences(1);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = ChompCr(raw);
    if (line.empty()) {
      if (!sentences.back().empty()) sentences.emplace_back();
      continue;
    }
    const auto fields = SplitOn(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(source, line_no, "expected word<TAB>label");
    }
    if (!IsValidBioLabel(fields[1])) {
      throw ParseError(source, line_no,
                       "bad BIO label '" + std::string(fields[1]) + "'");
    }
    sentences.back().push_back({std::string(fields[0]), std::string(fields[1])});
  }
  if (in.bad()) throw IoError(source + ": read failure");
  if (sentences.back().empty()) sentences.pop_back();
  return sentences;
}

std::vector<std::vector<AnnotatedToken>> LoadBio(
    const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return LoadBio(in, path.string());
}

std::vector<ClassFertilityStats> FertilityByClass(
    std::span<const AnnotatedToken> annotated, const TokenizerPool& pool,
    const ScoringOptions& options) {
  struct Sums {
    std::size_t fb = 0, fk = 0, n = 0;
  };
  std::map<std::string, Sums> by_class;
  for (const AnnotatedToken& t : annotated) {
    if (!IsValidBioLabel(t.bio_label)) {
      throw ConfigError("bad BIO label '" + t.bio_label + "'");
    }
    for (const std::string& w : SplitWords(t.word)) {
      const WordChoice choice = OptimizeWord(w, pool, options);
      Sums& s = by_class[BioClass(t.bio_label)];
      s.fb += choice.default_segmentation().fertility();
      s.fk += choice.chosen_segmentation().fertility();
      ++s.n;
    }
  }
  std::vector<ClassFertilityStats> rows;
  for (const auto& [label, s] : by_class) {
    const double n = static_cast<double>(s.n);
    rows.push_back({label, static_cast<double>(s.fb) / n,
                    static_cast<double>(s.fk) / n, s.n});
  }
  return rows;
}

double SelectionAudit::ReferenceAccuracy() const {
  if (records.empty()) return 0.0;
  std::size_t hits = 0;
  for (const AuditRecord& r : records) {
    if (std::find(reference_ids.begin(), reference_ids.end(),
                  r.choice.chosen) != reference_ids.end()) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

SelectionAudit AuditSelection(std::span<const std::string> words,
                              const TokenizerPool& pool,
                              std::vector<std::string> reference_ids,
                              const ScoringOptions& options) {
  if (reference_ids.empty()) {
    reference_ids.push_back(pool.default_id());
    if (!pool.augmented.empty()) {
      reference_ids.push_back(pool.augmented.front().id());
    }
  }
  for (const std::string& id : reference_ids) {
    if (pool.Find(id) == nullptr) {
      throw ConfigError("unknown reference tokenizer '" + id + "'");
    }
  }
  SelectionAudit audit;
  audit.reference_ids = reference_ids;
  for (const Tokenizer* t : pool.members()) audit.chosen_counts[t->id()] = 0;
  for (const std::string& w : words) {
    AuditRecord rec{OptimizeWord(w, pool, options), true};
    const auto& chosen = rec.choice.chosen_segmentation().pieces;
    for (const Segmentation& s : rec.choice.candidates) {
      const bool is_reference =
          std::find(reference_ids.begin(), reference_ids.end(),
                    s.source_id) != reference_ids.end();
      if (is_reference && s.pieces == chosen) rec.divergent = false;
    }
    ++audit.chosen_counts[rec.choice.chosen];
    if (rec.divergent) audit.divergent.push_back(w);
    audit.records.push_back(std::move(rec));
  }
  return audit;
}

std::vector<SweepRow> ThresholdSweep(
    std::span<const std::vector<std::string>> sentences,
    const TokenizerPool& pool, std::span<const double> thresholds,
    const ScoringOptions& options) {
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError("sweep thresholds must lie in [0, 1]");
    }
  }
  struct Summary {
    FertilityReport report;
    std::size_t words = 0;
    std::size_t changed = 0;
  };
  std::vector<Summary> summaries;
  std::size_t total_words = 0;
  for (const auto& sentence : sentences) {
    if (sentence.empty()) continue;
    std::vector<WordChoice> choices;
    Summary s;
    for (const std::string& w : sentence) {
      choices.push_back(OptimizeWord(w, pool, options));
      if (choices.back().chosen_segmentation().pieces !=
          choices.back().default_segmentation().pieces) {
        ++s.changed;
      }
    }
    s.words = sentence.size();
    s.report = MakeFertilityReport(choices);
    total_words += s.words;
    summaries.push_back(std::move(s));
  }

  std::vector<SweepRow> rows;
  for (double theta : thresholds) {
    SweepRow row;
    row.threshold = theta;
    row.sentences = summaries.size();
    std::size_t gated = 0, pieces = 0, changed = 0;
    for (const Summary& s : summaries) {
      const bool is_gated = s.report.reduction > theta;
      gated += is_gated ? 1 : 0;
      pieces += is_gated ? s.report.default_total : s.report.optimized_total;
      changed += is_gated ? 0 : s.changed;
    }
    if (!summaries.empty()) {
      const double n = static_cast<double>(summaries.size());
      row.gated_fraction = static_cast<double>(gated) / n;
      row.mean_sentence_fertility = static_cast<double>(pieces) / n;
      row.changed_word_fraction =
          static_cast<double>(changed) / static_cast<double>(total_words);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatRatio(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void WriteFertilityReport(std::span<const ClassFertilityStats> rows,
                          std::ostream& out) {
  out << "class\twords\tmean_fertility_default\tmean_fertility_k\n";
  for (const auto& r : rows) {
    out << r.class_label << '\t' << r.word_count << '\t'
        << FormatRatio(r.mean_fertility_default) << '\t'
        << FormatRatio(r.mean_fertility_k) << '\n';
  }
}

void WriteAudit(const SelectionAudit& audit, std::ostream& out) {
  out << "word\tchosen\tdivergent";
  const std::size_t n_candidates =
      audit.records.empty() ? 0 : audit.records.front().choice.candidates.size();
  if (!audit.records.empty()) {
    for (const auto& s : audit.records.front().choice.candidates) {
      out << '\t' << s.source_id;
    }
  }
  out << '\n';
  for (const AuditRecord& r : audit.records) {
    out << r.choice.word << '\t' << r.choice.chosen << '\t'
        << (r.divergent ? "yes" : "no");
    for (std::size_t i = 0; i < n_candidates; ++i) {
      out << '\t';
      const auto& pieces = r.choice.candidates[i].pieces;
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        if (j > 0) out << ' ';
        out << pieces[j];
      }
      if (!r.choice.IsEligible(r.choice.candidates[i].source_id)) {
        out << " (ineligible)";
      }
    }
    out << '\n';
  }
  out << "# chosen";
  for (const auto& [id, count] : audit.chosen_counts) {
    out << '\t' << id << '=' << count;
  }
  out << "\n# reference_accuracy\t" << FormatRatio(audit.ReferenceAccuracy())
      << '\n';
}

void WriteSweep(std::span<const SweepRow> rows, std::ostream& out) {
  out << "threshold\tsentences\tgated_fraction\tmean_sentence_fertility\t"
         "changed_word_fraction\n";
  for (const SweepRow& r : rows) {
    out << FormatRatio(r.threshold) << '\t' << r.sentences << '\t'
        << FormatRatio(r.gated_fraction) << '\t'
        << FormatRatio(r.mean_sentence_fertility) << '\t'
        << FormatRatio(r.changed_word_fraction) << '\n';
  }
}

}  // namespace ktok
