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

// Tokenizer-level reports: fertility per entity class, selection audits
// over concept lists and fertility-threshold sweeps.

#ifndef KTOK_ANALYSIS_H_
#define KTOK_ANALYSIS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ktok/optimizer.h"
#include "ktok/pool.h"

namespace ktok {

struct AnnotatedToken {
  std::string word;
  std::string bio_label;
};

// True for "O", "B-<x>" and "I-<x>" with non-empty x.
bool IsValidBioLabel(std::string_view label);

// "B-Drug" and "I-Drug" -> "Drug"; "O" -> "O".
std::string BioClass(std::string_view label);

// CoNLL-style `word<TAB>label`; blank lines separate sentences.
std::vector<std::vector<AnnotatedToken>> LoadBio(
    std::istream& in, const std::string& source = "<input>");
std::vector<std::vector<AnnotatedToken>> LoadBio(
    const std::filesystem::path& path);

struct ClassFertilityStats {
  std::string class_label;
  double mean_fertility_default = 0.0;
  double mean_fertility_k = 0.0;
  std::size_t word_count = 0;
};

// Mean per-word fertility of the default tokenizer and of the word-level
// choice (no sentence gating), one row per class sorted by label. Words
// that normalise to nothing are skipped.
std::vector<ClassFertilityStats> FertilityByClass(
    std::span<const AnnotatedToken> annotated, const TokenizerPool& pool,
    const ScoringOptions& options = {});

struct AuditRecord {
  WordChoice choice;
  bool divergent = false;
};

struct SelectionAudit {
  std::vector<AuditRecord> records;
  // Chosen tokenizer id -> count; every pool member is listed.
  std::map<std::string, std::size_t> chosen_counts;
  // Words whose chosen pieces match none of the reference tokenizers.
  std::vector<std::string> divergent;
  // Reference tokenizers used for divergence.
  std::vector<std::string> reference_ids;

  // Share of words whose choice came from a reference tokenizer.
  double ReferenceAccuracy() const;
};

// `reference_ids` defaults to the default tokenizer plus the first augmented
// tokenizer, i.e. "baseline or the concept's own type".
SelectionAudit AuditSelection(std::span<const std::string> words,
                              const TokenizerPool& pool,
                              std::vector<std::string> reference_ids = {},
                              const ScoringOptions& options = {});

struct SweepRow {
  double threshold = 0.0;
  std::size_t sentences = 0;
  double gated_fraction = 0.0;
  double mean_sentence_fertility = 0.0;
  double changed_word_fraction = 0.0;
};

// Thresholds must lie in [0, 1]. Empty sentences are ignored.
std::vector<SweepRow> ThresholdSweep(
    std::span<const std::vector<std::string>> sentences,
    const TokenizerPool& pool, std::span<const double> thresholds,
    const ScoringOptions& options = {});

void WriteFertilityReport(std::span<const ClassFertilityStats> rows,
                          std::ostream& out);
void WriteAudit(const SelectionAudit& audit, std::ostream& out);
void WriteSweep(std::span<const SweepRow> rows, std::ostream& out);

// Fixed-precision decimal used by the TSV reports.
std::string FormatRatio(double v);

}  // namespace ktok

#endif  // KTOK_ANALYSIS_H_
