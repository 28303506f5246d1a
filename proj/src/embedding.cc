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

#include "ktok/embedding.h"

#include <unordered_set>

#include "ktok/subword.h"

namespace ktok {

const BackoffEntry* BackoffDictionary::Find(std::string_view subword) const {
  for (const BackoffEntry& e : entries) {
    if (e.subword == subword) return &e;
  }
  return nullptr;
}

std::optional<std::vector<std::string>> BackoffTargets(
    const Tokenizer& base, std::string_view subword) {
  if (IsContinuation(subword, base.marker())) {
    return base.TokenizeContinuation(StripMarker(subword, base.marker()));
  }
  Segmentation seg = base.Tokenize(subword);
  if (seg.pieces.size() == 1 && seg.pieces.front() == base.unk_token() &&
      subword != base.unk_token()) {
    return std::nullopt;
  }
  return std::move(seg.pieces);
}

BackoffDictionary BuildBackoff(const TokenizerPool& pool) {
  const Tokenizer& base = pool.default_tokenizer;
  BackoffDictionary dict;
  std::unordered_set<std::string> seen;
  for (const Tokenizer& t : pool.augmented) {
    for (const std::string& token : t.tokens()) {
      if (base.Contains(token) || !seen.insert(token).second) continue;
      auto targets = BackoffTargets(base, token);
      if (!targets) {
        dict.unmatched.push_back(token);
        targets = std::vector<std::string>{base.unk_token()};
      }
      dict.entries.push_back({token, std::move(*targets)});
    }
  }
  return dict;
}

void SaveBackoff(const BackoffDictionary& backoff, std::ostream& out) {
  for (const BackoffEntry& e : backoff.entries) {
    out << e.subword << '\t';
    for (std::size_t i = 0; i < e.targets.size(); ++i) {
      if (i > 0) out << ' ';
      out << e.targets[i];
    }
    out << '\n';
  }
}

void SaveBackoff(const BackoffDictionary& backoff,
                 const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveBackoff(backoff, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

BackoffDictionary LoadBackoff(std::istream& in, const std::string& source) {
  BackoffDictionary dict;
  std::unordered_set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = SplitOn(ChompCr(raw), '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source, line_no, "expected subword<TAB>targets");
    }
    BackoffEntry entry{std::string(fields[0]), {}};
    for (std::string_view t : SplitOn(fields[1], ' ')) {
      if (t.empty()) throw ParseError(source, line_no, "empty target token");
      entry.targets.emplace_back(t);
    }
    if (!seen.insert(entry.subword).second) {
      throw ParseError(source, line_no,
                       "duplicate entry '" + entry.subword + "'");
    }
    dict.entries.push_back(std::move(entry));
  }
  if (in.bad()) throw IoError(source + ": read failure");
  return dict;
}

BackoffDictionary LoadBackoff(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return LoadBackoff(in, path.string());
}

}  // namespace ktok
