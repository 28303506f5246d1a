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

#ifndef KTOK_SUBWORD_H_
#define KTOK_SUBWORD_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ktok {

inline constexpr std::string_view kDefaultMarker = "##";

inline bool IsContinuation(std::string_view piece, std::string_view marker) {
  return piece.size() > marker.size() && piece.starts_with(marker);
}

inline std::string_view StripMarker(std::string_view piece,
                                    std::string_view marker) {
  return IsContinuation(piece, marker) ? piece.substr(marker.size()) : piece;
}

// Concatenation of pieces with continuation markers removed.
inline std::string JoinStripped(const std::vector<std::string>& pieces,
                                std::string_view marker) {
  std::string out;
  for (const auto& p : pieces) out += StripMarker(p, marker);
  return out;
}

// Outcome of a greedy longest-match scan: the pieces on success, otherwise
// the byte offset where nothing matched.
struct LongestMatchResult {
  std::vector<std::string> pieces;
  std::optional<std::size_t> failed_at;
};

// Left-to-right longest match of `word` against `contains`. Pieces after
// offset 0 are looked up with the marker prepended; with
// `continuation_start` the first piece is marked as well.
LongestMatchResult LongestMatch(
    std::string_view word,
    const std::function<bool(std::string_view)>& contains,
    std::string_view marker, bool continuation_start = false);

}  // namespace ktok

#endif  // KTOK_SUBWORD_H_
