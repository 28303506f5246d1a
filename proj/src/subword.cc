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

#include "ktok/subword.h"

namespace ktok {

LongestMatchResult LongestMatch(
    std::string_view word,
    const std::function<bool(std::string_view)>& contains,
    std::string_view marker, bool continuation_start) {
  LongestMatchResult result;
  std::string probe;
  std::size_t cursor = 0;
  while (cursor < word.size()) {
    const bool marked = cursor > 0 || continuation_start;
    bool matched = false;
    for (std::size_t end = word.size(); end > cursor; --end) {
      probe.clear();
      if (marked) probe += marker;
      probe += word.substr(cursor, end - cursor);
      if (contains(probe)) {
        result.pieces.push_back(probe);
        cursor = end;
        matched = true;
        break;
      }
    }
    if (!matched) {
      result.failed_at = cursor;
      return result;
    }
  }
  return result;
}

}  // namespace ktok
