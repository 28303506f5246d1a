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

// Embedding rows for new subwords, averaged from the default tokenizer's
// segmentation of each new subword (the back-off dictionary).

#ifndef KTOK_EMBEDDING_H_
#define KTOK_EMBEDDING_H_

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "ktok/errors.h"
#include "ktok/io_util.h"
#include "ktok/pool.h"

namespace ktok {

// Token-addressed dense matrix, one row per token, rows kept in insertion
// order.
template <typename Scalar>
class BasicEmbeddingMatrix {
 public:
  using Matrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using ConstMap = Eigen::Map<const Matrix>;

  BasicEmbeddingMatrix() = default;
  explicit BasicEmbeddingMatrix(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw ConfigError("embedding dimension must be >= 1");
  }

  Eigen::Index dim() const { return dim_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(order_.size()); }
  const std::vector<std::string>& order() const { return order_; }

  ConstMap values() const { return ConstMap(data_.data(), rows(), dim_); }

  std::optional<Eigen::Index> Find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  auto Row(Eigen::Index i) const { return values().row(i); }

  // Throws IntegrityError on a duplicate token, a wrong length or a
  // non-finite component.
  template <typename Derived>
  void AddRow(std::string token, const Eigen::MatrixBase<Derived>& row) {
    if (row.size() != dim_) {
      throw IntegrityError("row for '" + token + "' has " +
                           std::to_string(row.size()) + " components, expected " +
                           std::to_string(dim_));
    }
    for (Eigen::Index c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row(c))) {
        throw IntegrityError("non-finite value for '" + token + "' at column " +
                             std::to_string(c + 1));
      }
    }
    if (!index_.emplace(token, rows()).second) {
      throw IntegrityError("duplicate embedding row for '" + token + "'");
    }
    order_.push_back(std::move(token));
    for (Eigen::Index c = 0; c < row.size(); ++c) data_.push_back(row(c));
  }

 private:
  Eigen::Index dim_ = 0;
  std::vector<Scalar> data_;
  std::vector<std::string> order_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

using EmbeddingMatrix = BasicEmbeddingMatrix<double>;

struct BackoffEntry {
  std::string subword;
  std::vector<std::string> targets;

  friend bool operator==(const BackoffEntry&, const BackoffEntry&) = default;
};

struct BackoffDictionary {
  std::vector<BackoffEntry> entries;
  // New subwords the default tokenizer could not segment; they map to unk.
  std::vector<std::string> unmatched;

  const BackoffEntry* Find(std::string_view subword) const;
};

// Default-tokenizer segmentation of one subword. Marked subwords are
// segmented in continuation context so the first piece keeps the marker.
// Returns nullopt when no segmentation exists.
std::optional<std::vector<std::string>> BackoffTargets(const Tokenizer& base,
                                                       std::string_view subword);

// One entry per subword of an augmented tokenizer that the default lacks, in
// pool order then vocabulary order.
BackoffDictionary BuildBackoff(const TokenizerPool& pool);

// `new_subword<TAB>t1 t2 ... tl` per entry.
void SaveBackoff(const BackoffDictionary& backoff, std::ostream& out);
void SaveBackoff(const BackoffDictionary& backoff,
                 const std::filesystem::path& path);
BackoffDictionary LoadBackoff(std::istream& in,
                              const std::string& source = "<input>");
BackoffDictionary LoadBackoff(const std::filesystem::path& path);

// Base rows are copied unchanged; each new subword gets the mean of its
// target rows, accumulated left to right and divided by the target count.
template <typename Scalar>
BasicEmbeddingMatrix<Scalar> InitEmbeddings(
    const BasicEmbeddingMatrix<Scalar>& base,
    const BackoffDictionary& backoff) {
  BasicEmbeddingMatrix<Scalar> out(base.dim());
  for (Eigen::Index i = 0; i < base.rows(); ++i) {
    out.AddRow(base.order()[static_cast<std::size_t>(i)], base.Row(i));
  }
  typename BasicEmbeddingMatrix<Scalar>::RowVector acc(base.dim());
  for (const BackoffEntry& e : backoff.entries) {
    if (e.targets.empty()) {
      throw IntegrityError("back-off entry '" + e.subword + "' has no targets");
    }
    for (std::size_t j = 0; j < e.targets.size(); ++j) {
      const auto row = base.Find(e.targets[j]);
      if (!row) {
        throw IntegrityError("no base embedding for '" + e.targets[j] +
                             "' (back-off target of '" + e.subword + "')");
      }
      if (j == 0) {
        acc = base.Row(*row);
      } else {
        acc += base.Row(*row);
      }
    }
    acc /= static_cast<Scalar>(e.targets.size());
    out.AddRow(e.subword, acc);
  }
  return out;
}

namespace internal {

inline constexpr std::string_view kEmbMagic = "#ktok-emb v1 ";

template <typename Scalar>
void AppendScalar(std::string& line, Scalar v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  line.append(buf, ptr);
}

// Parses "key=<uint>" and returns the value.
inline std::optional<std::uint64_t> HeaderField(std::string_view field,
                                                std::string_view key) {
  if (!field.starts_with(key) || field.size() <= key.size() ||
      field[key.size()] != '=') {
    return std::nullopt;
  }
  return ParseUint(field.substr(key.size() + 1));
}

}  // namespace internal

// `#ktok-emb v1 n=<count> d=<dim>` then `token v1 ... vd` with shortest
// round-trip decimal encoding.
template <typename Scalar>
void SaveEmbeddings(const BasicEmbeddingMatrix<Scalar>& m, std::ostream& out) {
  out << internal::kEmbMagic << "n=" << m.rows() << " d=" << m.dim() << '\n';
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line = m.order()[static_cast<std::size_t>(i)];
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      line.push_back(' ');
      internal::AppendScalar(line, m.values()(i, c));
    }
    line.push_back('\n');
    out << line;
  }
}

template <typename Scalar>
void SaveEmbeddings(const BasicEmbeddingMatrix<Scalar>& m,
                    const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  SaveEmbeddings(m, out);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

template <typename Scalar = double>
BasicEmbeddingMatrix<Scalar> LoadEmbeddings(
    std::istream& in, const std::string& source = "<input>") {
  std::string raw;
  if (!std::getline(in, raw)) {
    throw EmptyInputError(source + ": empty embedding file");
  }
  std::string_view header = ChompCr(raw);
  if (!header.starts_with(internal::kEmbMagic)) {
    throw ParseError(source, 1, "expected '#ktok-emb v1 n=<count> d=<dim>'");
  }
  const auto fields = SplitOn(header.substr(internal::kEmbMagic.size()), ' ');
  std::optional<std::uint64_t> n, d;
  if (fields.size() == 2) {
    n = internal::HeaderField(fields[0], "n");
    d = internal::HeaderField(fields[1], "d");
  }
  if (!n || !d || *d == 0) throw ParseError(source, 1, "bad n/d in header");

  BasicEmbeddingMatrix<Scalar> m(static_cast<Eigen::Index>(*d));
  typename BasicEmbeddingMatrix<Scalar>::RowVector row(m.dim());
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto parts = SplitOn(ChompCr(raw), ' ');
    const std::string token(parts.front());
    if (token.empty()) throw ParseError(source, line_no, "empty token");
    if (parts.size() - 1 != *d) {
      throw ParseError(source, line_no,
                       "'" + token + "' has " + std::to_string(parts.size() - 1) +
                           " values, header says d=" + std::to_string(*d));
    }
    for (std::size_t c = 1; c < parts.size(); ++c) {
      const std::string_view text = parts[c];
      Scalar v{};
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(source, line_no,
                         "bad value for '" + token + "' at column " +
                             std::to_string(c));
      }
      if (!std::isfinite(v)) {
        throw ParseError(source, line_no,
                         "non-finite value for '" + token + "' at column " +
                             std::to_string(c));
      }
      row(static_cast<Eigen::Index>(c - 1)) = v;
    }
    try {
      m.AddRow(token, row);
    } catch (const IntegrityError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (in.bad()) throw IoError(source + ": read failure");
  if (static_cast<std::uint64_t>(m.rows()) != *n) {
    throw ParseError(source, 1,
                     "header says n=" + std::to_string(*n) + " but file has " +
                         std::to_string(m.rows()) + " rows");
  }
  return m;
}

template <typename Scalar = double>
BasicEmbeddingMatrix<Scalar> LoadEmbeddings(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return LoadEmbeddings<Scalar>(in, path.string());
}

}  // namespace ktok

#endif  // KTOK_EMBEDDING_H_
