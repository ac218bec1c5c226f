/*
Copyright 2026 The kinlex Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef KINLEX_TEXT_HPP_
#define KINLEX_TEXT_HPP_

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kinlex/errors.hpp"

namespace kinlex::text {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

/// Trims and replaces every run of ASCII whitespace by a single space.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

/// Unicode NFC followed by full case folding (re-normalized to NFC).
inline std::string fold_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u = nfc->normalize(u, status);
  u.foldCase();
  u = nfc->normalize(u, status);
  if (U_FAILURE(status)) throw Error("ICU normalization failed");
  std::string out;
  u.toUTF8String(out);
  return out;
}

/// One data row of a TSV file: comment (`#`) and blank lines never appear.
struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

inline std::vector<TsvRow> read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile(path.string());
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (trim(line).empty()) continue;
    rows.push_back({lineno, split(line, '\t')});
  }
  if (in.bad()) throw UnreadableFile(path.string());
  return rows;
}

/// Drops the first row when its first cell equals `first_column`.
inline void drop_header(std::vector<TsvRow>& rows,
                        std::string_view first_column) {
  if (!rows.empty() && !rows.front().fields.empty() &&
      rows.front().fields.front() == first_column) {
    rows.erase(rows.begin());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw UnreadableFile(path.string());
  return ss.str();
}

inline void write_file(const std::filesystem::path& path,
                       std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

/// Fields must not carry the TSV delimiters.
inline bool is_clean_field(std::string_view s) {
  return s.find_first_of("\t\n\r") == std::string_view::npos;
}

inline std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (!is_clean_field(fields[i])) {
      throw IoError("field contains a tab or newline: '" + fields[i] + "'");
    }
    if (i) out.push_back('\t');
    out += fields[i];
  }
  out.push_back('\n');
  return out;
}

}  // namespace kinlex::text

#endif  // KINLEX_TEXT_HPP_
