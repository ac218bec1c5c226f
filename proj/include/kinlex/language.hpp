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

#ifndef KINLEX_LANGUAGE_HPP_
#define KINLEX_LANGUAGE_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "kinlex/errors.hpp"

namespace kinlex {

namespace detail {

struct IsoEntry {
  std::string_view iso3;
  std::string_view iso1;  // empty when no two-letter code exists
  std::string_view name;
};

// Sorted by iso3.
inline constexpr std::array<IsoEntry, 49> kIsoTable = {{
    {"afr", "af", "Afrikaans"},  {"ale", "", "Aleut"},
    {"ara", "ar", "Arabic"},     {"ben", "bn", "Bengali"},
    {"cat", "ca", "Catalan"},    {"ces", "cs", "Czech"},
    {"cmn", "", "Mandarin Chinese"},
    {"dan", "da", "Danish"},     {"deu", "de", "German"},
    {"ell", "el", "Greek"},      {"eng", "en", "English"},
    {"est", "et", "Estonian"},   {"ewe", "ee", "Ewe"},
    {"fas", "fa", "Persian"},    {"fin", "fi", "Finnish"},
    {"fra", "fr", "French"},     {"heb", "he", "Hebrew"},
    {"hin", "hi", "Hindi"},      {"hun", "hu", "Hungarian"},
    {"hye", "hy", "Armenian"},   {"ind", "id", "Indonesian"},
    {"ita", "it", "Italian"},    {"jav", "jv", "Javanese"},
    {"jpn", "ja", "Japanese"},   {"kan", "kn", "Kannada"},
    {"kat", "ka", "Georgian"},   {"kaz", "kk", "Kazakh"},
    {"kor", "ko", "Korean"},     {"lat", "la", "Latin"},
    {"mal", "ml", "Malayalam"},  {"mar", "mr", "Marathi"},
    {"mon", "mn", "Mongolian"},  {"msa", "ms", "Malay"},
    {"nld", "nl", "Dutch"},      {"nor", "no", "Norwegian"},
    {"pol", "pl", "Polish"},     {"por", "pt", "Portuguese"},
    {"ron", "ro", "Romanian"},   {"rus", "ru", "Russian"},
    {"spa", "es", "Spanish"},    {"swe", "sv", "Swedish"},
    {"tam", "ta", "Tamil"},      {"tel", "te", "Telugu"},
    {"tha", "th", "Thai"},       {"tur", "tr", "Turkish"},
    {"ukr", "uk", "Ukrainian"},  {"vie", "vi", "Vietnamese"},
    {"yor", "yo", "Yoruba"},     {"zho", "zh", "Chinese"},
}};

inline bool is_lower_alpha(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace detail

/// Normalizes a language code to ISO 639-3: three-letter codes pass through
/// (lowercased), known two-letter codes are mapped, anything else fails.
inline std::optional<std::string> normalize_iso(std::string_view code) {
  std::string lower;
  for (char c : code) {
    lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                         : c);
  }
  if (!detail::is_lower_alpha(lower)) return std::nullopt;
  if (lower.size() == 3) return lower;
  if (lower.size() == 2) {
    for (const auto& e : detail::kIsoTable) {
      if (e.iso1 == lower) return std::string(e.iso3);
    }
  }
  return std::nullopt;
}

/// English name from the shipped table, or the code itself when unknown.
inline std::string language_name(std::string_view iso3) {
  const auto it = std::lower_bound(
      detail::kIsoTable.begin(), detail::kIsoTable.end(), iso3,
      [](const detail::IsoEntry& e, std::string_view k) { return e.iso3 < k; });
  if (it != detail::kIsoTable.end() && it->iso3 == iso3) {
    return std::string(it->name);
  }
  return std::string(iso3);
}

/// A language identified by its ISO 639-3 code; the name is display only.
class Language {
 public:
  /// Throws Error unless `code` normalizes to a three-letter code.
  static Language from_code(std::string_view code) {
    auto iso = normalize_iso(code);
    if (!iso) throw Error("invalid language code '" + std::string(code) + "'");
    return Language(std::move(*iso));
  }

  const std::string& iso() const noexcept { return iso_; }
  std::string name() const { return language_name(iso_); }

  friend bool operator==(const Language&, const Language&) = default;
  friend auto operator<=>(const Language&, const Language&) = default;

 private:
  explicit Language(std::string iso) : iso_(std::move(iso)) {}
  std::string iso_;
};

}  // namespace kinlex

#endif  // KINLEX_LANGUAGE_HPP_
