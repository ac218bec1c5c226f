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

#ifndef KINLEX_LEXICON_HPP_
#define KINLEX_LEXICON_HPP_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "kinlex/kinmodel.hpp"
#include "kinlex/language.hpp"

namespace kinlex {

enum class Provenance { Wiktionary, Speaker };

inline std::string_view provenance_name(Provenance p) {
  return p == Provenance::Wiktionary ? "wiktionary" : "speaker";
}

inline std::optional<Provenance> provenance_from_name(std::string_view s) {
  if (s == "wiktionary") return Provenance::Wiktionary;
  if (s == "speaker") return Provenance::Speaker;
  return std::nullopt;
}

/// A word or restricted collocation for a concept in a language.
struct Lexicalization {
  Language language;
  Concept sense;
  std::string term;
  Provenance provenance = Provenance::Wiktionary;
  std::optional<std::string> usage_note;

  /// Identity is (language, concept, term).
  friend bool operator==(const Lexicalization& a, const Lexicalization& b) {
    return std::tie(a.language, a.sense, a.term) ==
           std::tie(b.language, b.sense, b.term);
  }
  friend std::strong_ordering operator<=>(const Lexicalization& a,
                                          const Lexicalization& b) {
    if (auto c = a.language <=> b.language; c != 0) return c;
    if (auto c = a.sense <=> b.sense; c != 0) return c;
    return a.term.compare(b.term) <=> 0;
  }
};

namespace evidence {
inline constexpr std::string_view kSpeaker = "speaker";
inline constexpr std::string_view kRule1 = "rule1:wiktionary";
inline constexpr std::string_view kRule2 = "rule2:wiktionary";
inline std::string murdock(std::string_view pattern) {
  return "murdock:" + std::string(pattern);
}
}  // namespace evidence

/// An attested non-lexicalization. Evidence is one of "speaker",
/// "murdock:<pattern>", "rule1:wiktionary", "rule2:wiktionary".
struct Gap {
  Language language;
  Concept sense;
  std::string evidence;

  friend bool operator==(const Gap&, const Gap&) = default;
  friend std::strong_ordering operator<=>(const Gap& a, const Gap& b) {
    if (auto c = a.language <=> b.language; c != 0) return c;
    if (auto c = a.sense <=> b.sense; c != 0) return c;
    return a.evidence.compare(b.evidence) <=> 0;
  }
};

}  // namespace kinlex

#endif  // KINLEX_LEXICON_HPP_
