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

#ifndef KINLEX_GAPENGINE_HPP_
#define KINLEX_GAPENGINE_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/ingest.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"

namespace kinlex {

inline constexpr std::size_t kDefaultMinWords = 4;

enum class TraitSource { Config, DerivedFromWords };

/// Whether a language's kin terms ever encode speaker gender or relative age.
struct LanguageTraits {
  Language language;
  bool marks_speaker_gender = false;
  bool marks_relative_age = false;
  TraitSource source = TraitSource::DerivedFromWords;
};

inline LanguageTraits derive_traits(const Language& lang,
                                    std::span<const Lexicalization> words) {
  LanguageTraits t{lang, false, false, TraitSource::DerivedFromWords};
  for (const auto& w : words) {
    if (w.language != lang) continue;
    t.marks_speaker_gender |= w.sense.speaker() != Gender::Unspecified;
    t.marks_relative_age |= w.sense.has_age();
  }
  return t;
}

/// Reads `iso<TAB>marks_speaker_gender(0|1)<TAB>marks_relative_age(0|1)`.
inline std::map<Language, LanguageTraits> load_traits(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "iso");
  std::map<Language, LanguageTraits> out;
  const auto flag = [&](const text::TsvRow& row, std::size_t i) {
    const std::string_view v = text::trim(row.fields[i]);
    if (v == "0") return false;
    if (v == "1") return true;
    throw ParseError(file, row.line, "expected 0 or 1, got '" +
                                         std::string(v) + "'");
  };
  for (const auto& row : rows) {
    if (row.fields.size() != 3) {
      throw ParseError(file, row.line, "expected 3 columns");
    }
    Language lang = detail::parse_language_at(file, row.line, row.fields[0]);
    LanguageTraits t{lang, flag(row, 1), flag(row, 2), TraitSource::Config};
    if (!out.emplace(lang, t).second) {
      throw ParseError(file, row.line, "duplicate traits for " + lang.iso());
    }
  }
  return out;
}

/// Explicit configuration wins over traits derived from the words.
inline LanguageTraits resolve_traits(
    const Language& lang, const std::map<Language, LanguageTraits>& config,
    std::span<const Lexicalization> words) {
  if (const auto it = config.find(lang); it != config.end()) return it->second;
  return derive_traits(lang, words);
}

/// Patterns are exhaustive: every lattice concept the pattern does not
/// lexicalize is a gap.
inline std::vector<Gap> gaps_from_pattern(const Language& lang,
                                          const MurdockPattern& pattern,
                                          const Lattice& lattice) {
  if (pattern.subdomain != lattice.subdomain()) {
    throw SubdomainMismatch("pattern '" + pattern.name + "' describes " +
                            std::string(subdomain_name(pattern.subdomain)) +
                            ", lattice is " +
                            std::string(subdomain_name(lattice.subdomain())));
  }
  std::vector<Gap> out;
  const std::string ev = evidence::murdock(pattern.name);
  for (const Concept& c : lattice.concepts()) {
    if (!std::binary_search(pattern.lexicalized.begin(),
                            pattern.lexicalized.end(), c)) {
      out.push_back({lang, c, ev});
    }
  }
  return out;
}

inline std::vector<Gap> gaps_from_pattern(const PatternAssignment& assignment,
                                          const MurdockData& data,
                                          const Lattice& lattice) {
  const MurdockPattern* p = data.find(assignment.pattern);
  if (p == nullptr) {
    throw DanglingPatternRef("unknown pattern '" + assignment.pattern + "'");
  }
  return gaps_from_pattern(assignment.language, *p, lattice);
}

/// Rule 1. For concepts without speaker gender and without age relative to
/// the speaker: a concept is a gap when neither it nor any of its direct
/// hypernyms has a word. Languages with fewer than `min_words` words in total
/// yield nothing.
inline std::vector<Gap> infer_rule1(const Language& lang,
                                    std::span<const Lexicalization> words,
                                    const Lattice& lattice,
                                    std::size_t min_words) {
  if (min_words < 1) throw Error("min_words must be at least 1");
  std::size_t total = 0;
  std::set<Concept> worded;
  for (const auto& w : words) {
    if (w.language != lang) continue;
    ++total;
    worded.insert(w.sense);
  }
  if (total < min_words) return {};

  std::vector<Gap> out;
  const auto& concepts = lattice.concepts();
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const Concept& c = concepts[i];
    if (c.speaker() != Gender::Unspecified || c.age_relative_to_speaker()) {
      continue;
    }
    if (worded.contains(c)) continue;
    const auto parents = lattice.parents(i);
    const bool parent_worded =
        std::any_of(parents.begin(), parents.end(), [&](std::size_t p) {
          return worded.contains(concepts[p]);
        });
    if (!parent_worded) {
      out.push_back({lang, c, std::string(evidence::kRule1)});
    }
  }
  return out;
}

/// Rule 2. A language that never marks speaker gender (resp. relative age)
/// has a gap for every concept carrying that attribute.
inline std::vector<Gap> infer_rule2(const LanguageTraits& traits,
                                    const Lattice& lattice) {
  std::vector<Gap> out;
  for (const Concept& c : lattice.concepts()) {
    const bool speaker_gap = !traits.marks_speaker_gender &&
                             c.speaker() != Gender::Unspecified;
    const bool age_gap = !traits.marks_relative_age && c.has_age();
    if (speaker_gap || age_gap) {
      out.push_back({traits.language, c, std::string(evidence::kRule2)});
    }
  }
  return out;
}

struct MergedEvidence {
  std::vector<Lexicalization> words;  // sorted
  std::vector<Gap> gaps;              // sorted, one per (language, concept)
};

namespace detail {

inline int evidence_rank(const std::string& ev) {
  if (ev == evidence::kSpeaker) return 0;
  if (ev.starts_with("murdock:")) return 1;
  if (ev == evidence::kRule1) return 2;
  if (ev == evidence::kRule2) return 3;
  return 4;
}

}  // namespace detail

/// Resolves each (language, concept) cell. A cell with speaker evidence keeps
/// only the speaker's words or gap. Otherwise any word removes every gap, and
/// among gaps the evidence ranked first (murdock, rule1, rule2) survives.
inline MergedEvidence merge_evidence(std::span<const Lexicalization> words,
                                     std::span<const std::vector<Gap>> gap_sets) {
  using Cell = std::pair<Language, Concept>;
  std::set<Cell> speaker_cells;
  for (const auto& w : words) {
    if (w.provenance == Provenance::Speaker) {
      speaker_cells.insert({w.language, w.sense});
    }
  }
  for (const auto& set : gap_sets) {
    for (const auto& g : set) {
      if (g.evidence == evidence::kSpeaker) {
        speaker_cells.insert({g.language, g.sense});
      }
    }
  }

  std::map<Lexicalization, Lexicalization> kept;
  std::set<Cell> worded;
  for (const auto& w : words) {
    const Cell cell{w.language, w.sense};
    if (speaker_cells.contains(cell) && w.provenance != Provenance::Speaker) {
      continue;
    }
    worded.insert(cell);
    auto [it, fresh] = kept.emplace(w, w);
    if (!fresh && w.provenance == Provenance::Speaker) it->second = w;
  }

  std::map<Cell, Gap> best;
  for (const auto& set : gap_sets) {
    for (const auto& g : set) {
      const Cell cell{g.language, g.sense};
      if (worded.contains(cell)) continue;
      if (speaker_cells.contains(cell) && g.evidence != evidence::kSpeaker) {
        continue;
      }
      auto [it, fresh] = best.emplace(cell, g);
      if (fresh) continue;
      const int r_new = detail::evidence_rank(g.evidence);
      const int r_old = detail::evidence_rank(it->second.evidence);
      if (r_new < r_old || (r_new == r_old && g.evidence < it->second.evidence)) {
        it->second = g;
      }
    }
  }

  MergedEvidence out;
  for (auto& [k, w] : kept) out.words.push_back(w);
  for (auto& [k, g] : best) out.gaps.push_back(g);
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_GAPENGINE_HPP_
