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

#ifndef KINLEX_RESOURCEIO_HPP_
#define KINLEX_RESOURCEIO_HPP_

// The published resource: four TSV files (concepts, relations, words, gaps)
// with a header row, rows in a stable order, UTF-8 and LF line endings.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"
#include "kinlex/text.hpp"

namespace kinlex {

inline constexpr std::string_view kConceptsFile = "concepts.tsv";
inline constexpr std::string_view kRelationsFile = "relations.tsv";
inline constexpr std::string_view kWordsFile = "words.tsv";
inline constexpr std::string_view kGapsFile = "gaps.tsv";

struct ConceptRow {
  Concept sense;
  std::string description;
  std::string provenance;

  friend bool operator==(const ConceptRow&, const ConceptRow&) = default;
};

struct WordRow {
  Concept sense;
  std::string lang_name;
  std::string iso;
  std::string term;
  std::string provenance;

  friend bool operator==(const WordRow&, const WordRow&) = default;
};

struct GapRow {
  Concept sense;
  std::string lang_name;
  std::string iso;
  std::string evidence;

  friend bool operator==(const GapRow&, const GapRow&) = default;
};

struct ResourceBundle {
  std::vector<ConceptRow> concepts;
  std::vector<IsA> relations;
  std::vector<WordRow> words;
  std::vector<GapRow> gaps;

  friend bool operator==(const ResourceBundle&, const ResourceBundle&) = default;

  /// Puts every table in emission order.
  void sort() {
    std::sort(concepts.begin(), concepts.end(),
              [](const ConceptRow& a, const ConceptRow& b) {
                return a.sense < b.sense;
              });
    std::sort(relations.begin(), relations.end());
    std::sort(words.begin(), words.end(),
              [](const WordRow& a, const WordRow& b) {
                return std::tie(a.sense, a.iso, a.term, a.provenance) <
                       std::tie(b.sense, b.iso, b.term, b.provenance);
              });
    std::sort(gaps.begin(), gaps.end(), [](const GapRow& a, const GapRow& b) {
      return std::tie(a.sense, a.iso, a.evidence) <
             std::tie(b.sense, b.iso, b.evidence);
    });
  }
};

namespace detail {

inline const std::vector<std::string>& header_for(std::string_view file) {
  static const std::vector<std::string> concepts = {
      "subdomain", "concept_label", "description", "provenance"};
  static const std::vector<std::string> relations = {
      "subdomain", "hypernym_label", "hyponym_label"};
  static const std::vector<std::string> words = {
      "subdomain", "concept_label", "lang_name", "iso_code", "term",
      "provenance"};
  static const std::vector<std::string> gaps = {
      "subdomain", "concept_label", "lang_name", "iso_code", "evidence"};
  if (file == kConceptsFile) return concepts;
  if (file == kRelationsFile) return relations;
  if (file == kWordsFile) return words;
  return gaps;
}

inline std::string sd_col(const Concept& c) {
  return std::string(subdomain_name(c.subdomain()));
}

}  // namespace detail

/// Assembles a bundle. Throws Error when a word or gap cites a concept absent
/// from `concepts`.
inline ResourceBundle make_bundle(std::vector<ConceptRow> concepts,
                                  std::vector<IsA> relations,
                                  std::span<const Lexicalization> words,
                                  std::span<const Gap> gaps) {
  ResourceBundle b;
  b.concepts = std::move(concepts);
  b.relations = std::move(relations);
  std::set<Concept> known;
  for (const auto& c : b.concepts) known.insert(c.sense);
  for (const auto& w : words) {
    if (!known.contains(w.sense)) {
      throw Error("word '" + w.term + "' cites unattested concept " +
                  w.sense.label());
    }
    b.words.push_back({w.sense, w.language.name(), w.language.iso(), w.term,
                       std::string(provenance_name(w.provenance))});
  }
  for (const auto& g : gaps) {
    if (!known.contains(g.sense)) {
      throw Error("gap cites unattested concept " + g.sense.label());
    }
    b.gaps.push_back(
        {g.sense, g.language.name(), g.language.iso(), g.evidence});
  }
  b.sort();
  return b;
}

/// Concept and relation rows for attested lattices.
inline ResourceBundle make_bundle(std::span<const Lattice> lattices,
                                  const AttestationList& attestation,
                                  std::span<const Lexicalization> words,
                                  std::span<const Gap> gaps) {
  std::vector<ConceptRow> concepts;
  std::vector<IsA> relations;
  for (const Lattice& l : lattices) {
    for (const Concept& c : l.concepts()) {
      concepts.push_back({c, render_description(c),
                          attestation.provenance(c).value_or("")});
    }
    relations.insert(relations.end(), l.edges().begin(), l.edges().end());
  }
  return make_bundle(std::move(concepts), std::move(relations), words, gaps);
}

namespace detail {

inline std::string render_table(const ResourceBundle& b, std::string_view name) {
  std::string out = text::join_row(header_for(name));
  if (name == kConceptsFile) {
    for (const auto& r : b.concepts) {
      out += text::join_row(
          {sd_col(r.sense), r.sense.label(), r.description, r.provenance});
    }
  } else if (name == kRelationsFile) {
    for (const auto& r : b.relations) {
      out += text::join_row(
          {sd_col(r.hypernym), r.hypernym.label(), r.hyponym.label()});
    }
  } else if (name == kWordsFile) {
    for (const auto& r : b.words) {
      out += text::join_row({sd_col(r.sense), r.sense.label(), r.lang_name,
                             r.iso, r.term, r.provenance});
    }
  } else {
    for (const auto& r : b.gaps) {
      out += text::join_row(
          {sd_col(r.sense), r.sense.label(), r.lang_name, r.iso, r.evidence});
    }
  }
  return out;
}

}  // namespace detail

/// Writes the four files (or only `tables`) with headers. Output is a pure
/// function of the bundle contents.
inline void write_bundle(
    ResourceBundle b, const std::filesystem::path& dir,
    std::initializer_list<std::string_view> tables = {
        kConceptsFile, kRelationsFile, kWordsFile, kGapsFile}) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  b.sort();
  for (std::string_view name : tables) {
    text::write_file(dir / name, detail::render_table(b, name));
  }
}

inline ResourceBundle emit_resource(std::span<const Lattice> lattices,
                                    const AttestationList& attestation,
                                    std::span<const Lexicalization> words,
                                    std::span<const Gap> gaps,
                                    const std::filesystem::path& dir) {
  ResourceBundle b = make_bundle(lattices, attestation, words, gaps);
  write_bundle(b, dir);
  return b;
}

namespace detail {

/// Data rows of one resource file after checking its header and width.
inline std::vector<text::TsvRow> read_resource_table(
    const std::filesystem::path& dir, std::string_view name) {
  const auto path = dir / name;
  if (!std::filesystem::exists(path)) throw MissingFile(path.string());
  auto rows = text::read_tsv(path);
  const auto& header = header_for(name);
  if (rows.empty() || rows.front().fields != header) {
    throw ParseError(path.string(), rows.empty() ? 1 : rows.front().line,
                     "missing or wrong header row");
  }
  rows.erase(rows.begin());
  for (const auto& r : rows) {
    if (r.fields.size() != header.size()) {
      throw ParseError(path.string(), r.line,
                       "expected " + std::to_string(header.size()) +
                           " columns, got " + std::to_string(r.fields.size()));
    }
  }
  return rows;
}

}  // namespace detail

/// Loads a resource directory. Throws MissingFile for an absent file and
/// ParseError (with the line) for malformed rows or rows citing a concept
/// that concepts.tsv does not define. With `lattice_only`, words.tsv and
/// gaps.tsv are neither required nor read.
inline ResourceBundle load_resource(const std::filesystem::path& dir,
                                    bool lattice_only = false) {
  ResourceBundle b;
  const auto path_of = [&](std::string_view n) { return (dir / n).string(); };
  for (std::string_view n : {kConceptsFile, kRelationsFile, kWordsFile, kGapsFile}) {
    if (lattice_only && (n == kWordsFile || n == kGapsFile)) continue;
    if (!std::filesystem::exists(dir / n)) throw MissingFile(path_of(n));
  }

  std::set<Concept> known;
  const auto concept_at = [&](std::string_view file, const text::TsvRow& row,
                              std::size_t sd_col, std::size_t label_col,
                              bool must_be_known) {
    Concept c = detail::parse_label_at(path_of(file), row.line,
                                       row.fields[label_col]);
    if (subdomain_name(c.subdomain()) != row.fields[sd_col]) {
      throw ParseError(path_of(file), row.line,
                       "label " + c.label() + " does not belong to subdomain '" +
                           row.fields[sd_col] + "'");
    }
    if (must_be_known && !known.contains(c)) {
      throw ParseError(path_of(file), row.line,
                       "unknown concept " + c.label());
    }
    return c;
  };

  for (const auto& row : detail::read_resource_table(dir, kConceptsFile)) {
    Concept c = concept_at(kConceptsFile, row, 0, 1, false);
    if (!known.insert(c).second) {
      throw ParseError(path_of(kConceptsFile), row.line,
                       "duplicate concept " + c.label());
    }
    b.concepts.push_back({std::move(c), row.fields[2], row.fields[3]});
  }
  for (const auto& row : detail::read_resource_table(dir, kRelationsFile)) {
    Concept g = concept_at(kRelationsFile, row, 0, 1, true);
    Concept h = concept_at(kRelationsFile, row, 0, 2, true);
    b.relations.push_back({std::move(g), std::move(h)});
  }
  if (lattice_only) {
    b.sort();
    return b;
  }
  for (const auto& row : detail::read_resource_table(dir, kWordsFile)) {
    Concept c = concept_at(kWordsFile, row, 0, 1, true);
    b.words.push_back(
        {std::move(c), row.fields[2], row.fields[3], row.fields[4], row.fields[5]});
  }
  for (const auto& row : detail::read_resource_table(dir, kGapsFile)) {
    Concept c = concept_at(kGapsFile, row, 0, 1, true);
    b.gaps.push_back({std::move(c), row.fields[2], row.fields[3], row.fields[4]});
  }
  b.sort();
  return b;
}

enum class ViolationKind { DanglingLabel, Cycle, Conflict, BadRelation };

inline std::string_view violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::DanglingLabel: return "dangling-label";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::Conflict: return "word-gap-conflict";
    case ViolationKind::BadRelation: return "bad-relation";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string location;  // e.g. "relations.tsv:4"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [k](const Violation& v) { return v.kind == k; }));
  }
};

/// Checks every bundle invariant. Locations refer to lines of the emitted
/// files (header is line 1).
inline ValidationReport validate_resource(const ResourceBundle& b) {
  ValidationReport rep;
  const auto loc = [](std::string_view file, std::size_t index) {
    return std::string(file) + ":" + std::to_string(index + 2);
  };
  std::set<Concept> known;
  for (const auto& c : b.concepts) known.insert(c.sense);

  for (std::size_t i = 0; i < b.relations.size(); ++i) {
    const IsA& r = b.relations[i];
    bool dangling = false;
    for (const Concept* c : {&r.hypernym, &r.hyponym}) {
      if (!known.contains(*c)) {
        rep.violations.push_back({ViolationKind::DanglingLabel,
                                  loc(kRelationsFile, i),
                                  "unknown concept " + c->label()});
        dangling = true;
      }
    }
    if (!dangling && r.hypernym.subdomain() != r.hyponym.subdomain()) {
      rep.violations.push_back({ViolationKind::BadRelation,
                                loc(kRelationsFile, i),
                                "relation crosses subdomains"});
    }
  }
  for (std::size_t i = 0; i < b.words.size(); ++i) {
    if (!known.contains(b.words[i].sense)) {
      rep.violations.push_back({ViolationKind::DanglingLabel, loc(kWordsFile, i),
                                "unknown concept " + b.words[i].sense.label()});
    }
  }
  for (std::size_t i = 0; i < b.gaps.size(); ++i) {
    if (!known.contains(b.gaps[i].sense)) {
      rep.violations.push_back({ViolationKind::DanglingLabel, loc(kGapsFile, i),
                                "unknown concept " + b.gaps[i].sense.label()});
    }
  }

  // Cycles: one violation per strongly connected component that loops.
  std::map<Concept, std::vector<Concept>> adj;
  for (const IsA& r : b.relations) adj[r.hypernym].push_back(r.hyponym);
  std::map<Concept, int> index, low;
  std::set<Concept> on_stack;
  std::vector<Concept> stack;
  int counter = 0;
  std::vector<std::vector<Concept>> loops;
  std::function<void(const Concept&)> strongconnect = [&](const Concept& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    bool self_loop = false;
    for (const Concept& w : adj[v]) {
      if (w == v) self_loop = true;
      if (!index.contains(w)) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<Concept> comp;
    for (;;) {
      Concept w = stack.back();
      stack.pop_back();
      on_stack.erase(w);
      comp.push_back(w);
      if (w == v) break;
    }
    if (comp.size() > 1 || self_loop) {
      std::sort(comp.begin(), comp.end());
      loops.push_back(std::move(comp));
    }
  };
  std::vector<Concept> roots;
  for (const auto& [k, v] : adj) roots.push_back(k);
  for (const Concept& v : roots) {
    if (!index.contains(v)) strongconnect(v);
  }
  std::sort(loops.begin(), loops.end());
  for (const auto& comp : loops) {
    std::string msg = "cycle through";
    for (const Concept& c : comp) msg += " " + c.label();
    rep.violations.push_back({ViolationKind::Cycle, std::string(kRelationsFile),
                              msg});
  }

  std::set<std::pair<std::string, Concept>> worded;
  for (const auto& w : b.words) worded.insert({w.iso, w.sense});
  std::set<std::pair<std::string, Concept>> reported;
  for (std::size_t i = 0; i < b.gaps.size(); ++i) {
    const std::pair cell{b.gaps[i].iso, b.gaps[i].sense};
    if (worded.contains(cell) && reported.insert(cell).second) {
      rep.violations.push_back({ViolationKind::Conflict, loc(kGapsFile, i),
                                cell.first + " " + cell.second.label() +
                                    " is both a word and a gap"});
    }
  }
  return rep;
}

/// Lattices rebuilt from the concept and relation tables.
inline std::map<Subdomain, Lattice> lattices_from_bundle(
    const ResourceBundle& b) {
  std::map<Subdomain, std::vector<Concept>> concepts;
  std::map<Subdomain, std::vector<IsA>> edges;
  for (const auto& c : b.concepts) {
    concepts[c.sense.subdomain()].push_back(c.sense);
  }
  for (const auto& r : b.relations) edges[r.hypernym.subdomain()].push_back(r);
  std::map<Subdomain, Lattice> out;
  for (auto& [sd, cs] : concepts) {
    out.emplace(sd, Lattice::from_parts(sd, std::move(cs), std::move(edges[sd])));
  }
  return out;
}

inline std::vector<Lexicalization> words_from_bundle(const ResourceBundle& b) {
  std::vector<Lexicalization> out;
  for (const auto& w : b.words) {
    const auto p = provenance_from_name(w.provenance);
    if (!p) throw Error("unknown word provenance '" + w.provenance + "'");
    out.push_back({Language::from_code(w.iso), w.sense, w.term, *p,
                   std::nullopt});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Gap> gaps_from_bundle(const ResourceBundle& b) {
  std::vector<Gap> out;
  for (const auto& g : b.gaps) {
    out.push_back({Language::from_code(g.iso), g.sense, g.evidence});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline intermediates keyed by ISO code.

inline void save_lexicon(std::span<const Lexicalization> words,
                         const std::filesystem::path& path) {
  std::vector<Lexicalization> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out =
      text::join_row({"iso", "concept_label", "term", "provenance", "note"});
  for (const auto& w : sorted) {
    out += text::join_row({w.language.iso(), w.sense.label(), w.term,
                           std::string(provenance_name(w.provenance)),
                           w.usage_note.value_or("")});
  }
  text::write_file(path, out);
}

inline std::vector<Lexicalization> load_lexicon(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "iso");
  std::vector<Lexicalization> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 5) throw ParseError(file, row.line, "expected 5 columns");
    const auto p = provenance_from_name(row.fields[3]);
    if (!p) throw ParseError(file, row.line, "unknown provenance");
    if (row.fields[2].empty()) throw ParseError(file, row.line, "empty term");
    out.push_back({detail::parse_language_at(file, row.line, row.fields[0]),
                   detail::parse_label_at(file, row.line, row.fields[1]),
                   row.fields[2], *p,
                   row.fields[4].empty() ? std::nullopt
                                         : std::optional(row.fields[4])});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void save_gaps(std::span<const Gap> gaps,
                      const std::filesystem::path& path) {
  std::vector<Gap> sorted(gaps.begin(), gaps.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out = text::join_row({"iso", "concept_label", "evidence"});
  for (const auto& g : sorted) {
    out += text::join_row({g.language.iso(), g.sense.label(), g.evidence});
  }
  text::write_file(path, out);
}

inline std::vector<Gap> load_gaps(const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "iso");
  std::vector<Gap> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 3) throw ParseError(file, row.line, "expected 3 columns");
    out.push_back({detail::parse_language_at(file, row.line, row.fields[0]),
                   detail::parse_label_at(file, row.line, row.fields[1]),
                   row.fields[2]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_RESOURCEIO_HPP_
