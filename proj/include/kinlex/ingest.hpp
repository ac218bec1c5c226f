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

#ifndef KINLEX_INGEST_HPP_
#define KINLEX_INGEST_HPP_

// Loaders for the three evidence sources: typological pattern tables,
// wikitext translation tables, and native speaker gold files.

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/kinmodel.hpp"
#include "kinlex/language.hpp"
#include "kinlex/lexicon.hpp"
#include "kinlex/text.hpp"

namespace kinlex {

// ---------------------------------------------------------------------------
// Typological lexicalization patterns

/// A named, exhaustive list of the concepts of one subdomain that a language
/// following the pattern lexicalizes.
struct MurdockPattern {
  std::string name;
  Subdomain subdomain = Subdomain::Siblings;
  std::vector<Concept> lexicalized;  // sorted, unique
};

struct PatternAssignment {
  Language language;
  std::string pattern;

  friend bool operator==(const PatternAssignment&,
                         const PatternAssignment&) = default;
  friend auto operator<=>(const PatternAssignment&,
                          const PatternAssignment&) = default;
};

struct MurdockData {
  std::vector<MurdockPattern> patterns;        // sorted by name
  std::vector<PatternAssignment> assignments;  // sorted

  const MurdockPattern* find(std::string_view name) const {
    const auto it = std::lower_bound(
        patterns.begin(), patterns.end(), name,
        [](const MurdockPattern& p, std::string_view k) { return p.name < k; });
    return it != patterns.end() && it->name == name ? &*it : nullptr;
  }
};

namespace detail {

inline Concept parse_label_at(const std::string& file, std::size_t line,
                              std::string_view label) {
  try {
    return parse_label(label);
  } catch (const MalformedLabel& e) {
    throw ParseError(file, line, e.what());
  }
}

inline Language parse_language_at(const std::string& file, std::size_t line,
                                  std::string_view code) {
  try {
    return Language::from_code(text::trim(code));
  } catch (const Error& e) {
    throw ParseError(file, line, e.what());
  }
}

}  // namespace detail

/// Patterns file: `pattern<TAB>subdomain<TAB>label,label,...`.
/// Assignments file: `iso<TAB>pattern`.
inline MurdockData load_murdock(const std::filesystem::path& patterns_file,
                                const std::filesystem::path& assignments_file) {
  MurdockData data;
  const std::string pfile = patterns_file.string();
  auto prow = text::read_tsv(patterns_file);
  text::drop_header(prow, "pattern");
  for (const auto& row : prow) {
    if (row.fields.size() != 3) {
      throw ParseError(pfile, row.line, "expected 3 columns");
    }
    MurdockPattern p;
    p.name = std::string(text::trim(row.fields[0]));
    if (p.name.empty()) throw ParseError(pfile, row.line, "empty pattern name");
    const auto sd = subdomain_from_name(text::trim(row.fields[1]));
    if (!sd) {
      throw ParseError(pfile, row.line,
                       "unknown subdomain '" + row.fields[1] + "'");
    }
    p.subdomain = *sd;
    if (!text::trim(row.fields[2]).empty()) {
      for (const std::string& label : text::split(row.fields[2], ',')) {
        Concept c = detail::parse_label_at(pfile, row.line, label);
        if (c.subdomain() != p.subdomain) {
          throw ParseError(pfile, row.line,
                           "label '" + c.label() + "' is not a " +
                               std::string(subdomain_name(p.subdomain)) +
                               " concept");
        }
        p.lexicalized.push_back(std::move(c));
      }
    }
    std::sort(p.lexicalized.begin(), p.lexicalized.end());
    p.lexicalized.erase(std::unique(p.lexicalized.begin(), p.lexicalized.end()),
                        p.lexicalized.end());
    if (data.find(p.name) != nullptr) {
      throw DuplicatePattern(pfile + ":" + std::to_string(row.line) +
                             ": pattern '" + p.name + "' defined twice");
    }
    const auto at = std::lower_bound(
        data.patterns.begin(), data.patterns.end(), p.name,
        [](const MurdockPattern& q, const std::string& k) { return q.name < k; });
    data.patterns.insert(at, std::move(p));
  }

  const std::string afile = assignments_file.string();
  auto arow = text::read_tsv(assignments_file);
  text::drop_header(arow, "iso");
  std::map<std::pair<std::string, Subdomain>, std::string> seen;
  for (const auto& row : arow) {
    if (row.fields.size() != 2) {
      throw ParseError(afile, row.line, "expected 2 columns");
    }
    Language lang = detail::parse_language_at(afile, row.line, row.fields[0]);
    const std::string name(text::trim(row.fields[1]));
    const MurdockPattern* p = data.find(name);
    if (p == nullptr) {
      throw DanglingPatternRef(afile + ":" + std::to_string(row.line) +
                               ": unknown pattern '" + name + "'");
    }
    const auto [it, fresh] = seen.emplace(std::pair{lang.iso(), p->subdomain}, name);
    if (!fresh && it->second != name) {
      throw ParseError(afile, row.line,
                       lang.iso() + " already follows pattern '" + it->second +
                           "' in " + std::string(subdomain_name(p->subdomain)));
    }
    if (fresh) data.assignments.push_back({std::move(lang), name});
  }
  std::sort(data.assignments.begin(), data.assignments.end());
  return data;
}

inline void save_murdock(const MurdockData& data,
                         const std::filesystem::path& patterns_file,
                         const std::filesystem::path& assignments_file) {
  std::string p = text::join_row({"pattern", "subdomain", "lexicalized"});
  for (const auto& pat : data.patterns) {
    std::string labels;
    for (const Concept& c : pat.lexicalized) {
      if (!labels.empty()) labels.push_back(',');
      labels += c.label();
    }
    p += text::join_row(
        {pat.name, std::string(subdomain_name(pat.subdomain)), labels});
  }
  text::write_file(patterns_file, p);
  std::string a = text::join_row({"iso", "pattern"});
  for (const auto& as : data.assignments) {
    a += text::join_row({as.language.iso(), as.pattern});
  }
  text::write_file(assignments_file, a);
}

// ---------------------------------------------------------------------------
// Gloss map

/// Maps translation-table glosses to concepts. Matching is exact after case
/// folding and whitespace collapse; entries are tried longest first.
class GlossMap {
 public:
  static std::string normalize(std::string_view gloss) {
    return text::collapse_whitespace(text::fold_nfc(gloss));
  }

  /// Throws Error when one normalized gloss is bound to two concepts.
  void add(std::string_view gloss, Concept c) {
    std::string key = normalize(gloss);
    if (key.empty()) throw Error("empty gloss pattern");
    for (const auto& [k, v] : entries_) {
      if (k != key) continue;
      if (v == c) return;
      throw Error("gloss '" + key + "' maps to both " + v.label() + " and " +
                  c.label());
    }
    entries_.emplace_back(std::move(key), std::move(c));
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) {
                if (a.first.size() != b.first.size()) {
                  return a.first.size() > b.first.size();
                }
                return a.first < b.first;
              });
  }

  std::optional<Concept> match(std::string_view gloss) const {
    const std::string key = normalize(gloss);
    for (const auto& [k, v] : entries_) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  const std::vector<std::pair<std::string, Concept>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, Concept>> entries_;
};

/// Reads `gloss<TAB>concept_label` rows.
inline GlossMap load_gloss_map(const std::filesystem::path& path) {
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "gloss");
  GlossMap map;
  for (const auto& row : rows) {
    if (row.fields.size() != 2) {
      throw ParseError(path.string(), row.line, "expected 2 columns");
    }
    Concept c = detail::parse_label_at(path.string(), row.line, row.fields[1]);
    try {
      map.add(row.fields[0], std::move(c));
    } catch (const Error& e) {
      throw ParseError(path.string(), row.line, e.what());
    }
  }
  return map;
}

// ---------------------------------------------------------------------------
// Wikitext translation tables

struct SkipReport {
  std::size_t pages = 0;
  std::size_t blocks_matched = 0;
  std::size_t blocks_unmatched = 0;
  /// Translation items (`t`, `t+`) seen inside matched blocks.
  std::size_t parsed_items = 0;
  std::size_t emitted = 0;
  std::size_t skipped = 0;
  /// Other templates seen inside matched blocks.
  std::size_t unsupported_templates = 0;
  /// One "page:line: reason" entry per skipped item.
  std::vector<std::string> notes;

  friend bool operator==(const SkipReport&, const SkipReport&) = default;
};

struct ExtractionResult {
  std::vector<Lexicalization> lexicalizations;  // sorted
  SkipReport report;
};

namespace wikitext {

struct Template {
  std::string name;
  std::vector<std::string> positional;
  bool terminated = true;
};

/// Splits a template body on top-level pipes, ignoring pipes nested in
/// links or inner templates.
inline std::vector<std::string> split_params(std::string_view body) {
  std::vector<std::string> out(1);
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const std::string_view two = body.substr(i, 2);
    if (two == "[[" || two == "{{") {
      ++depth;
      out.back() += two;
      ++i;
      continue;
    }
    if ((two == "]]" || two == "}}") && depth > 0) {
      --depth;
      out.back() += two;
      ++i;
      continue;
    }
    if (body[i] == '|' && depth == 0) {
      out.emplace_back();
      continue;
    }
    out.back().push_back(body[i]);
  }
  return out;
}

/// Templates appearing on one line, in order. An unterminated template ends
/// the scan and is reported with `terminated == false`.
inline std::vector<Template> scan_line(std::string_view line) {
  std::vector<Template> out;
  std::size_t pos = 0;
  while ((pos = line.find("{{", pos)) != std::string_view::npos) {
    int depth = 0;
    std::size_t end = std::string_view::npos;
    for (std::size_t i = pos; i + 1 < line.size(); ++i) {
      if (line.compare(i, 2, "{{") == 0) {
        ++depth;
        ++i;
      } else if (line.compare(i, 2, "}}") == 0) {
        ++i;
        if (--depth == 0) {
          end = i + 1;
          break;
        }
      }
    }
    Template t;
    const std::string_view body =
        end == std::string_view::npos ? line.substr(pos + 2)
                                      : line.substr(pos + 2, end - pos - 4);
    auto params = split_params(body);
    t.name = std::string(text::trim(params.front()));
    for (std::size_t i = 1; i < params.size(); ++i) {
      const std::string_view p = params[i];
      const auto eq = p.find('=');
      // Named parameters carry metadata only.
      if (eq != std::string_view::npos && p.find("[[") > eq) continue;
      t.positional.emplace_back(text::trim(p));
    }
    if (end == std::string_view::npos) {
      t.terminated = false;
      out.push_back(std::move(t));
      break;
    }
    out.push_back(std::move(t));
    pos = end;
  }
  return out;
}

/// Replaces `[[target]]` by `target` and `[[target|shown]]` by `shown`.
inline std::string strip_links(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto open = s.find("[[", pos);
    if (open == std::string_view::npos) break;
    const auto close = s.find("]]", open + 2);
    if (close == std::string_view::npos) break;
    out += s.substr(pos, open - pos);
    std::string_view inner = s.substr(open + 2, close - open - 2);
    const auto bar = inner.rfind('|');
    if (bar != std::string_view::npos) inner = inner.substr(bar + 1);
    out += inner;
    pos = close + 2;
  }
  out += s.substr(pos);
  return out;
}

/// Level-2 header name, or nullopt when `line` is not `==Name==`.
inline std::optional<std::string> level2_header(std::string_view line) {
  line = text::trim(line);
  if (line.size() < 5 || !line.starts_with("==") || !line.ends_with("==")) {
    return std::nullopt;
  }
  if (line.starts_with("===") || line.ends_with("===")) return std::nullopt;
  return std::string(text::trim(line.substr(2, line.size() - 4)));
}

inline bool is_translation_item(std::string_view name) {
  return name == "t" || name == "t+";
}

}  // namespace wikitext

/// Extracts translations from every `*.wiki` page of `dump_dir` (one page per
/// file). Only `==English==` sections are read; within them each
/// `{{trans-top|gloss}} ... {{trans-bottom}}` block whose gloss matches the
/// map yields one Wiktionary lexicalization per `{{t|iso|term}}` or
/// `{{t+|iso|term}}` item. Bad items are skipped and reported, never fatal.
inline ExtractionResult extract_wiktionary(const std::filesystem::path& dump_dir,
                                           const GlossMap& glosses) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dump_dir, ec)) throw UnreadableFile(dump_dir.string());
  std::vector<fs::path> pages;
  for (const auto& entry : fs::directory_iterator(dump_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wiki") {
      pages.push_back(entry.path());
    }
  }
  if (ec) throw UnreadableFile(dump_dir.string());
  std::sort(pages.begin(), pages.end());

  ExtractionResult result;
  SkipReport& report = result.report;
  std::set<Lexicalization> seen;

  for (const fs::path& page : pages) {
    ++report.pages;
    const std::string content = text::read_file(page);
    const std::string lemma = page.stem().string();
    bool in_english = false;
    enum class Block { None, Matched, Unmatched } block = Block::None;
    std::optional<Concept> block_concept;
    std::size_t lineno = 0;

    const auto skip = [&](const std::string& why) {
      ++report.skipped;
      report.notes.push_back(lemma + ":" + std::to_string(lineno) + ": " + why);
    };

    for (const std::string& raw : text::split(content, '\n')) {
      ++lineno;
      std::string_view line = raw;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (auto header = wikitext::level2_header(line)) {
        in_english = *header == "English";
        block = Block::None;
        continue;
      }
      if (!in_english) continue;

      for (const auto& t : wikitext::scan_line(line)) {
        if (t.name == "trans-top") {
          block_concept = t.positional.empty()
                              ? std::nullopt
                              : glosses.match(t.positional.front());
          if (block_concept) {
            block = Block::Matched;
            ++report.blocks_matched;
          } else {
            block = Block::Unmatched;
            ++report.blocks_unmatched;
          }
          continue;
        }
        if (t.name == "trans-bottom") {
          block = Block::None;
          continue;
        }
        if (block != Block::Matched) continue;
        if (!wikitext::is_translation_item(t.name)) {
          ++report.unsupported_templates;
          continue;
        }
        ++report.parsed_items;
        if (!t.terminated) {
          skip("unterminated template");
          continue;
        }
        if (t.positional.size() < 2) {
          skip("translation item without code and term");
          continue;
        }
        const auto iso = normalize_iso(t.positional[0]);
        if (!iso) {
          skip("unknown language code '" + t.positional[0] + "'");
          continue;
        }
        std::string term(text::trim(wikitext::strip_links(t.positional[1])));
        if (term.empty()) {
          skip("empty term");
          continue;
        }
        Lexicalization lex{Language::from_code(*iso), *block_concept,
                           std::move(term), Provenance::Wiktionary,
                           std::nullopt};
        if (!seen.insert(lex).second) {
          skip("duplicate " + lex.language.iso() + " " + lex.sense.label() +
               " '" + lex.term + "'");
          continue;
        }
        ++report.emitted;
      }
    }
  }
  result.lexicalizations.assign(seen.begin(), seen.end());
  return result;
}

// ---------------------------------------------------------------------------
// Native speaker gold

struct SpeakerGold {
  std::vector<Lexicalization> words;  // sorted
  std::vector<Gap> gaps;              // sorted

  bool covers(const Language& lang) const {
    const auto has = [&](const auto& v) {
      return std::any_of(v.begin(), v.end(),
                         [&](const auto& x) { return x.language == lang; });
    };
    return has(words) || has(gaps);
  }
};

/// Reads `iso<TAB>concept_label<TAB>word|gap<TAB>term<TAB>note` rows (the
/// note column may be omitted). Throws WordGapConflict when a language has
/// both a word and a gap for one concept.
inline SpeakerGold load_speaker_gold(const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "iso");
  std::set<Lexicalization> words;
  std::set<Gap> gaps;
  std::map<std::pair<Language, Concept>, std::pair<char, std::size_t>> kinds;
  for (const auto& row : rows) {
    if (row.fields.size() != 4 && row.fields.size() != 5) {
      throw ParseError(file, row.line, "expected 4 or 5 columns");
    }
    Language lang = detail::parse_language_at(file, row.line, row.fields[0]);
    Concept c = detail::parse_label_at(file, row.line, row.fields[1]);
    const std::string_view kind = text::trim(row.fields[2]);
    const std::string term(text::trim(row.fields[3]));
    const std::string note =
        row.fields.size() == 5 ? std::string(text::trim(row.fields[4])) : "";
    char k = 0;
    if (kind == "word") {
      if (term.empty()) throw ParseError(file, row.line, "word without a term");
      k = 'w';
    } else if (kind == "gap") {
      if (!term.empty()) throw ParseError(file, row.line, "gap with a term");
      k = 'g';
    } else {
      throw ParseError(file, row.line,
                       "kind must be 'word' or 'gap', got '" +
                           std::string(kind) + "'");
    }
    const auto [it, fresh] = kinds.emplace(std::pair{lang, c}, std::pair{k, row.line});
    if (!fresh && it->second.first != k) {
      throw WordGapConflict(file + ":" + std::to_string(row.line) + ": " +
                            lang.iso() + " " + c.label() +
                            " is both a word and a gap (see line " +
                            std::to_string(it->second.second) + ")");
    }
    if (k == 'w') {
      words.insert(Lexicalization{
          std::move(lang), std::move(c), term, Provenance::Speaker,
          note.empty() ? std::nullopt : std::optional<std::string>(note)});
    } else {
      gaps.insert(Gap{std::move(lang), std::move(c),
                      std::string(evidence::kSpeaker)});
    }
  }
  return {{words.begin(), words.end()}, {gaps.begin(), gaps.end()}};
}

inline void save_speaker_gold(const SpeakerGold& gold,
                              const std::filesystem::path& path) {
  struct Row {
    std::string iso, label, kind, term, note;
    auto operator<=>(const Row&) const = default;
  };
  std::vector<Row> rows;
  for (const auto& w : gold.words) {
    rows.push_back({w.language.iso(), w.sense.label(), "word", w.term,
                    w.usage_note.value_or("")});
  }
  for (const auto& g : gold.gaps) {
    rows.push_back({g.language.iso(), g.sense.label(), "gap", "", ""});
  }
  std::sort(rows.begin(), rows.end());
  std::string out = text::join_row({"iso", "concept_label", "kind", "term", "note"});
  for (const auto& r : rows) {
    out += text::join_row({r.iso, r.label, r.kind, r.term, r.note});
  }
  text::write_file(path, out);
}

}  // namespace kinlex

#endif  // KINLEX_INGEST_HPP_
