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

#ifndef KINLEX_EVALKIT_HPP_
#define KINLEX_EVALKIT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/ingest.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"
#include "kinlex/resourceio.hpp"

namespace kinlex {

/// Precision, recall and F1 as percentages. A metric whose denominator is
/// zero is undefined (nullopt), never 0.
struct Prf {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

inline Prf prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf r{tp, fp, fn, std::nullopt, std::nullopt, std::nullopt};
  const auto pct = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return 100.0 * static_cast<double>(num) / static_cast<double>(den);
  };
  r.precision = pct(tp, tp + fp);
  r.recall = pct(tp, tp + fn);
  // Harmonic mean of P and R, written to stay defined when tp == 0.
  r.f1 = pct(2 * tp, 2 * tp + fp + fn);
  return r;
}

/// Half-up rounding to one decimal.
inline double round1(double v) {
  return std::floor(v * 10.0 + 0.5 + 1e-9) / 10.0;
}

inline std::string format_pct(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(*v));
  return buf;
}

enum class ItemKind { Word, Gap };

/// One system claim or gold item after joining system output with gold.
struct JudgedItem {
  Language language;
  Concept sense;
  ItemKind kind;
  std::string term;  // words only
  bool system_claimed = false;
  bool gold_accepts = false;
};

struct PrfRow {
  std::string group;
  Prf words;
  Prf gaps;
};

struct SystemScores {
  std::vector<PrfRow> by_language;   // sorted by ISO code, then "total"
  std::vector<PrfRow> by_subdomain;  // subdomain order, then "total"
};

/// Joins the system's words and gaps with speaker gold for every language the
/// gold covers (or only `languages` when given). Throws MissingGold when a
/// requested language has no gold, or when gold says nothing about a cell the
/// system claims.
inline std::vector<JudgedItem> judge(
    std::span<const Lexicalization> system_words,
    std::span<const Gap> system_gaps, const SpeakerGold& gold,
    std::optional<std::set<Language>> languages = std::nullopt) {
  std::set<Language> scope;
  for (const auto& w : gold.words) scope.insert(w.language);
  for (const auto& g : gold.gaps) scope.insert(g.language);
  if (scope.empty()) throw MissingGold("speaker gold is empty");
  if (languages) {
    for (const Language& l : *languages) {
      if (!scope.contains(l)) throw MissingGold("no gold for " + l.iso());
    }
    scope = *languages;
  }

  using Cell = std::pair<Language, Concept>;
  std::set<std::tuple<Language, Concept, std::string>> gold_words;
  std::set<Cell> gold_word_cells, gold_gap_cells;
  for (const auto& w : gold.words) {
    gold_words.insert({w.language, w.sense, w.term});
    gold_word_cells.insert({w.language, w.sense});
  }
  for (const auto& g : gold.gaps) gold_gap_cells.insert({g.language, g.sense});

  const auto require_gold = [&](const Language& l, const Concept& c) {
    if (!gold_word_cells.contains({l, c}) && !gold_gap_cells.contains({l, c})) {
      throw MissingGold("gold has no judgment for " + l.iso() + " " +
                        c.label());
    }
  };

  std::vector<JudgedItem> items;
  std::set<std::tuple<Language, Concept, std::string>> sys_words;
  std::set<Cell> sys_gaps;
  for (const auto& w : system_words) {
    if (!scope.contains(w.language)) continue;
    if (!sys_words.insert({w.language, w.sense, w.term}).second) continue;
    require_gold(w.language, w.sense);
    items.push_back({w.language, w.sense, ItemKind::Word, w.term, true,
                     gold_words.contains({w.language, w.sense, w.term})});
  }
  for (const auto& g : system_gaps) {
    if (!scope.contains(g.language)) continue;
    if (!sys_gaps.insert({g.language, g.sense}).second) continue;
    require_gold(g.language, g.sense);
    items.push_back({g.language, g.sense, ItemKind::Gap, "", true,
                     gold_gap_cells.contains({g.language, g.sense})});
  }
  for (const auto& w : gold.words) {
    if (!scope.contains(w.language)) continue;
    if (!sys_words.contains({w.language, w.sense, w.term})) {
      items.push_back({w.language, w.sense, ItemKind::Word, w.term, false, true});
    }
  }
  for (const auto& g : gold.gaps) {
    if (!scope.contains(g.language)) continue;
    if (!sys_gaps.contains({g.language, g.sense})) {
      items.push_back({g.language, g.sense, ItemKind::Gap, "", false, true});
    }
  }
  return items;
}

namespace detail {

struct Tally {
  std::size_t tp = 0, fp = 0, fn = 0;
  void add(const JudgedItem& it) {
    if (it.system_claimed && it.gold_accepts) ++tp;
    else if (it.system_claimed) ++fp;
    else if (it.gold_accepts) ++fn;
  }
};

struct GroupTally {
  Tally words, gaps;
  void add(const JudgedItem& it) {
    (it.kind == ItemKind::Word ? words : gaps).add(it);
  }
  PrfRow row(std::string group) const {
    return {std::move(group), prf(words.tp, words.fp, words.fn),
            prf(gaps.tp, gaps.fp, gaps.fn)};
  }
};

}  // namespace detail

inline SystemScores aggregate(std::span<const JudgedItem> items) {
  std::map<Language, detail::GroupTally> by_lang;
  std::map<Subdomain, detail::GroupTally> by_sd;
  detail::GroupTally total;
  for (const auto& it : items) {
    by_lang[it.language].add(it);
    by_sd[it.sense.subdomain()].add(it);
    total.add(it);
  }
  SystemScores s;
  for (const auto& [l, t] : by_lang) s.by_language.push_back(t.row(l.iso()));
  s.by_language.push_back(total.row("total"));
  for (const auto& [sd, t] : by_sd) {
    s.by_subdomain.push_back(t.row(std::string(subdomain_name(sd))));
  }
  s.by_subdomain.push_back(total.row("total"));
  return s;
}

/// Scores a system bundle against speaker gold: fp are claims the gold
/// rejects, fn are gold items the system missed.
inline SystemScores score_system(const ResourceBundle& system,
                                 const SpeakerGold& gold,
                                 std::optional<std::set<Language>> languages =
                                     std::nullopt) {
  const auto words = words_from_bundle(system);
  const auto gaps = gaps_from_bundle(system);
  const auto items = judge(words, gaps, gold, std::move(languages));
  return aggregate(items);
}

// ---------------------------------------------------------------------------
// Aggregate evaluation counts (one row per language).

struct EvalCounts {
  Language language;
  std::size_t wiktionary_words = 0;
  std::size_t inferred_gaps = 0;
  std::size_t expert_words = 0;
  std::size_t expert_gaps = 0;
  std::size_t rejected_words = 0;
  std::size_t rejected_gaps = 0;
};

/// Reads `iso, wiktionary_words, inferred_gaps, expert_words, expert_gaps,
/// rejected_words, rejected_gaps`.
inline std::vector<EvalCounts> load_eval_counts(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "iso");
  std::vector<EvalCounts> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 7) throw ParseError(file, row.line, "expected 7 columns");
    std::size_t v[6];
    for (int i = 0; i < 6; ++i) {
      const std::string& f = row.fields[i + 1];
      std::size_t used = 0;
      try {
        v[i] = std::stoul(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != f.size()) {
        throw ParseError(file, row.line, "not a count: '" + f + "'");
      }
    }
    EvalCounts c{detail::parse_language_at(file, row.line, row.fields[0]),
                 v[0], v[1], v[2], v[3], v[4], v[5]};
    if (c.rejected_words > c.wiktionary_words ||
        c.rejected_gaps > c.inferred_gaps) {
      throw ParseError(file, row.line, "more rejections than claims");
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct CountScores {
  std::vector<PrfRow> rows;  // scored languages in input order, then "total"
  std::vector<Language> excluded;
};

/// Words: tp = claims kept, fp = rejected claims, fn = words only the
/// experts supplied; gaps likewise. Languages with fewer than `min_words`
/// Wiktionary words had no inference and are excluded.
inline CountScores score_counts(std::span<const EvalCounts> counts,
                                std::size_t min_words) {
  CountScores out;
  detail::Tally tw, tg;
  for (const auto& c : counts) {
    if (c.wiktionary_words < min_words) {
      out.excluded.push_back(c.language);
      continue;
    }
    const std::size_t wtp = c.wiktionary_words - c.rejected_words;
    const std::size_t gtp = c.inferred_gaps - c.rejected_gaps;
    out.rows.push_back({c.language.iso(), prf(wtp, c.rejected_words, c.expert_words),
                        prf(gtp, c.rejected_gaps, c.expert_gaps)});
    tw.tp += wtp;
    tw.fp += c.rejected_words;
    tw.fn += c.expert_words;
    tg.tp += gtp;
    tg.fp += c.rejected_gaps;
    tg.fn += c.expert_gaps;
  }
  out.rows.push_back({"total", prf(tw.tp, tw.fp, tw.fn), prf(tg.tp, tg.fp, tg.fn)});
  return out;
}

/// Report in table column order, counts appended.
inline std::string format_prf_tsv(std::span<const PrfRow> rows,
                                  std::string_view group_column) {
  std::string out = text::join_row(
      {std::string(group_column), "words_p", "words_r", "words_f1", "gaps_p",
       "gaps_r", "gaps_f1", "words_tp", "words_fp", "words_fn", "gaps_tp",
       "gaps_fp", "gaps_fn"});
  for (const auto& r : rows) {
    out += text::join_row(
        {r.group, format_pct(r.words.precision), format_pct(r.words.recall),
         format_pct(r.words.f1), format_pct(r.gaps.precision),
         format_pct(r.gaps.recall), format_pct(r.gaps.f1),
         std::to_string(r.words.tp), std::to_string(r.words.fp),
         std::to_string(r.words.fn), std::to_string(r.gaps.tp),
         std::to_string(r.gaps.fp), std::to_string(r.gaps.fn)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cohen's kappa

using RaterPair = std::pair<bool, bool>;

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  std::size_t n = 0;
  /// At least one rater gave the same answer to every item.
  bool degenerate = false;
};

inline KappaResult cohen_kappa_from_table(std::size_t both_yes,
                                          std::size_t first_only,
                                          std::size_t second_only,
                                          std::size_t both_no) {
  const std::size_t n = both_yes + first_only + second_only + both_no;
  if (n == 0) throw EmptyInput("kappa needs at least one rated item");
  const double dn = static_cast<double>(n);
  const double first_yes = static_cast<double>(both_yes + first_only) / dn;
  const double second_yes = static_cast<double>(both_yes + second_only) / dn;
  KappaResult r;
  r.n = n;
  r.observed = static_cast<double>(both_yes + both_no) / dn;
  r.expected = first_yes * second_yes + (1.0 - first_yes) * (1.0 - second_yes);
  r.degenerate = first_yes == 0.0 || first_yes == 1.0 || second_yes == 0.0 ||
                 second_yes == 1.0;
  if (r.expected == 1.0) {
    r.kappa = 1.0;  // both raters constant and equal
  } else {
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  }
  return r;
}

inline KappaResult cohen_kappa(std::span<const RaterPair> pairs) {
  std::size_t yy = 0, yn = 0, ny = 0, nn = 0;
  for (const auto& [a, b] : pairs) {
    if (a && b) ++yy;
    else if (a) ++yn;
    else if (b) ++ny;
    else ++nn;
  }
  return cohen_kappa_from_table(yy, yn, ny, nn);
}

struct KappaRow {
  std::string group;
  std::size_t languages = 0;
  std::size_t cells = 0;
  std::size_t gaps = 0;  // cells either source marks as a gap
  std::optional<KappaResult> result;
};

/// Binary gap/no-gap agreement between the resource's own evidence (words,
/// speaker and rule gaps; pattern-derived gaps are ignored) and the
/// typological patterns, over every (language, concept) cell both cover.
inline std::vector<KappaRow> kappa_against_patterns(
    const ResourceBundle& ours, const MurdockData& murdock,
    const std::map<Subdomain, Lattice>& lattices) {
  using Cell = std::pair<std::string, Concept>;
  std::set<Cell> our_words, our_gaps;
  for (const auto& w : ours.words) our_words.insert({w.iso, w.sense});
  for (const auto& g : ours.gaps) {
    if (!g.evidence.starts_with("murdock:")) our_gaps.insert({g.iso, g.sense});
  }

  std::map<Subdomain, std::vector<RaterPair>> pairs;
  std::map<Subdomain, std::set<std::string>> langs;
  std::vector<RaterPair> all_pairs;
  std::set<std::string> all_langs;
  std::map<Subdomain, std::size_t> gap_cells;
  std::size_t all_gap_cells = 0;
  for (const auto& a : murdock.assignments) {
    const MurdockPattern* p = murdock.find(a.pattern);
    if (p == nullptr) throw DanglingPatternRef("unknown pattern '" + a.pattern + "'");
    const auto lit = lattices.find(p->subdomain);
    if (lit == lattices.end()) continue;
    for (const Concept& c : lit->second.concepts()) {
      const Cell cell{a.language.iso(), c};
      const bool is_word = our_words.contains(cell);
      const bool is_gap = our_gaps.contains(cell);
      if (!is_word && !is_gap) continue;
      const bool pattern_gap = !std::binary_search(
          p->lexicalized.begin(), p->lexicalized.end(), c);
      const RaterPair rp{is_gap && !is_word, pattern_gap};
      pairs[p->subdomain].push_back(rp);
      all_pairs.push_back(rp);
      langs[p->subdomain].insert(a.language.iso());
      all_langs.insert(a.language.iso());
      if (rp.first || rp.second) {
        ++gap_cells[p->subdomain];
        ++all_gap_cells;
      }
    }
  }
  std::vector<KappaRow> out;
  for (const auto& [sd, ps] : pairs) {
    out.push_back({std::string(subdomain_name(sd)), langs[sd].size(), ps.size(),
                   gap_cells[sd], cohen_kappa(ps)});
  }
  KappaRow total{"total", all_langs.size(), all_pairs.size(), all_gap_cells,
                 std::nullopt};
  if (!all_pairs.empty()) total.result = cohen_kappa(all_pairs);
  out.push_back(std::move(total));
  return out;
}

inline std::string format_kappa_tsv(std::span<const KappaRow> rows) {
  std::string out = text::join_row(
      {"subdomain", "languages", "cells", "gaps", "kappa", "p_o", "p_e",
       "degenerate"});
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out += text::join_row(
        {r.group, std::to_string(r.languages), std::to_string(r.cells),
         std::to_string(r.gaps), r.result ? num(r.result->kappa) : "n/a",
         r.result ? num(r.result->observed) : "n/a",
         r.result ? num(r.result->expected) : "n/a",
         r.result ? (r.result->degenerate ? "1" : "0") : "n/a"});
  }
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_EVALKIT_HPP_
