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

#ifndef KINLEX_SEMDIST_HPP_
#define KINLEX_SEMDIST_HPP_

// Semantic distance between kinship concepts and the machine translation
// benchmark built on it.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"
#include "kinlex/text.hpp"

namespace kinlex {

namespace detail {

/// Shortest upward hop count from `start` to each of its ancestors
/// (including itself at 0); unreachable entries hold SIZE_MAX.
inline std::vector<std::size_t> upward_hops(const Lattice& lattice,
                                            std::size_t start) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(lattice.size(), kInf);
  std::deque<std::size_t> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t p : lattice.parents(v)) {
      if (dist[p] == kInf) {
        dist[p] = dist[v] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Least common subsumer distance: the minimum over shared ancestors s of
/// hops(a -> s) + hops(b -> s), counting cover edges upward.
inline std::size_t lcs_distance(const Concept& a, const Concept& b,
                                const Lattice& lattice) {
  if (a.subdomain() != b.subdomain() || a.subdomain() != lattice.subdomain()) {
    throw SubdomainMismatch("distance between " + a.label() + " and " +
                            b.label() + " crosses subdomains");
  }
  const auto ia = lattice.index_of(a);
  const auto ib = lattice.index_of(b);
  if (!ia || !ib) {
    throw Error("concept " + (ia ? b.label() : a.label()) +
                " is not in the lattice");
  }
  const auto da = detail::upward_hops(lattice, *ia);
  const auto db = detail::upward_hops(lattice, *ib);
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::size_t best = kInf;
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    if (da[s] != kInf && db[s] != kInf) best = std::min(best, da[s] + db[s]);
  }
  if (best == kInf) {
    throw NoCommonSubsumer(a.label() + " and " + b.label() +
                           " share no ancestor");
  }
  return best;
}

/// Terms per language, keyed by their NFC case-folded form.
class Lexicon {
 public:
  struct Entry {
    std::string term;  // first spelling seen
    std::set<Concept> concepts;
  };

  Lexicon() = default;
  explicit Lexicon(std::span<const Lexicalization> words) {
    for (const auto& w : words) add(w);
  }

  void add(const Lexicalization& w) {
    auto& e = by_lang_[w.language.iso()][text::fold_nfc(w.term)];
    if (e.term.empty()) e.term = w.term;
    e.concepts.insert(w.sense);
  }

  const std::map<std::string, Entry>* terms(const Language& lang) const {
    const auto it = by_lang_.find(lang.iso());
    return it == by_lang_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, std::map<std::string, Entry>> by_lang_;
};

struct Disambiguation {
  std::vector<Concept> concepts;  // sorted
  bool unknown_term = false;
};

/// Every concept the lexicon maps `term` to in `lang`.
inline Disambiguation disambiguate(std::string_view term, const Language& lang,
                                   const Lexicon& lexicon) {
  Disambiguation d;
  if (const auto* terms = lexicon.terms(lang)) {
    if (const auto it = terms->find(text::fold_nfc(term)); it != terms->end()) {
      d.concepts.assign(it->second.concepts.begin(), it->second.concepts.end());
    }
  }
  d.unknown_term = d.concepts.empty();
  return d;
}

struct TermMatch {
  std::string term;
  std::size_t position = 0;  // byte offset in the normalized sentence
  std::vector<Concept> concepts;
};

namespace detail {

inline std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

}  // namespace detail

/// The longest lexicon term of `lang` found inside the normalized sentence;
/// ties go to the earliest occurrence.
inline std::optional<TermMatch> locate_target_term(std::string_view sentence,
                                                   const Language& lang,
                                                   const Lexicon& lexicon) {
  const auto* terms = lexicon.terms(lang);
  if (terms == nullptr) return std::nullopt;
  const std::string hay = text::fold_nfc(sentence);
  std::optional<TermMatch> best;
  std::size_t best_len = 0;
  for (const auto& [key, entry] : *terms) {
    if (key.empty()) continue;
    const std::size_t pos = hay.find(key);
    if (pos == std::string::npos) continue;
    const std::size_t len = detail::code_points(key);
    if (!best || len > best_len || (len == best_len && pos < best->position)) {
      best = TermMatch{entry.term, pos,
                       {entry.concepts.begin(), entry.concepts.end()}};
      best_len = len;
    }
  }
  return best;
}

struct BenchmarkSentence {
  std::string id;
  std::string source_text;
  Concept gold;
  Language target;
  std::string translated_text;
};

/// Reads `id<TAB>source_text<TAB>gold_concept<TAB>target_iso<TAB>
/// translated_text`.
inline std::vector<BenchmarkSentence> load_benchmark(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "id");
  std::vector<BenchmarkSentence> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 5) throw ParseError(file, row.line, "expected 5 columns");
    out.push_back({row.fields[0], row.fields[1],
                   detail::parse_label_at(file, row.line, row.fields[2]),
                   detail::parse_language_at(file, row.line, row.fields[3]),
                   row.fields[4]});
  }
  return out;
}

struct SentenceScore {
  std::string id;
  Language target;
  Concept gold;
  std::optional<std::string> term;
  std::vector<Concept> candidates;
  std::optional<std::size_t> distance;
  bool gap_sentence = false;
  bool ambiguous = false;
  /// No lexicon term found, or no candidate comparable with the gold.
  bool unmatched = false;
  bool gold_unresolved = false;
};

struct SemDistReport {
  std::string language_pair;
  std::size_t sentences = 0;
  std::size_t gap_count = 0;
  std::optional<double> avg_dist_gaps;
  std::optional<double> avg_dist_all;
  std::size_t unmatched_count = 0;
  std::size_t ambiguous_count = 0;
};

struct BenchmarkResult {
  std::vector<SentenceScore> sentences;  // sorted by (target, id)
  std::vector<SemDistReport> reports;    // sorted by target ISO code
};

inline SentenceScore score_sentence(const BenchmarkSentence& s,
                                    const std::map<Subdomain, Lattice>& lattices,
                                    const Lexicon& lexicon,
                                    const std::set<std::pair<Language, Concept>>& gaps) {
  SentenceScore r{s.id, s.target, s.gold, std::nullopt, {}, std::nullopt,
                  gaps.contains({s.target, s.gold}), false, false, false};
  const auto lit = lattices.find(s.gold.subdomain());
  if (lit == lattices.end() || !lit->second.contains(s.gold)) {
    r.gold_unresolved = true;
    r.unmatched = true;
    return r;
  }
  const auto match = locate_target_term(s.translated_text, s.target, lexicon);
  if (!match) {
    r.unmatched = true;
    return r;
  }
  r.term = match->term;
  r.candidates = match->concepts;
  r.ambiguous = r.candidates.size() > 1;
  for (const Concept& c : r.candidates) {
    if (c.subdomain() != s.gold.subdomain() || !lit->second.contains(c)) continue;
    try {
      const std::size_t d = lcs_distance(s.gold, c, lit->second);
      if (!r.distance || d < *r.distance) r.distance = d;
    } catch (const NoCommonSubsumer&) {
    }
  }
  if (!r.distance) r.unmatched = true;
  return r;
}

/// Scores each sentence by the distance from its gold concept to the closest
/// candidate meaning of the located output term, then averages per target
/// language over gap sentences and over all sentences. Unmatched sentences
/// are left out of both averages and counted.
inline BenchmarkResult score_benchmark(std::span<const BenchmarkSentence> sentences,
                                       const std::map<Subdomain, Lattice>& lattices,
                                       const Lexicon& lexicon,
                                       std::span<const Gap> gaps) {
  std::set<std::pair<Language, Concept>> gap_cells;
  for (const auto& g : gaps) gap_cells.insert({g.language, g.sense});

  BenchmarkResult out;
  for (const auto& s : sentences) {
    out.sentences.push_back(score_sentence(s, lattices, lexicon, gap_cells));
  }
  std::sort(out.sentences.begin(), out.sentences.end(),
            [](const SentenceScore& a, const SentenceScore& b) {
              return std::tie(a.target, a.id) < std::tie(b.target, b.id);
            });

  struct Acc {
    SemDistReport rep;
    std::size_t sum_gaps = 0, n_gaps = 0, sum_all = 0, n_all = 0;
  };
  std::map<Language, Acc> acc;
  for (const auto& s : out.sentences) {
    Acc& a = acc[s.target];
    a.rep.language_pair = "eng-" + s.target.iso();
    ++a.rep.sentences;
    if (s.gap_sentence) ++a.rep.gap_count;
    if (s.ambiguous) ++a.rep.ambiguous_count;
    if (s.unmatched) {
      ++a.rep.unmatched_count;
      continue;
    }
    a.sum_all += *s.distance;
    ++a.n_all;
    if (s.gap_sentence) {
      a.sum_gaps += *s.distance;
      ++a.n_gaps;
    }
  }
  for (auto& [lang, a] : acc) {
    if (a.n_gaps) a.rep.avg_dist_gaps = double(a.sum_gaps) / double(a.n_gaps);
    if (a.n_all) a.rep.avg_dist_all = double(a.sum_all) / double(a.n_all);
    out.reports.push_back(a.rep);
  }
  return out;
}

inline std::string format_semdist_tsv(std::span<const SemDistReport> reports) {
  const auto avg = [](std::optional<double> v) -> std::string {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
  };
  std::string out = text::join_row({"language_pair", "gaps", "sem_dist_gaps",
                                    "sem_dist_all", "sentences", "unmatched",
                                    "ambiguous"});
  for (const auto& r : reports) {
    out += text::join_row({r.language_pair, std::to_string(r.gap_count),
                           avg(r.avg_dist_gaps), avg(r.avg_dist_all),
                           std::to_string(r.sentences),
                           std::to_string(r.unmatched_count),
                           std::to_string(r.ambiguous_count)});
  }
  return out;
}

inline std::string format_sentence_tsv(std::span<const SentenceScore> scores) {
  std::string out = text::join_row({"id", "target_iso", "gold_concept", "term",
                                    "candidates", "distance", "gap", "flags"});
  for (const auto& s : scores) {
    std::string cands;
    for (const Concept& c : s.candidates) {
      if (!cands.empty()) cands.push_back(',');
      cands += c.label();
    }
    std::string flags;
    const auto flag = [&flags](bool on, std::string_view name) {
      if (!on) return;
      if (!flags.empty()) flags.push_back(',');
      flags += name;
    };
    flag(s.unmatched, "unmatched");
    flag(s.ambiguous, "ambiguous");
    flag(s.gold_unresolved, "gold-unresolved");
    out += text::join_row({s.id, s.target.iso(), s.gold.label(),
                           s.term.value_or(""), cands,
                           s.distance ? std::to_string(*s.distance) : "n/a",
                           s.gap_sentence ? "1" : "0", flags});
  }
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_SEMDIST_HPP_
