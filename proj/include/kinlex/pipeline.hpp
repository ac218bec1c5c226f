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

#ifndef KINLEX_PIPELINE_HPP_
#define KINLEX_PIPELINE_HPP_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kinlex/gapengine.hpp"
#include "kinlex/ingest.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"

namespace kinlex {

struct InferenceInput {
  std::map<Subdomain, Lattice> lattices;
  std::optional<MurdockData> murdock;
  std::vector<Lexicalization> wiktionary;
  std::optional<SpeakerGold> speaker;
  std::map<Language, LanguageTraits> traits;  // explicit configuration
  std::size_t min_words = kDefaultMinWords;
};

struct InferenceOutput {
  /// Every evidence source merged: the published resource.
  MergedEvidence resource;
  /// Wiktionary words and the gaps inferred from them alone: what native
  /// speakers are asked to judge.
  MergedEvidence system;
  /// Words whose concept is not attested in any lattice.
  std::size_t unattested_words = 0;
};

inline InferenceOutput infer_gaps(const InferenceInput& in) {
  InferenceOutput out;
  const auto attested = [&](const Concept& c) {
    const auto it = in.lattices.find(c.subdomain());
    return it != in.lattices.end() && it->second.contains(c);
  };

  std::vector<Lexicalization> wikt;
  for (const auto& w : in.wiktionary) {
    if (attested(w.sense)) {
      wikt.push_back(w);
    } else {
      ++out.unattested_words;
    }
  }

  std::map<Language, std::size_t> word_counts;
  for (const auto& w : in.wiktionary) ++word_counts[w.language];

  std::vector<Gap> rule1, rule2;
  for (const auto& [lang, count] : word_counts) {
    if (count < in.min_words) continue;
    const LanguageTraits traits = resolve_traits(lang, in.traits, in.wiktionary);
    for (const auto& [sd, lattice] : in.lattices) {
      auto g1 = infer_rule1(lang, in.wiktionary, lattice, in.min_words);
      rule1.insert(rule1.end(), g1.begin(), g1.end());
      auto g2 = infer_rule2(traits, lattice);
      rule2.insert(rule2.end(), g2.begin(), g2.end());
    }
  }

  std::vector<Gap> pattern_gaps;
  if (in.murdock) {
    for (const auto& a : in.murdock->assignments) {
      const MurdockPattern* p = in.murdock->find(a.pattern);
      if (p == nullptr) {
        throw DanglingPatternRef("unknown pattern '" + a.pattern + "'");
      }
      const auto it = in.lattices.find(p->subdomain);
      if (it == in.lattices.end()) continue;
      auto g = gaps_from_pattern(a.language, *p, it->second);
      pattern_gaps.insert(pattern_gaps.end(), g.begin(), g.end());
    }
  }

  std::vector<Lexicalization> all_words = wikt;
  std::vector<Gap> speaker_gaps;
  if (in.speaker) {
    for (const auto& w : in.speaker->words) {
      if (attested(w.sense)) {
        all_words.push_back(w);
      } else {
        ++out.unattested_words;
      }
    }
    for (const auto& g : in.speaker->gaps) {
      if (attested(g.sense)) speaker_gaps.push_back(g);
    }
  }

  const std::vector<std::vector<Gap>> all_gaps = {speaker_gaps, pattern_gaps,
                                                  rule1, rule2};
  out.resource = merge_evidence(all_words, all_gaps);
  const std::vector<std::vector<Gap>> system_gaps = {rule1, rule2};
  out.system = merge_evidence(wikt, system_gaps);
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_PIPELINE_HPP_
