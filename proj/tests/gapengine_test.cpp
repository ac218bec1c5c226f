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

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace kinlex {
namespace {

using testing::L;
using testing::lang;

Lexicalization word(const char* iso, const char* label, std::string term,
                    Provenance p = Provenance::Wiktionary) {
  return {lang(iso), L(label), std::move(term), p, std::nullopt};
}

std::set<std::string> gap_labels(std::span<const Gap> gaps) {
  std::set<std::string> out;
  for (const auto& g : gaps) out.insert(g.sense.label());
  return out;
}

Lattice casestudy_lattice(Subdomain sd) {
  const auto att = load_attestation(testing::fixture("casestudy/attested.tsv"));
  return Lattice::build(sd, filter_attested(generate_all(sd), att));
}

// ---------------------------------------------------------------------------
// Rule 1

TEST(Rule1, GapsStartTwoHopsBelowAWord) {
  const Lattice lat = Lattice::build(
      Subdomain::UnclesAunts, {L("Pa;Sb"), L("Fa;Br"), L("Mo;Br"), L("Fa;El;Br")});
  // Enough words elsewhere to clear the threshold.
  const std::vector<Lexicalization> words = {
      word("eng", "Pa;Sb", "uncle"), word("eng", "Sb", "sibling"),
      word("eng", "Br", "brother"), word("eng", "Pa;Pa", "grandparent")};
  const auto gaps = infer_rule1(lang("eng"), words, lat, 4);
  EXPECT_EQ(gap_labels(gaps), std::set<std::string>{"Fa;El;Br"});
  for (const auto& g : gaps) EXPECT_EQ(g.evidence, "rule1:wiktionary");
}

TEST(Rule1, MongolianCousinWordLeavesElderCousinsAsGaps) {
  const Lattice lat = casestudy_lattice(Subdomain::Cousins);
  const std::vector<Lexicalization> words = {
      word("mon", "Pa;Sb;Ch", "үеэл"), word("mon", "El;Br", "ах"),
      word("mon", "El;Si", "эгч"), word("mon", "Yo;Sb", "дүү")};
  const auto gaps = gap_labels(infer_rule1(lang("mon"), words, lat, 4));
  EXPECT_TRUE(gaps.contains("Pa;El;Sb;So"));
  EXPECT_TRUE(gaps.contains("Pa;El;Sb;Da"));
  EXPECT_FALSE(gaps.contains("Pa;Sb;Ch"));
  EXPECT_FALSE(gaps.contains("Pa;Sb;So"));
  EXPECT_FALSE(gaps.contains("Pa;El;Sb;Ch"));
  EXPECT_FALSE(gaps.contains("Fa;Br;Da;fs"));  // speaker-specific
}

TEST(Rule1, RootWithoutWordIsAGap) {
  const Lattice lat = casestudy_lattice(Subdomain::Grandparents);
  const std::vector<Lexicalization> words = {
      word("hun", "Pa;Fa", "nagyapa"), word("hun", "Pa;Mo", "nagyanya"),
      word("hun", "Sb", "testvér"), word("hun", "Ch;Ch", "unoka")};
  const auto gaps = gap_labels(infer_rule1(lang("hun"), words, lat, 4));
  EXPECT_TRUE(gaps.contains("Pa;Pa"));
  EXPECT_FALSE(gaps.contains("Fa;Fa"));
  EXPECT_TRUE(gaps.contains("Fa;Pa"));
}

TEST(Rule1, SkipsLanguagesBelowTheWordThreshold) {
  const Lattice lat = casestudy_lattice(Subdomain::Siblings);
  const std::vector<Lexicalization> words = {
      word("kan", "Br", "x"), word("mal", "Br", "a"), word("mal", "Si", "b"),
      word("mal", "Pa;Pa", "c")};
  EXPECT_TRUE(infer_rule1(lang("kan"), words, lat, 4).empty());
  EXPECT_TRUE(infer_rule1(lang("mal"), words, lat, 4).empty());
  EXPECT_FALSE(infer_rule1(lang("mal"), words, lat, 3).empty());
  EXPECT_TRUE(infer_rule1(lang("eng"), words, lat, 1).empty());
  EXPECT_THROW(infer_rule1(lang("mal"), words, lat, 0), Error);
}

TEST(Rule1, NeverTouchesSpeakerOrFirstStepAge) {
  const Lattice lat = Lattice::build(Subdomain::Siblings, generate_all(Subdomain::Siblings));
  const std::vector<Lexicalization> words = {
      word("deu", "Pa;Pa", "a"), word("deu", "Ch;Ch", "b"),
      word("deu", "Pa;Sb", "c"), word("deu", "Sb;Ch", "d")};
  for (const Gap& g : infer_rule1(lang("deu"), words, lat, 4)) {
    EXPECT_EQ(g.sense.speaker(), Gender::Unspecified);
    EXPECT_FALSE(g.sense.age_relative_to_speaker());
  }
}

std::vector<Lexicalization> random_words(std::mt19937& rng, const Lattice& lat,
                                         const Language& l) {
  std::vector<Lexicalization> out;
  std::uniform_int_distribution<int> n(0, 8);
  std::uniform_int_distribution<std::size_t> pick(0, lat.size() - 1);
  const int k = n(rng);
  for (int i = 0; i < k; ++i) {
    out.push_back({l, lat.concepts()[pick(rng)], "w" + std::to_string(i),
                   Provenance::Wiktionary, std::nullopt});
  }
  // Words outside the lattice still count towards the threshold.
  if (std::bernoulli_distribution(0.3)(rng)) {
    out.push_back({l, L("Pa;Pa"), "gp", Provenance::Wiktionary, std::nullopt});
  }
  // Another language's words must be ignored.
  out.push_back({lang("fin"), lat.concepts()[pick(rng)], "x",
                 Provenance::Wiktionary, std::nullopt});
  return out;
}

TEST(Rule1, MatchesLiteralTranscriptionOnRandomInstances) {
  std::mt19937 rng(777);
  const Language eng = lang("eng");
  for (int trial = 0; trial < 300; ++trial) {
    const Lattice lat = testing::random_lattice(rng, 40);
    const auto words = random_words(rng, lat, eng);
    const std::size_t min = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::set<std::string> worded;
    std::size_t count = 0;
    for (const auto& w : words) {
      if (w.language != eng) continue;
      ++count;
      worded.insert(w.sense.label());
    }
    ASSERT_EQ(gap_labels(infer_rule1(eng, words, lat, min)),
              testing::oracle_rule1(lat.concepts(), worded, count, min))
        << "trial " << trial;
  }
}

TEST(Rule1, AddingWordsNeverAddsGaps) {
  std::mt19937 rng(31337);
  const Language eng = lang("eng");
  for (int trial = 0; trial < 200; ++trial) {
    const Lattice lat = testing::random_lattice(rng, 40);
    auto words = random_words(rng, lat, eng);
    // Start above the threshold; crossing it is covered separately.
    words.push_back({eng, L("Pa;Pa"), "base", Provenance::Wiktionary, std::nullopt});
    const auto before = gap_labels(infer_rule1(eng, words, lat, 1));
    std::uniform_int_distribution<std::size_t> pick(0, lat.size() - 1);
    words.push_back({eng, lat.concepts()[pick(rng)], "extra",
                     Provenance::Wiktionary, std::nullopt});
    const auto after = gap_labels(infer_rule1(eng, words, lat, 1));
    EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(),
                              after.end()));
  }
}

// ---------------------------------------------------------------------------
// Rule 2 and traits

TEST(Rule2, UnmarkedAttributesBecomeGaps) {
  const Lattice lat = casestudy_lattice(Subdomain::Siblings);
  const auto no_speaker =
      gap_labels(infer_rule2({lang("mon"), false, true}, lat));
  EXPECT_TRUE(no_speaker.contains("Br;ms"));
  EXPECT_TRUE(no_speaker.contains("El;Si;fs"));
  EXPECT_FALSE(no_speaker.contains("El;Br"));
  EXPECT_EQ(no_speaker.size(), 12u);

  const auto no_age = gap_labels(infer_rule2({lang("eng"), true, false}, lat));
  EXPECT_TRUE(no_age.contains("El;Br"));
  EXPECT_FALSE(no_age.contains("Br;ms"));

  EXPECT_TRUE(infer_rule2({lang("kor"), true, true}, lat).empty());
  for (const auto& g : infer_rule2({lang("eng"), false, false}, lat)) {
    EXPECT_EQ(g.evidence, "rule2:wiktionary");
  }
}

TEST(Traits, DerivedFromWordsUnlessConfigured) {
  const std::vector<Lexicalization> words = {
      word("kor", "El;Br;ms", "형"), word("mon", "El;Br", "ах"),
      word("eng", "Br", "brother")};
  const auto kor = derive_traits(lang("kor"), words);
  EXPECT_TRUE(kor.marks_speaker_gender);
  EXPECT_TRUE(kor.marks_relative_age);
  const auto mon = derive_traits(lang("mon"), words);
  EXPECT_FALSE(mon.marks_speaker_gender);
  EXPECT_TRUE(mon.marks_relative_age);
  EXPECT_EQ(mon.source, TraitSource::DerivedFromWords);

  const auto config = load_traits(testing::fixture("casestudy/traits.tsv"));
  const auto hun = resolve_traits(lang("hun"), config, words);
  EXPECT_EQ(hun.source, TraitSource::Config);
  EXPECT_FALSE(hun.marks_speaker_gender);
  EXPECT_TRUE(hun.marks_relative_age);
  EXPECT_EQ(resolve_traits(lang("kor"), config, words).source,
            TraitSource::DerivedFromWords);
}

TEST(Traits, RejectsBadRows) {
  testing::ScratchDir dir;
  const auto load = [&](const std::string& body) {
    text::write_file(dir / "t.tsv", body);
    return load_traits(dir / "t.tsv");
  };
  EXPECT_THROW(load("hun\t2\t0\n"), ParseError);
  EXPECT_THROW(load("hun\t1\n"), ParseError);
  EXPECT_THROW(load("hun\t1\t0\nhu\t0\t0\n"), ParseError);
  EXPECT_EQ(load("iso\tg\ta\nhun\t1\t0\n").size(), 1u);
}

// ---------------------------------------------------------------------------
// Patterns

TEST(Patterns, AlgonkianSiblingsLeaveEverythingElseAsGaps) {
  const Lattice lat = casestudy_lattice(Subdomain::Siblings);
  const MurdockData d =
      load_murdock(testing::fixture("casestudy/murdock_patterns.tsv"),
                   testing::fixture("casestudy/murdock_assignments.tsv"));
  const auto gaps = gaps_from_pattern({lang("jav"), "Algonkian"}, d, lat);
  const auto labels = gap_labels(gaps);
  EXPECT_EQ(labels.size(), lat.size() - 3);
  EXPECT_FALSE(labels.contains("El;Br"));
  EXPECT_FALSE(labels.contains("El;Si"));
  EXPECT_FALSE(labels.contains("Yo;Sb"));
  EXPECT_TRUE(labels.contains("Sb"));
  EXPECT_TRUE(labels.contains("Yo;Br"));
  for (const auto& g : gaps) EXPECT_EQ(g.evidence, "murdock:Algonkian");

  EXPECT_THROW(gaps_from_pattern({lang("jav"), "Bisexual"}, d, lat),
               SubdomainMismatch);
  EXPECT_THROW(gaps_from_pattern({lang("jav"), "Nope"}, d, lat),
               DanglingPatternRef);
}

TEST(Patterns, GapsPartitionTheLatticeWithTheLexicalizedSet) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Lattice lat = testing::random_lattice(rng, 30);
    MurdockPattern p{"P", lat.subdomain(), {}};
    for (const Concept& c : lat.concepts()) {
      if (std::bernoulli_distribution(0.4)(rng)) p.lexicalized.push_back(c);
    }
    const auto gaps = gap_labels(gaps_from_pattern(lang("jav"), p, lat));
    std::size_t lexicalized = 0;
    for (const Concept& c : lat.concepts()) {
      const bool lex = std::binary_search(p.lexicalized.begin(),
                                          p.lexicalized.end(), c);
      lexicalized += lex;
      EXPECT_NE(lex, gaps.contains(c.label())) << c.label();
    }
    EXPECT_EQ(gaps.size() + lexicalized, lat.size());
  }
}

// ---------------------------------------------------------------------------
// Merge

Gap gap(const char* iso, const char* label, std::string ev) {
  return {lang(iso), L(label), std::move(ev)};
}

TEST(Merge, WordsBeatInferredGaps) {
  const std::vector<Lexicalization> words = {word("hun", "Sb", "testvér")};
  const std::vector<std::vector<Gap>> gaps = {
      {gap("hun", "Sb", "murdock:Dravidian"), gap("hun", "Br", "murdock:Dravidian")},
      {gap("hun", "Sb", "rule1:wiktionary")}};
  const auto m = merge_evidence(words, gaps);
  EXPECT_EQ(m.words.size(), 1u);
  ASSERT_EQ(m.gaps.size(), 1u);
  EXPECT_EQ(m.gaps[0].sense, L("Br"));
}

TEST(Merge, SpeakerJudgmentIsAuthoritative) {
  const std::vector<Lexicalization> words = {
      word("hun", "Br", "fivér"),
      word("mon", "Pa;El;Sb;So", "үеэл ах", Provenance::Speaker)};
  const std::vector<std::vector<Gap>> gaps = {
      {gap("hun", "Br", "speaker")},
      {gap("mon", "Pa;El;Sb;So", "rule1:wiktionary")}};
  const auto m = merge_evidence(words, gaps);
  ASSERT_EQ(m.words.size(), 1u);
  EXPECT_EQ(m.words[0].term, "үеэл ах");
  ASSERT_EQ(m.gaps.size(), 1u);
  EXPECT_EQ(m.gaps[0], gap("hun", "Br", "speaker"));
}

TEST(Merge, SpeakerProvenanceWinsForTheSameWord) {
  const std::vector<Lexicalization> words = {
      word("mon", "El;Br", "ах"),
      word("mon", "El;Br", "ах", Provenance::Speaker)};
  const auto m = merge_evidence(words, {});
  ASSERT_EQ(m.words.size(), 1u);
  EXPECT_EQ(m.words[0].provenance, Provenance::Speaker);
}

TEST(Merge, GapEvidencePrecedence) {
  const std::vector<std::vector<Gap>> gaps = {
      {gap("jav", "Sb", "rule2:wiktionary"), gap("jav", "Br", "rule2:wiktionary")},
      {gap("jav", "Sb", "rule1:wiktionary"), gap("jav", "Br", "murdock:Algonkian")},
      {gap("jav", "Sb", "murdock:Algonkian"), gap("jav", "Si", "rule1:wiktionary")},
      {gap("jav", "Si", "rule2:wiktionary")}};
  const auto m = merge_evidence({}, gaps);
  ASSERT_EQ(m.gaps.size(), 3u);
  EXPECT_EQ(m.gaps[0], gap("jav", "Br", "murdock:Algonkian"));
  EXPECT_EQ(m.gaps[1], gap("jav", "Sb", "murdock:Algonkian"));
  EXPECT_EQ(m.gaps[2], gap("jav", "Si", "rule1:wiktionary"));
}

TEST(Merge, OneGapPerCellAndOrderIndependent) {
  std::mt19937 rng(5);
  const std::vector<std::string> evs = {"speaker", "murdock:A", "murdock:B",
                                        "rule1:wiktionary", "rule2:wiktionary"};
  const std::vector<const char*> labels = {"Sb", "Br", "Si", "El;Br"};
  const std::vector<const char*> isos = {"jav", "hun"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Gap> pool;
    std::vector<Lexicalization> words;
    for (int i = 0; i < 10; ++i) {
      pool.push_back(gap(isos[rng() % 2], labels[rng() % 4], evs[rng() % 5]));
    }
    for (int i = 0; i < 2; ++i) {
      words.push_back(word(isos[rng() % 2], labels[rng() % 4], "t",
                           rng() % 2 ? Provenance::Speaker : Provenance::Wiktionary));
    }
    const std::vector<std::vector<Gap>> a = {pool};
    std::shuffle(pool.begin(), pool.end(), rng);
    std::shuffle(words.begin(), words.end(), rng);
    const std::vector<std::vector<Gap>> b = {
        std::vector<Gap>(pool.begin(), pool.begin() + 5),
        std::vector<Gap>(pool.begin() + 5, pool.end())};
    const auto ma = merge_evidence(words, a);
    const auto mb = merge_evidence(words, b);
    EXPECT_EQ(ma.gaps, mb.gaps);
    std::set<std::pair<Language, Concept>> cells;
    for (const auto& g : ma.gaps) {
      EXPECT_TRUE(cells.insert({g.language, g.sense}).second);
    }
    for (const auto& w : ma.words) {
      EXPECT_FALSE(cells.contains({w.language, w.sense}));
    }
  }
}

}  // namespace
}  // namespace kinlex
