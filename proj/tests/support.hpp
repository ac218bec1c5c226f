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

#ifndef KINLEX_TESTS_SUPPORT_HPP_
#define KINLEX_TESTS_SUPPORT_HPP_

// Fixture paths, scratch directories, random instance generators and the
// brute-force oracles the library is checked against. Oracles deliberately
// avoid the library's own algorithms: subsumption is fact-set inclusion,
// cover edges are R minus R∘R, distances come from Floyd-Warshall.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kinlex.hpp"

namespace kinlex::testing {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(KINLEX_FIXTURES) / rel;
}

/// A fresh directory removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kinlex-test-" + std::to_string(rd()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const {
    return path_ / rel;
  }

 private:
  std::filesystem::path path_;
};

inline Concept L(const char* label) { return parse_label(label); }

inline Language lang(const char* code) { return Language::from_code(code); }

// ---------------------------------------------------------------------------
// Oracles

/// Every attribute a concept pins down, as "position.attribute=value".
inline std::set<std::string> facts(const Concept& c) {
  std::set<std::string> out;
  const auto steps = c.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string at = std::to_string(i);
    if (steps[i].gender != Gender::Unspecified) {
      out.insert(at + ".gender=" +
                 std::to_string(static_cast<int>(steps[i].gender)));
    }
    if (steps[i].age != RelativeAge::Unspecified) {
      out.insert(at + ".age=" + std::to_string(static_cast<int>(steps[i].age)));
    }
  }
  if (c.speaker() != Gender::Unspecified) {
    out.insert("speaker=" + std::to_string(static_cast<int>(c.speaker())));
  }
  return out;
}

/// `general` is at least as general as `specific` when it pins down a subset
/// of the same facts.
inline bool oracle_subsumes(const Concept& general, const Concept& specific) {
  if (general.subdomain() != specific.subdomain()) return false;
  const auto g = facts(general), s = facts(specific);
  return std::includes(s.begin(), s.end(), g.begin(), g.end());
}

/// Strict order matrix R[i][j]: concepts[i] strictly above concepts[j].
inline std::vector<std::vector<bool>> oracle_order(
    const std::vector<Concept>& concepts) {
  const std::size_t n = concepts.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = i != j && oracle_subsumes(concepts[i], concepts[j]) &&
                !oracle_subsumes(concepts[j], concepts[i]);
    }
  }
  return r;
}

/// Transitive reduction as R \ (R∘R).
inline std::set<std::pair<std::string, std::string>> oracle_cover(
    const std::vector<Concept>& concepts) {
  const auto r = oracle_order(concepts);
  const std::size_t n = concepts.size();
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!r[i][j]) continue;
      bool composite = false;
      for (std::size_t k = 0; k < n && !composite; ++k) {
        composite = r[i][k] && r[k][j];
      }
      if (!composite) out.insert({concepts[i].label(), concepts[j].label()});
    }
  }
  return out;
}

inline std::set<std::pair<std::string, std::string>> edge_labels(
    std::span<const IsA> edges) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : edges) out.insert({e.hypernym.label(), e.hyponym.label()});
  return out;
}

/// Rule 1 written out literally: a concept with no speaker fact and no age
/// fact on the first step is a gap when neither it nor any concept one cover
/// edge above it has a word, provided the language has enough words.
inline std::set<std::string> oracle_rule1(const std::vector<Concept>& concepts,
                                          const std::set<std::string>& worded,
                                          std::size_t language_words,
                                          std::size_t min_words) {
  std::set<std::string> out;
  if (language_words < min_words) return out;
  const auto cover = oracle_cover(concepts);
  for (const Concept& c : concepts) {
    const auto f = facts(c);
    const bool speaker = std::any_of(f.begin(), f.end(), [](const auto& s) {
      return s.starts_with("speaker=");
    });
    const bool first_age = std::any_of(f.begin(), f.end(), [](const auto& s) {
      return s.starts_with("0.age=");
    });
    if (speaker || first_age) continue;
    if (worded.contains(c.label())) continue;
    bool parent_worded = false;
    for (const auto& [hyper, hypo] : cover) {
      if (hypo == c.label() && worded.contains(hyper)) parent_worded = true;
    }
    if (!parent_worded) out.insert(c.label());
  }
  return out;
}

/// Shortest common-ancestor distance via Floyd-Warshall over upward edges.
/// Returns SIZE_MAX when the two share no ancestor.
class OracleDistance {
 public:
  explicit OracleDistance(const std::vector<Concept>& concepts)
      : concepts_(concepts) {
    const std::size_t n = concepts.size();
    up_.assign(n, std::vector<std::size_t>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) up_[i][i] = 0;
    const auto cover = oracle_cover(concepts);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // Upward hop from child j to parent i.
        if (cover.contains({concepts[i].label(), concepts[j].label()})) {
          up_[j][i] = 1;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (up_[i][k] != kInf && up_[k][j] != kInf) {
            up_[i][j] = std::min(up_[i][j], up_[i][k] + up_[k][j]);
          }
        }
      }
    }
  }

  std::size_t operator()(std::size_t a, std::size_t b) const {
    std::size_t best = kInf;
    for (std::size_t s = 0; s < concepts_.size(); ++s) {
      if (up_[a][s] != kInf && up_[b][s] != kInf) {
        best = std::min(best, up_[a][s] + up_[b][s]);
      }
    }
    return best;
  }

  std::size_t up(std::size_t from, std::size_t to) const { return up_[from][to]; }

  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

 private:
  std::vector<Concept> concepts_;
  std::vector<std::vector<std::size_t>> up_;
};

// ---------------------------------------------------------------------------
// Generators

inline Subdomain random_subdomain(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, kAllSubdomains.size() - 1);
  return kAllSubdomains[pick(rng)];
}

/// A sorted random subset of one subdomain's concepts, 1..max_size of them;
/// the root is included about half the time.
inline std::vector<Concept> random_concepts(std::mt19937& rng, Subdomain sd,
                                            std::size_t max_size) {
  auto all = generate_all(sd);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, std::min(max_size, all.size()));
  std::vector<Concept> out(all.begin(), all.begin() + static_cast<long>(size(rng)));
  const Concept root = Concept::root(sd);
  const bool has_root = std::find(out.begin(), out.end(), root) != out.end();
  if (!has_root && std::bernoulli_distribution(0.5)(rng)) {
    if (out.size() == max_size) out.pop_back();
    out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A random lattice of at most `max_size` concepts.
inline Lattice random_lattice(std::mt19937& rng, std::size_t max_size) {
  const Subdomain sd = random_subdomain(rng);
  return Lattice::build(sd, random_concepts(rng, sd, max_size));
}

}  // namespace kinlex::testing

#endif  // KINLEX_TESTS_SUPPORT_HPP_
