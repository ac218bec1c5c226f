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

#ifndef KINLEX_LATTICEGEN_HPP_
#define KINLEX_LATTICEGEN_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/kinmodel.hpp"
#include "kinlex/text.hpp"

namespace kinlex {

/// Every concept of `sd`: three genders per step, three ages per sibling
/// step, three speaker genders. Sorted by label.
inline std::vector<Concept> generate_all(Subdomain sd) {
  const auto sk = skeleton(sd);
  std::vector<std::vector<KinStep>> paths = {{}};
  for (Relation r : sk) {
    std::vector<std::vector<KinStep>> next;
    for (const auto& prefix : paths) {
      for (Gender g : kAllGenders) {
        if (r != Relation::Sibling) {
          next.push_back(prefix);
          next.back().push_back({r, g, RelativeAge::Unspecified});
          continue;
        }
        for (RelativeAge a : kAllAges) {
          next.push_back(prefix);
          next.back().push_back({r, g, a});
        }
      }
    }
    paths = std::move(next);
  }
  std::vector<Concept> out;
  out.reserve(paths.size() * kAllGenders.size());
  for (const auto& p : paths) {
    for (Gender speaker : kAllGenders) out.emplace_back(sd, p, speaker);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Attestation {
  Concept sense;
  std::string provenance;
};

/// Attested concepts, unique by label, kept sorted.
class AttestationList {
 public:
  AttestationList() = default;

  /// Throws Error on a duplicate label.
  void add(Concept c, std::string provenance) {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), c,
        [](const Attestation& a, const Concept& k) { return a.sense < k; });
    if (it != entries_.end() && it->sense == c) {
      throw Error("duplicate attested label '" + c.label() + "'");
    }
    entries_.insert(it, Attestation{std::move(c), std::move(provenance)});
  }

  const std::vector<Attestation>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  std::vector<Concept> concepts(Subdomain sd) const {
    std::vector<Concept> out;
    for (const auto& e : entries_) {
      if (e.sense.subdomain() == sd) out.push_back(e.sense);
    }
    return out;
  }

  std::set<Subdomain> subdomains() const {
    std::set<Subdomain> out;
    for (const auto& e : entries_) out.insert(e.sense.subdomain());
    return out;
  }

  std::optional<std::string> provenance(const Concept& c) const {
    for (const auto& e : entries_) {
      if (e.sense == c) return e.provenance;
    }
    return std::nullopt;
  }

 private:
  std::vector<Attestation> entries_;
};

/// Reads `subdomain<TAB>concept_label<TAB>provenance` rows.
inline AttestationList load_attestation(const std::filesystem::path& path) {
  auto rows = text::read_tsv(path);
  text::drop_header(rows, "subdomain");
  AttestationList list;
  for (const auto& row : rows) {
    const auto fail = [&](const std::string& why) {
      return ParseError(path.string(), row.line, why);
    };
    if (row.fields.size() != 3) throw fail("expected 3 columns");
    const auto sd = subdomain_from_name(row.fields[0]);
    if (!sd) throw fail("unknown subdomain '" + row.fields[0] + "'");
    std::optional<Concept> c;
    try {
      c = parse_label(row.fields[1]);
    } catch (const MalformedLabel& e) {
      throw fail(e.what());
    }
    if (c->subdomain() != *sd) {
      throw fail("label '" + c->label() + "' is not a " + row.fields[0] +
                 " concept");
    }
    const std::string provenance(text::trim(row.fields[2]));
    if (provenance.empty()) throw fail("empty provenance");
    try {
      list.add(std::move(*c), provenance);
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  return list;
}

/// Intersection of `all` with the attested labels. Throws UnknownLabel when an
/// attested concept of the same subdomain is absent from `all`.
inline std::vector<Concept> filter_attested(std::span<const Concept> all,
                                            const AttestationList& att) {
  std::set<Concept> pool(all.begin(), all.end());
  std::set<Subdomain> domains;
  for (const Concept& c : all) domains.insert(c.subdomain());
  std::vector<Concept> out;
  for (const auto& e : att.entries()) {
    if (!domains.contains(e.sense.subdomain())) continue;
    if (!pool.contains(e.sense)) throw UnknownLabel(e.sense.label());
    out.push_back(e.sense);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct IsA {
  Concept hypernym;
  Concept hyponym;

  friend bool operator==(const IsA&, const IsA&) = default;
  friend auto operator<=>(const IsA&, const IsA&) = default;
};

/// Transitive reduction of subsumption restricted to `concepts`: g -> h is an
/// edge iff g strictly subsumes h with nothing of the set strictly between.
/// Sorted by (hypernym, hyponym).
inline std::vector<IsA> cover_edges(std::span<const Concept> concepts) {
  std::vector<Concept> nodes(concepts.begin(), concepts.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (const Concept& c : nodes) {
    if (c.subdomain() != nodes.front().subdomain()) {
      throw SubdomainMismatch("cover edges requested across subdomains");
    }
  }

  std::vector<IsA> edges;
  std::vector<std::size_t> above;
  for (std::size_t h = 0; h < nodes.size(); ++h) {
    above.clear();
    for (std::size_t g = 0; g < nodes.size(); ++g) {
      if (g != h && subsumes(nodes[g], nodes[h])) above.push_back(g);
    }
    // Keep only the minimal strict ancestors.
    for (std::size_t g : above) {
      const bool covered = std::none_of(
          above.begin(), above.end(), [&](std::size_t m) {
            return m != g && subsumes(nodes[g], nodes[m]);
          });
      if (covered) edges.push_back({nodes[g], nodes[h]});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// The attested concepts of one subdomain with their cover edges.
class Lattice {
 public:
  /// Computes the cover edges of `concepts`.
  static Lattice build(Subdomain sd, std::vector<Concept> concepts) {
    for (const Concept& c : concepts) {
      if (c.subdomain() != sd) {
        throw SubdomainMismatch("concept '" + c.label() + "' is not a " +
                                std::string(subdomain_name(sd)) + " concept");
      }
    }
    std::sort(concepts.begin(), concepts.end());
    concepts.erase(std::unique(concepts.begin(), concepts.end()),
                   concepts.end());
    auto edges = cover_edges(concepts);
    return Lattice(sd, std::move(concepts), std::move(edges));
  }

  /// Adopts edges read back from a resource. Throws Error unless every edge
  /// joins known concepts and follows strict subsumption (hence acyclic).
  static Lattice from_parts(Subdomain sd, std::vector<Concept> concepts,
                            std::vector<IsA> edges) {
    std::sort(concepts.begin(), concepts.end());
    concepts.erase(std::unique(concepts.begin(), concepts.end()),
                   concepts.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const Concept& c : concepts) {
      if (c.subdomain() != sd) {
        throw SubdomainMismatch("concept '" + c.label() + "' is not a " +
                                std::string(subdomain_name(sd)) + " concept");
      }
    }
    for (const IsA& e : edges) {
      if (!std::binary_search(concepts.begin(), concepts.end(), e.hypernym) ||
          !std::binary_search(concepts.begin(), concepts.end(), e.hyponym)) {
        throw Error("relation " + e.hypernym.label() + " -> " +
                    e.hyponym.label() + " cites an unknown concept");
      }
      if (!strictly_subsumes(e.hypernym, e.hyponym)) {
        throw Error("relation " + e.hypernym.label() + " -> " +
                    e.hyponym.label() + " does not follow subsumption");
      }
    }
    return Lattice(sd, std::move(concepts), std::move(edges));
  }

  Subdomain subdomain() const noexcept { return subdomain_; }
  const std::vector<Concept>& concepts() const noexcept { return concepts_; }
  const std::vector<IsA>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return concepts_.size(); }

  std::optional<std::size_t> index_of(const Concept& c) const {
    const auto it = std::lower_bound(concepts_.begin(), concepts_.end(), c);
    if (it == concepts_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - concepts_.begin());
  }
  bool contains(const Concept& c) const { return index_of(c).has_value(); }

  /// Direct hypernyms (cover-edge parents) of concept `i`.
  std::span<const std::size_t> parents(std::size_t i) const {
    return parents_.at(i);
  }
  std::span<const std::size_t> children(std::size_t i) const {
    return children_.at(i);
  }

 private:
  Lattice(Subdomain sd, std::vector<Concept> concepts, std::vector<IsA> edges)
      : subdomain_(sd),
        concepts_(std::move(concepts)),
        edges_(std::move(edges)),
        parents_(concepts_.size()),
        children_(concepts_.size()) {
    for (const IsA& e : edges_) {
      const std::size_t g = *index_of(e.hypernym);
      const std::size_t h = *index_of(e.hyponym);
      parents_[h].push_back(g);
      children_[g].push_back(h);
    }
  }

  Subdomain subdomain_;
  std::vector<Concept> concepts_;
  std::vector<IsA> edges_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

/// English gloss, e.g. "elder sister's child (as pronounced by a female
/// speaker)".
inline std::string render_description(const Concept& c) {
  static constexpr std::string_view nouns[3][3] = {
      {"father", "mother", "parent"},
      {"son", "daughter", "child"},
      {"brother", "sister", "sibling"},
  };
  std::string out;
  for (const KinStep& s : c.steps()) {
    if (!out.empty()) out += "'s ";
    if (s.age == RelativeAge::Elder) out += "elder ";
    if (s.age == RelativeAge::Younger) out += "younger ";
    out += nouns[static_cast<int>(s.relation)][static_cast<int>(s.gender)];
  }
  if (c.speaker() == Gender::Male) out += " (as pronounced by a male speaker)";
  if (c.speaker() == Gender::Female) {
    out += " (as pronounced by a female speaker)";
  }
  return out;
}

}  // namespace kinlex

#endif  // KINLEX_LATTICEGEN_HPP_
