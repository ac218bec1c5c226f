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

#ifndef KINLEX_KINMODEL_HPP_
#define KINLEX_KINMODEL_HPP_

// Kinship concepts: a path of kin steps from the speaker plus the speaker's
// gender, identified on the wire by a compact label such as "Fa;El;Br;ms".

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinlex/errors.hpp"
#include "kinlex/text.hpp"

namespace kinlex {

enum class Gender : std::uint8_t { Male, Female, Unspecified };
enum class RelativeAge : std::uint8_t { Elder, Younger, Unspecified };
enum class Relation : std::uint8_t { Parent, Child, Sibling };

inline constexpr std::array<Gender, 3> kAllGenders = {
    Gender::Male, Gender::Female, Gender::Unspecified};
inline constexpr std::array<RelativeAge, 3> kAllAges = {
    RelativeAge::Elder, RelativeAge::Younger, RelativeAge::Unspecified};

/// One hop along a kin path. The age of a sibling step is relative to the
/// person the step starts from (the speaker for the first step).
struct KinStep {
  Relation relation = Relation::Sibling;
  Gender gender = Gender::Unspecified;
  RelativeAge age = RelativeAge::Unspecified;

  friend bool operator==(const KinStep&, const KinStep&) = default;
};

enum class Subdomain : std::uint8_t {
  Grandparents,
  Grandchildren,
  Siblings,
  UnclesAunts,
  NephewsNieces,
  Cousins,
};

inline constexpr std::array<Subdomain, 6> kAllSubdomains = {
    Subdomain::Grandparents,  Subdomain::Grandchildren, Subdomain::Siblings,
    Subdomain::UnclesAunts,   Subdomain::NephewsNieces, Subdomain::Cousins};

inline std::span<const Relation> skeleton(Subdomain sd) {
  static constexpr std::array<Relation, 2> grandparents = {Relation::Parent,
                                                           Relation::Parent};
  static constexpr std::array<Relation, 2> grandchildren = {Relation::Child,
                                                            Relation::Child};
  static constexpr std::array<Relation, 1> siblings = {Relation::Sibling};
  static constexpr std::array<Relation, 2> uncles_aunts = {Relation::Parent,
                                                           Relation::Sibling};
  static constexpr std::array<Relation, 2> nephews_nieces = {
      Relation::Sibling, Relation::Child};
  static constexpr std::array<Relation, 3> cousins = {
      Relation::Parent, Relation::Sibling, Relation::Child};
  switch (sd) {
    case Subdomain::Grandparents: return grandparents;
    case Subdomain::Grandchildren: return grandchildren;
    case Subdomain::Siblings: return siblings;
    case Subdomain::UnclesAunts: return uncles_aunts;
    case Subdomain::NephewsNieces: return nephews_nieces;
    case Subdomain::Cousins: return cousins;
  }
  throw std::logic_error("bad subdomain");
}

/// Wire name used in every TSV file.
inline std::string_view subdomain_name(Subdomain sd) {
  switch (sd) {
    case Subdomain::Grandparents: return "grandparents";
    case Subdomain::Grandchildren: return "grandchildren";
    case Subdomain::Siblings: return "siblings";
    case Subdomain::UnclesAunts: return "uncles_aunts";
    case Subdomain::NephewsNieces: return "nephews_nieces";
    case Subdomain::Cousins: return "cousins";
  }
  throw std::logic_error("bad subdomain");
}

inline std::optional<Subdomain> subdomain_from_name(std::string_view name) {
  for (Subdomain sd : kAllSubdomains) {
    if (subdomain_name(sd) == name) return sd;
  }
  return std::nullopt;
}

inline std::optional<Subdomain> subdomain_for_skeleton(
    std::span<const Relation> relations) {
  for (Subdomain sd : kAllSubdomains) {
    const auto sk = skeleton(sd);
    if (std::equal(sk.begin(), sk.end(), relations.begin(), relations.end())) {
      return sd;
    }
  }
  return std::nullopt;
}

namespace detail {

inline std::string_view kin_token(Relation r, Gender g) {
  static constexpr std::array<std::array<std::string_view, 3>, 3> table = {{
      {"Fa", "Mo", "Pa"},
      {"So", "Da", "Ch"},
      {"Br", "Si", "Sb"},
  }};
  return table[static_cast<std::size_t>(r)][static_cast<std::size_t>(g)];
}

inline std::optional<std::pair<Relation, Gender>> parse_kin_token(
    std::string_view tok) {
  for (Relation r : {Relation::Parent, Relation::Child, Relation::Sibling}) {
    for (Gender g : kAllGenders) {
      if (kin_token(r, g) == tok) return std::pair{r, g};
    }
  }
  return std::nullopt;
}

inline std::string render(std::span<const KinStep> steps, Gender speaker) {
  std::string out;
  const auto append = [&out](std::string_view tok) {
    if (!out.empty()) out.push_back(';');
    out += tok;
  };
  for (const KinStep& s : steps) {
    if (s.age == RelativeAge::Elder) append("El");
    if (s.age == RelativeAge::Younger) append("Yo");
    append(kin_token(s.relation, s.gender));
  }
  if (speaker == Gender::Male) append("ms");
  if (speaker == Gender::Female) append("fs");
  return out;
}

}  // namespace detail

/// An interlingual kinship concept. Immutable; ordered and compared by its
/// canonical label (which also determines the subdomain).
class Concept {
 public:
  Concept(Subdomain subdomain, std::vector<KinStep> steps,
          Gender speaker = Gender::Unspecified)
      : subdomain_(subdomain), steps_(std::move(steps)), speaker_(speaker) {
    const auto sk = skeleton(subdomain_);
    if (steps_.size() != sk.size()) {
      throw std::invalid_argument("kin path does not match subdomain skeleton");
    }
    for (std::size_t i = 0; i < sk.size(); ++i) {
      if (steps_[i].relation != sk[i]) {
        throw std::invalid_argument(
            "kin path does not match subdomain skeleton");
      }
      if (steps_[i].age != RelativeAge::Unspecified &&
          steps_[i].relation != Relation::Sibling) {
        throw std::invalid_argument("relative age on a non-sibling step");
      }
    }
    label_ = detail::render(steps_, speaker_);
  }

  /// The concept of `sd` with every attribute unspecified (its top element).
  static Concept root(Subdomain sd) {
    std::vector<KinStep> steps;
    for (Relation r : skeleton(sd)) steps.push_back({r});
    return Concept(sd, std::move(steps));
  }

  Subdomain subdomain() const noexcept { return subdomain_; }
  std::span<const KinStep> steps() const noexcept { return steps_; }
  Gender speaker() const noexcept { return speaker_; }
  const std::string& label() const noexcept { return label_; }

  bool has_age() const noexcept {
    for (const KinStep& s : steps_) {
      if (s.age != RelativeAge::Unspecified) return true;
    }
    return false;
  }

  /// Age marked on the first step is relative to the speaker.
  bool age_relative_to_speaker() const noexcept {
    return steps_.front().age != RelativeAge::Unspecified;
  }

  bool is_root() const noexcept { return *this == root(subdomain_); }

  Concept with_speaker(Gender g) const {
    return Concept(subdomain_, steps_, g);
  }
  Concept with_step(std::size_t i, KinStep step) const {
    std::vector<KinStep> steps = steps_;
    steps.at(i) = step;
    return Concept(subdomain_, std::move(steps), speaker_);
  }

  friend bool operator==(const Concept& a, const Concept& b) noexcept {
    return a.label_ == b.label_;
  }
  friend std::strong_ordering operator<=>(const Concept& a,
                                          const Concept& b) noexcept {
    if (auto c = a.subdomain_ <=> b.subdomain_; c != 0) return c;
    return a.label_.compare(b.label_) <=> 0;
  }

 private:
  Subdomain subdomain_;
  std::vector<KinStep> steps_;
  Gender speaker_;
  std::string label_;
};

inline std::string render_label(const Concept& c) { return c.label(); }

/// Parses the label grammar: per step an optional `El`/`Yo` followed by a kin
/// token, then an optional trailing `ms`/`fs`. Tokens are trimmed.
inline Concept parse_label(std::string_view text) {
  const std::string original(text);
  if (text::trim(text).empty()) throw MalformedLabel(original, "empty label");

  std::vector<std::string> tokens;
  for (const std::string& t : text::split(text, ';')) {
    tokens.emplace_back(text::trim(t));
  }

  std::vector<KinStep> steps;
  Gender speaker = Gender::Unspecified;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    if (tok == "ms" || tok == "fs") {
      if (i + 1 != tokens.size()) {
        throw MalformedLabel(original, "speaker token must come last");
      }
      speaker = tok == "ms" ? Gender::Male : Gender::Female;
      continue;
    }
    RelativeAge age = RelativeAge::Unspecified;
    if (tok == "El" || tok == "Yo") {
      age = tok == "El" ? RelativeAge::Elder : RelativeAge::Younger;
      if (++i == tokens.size()) {
        throw MalformedLabel(original, "age token without a kin token");
      }
      tok = tokens[i];
    }
    const auto kin = detail::parse_kin_token(tok);
    if (!kin) {
      throw MalformedLabel(original, "unknown token '" + std::string(tok) + "'");
    }
    if (age != RelativeAge::Unspecified && kin->first != Relation::Sibling) {
      throw MalformedLabel(original, "age on a non-sibling step");
    }
    steps.push_back({kin->first, kin->second, age});
  }
  if (steps.empty()) throw MalformedLabel(original, "no kin step");

  std::vector<Relation> relations;
  for (const KinStep& s : steps) relations.push_back(s.relation);
  const auto sd = subdomain_for_skeleton(relations);
  if (!sd) throw MalformedLabel(original, "path matches no subdomain");
  return Concept(*sd, std::move(steps), speaker);
}

inline bool attribute_subsumes(Gender general, Gender specific) {
  return general == Gender::Unspecified || general == specific;
}
inline bool attribute_subsumes(RelativeAge general, RelativeAge specific) {
  return general == RelativeAge::Unspecified || general == specific;
}

/// Pointwise generalization order; reflexive.
inline bool subsumes(const Concept& general, const Concept& specific) {
  if (general.subdomain() != specific.subdomain()) {
    throw SubdomainMismatch("cannot compare '" + general.label() + "' with '" +
                            specific.label() + "' across subdomains");
  }
  if (!attribute_subsumes(general.speaker(), specific.speaker())) return false;
  const auto gs = general.steps();
  const auto ss = specific.steps();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!attribute_subsumes(gs[i].gender, ss[i].gender)) return false;
    if (!attribute_subsumes(gs[i].age, ss[i].age)) return false;
  }
  return true;
}

inline bool strictly_subsumes(const Concept& general, const Concept& specific) {
  return general != specific && subsumes(general, specific);
}

}  // namespace kinlex

template <>
struct std::hash<kinlex::Concept> {
  std::size_t operator()(const kinlex::Concept& c) const noexcept {
    return std::hash<std::string>{}(c.label());
  }
};

#endif  // KINLEX_KINMODEL_HPP_
