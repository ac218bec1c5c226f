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

// kinlex: build, validate and evaluate the kinship lexical gap resource.
//
// Every stage reads its inputs from configuration or from files an earlier
// stage left in the working directory (--out), so stages can be re-run in
// isolation. Exit status: 0 success, 1 data error, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinlex.hpp"

namespace fs = std::filesystem;
using namespace kinlex;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct PipelineConfig {
  std::string attested;
  std::string murdock_patterns;
  std::string murdock_assignments;
  std::string dump_dir;
  std::string gloss_map;
  std::string speaker_gold;
  std::string traits;
  std::string out = "out";
  std::size_t min_words = kDefaultMinWords;
  std::string resource;
  std::string system;
  std::string counts;
  std::string benchmark;
  std::string source;  // ingest only
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError(flag + " is required");
  if (!fs::exists(value)) throw UsageError(flag + ": '" + value + "' does not exist");
}

void require_dir(const std::string& value, const std::string& flag) {
  require_file(value, flag);
  if (!fs::is_directory(value)) {
    throw UsageError(flag + ": '" + value + "' is not a directory");
  }
}

fs::path work(const PipelineConfig& cfg, std::string_view name) {
  return fs::path(cfg.out) / name;
}

void ensure_out(const PipelineConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create '" + cfg.out + "': " + ec.message());
}

// Intermediate file names inside the working directory.
constexpr std::string_view kEvMurdockPatterns = "evidence_murdock_patterns.tsv";
constexpr std::string_view kEvMurdockAssignments =
    "evidence_murdock_assignments.tsv";
constexpr std::string_view kEvWiktionary = "evidence_wiktionary.tsv";
constexpr std::string_view kEvWiktionarySkips = "wiktionary_skips.tsv";
constexpr std::string_view kEvSpeaker = "evidence_speaker.tsv";
constexpr std::string_view kMergedWords = "merged_words.tsv";
constexpr std::string_view kMergedGaps = "merged_gaps.tsv";
constexpr std::string_view kSystemWords = "system_words.tsv";
constexpr std::string_view kSystemGaps = "system_gaps.tsv";

int gen_lattice(const PipelineConfig& cfg) {
  require_file(cfg.attested, "--attested");
  const AttestationList att = load_attestation(cfg.attested);
  std::vector<Lattice> lattices;
  for (Subdomain sd : att.subdomains()) {
    auto concepts = filter_attested(generate_all(sd), att);
    lattices.push_back(Lattice::build(sd, std::move(concepts)));
  }
  ensure_out(cfg);
  const ResourceBundle b = make_bundle(lattices, att, {}, {});
  write_bundle(b, cfg.out, {kConceptsFile, kRelationsFile});
  for (const Lattice& l : lattices) {
    std::cout << subdomain_name(l.subdomain()) << "\t" << l.size()
              << " concepts\t" << l.edges().size() << " relations\n";
  }
  return 0;
}

std::string format_skip_report(const SkipReport& r) {
  std::string out = text::join_row({"key", "value"});
  const auto kv = [&out](std::string k, std::size_t v) {
    out += text::join_row({std::move(k), std::to_string(v)});
  };
  kv("pages", r.pages);
  kv("blocks_matched", r.blocks_matched);
  kv("blocks_unmatched", r.blocks_unmatched);
  kv("parsed_items", r.parsed_items);
  kv("emitted", r.emitted);
  kv("skipped", r.skipped);
  kv("unsupported_templates", r.unsupported_templates);
  for (const auto& n : r.notes) out += text::join_row({"note", n});
  return out;
}

int ingest(const PipelineConfig& cfg) {
  if (cfg.source == "murdock") {
    require_file(cfg.murdock_patterns, "--murdock-patterns");
    require_file(cfg.murdock_assignments, "--murdock-assignments");
    const MurdockData data =
        load_murdock(cfg.murdock_patterns, cfg.murdock_assignments);
    ensure_out(cfg);
    save_murdock(data, work(cfg, kEvMurdockPatterns),
                 work(cfg, kEvMurdockAssignments));
    std::cout << data.patterns.size() << " patterns, "
              << data.assignments.size() << " assignments\n";
  } else if (cfg.source == "wiktionary") {
    require_dir(cfg.dump_dir, "--dump-dir");
    require_file(cfg.gloss_map, "--gloss-map");
    const GlossMap glosses = load_gloss_map(cfg.gloss_map);
    const ExtractionResult res = extract_wiktionary(cfg.dump_dir, glosses);
    ensure_out(cfg);
    save_lexicon(res.lexicalizations, work(cfg, kEvWiktionary));
    text::write_file(work(cfg, kEvWiktionarySkips),
                     format_skip_report(res.report));
    std::cout << res.report.emitted << " lexicalizations from "
              << res.report.pages << " pages, " << res.report.skipped
              << " items skipped\n";
  } else if (cfg.source == "speakers") {
    require_file(cfg.speaker_gold, "--speaker-gold");
    const SpeakerGold gold = load_speaker_gold(cfg.speaker_gold);
    ensure_out(cfg);
    save_speaker_gold(gold, work(cfg, kEvSpeaker));
    std::cout << gold.words.size() << " words, " << gold.gaps.size()
              << " gaps\n";
  } else {
    throw UsageError("ingest source must be murdock, wiktionary or speakers");
  }
  return 0;
}

std::map<Subdomain, Lattice> load_work_lattices(const PipelineConfig& cfg) {
  const ResourceBundle b = load_resource(cfg.out, /*lattice_only=*/true);
  return lattices_from_bundle(b);
}

int infer(const PipelineConfig& cfg) {
  require_file(work(cfg, kConceptsFile).string(), "concepts.tsv (run gen-lattice)");
  require_file(work(cfg, kRelationsFile).string(), "relations.tsv (run gen-lattice)");
  if (!cfg.traits.empty()) require_file(cfg.traits, "--traits");
  if (cfg.min_words < 1) throw UsageError("--min-words must be at least 1");

  InferenceInput in;
  in.lattices = load_work_lattices(cfg);
  in.min_words = cfg.min_words;
  bool any = false;
  if (fs::exists(work(cfg, kEvMurdockPatterns))) {
    in.murdock = load_murdock(work(cfg, kEvMurdockPatterns),
                              work(cfg, kEvMurdockAssignments));
    any = true;
  }
  if (fs::exists(work(cfg, kEvWiktionary))) {
    in.wiktionary = load_lexicon(work(cfg, kEvWiktionary));
    any = true;
  }
  if (fs::exists(work(cfg, kEvSpeaker))) {
    in.speaker = load_speaker_gold(work(cfg, kEvSpeaker));
    any = true;
  }
  if (!any) throw Error("no evidence in '" + cfg.out + "' (run ingest first)");
  if (!cfg.traits.empty()) in.traits = load_traits(cfg.traits);

  const InferenceOutput res = infer_gaps(in);
  save_lexicon(res.resource.words, work(cfg, kMergedWords));
  save_gaps(res.resource.gaps, work(cfg, kMergedGaps));
  save_lexicon(res.system.words, work(cfg, kSystemWords));
  save_gaps(res.system.gaps, work(cfg, kSystemGaps));
  std::cout << res.resource.words.size() << " words, "
            << res.resource.gaps.size() << " gaps";
  if (res.unattested_words) {
    std::cout << " (" << res.unattested_words
              << " words for unattested concepts dropped)";
  }
  std::cout << "\n";
  return 0;
}

int emit(const PipelineConfig& cfg) {
  for (std::string_view f : {kMergedWords, kMergedGaps, kSystemWords, kSystemGaps}) {
    require_file(work(cfg, f).string(), std::string(f) + " (run infer-gaps)");
  }
  const ResourceBundle lattice = load_resource(cfg.out, /*lattice_only=*/true);
  const auto write = [&](std::string_view words, std::string_view gaps,
                         std::string_view dir) {
    const auto w = load_lexicon(work(cfg, words));
    const auto g = load_gaps(work(cfg, gaps));
    const ResourceBundle b =
        make_bundle(lattice.concepts, lattice.relations, w, g);
    write_bundle(b, work(cfg, dir));
    return b;
  };
  const ResourceBundle full = write(kMergedWords, kMergedGaps, "resource");
  write(kSystemWords, kSystemGaps, "system");
  std::cout << full.concepts.size() << " concepts, " << full.relations.size()
            << " relations, " << full.words.size() << " words, "
            << full.gaps.size() << " gaps\n";
  return 0;
}

std::string resource_dir(const PipelineConfig& cfg) {
  return cfg.resource.empty() ? work(cfg, "resource").string() : cfg.resource;
}

int validate(const PipelineConfig& cfg) {
  const std::string dir = resource_dir(cfg);
  require_dir(dir, "--resource");
  const ValidationReport rep = validate_resource(load_resource(dir));
  for (const auto& v : rep.violations) {
    std::cout << violation_name(v.kind) << "\t" << v.location << "\t"
              << v.message << "\n";
  }
  std::cout << (rep.ok() ? "ok" : std::to_string(rep.violations.size()) +
                                      " violation(s)")
            << "\n";
  return rep.ok() ? 0 : kExitData;
}

int evaluate(const PipelineConfig& cfg) {
  if (!cfg.counts.empty()) {
    require_file(cfg.counts, "--counts");
    const auto counts = load_eval_counts(cfg.counts);
    const CountScores s = score_counts(counts, cfg.min_words);
    const std::string tsv = format_prf_tsv(s.rows, "language");
    ensure_out(cfg);
    text::write_file(work(cfg, "eval_counts.tsv"), tsv);
    std::cout << tsv;
    for (const Language& l : s.excluded) {
      std::cout << "# excluded (insufficient input): " << l.iso() << "\n";
    }
    return 0;
  }

  require_file(cfg.speaker_gold, "--speaker-gold");
  const std::string system_dir =
      cfg.system.empty() ? work(cfg, "system").string() : cfg.system;
  require_dir(system_dir, "--system");
  const bool with_kappa =
      !cfg.murdock_patterns.empty() || !cfg.murdock_assignments.empty();
  if (with_kappa) {
    require_file(cfg.murdock_patterns, "--murdock-patterns");
    require_file(cfg.murdock_assignments, "--murdock-assignments");
    require_dir(resource_dir(cfg), "--resource");
  }

  const SpeakerGold gold = load_speaker_gold(cfg.speaker_gold);
  const SystemScores scores = score_system(load_resource(system_dir), gold);
  ensure_out(cfg);
  const std::string by_lang = format_prf_tsv(scores.by_language, "language");
  const std::string by_sd = format_prf_tsv(scores.by_subdomain, "subdomain");
  text::write_file(work(cfg, "eval_by_language.tsv"), by_lang);
  text::write_file(work(cfg, "eval_by_subdomain.tsv"), by_sd);
  std::cout << by_lang << "\n" << by_sd;

  if (with_kappa) {
    const ResourceBundle ours = load_resource(resource_dir(cfg));
    const MurdockData murdock =
        load_murdock(cfg.murdock_patterns, cfg.murdock_assignments);
    const auto rows =
        kappa_against_patterns(ours, murdock, lattices_from_bundle(ours));
    const std::string tsv = format_kappa_tsv(rows);
    text::write_file(work(cfg, "kappa.tsv"), tsv);
    std::cout << "\n" << tsv;
  }
  return 0;
}

int mt_score(const PipelineConfig& cfg) {
  require_file(cfg.benchmark, "--benchmark");
  const std::string dir = resource_dir(cfg);
  require_dir(dir, "--resource");
  const ResourceBundle b = load_resource(dir);
  const auto sentences = load_benchmark(cfg.benchmark);
  const Lexicon lexicon(words_from_bundle(b));
  const auto gaps = gaps_from_bundle(b);
  const BenchmarkResult res =
      score_benchmark(sentences, lattices_from_bundle(b), lexicon, gaps);
  ensure_out(cfg);
  const std::string report = format_semdist_tsv(res.reports);
  text::write_file(work(cfg, "semdist.tsv"), report);
  text::write_file(work(cfg, "semdist_sentences.tsv"),
                   format_sentence_tsv(res.sentences));
  std::cout << report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinship lexical gap resource toolkit"};
  app.set_config("--config", "", "key=value configuration file; flags win");
  app.require_subcommand(1);
  app.fallthrough();

  PipelineConfig cfg;
  app.add_option("--attested", cfg.attested, "attested concepts TSV");
  app.add_option("--murdock-patterns", cfg.murdock_patterns,
                 "lexicalization pattern TSV");
  app.add_option("--murdock-assignments", cfg.murdock_assignments,
                 "language to pattern TSV");
  app.add_option("--dump-dir", cfg.dump_dir, "directory of .wiki pages");
  app.add_option("--gloss-map", cfg.gloss_map, "gloss to concept TSV");
  app.add_option("--speaker-gold", cfg.speaker_gold, "native speaker TSV");
  app.add_option("--traits", cfg.traits, "language traits TSV");
  app.add_option("--out", cfg.out, "working / output directory")
      ->capture_default_str();
  app.add_option("--min-words", cfg.min_words,
                 "minimum words for a language to take part in inference")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--resource", cfg.resource,
                 "resource directory (default <out>/resource)");
  app.add_option("--system", cfg.system,
                 "system resource to evaluate (default <out>/system)");
  app.add_option("--counts", cfg.counts, "per-language evaluation counts TSV");
  app.add_option("--benchmark", cfg.benchmark, "MT benchmark TSV");

  std::map<CLI::App*, int (*)(const PipelineConfig&)> stages;
  stages[app.add_subcommand("gen-lattice", "emit concepts.tsv and relations.tsv")] =
      gen_lattice;
  CLI::App* ing = app.add_subcommand("ingest", "normalize one evidence source");
  ing->add_option("source", cfg.source, "murdock | wiktionary | speakers")
      ->required()
      ->check(CLI::IsMember({"murdock", "wiktionary", "speakers"}));
  stages[ing] = ingest;
  stages[app.add_subcommand("infer-gaps", "apply patterns and rules, merge")] =
      infer;
  stages[app.add_subcommand("emit", "write the resource and system bundles")] =
      emit;
  stages[app.add_subcommand("validate", "check resource invariants")] = validate;
  stages[app.add_subcommand("evaluate", "P/R/F1 and kappa reports")] = evaluate;
  stages[app.add_subcommand("mt-score", "semantic distance of MT outputs")] =
      mt_score;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (const auto& [sub, run] : stages) {
      if (sub->parsed()) return run(cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "kinlex: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kinlex::Error& e) {
    std::cerr << "kinlex: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
