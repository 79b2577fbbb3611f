// Copyright 2026 The ACARS Audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include "acars_audit/cipher.hpp"
#include "acars_audit/digest.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/ingest.hpp"
#include "acars_audit/pipeline.hpp"
#include "acars_audit/report.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::cli {
namespace {

namespace fs = std::filesystem;

fs::path data_path(const std::string& configured, const char* fallback) {
  return configured.empty() ? fs::path(ACARS_AUDIT_DATA_DIR) / fallback : fs::path(configured);
}

void require_path(std::string_view flag, const fs::path& path) {
  if (!fs::exists(path)) {
    throw ConfigError(fmt::format("{}: no such file or directory '{}'", flag, path.string()));
  }
}

void add_provenance(pipeline::Context& ctx, std::string_view kind, const fs::path& path) {
  ctx.provenance[fmt::format("{}:{}", kind, path.filename().string())] =
      sha256_hex(read_file(path));
}

std::string read_key(const RunConfig& cfg) {
  if (!cfg.key_file.empty()) {
    require_path("--key-file", cfg.key_file);
    std::string key = read_file(cfg.key_file);
    if (!key.empty() && key.back() == '\n') key.pop_back();
    if (key.empty()) throw ConfigError("--key-file: key file is empty");
    return key;
  }
  if (const char* env = std::getenv("ACARS_AUDIT_KEY")) return env;
  return {};
}

report::RedactionPolicy load_policy(const RunConfig& cfg) {
  report::RedactionPolicy policy;
  if (cfg.redact_policy.empty()) {
    policy = report::RedactionPolicy::defaults();
    policy.key = read_key(cfg);
  } else {
    require_path("--redact-policy", cfg.redact_policy);
    policy = report::RedactionPolicy::load(cfg.redact_policy, read_key(cfg));
  }
  policy.validate();
  return policy;
}

pipeline::Context load_context(const RunConfig& cfg, bool need_registry, std::ostream& diag) {
  if (cfg.dedup_window_s < 0) throw ConfigError("--dedup-window-s: must be >= 0");
  if (need_registry && cfg.registry.empty()) {
    throw ConfigError("--registry: at least one registry file is required");
  }
  pipeline::Context ctx;
  const auto labels = data_path(cfg.labels, "labels.csv");
  const auto keywords = data_path(cfg.keywords, "keywords");
  const auto gazetteer = data_path(cfg.gazetteer, "aerodromes.txt");
  const auto countries = data_path(cfg.countries, "countries.txt");
  const auto rules = data_path(cfg.rules, "rules.csv");
  const auto crib = data_path(cfg.crib_template, "crib_template.txt");
  require_path("--labels", labels);
  require_path("--keywords", keywords);
  require_path("--gazetteer", gazetteer);
  require_path("--countries", countries);
  require_path("--rules", rules);
  require_path("--crib-template", crib);
  for (const auto& r : cfg.registry) require_path("--registry", r);
  if (!cfg.blocklist.empty()) require_path("--blocklist", cfg.blocklist);
  if (!cfg.ofc_list.empty()) require_path("--ofc-list", cfg.ofc_list);
  if (!cfg.requirements.empty()) require_path("--requirements", cfg.requirements);

  ctx.labels = frame::LabelRegistry::load(labels);
  ctx.lexicon = content::Lexicon::load(keywords, gazetteer);
  ctx.rules = registry::RuleTable::load(rules);
  ctx.crib = cipher::CribTemplate::load(crib);
  const auto gazette = registry::load_countries(countries);
  std::vector<fs::path> registry_paths(cfg.registry.begin(), cfg.registry.end());
  std::vector<std::string> warnings;
  ctx.registry = registry::load_registry(registry_paths, gazette, &warnings);
  for (const auto& w : warnings) diag << "warning: " << w << '\n';
  if (!cfg.blocklist.empty()) ctx.blocklist = registry::Blocklist::load(cfg.blocklist);
  if (!cfg.ofc_list.empty()) ctx.ofc_list = registry::load_ofc_list(cfg.ofc_list);
  if (!cfg.requirements.empty()) {
    ctx.requirements = audit::RequirementMatrix::load(cfg.requirements);
  }

  add_provenance(ctx, "labels", labels);
  add_provenance(ctx, "gazetteer", gazetteer);
  add_provenance(ctx, "countries", countries);
  add_provenance(ctx, "rules", rules);
  add_provenance(ctx, "crib", crib);
  for (const char* f : {"iata_codes.txt", "medical_conditions.txt", "medical_logistics.txt",
                        "name_stopwords.txt", "surnames.txt"}) {
    add_provenance(ctx, "keywords", keywords / f);
  }
  for (const auto& p : registry_paths) add_provenance(ctx, "registry", p);
  if (!cfg.blocklist.empty()) add_provenance(ctx, "blocklist", cfg.blocklist);
  if (!cfg.ofc_list.empty()) add_provenance(ctx, "ofc", cfg.ofc_list);
  if (!cfg.requirements.empty()) add_provenance(ctx, "requirements", cfg.requirements);
  ctx.prepare();
  return ctx;
}

struct Corpus {
  std::vector<ingest::AcarsRecord> records;
  ingest::LoadSummary summary;
  std::size_t duplicates = 0;
};

Corpus load_inputs(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.inputs.empty()) throw ConfigError("--input: at least one corpus file is required");
  const auto format = ingest::parse_corpus_format(cfg.input_format);
  if (!format) {
    throw ConfigError(
        fmt::format("--input-format: expected jsonl or rawlog, got '{}'", cfg.input_format));
  }
  std::vector<ingest::CorpusSource> sources;
  for (const auto& in : cfg.inputs) {
    require_path("--input", in);
    sources.push_back({in, *format});
  }
  auto loaded = ingest::load_corpora(sources);
  Corpus c;
  c.summary = loaded.summary;
  c.records = ingest::dedupe(loaded.records, cfg.dedup_window_s);
  c.duplicates = loaded.records.size() - c.records.size();

  const auto& s = c.summary;
  diag << fmt::format("loaded {} record(s) from {} file(s), skipped {} malformed line(s)",
                      s.records, cfg.inputs.size(), s.skipped);
  if (s.skipped > 0) {
    diag << fmt::format(" (first at line {}: {})", s.first_bad_line, s.first_bad_reason);
  }
  diag << fmt::format("; removed {} duplicate(s); {} HF record(s); {} with capture errors\n",
                      c.duplicates, s.hf_records, s.with_capture_errors);
  return c;
}

std::vector<audit::MessageOutcome> load_findings(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw ConfigError("--input: at least one findings file is required");
  std::vector<audit::MessageOutcome> all;
  for (const auto& in : cfg.inputs) {
    require_path("--input", in);
    auto part = report::read_findings_jsonl(in);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
  f << bytes;
  if (!f) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

void emit(const RunConfig& cfg, const std::string& bytes, std::ostream& out) {
  if (cfg.out.empty()) {
    out << bytes;
  } else {
    write_file(cfg.out, bytes);
  }
}

report::Format report_format(const RunConfig& cfg) {
  const std::string name = cfg.out_format.empty() ? "text" : cfg.out_format;
  const auto f = report::parse_format(name);
  if (!f) throw ConfigError(fmt::format("--out-format: expected text, csv or json, got '{}'", name));
  return *f;
}

int guarded(std::ostream& diag, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CorpusRejected& e) {
    diag << "error: " << e.what() << '\n';
    return kExitCorpus;
  } catch (const cipher::CrackError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitCorpus;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    const auto corpus = load_inputs(cfg, diag);
    if (!cfg.out.empty()) {
      std::string bytes;
      for (const auto& r : corpus.records) {
        bytes += ingest::to_jsonl(r);
        bytes.push_back('\n');
      }
      write_file(cfg.out, bytes);
    }
    const auto buckets = ingest::partition_by_link(corpus.records);
    for (auto link : ingest::kAllLinks) {
      const auto it = buckets.find(link);
      const std::size_t n = it == buckets.end() ? 0 : it->second.size();
      out << fmt::format("{:<16} {:>9} ({})\n", ingest::to_string(link), report::with_commas(n),
                         audit::percent(n, corpus.records.size(), 1));
    }
    return kExitOk;
  });
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    const auto format = report_format(cfg);
    const auto ctx = load_context(cfg, true, diag);
    const auto policy = load_policy(cfg);
    const auto corpus = load_inputs(cfg, diag);
    const auto run = pipeline::run_audit(corpus.records, ctx, true, cfg.threads);

    std::size_t unparsed = 0;
    for (const auto& o : run.outcomes) unparsed += o.parse_error ? 1 : 0;
    diag << fmt::format(
        "audited {} message(s), {} unparsed; {} enciphered from {} aircraft, {} cracked\n",
        run.outcomes.size(), unparsed, run.crack.encrypted_messages, run.crack.aircraft,
        run.crack.cracked_aircraft);

    if (!cfg.findings.empty()) {
      write_file(cfg.findings, report::findings_jsonl(report::redact(run.outcomes, policy)));
    }
    emit(cfg, report::render(run.report, format), out);
    return kExitOk;
  });
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    const auto format = report_format(cfg);
    const auto ctx = load_context(cfg, false, diag);
    const auto outcomes = load_findings(cfg);
    emit(cfg, report::render(pipeline::grade_serial(outcomes, ctx), format), out);
    return kExitOk;
  });
}

int cmd_crack(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    const auto ctx = load_context(cfg, false, diag);
    const auto policy = load_policy(cfg);
    const auto corpus = load_inputs(cfg, diag);
    auto outcomes = pipeline::analyze_parallel(corpus.records, ctx, cfg.threads);
    const auto stats = pipeline::crack_encrypted(corpus.records, outcomes, ctx);
    if (stats.encrypted_messages == 0) {
      diag << fmt::format("error: none of the {} message(s) looks enciphered\n",
                          corpus.records.size());
      return static_cast<int>(kExitNoEncrypted);
    }
    std::string text;
    std::map<std::string, std::size_t> per_aircraft;
    for (const auto& o : outcomes)
      for (const auto& f : o.findings)
        if (f.category == content::Category::kEncryptedWeak) ++per_aircraft[o.ctx.registration];
    for (const auto& [reg, key] : stats.keys) {
      text += fmt::format("aircraft {} messages {} aligned {} coverage {:.3f}\n", reg,
                          per_aircraft[reg], key.aligned_messages, key.coverage);
      text += fmt::format("key {} {}\n", reg, std::string(key.mapping.begin(), key.mapping.end()));
      std::size_t shown = 0;
      for (const auto& o : outcomes) {
        if (shown == 2) break;
        if (o.ctx.registration != reg) continue;
        for (const auto& f : o.findings) {
          if (f.category != content::Category::kEncryptedWeak || f.derived.empty()) continue;
          for (const auto& d : report::redact(f.derived, policy)) {
            for (const auto& e : d.entities) {
              text += fmt::format("sample {} {} {} {}\n", reg, content::to_string(d.category),
                                  content::to_string(e.kind), e.value);
            }
          }
          ++shown;
        }
      }
    }
    for (const auto& [reg, why] : stats.failures) diag << fmt::format("{}: {}\n", reg, why);
    diag << fmt::format("cracked {} of {} aircraft, {} message(s) decoded\n",
                        stats.cracked_aircraft, stats.aircraft, stats.decoded_messages);
    emit(cfg, text, out);
    return stats.cracked_aircraft == 0 ? static_cast<int>(kExitCorpus) : static_cast<int>(kExitOk);
  });
}

int cmd_redact(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    const auto policy = load_policy(cfg);
    const auto outcomes = report::redact(load_findings(cfg), policy);
    const std::string fmt_name = cfg.out_format.empty() ? "jsonl" : cfg.out_format;
    if (fmt_name == "jsonl") {
      emit(cfg, report::findings_jsonl(outcomes), out);
    } else if (fmt_name == "csv") {
      emit(cfg, report::findings_csv(outcomes), out);
    } else {
      throw ConfigError(fmt::format("--out-format: expected jsonl or csv, got '{}'", fmt_name));
    }
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Privacy audit of captured ACARS traffic", "acars_audit"};
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  app.add_option("--input", cfg.inputs, "Corpus (or findings) files")->delimiter(',');
  app.add_option("--input-format", cfg.input_format, "jsonl or rawlog");
  app.add_option("--registry", cfg.registry, "Registry CSV files, later ones win")->delimiter(',');
  app.add_option("--blocklist", cfg.blocklist, "Blocklist CSV");
  app.add_option("--rules", cfg.rules, "Stakeholder rule table");
  app.add_option("--ofc-list", cfg.ofc_list, "Off-shore territories, one per line");
  app.add_option("--gazetteer", cfg.gazetteer, "Aerodrome designators, one per line");
  app.add_option("--keywords", cfg.keywords, "Directory of keyword lists");
  app.add_option("--crib-template", cfg.crib_template, "Known-plaintext template");
  app.add_option("--labels", cfg.labels, "Label table CSV");
  app.add_option("--requirements", cfg.requirements, "Requirement matrix overrides");
  app.add_option("--countries", cfg.countries, "Country gazetteer for registry validation");
  app.add_option("--dedup-window-s", cfg.dedup_window_s, "Duplicate window in seconds");
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--out-format", cfg.out_format, "text, csv or json (redact: jsonl or csv)");
  app.add_option("--findings", cfg.findings, "audit: also write findings JSONL here");
  app.add_option("--redact-policy", cfg.redact_policy, "KIND=ACTION policy file");
  app.add_option("--key-file", cfg.key_file, "Pseudonym key (fallback: ACARS_AUDIT_KEY)");
  app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Sub subs[] = {
      {"ingest", "Validate and deduplicate corpora", cmd_ingest},
      {"audit", "Run the full audit and write the report", cmd_audit},
      {"report", "Re-render a report from saved findings", cmd_report},
      {"crack", "Recover substitution keys from enciphered traffic", cmd_crack},
      {"redact", "Redact saved findings", cmd_redact},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  for (const auto& s : subs) {
    if (app.got_subcommand(s.name)) return s.fn(cfg, out, diag);
  }
  return kExitConfig;
}

}  // namespace acars_audit::cli
