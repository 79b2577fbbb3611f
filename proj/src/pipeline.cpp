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

#include "acars_audit/pipeline.hpp"

#include <algorithm>
#include <exception>

#include "acars_audit/frame.hpp"

#ifdef ACARS_AUDIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace acars_audit::pipeline {
namespace {

using audit::MessageOutcome;
using content::Category;
using content::Confidence;
using content::Finding;

void set_threads(int threads) {
#ifdef ACARS_AUDIT_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef ACARS_AUDIT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef ACARS_AUDIT_HAVE_OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

void demote(Finding& f) {
  if (f.confidence == Confidence::kHigh) {
    f.confidence = Confidence::kMedium;
  } else {
    f.confidence = Confidence::kLow;
  }
  for (auto& d : f.derived) demote(d);
}

}  // namespace

void Context::prepare() {
  fleet_ = audit::classify_fleet(registry, rules, blocklist, ofc_list);
  by_registration_.clear();
  for (std::size_t i = 0; i < fleet_.size(); ++i) {
    const auto& reg = fleet_[i].record.registration;
    if (!reg.empty()) by_registration_.emplace(reg, i);
  }
}

const audit::ClassifiedAircraft* Context::aircraft(std::string_view registration) const {
  const auto it = by_registration_.find(registry::normalize_registration(registration));
  return it == by_registration_.end() ? nullptr : &fleet_[it->second];
}

audit::MessageContext attribute(const ingest::AcarsRecord& record,
                                const std::string& registration, const Context& ctx) {
  audit::MessageContext m;
  m.record_id = record.record_id;
  m.timestamp = record.timestamp;
  m.link = record.link;
  m.direction = ingest::effective_direction(record);
  m.registration = registry::normalize_registration(registration);
  if (m.registration.empty()) return m;
  if (const auto* a = ctx.aircraft(m.registration)) {
    m.stakeholder = a->decision.cls;
    m.rule_id = a->decision.rule_id;
    m.country = a->record.country;
    m.registrant_kind = a->kind;
    m.block = a->block;
  } else if (auto b = ctx.blocklist.lookup(m.registration)) {
    m.block = b->level;
  }
  return m;
}

MessageOutcome analyze(const ingest::AcarsRecord& record, const Context& ctx) {
  MessageOutcome out;
  const auto parsed = frame::parse_frame(record);
  if (const auto* fail = std::get_if<frame::ParseFailure>(&parsed)) {
    out.ctx = attribute(record, {}, ctx);
    out.parse_error = std::string(frame::to_string(fail->reason));
    return out;
  }
  const auto& msg = std::get<frame::AcarsMessage>(parsed);
  out.ctx = attribute(record, msg.registration, ctx);
  const auto label_cat = ctx.labels.lookup(msg.label).category;
  out.findings = content::detect_content(msg, label_cat, ctx.lexicon);
  if (out.findings.empty()) {
    Finding f;
    f.record_id = record.record_id;
    const auto verdict = cipher::classify_encrypted(msg.text, false, ctx.thresholds);
    if (verdict.is_encrypted) {
      f.category = Category::kEncryptedWeak;
      f.confidence = Confidence::kMedium;
    } else {
      f.category = Category::kExistenceOnly;
    }
    out.findings.push_back(std::move(f));
  }
  if (record.has_capture_errors()) {
    for (auto& f : out.findings) demote(f);
  }
  return out;
}

std::vector<MessageOutcome> analyze_serial(std::span<const ingest::AcarsRecord> records,
                                           const Context& ctx) {
  std::vector<MessageOutcome> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(analyze(r, ctx));
  return out;
}

std::vector<MessageOutcome> analyze_parallel(std::span<const ingest::AcarsRecord> records,
                                             const Context& ctx, int threads) {
  set_threads(threads);
  std::vector<MessageOutcome> out(records.size());
  std::exception_ptr error;
  const auto n = static_cast<long>(records.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = analyze(records[i], ctx);
    } catch (...) {
#pragma omp critical(acars_audit_analyze_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

CrackStats crack_encrypted(std::span<const ingest::AcarsRecord> records,
                           std::vector<MessageOutcome>& outcomes, const Context& ctx) {
  CrackStats stats;
  if (!ctx.crib) return stats;

  // registration -> indices of its encrypted messages, in corpus order
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (const auto& f : outcomes[i].findings) {
      if (f.category == Category::kEncryptedWeak) {
        groups[outcomes[i].ctx.registration].push_back(i);
        ++stats.encrypted_messages;
        break;
      }
    }
  }
  stats.aircraft = groups.size();

  struct Job {
    std::string registration;
    std::vector<std::size_t> indices;
    std::vector<frame::AcarsMessage> messages;
    std::optional<cipher::SubstitutionKey> key;
    std::string failure;
    std::size_t decoded = 0;
  };
  std::vector<Job> jobs;
  for (auto& [reg, idx] : groups) {
    Job job;
    job.registration = reg;
    for (auto i : idx) {
      auto parsed = frame::parse_frame(records[i]);
      job.messages.push_back(std::get<frame::AcarsMessage>(std::move(parsed)));
    }
    job.indices = std::move(idx);
    jobs.push_back(std::move(job));
  }

  const auto n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 0; j < n; ++j) {
    auto& job = jobs[j];
    std::vector<std::string> texts;
    texts.reserve(job.messages.size());
    for (const auto& m : job.messages) texts.push_back(m.text);
    try {
      job.key = cipher::crack_with_crib(texts, *ctx.crib);
    } catch (const cipher::CrackError& e) {
      job.failure = e.what();
      continue;
    }
    for (std::size_t k = 0; k < job.messages.size(); ++k) {
      const auto& m = job.messages[k];
      auto& outcome = outcomes[job.indices[k]];
      const auto label_cat = ctx.labels.lookup(m.label).category;
      auto derived = content::detect_content(job.key->decipher(m.text), label_cat, ctx.lexicon,
                                             m.source);
      if (derived.empty()) continue;
      ++job.decoded;
      if (records[job.indices[k]].has_capture_errors()) {
        for (auto& d : derived) demote(d);
      }
      for (auto& f : outcome.findings) {
        if (f.category == Category::kEncryptedWeak) f.derived = derived;
      }
    }
  }

  for (auto& job : jobs) {
    if (job.key) {
      ++stats.cracked_aircraft;
      stats.decoded_messages += job.decoded;
      stats.keys.emplace(job.registration, std::move(*job.key));
    } else {
      stats.failures.emplace(job.registration, job.failure);
    }
  }
  return stats;
}

namespace {

audit::AuditReport empty_report(const Context& ctx) {
  audit::AuditReport r;
  r.requirements = ctx.requirements;
  r.provenance = ctx.provenance;
  audit::add_fleet(r, ctx.fleet());
  return r;
}

}  // namespace

audit::AuditReport grade_serial(std::span<const MessageOutcome> outcomes, const Context& ctx) {
  auto r = empty_report(ctx);
  for (const auto& o : outcomes) audit::accumulate(r, o);
  return r;
}

audit::AuditReport grade_parallel(std::span<const MessageOutcome> outcomes, const Context& ctx,
                                  int threads) {
  set_threads(threads);
  std::vector<audit::AuditReport> partial(static_cast<std::size_t>(std::max(1, max_threads())));
  const auto n = static_cast<long>(outcomes.size());
#pragma omp parallel
  {
    auto& mine = partial[static_cast<std::size_t>(thread_id())];
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) audit::accumulate(mine, outcomes[i]);
  }
  auto r = empty_report(ctx);
  for (const auto& p : partial) r.merge(p);
  return r;
}

AuditRun run_audit(std::span<const ingest::AcarsRecord> records, const Context& ctx,
                   bool parallel, int threads) {
  AuditRun run;
  run.outcomes = parallel ? analyze_parallel(records, ctx, threads) : analyze_serial(records, ctx);
  run.crack = crack_encrypted(records, run.outcomes, ctx);
  run.report = parallel ? grade_parallel(run.outcomes, ctx, threads)
                        : grade_serial(run.outcomes, ctx);
  return run;
}

}  // namespace acars_audit::pipeline
