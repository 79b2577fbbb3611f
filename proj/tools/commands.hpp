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

// Subcommands of the acars_audit tool. Kept apart from main() so tests can
// drive them in-process.

#ifndef ACARS_AUDIT_TOOLS_COMMANDS_HPP_
#define ACARS_AUDIT_TOOLS_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace acars_audit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitCorpus = 2,  // corpus rejected, or the crib did not fit
  kExitNoEncrypted = 3,
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string input_format = "jsonl";
  std::vector<std::string> registry;
  std::string blocklist;
  std::string rules;
  std::string ofc_list;
  std::string gazetteer;
  std::string keywords;
  std::string crib_template;
  std::string labels;
  std::string requirements;
  std::string countries;
  double dedup_window_s = 30.0;
  std::string out;
  std::string out_format;  // per-command default when empty
  std::string findings;    // audit: findings JSONL destination
  std::string redact_policy;
  std::string key_file;
  int threads = 0;
};

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_crack(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_redact(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Parses arguments (and an optional --config file) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& diag);

}  // namespace acars_audit::cli

#endif  // ACARS_AUDIT_TOOLS_COMMANDS_HPP_
