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

// Writes the synthetic demo inputs under data/demo (or the directory given
// as the only argument).

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "../tests/support/synth.hpp"

namespace {

namespace fs = std::filesystem;
using namespace acars_audit;

void write(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << bytes;
  if (!f) throw std::runtime_error("cannot write " + path.string());
  std::cout << fmt::format("wrote {} ({} bytes)\n", path.string(), bytes.size());
}

// Prepended to the csv and txt outputs; the loaders skip '#' lines.
std::string license_header() {
  return "# Copyright 2026 The ACARS Audit Authors\n"
         "#\n"
         "# Licensed under the Apache License, Version 2.0 (the \"License\");\n"
         "# you may not use this file except in compliance with the License.\n"
         "# You may obtain a copy of the License at\n"
         "#\n"
         "#     https://www.apache.org/licenses/LICENSE-2.0\n"
         "#\n"
         "# Unless required by applicable law or agreed to in writing, software\n"
         "# distributed under the License is distributed on an \"AS IS\" BASIS,\n"
         "# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
         "# See the License for the specific language governing permissions and\n"
         "# limitations under the License.\n"
         "#\n"
         "# Generated by make_demo. Synthetic data, no real aircraft or people.\n";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(ACARS_AUDIT_DATA_DIR) / "demo";
  try {
    fs::create_directories(dir);
    const auto fleet = synth::demo_fleet();
    write(dir / "registry.csv", license_header() + synth::registry_csv(fleet.aircraft));
    write(dir / "blocklist.csv", license_header() + synth::blocklist_csv(fleet.blocks));
    std::string ofc = license_header() + "# demo off-shore territories\n";
    for (const auto& t : fleet.ofc_list) ofc += t + "\n";
    write(dir / "ofc.txt", ofc);

    // two broken lines so the loader's skip path shows up in the summary
    auto corpus = synth::corpus_jsonl(synth::demo_corpus(fleet));
    corpus += "{\"ts\": \"not a time\", \"link\": \"VHF_POA\"}\n";
    corpus += "this line is not json\n";
    write(dir / "corpus.jsonl", corpus);

    write(dir / "labeled.jsonl", synth::labeled_jsonl(synth::labeled_corpus()));

    const auto grade = synth::grade_fixture();
    write(dir / "grade_registry.csv", license_header() + synth::registry_csv(grade.aircraft));
    write(dir / "grade_corpus.jsonl", synth::corpus_jsonl(grade.records));
  } catch (const std::exception& e) {
    std::cerr << "make_demo: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
