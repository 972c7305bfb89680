// Copyright 2026 The iotc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Line bookkeeping for the generated-versus-handwritten ratio. A line counts
// unless it is blank or its first non-whitespace characters open a comment
// (`//` or `#`). Handwritten covers the three specification files plus the
// handler sources; generated covers manifests, scaffolds and device packages.

namespace iotc {

inline size_t count_countable_lines(const std::string& text) {
  size_t n = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    size_t len = (end == std::string::npos ? text.size() : end) - pos;
    size_t i = 0;
    while (i < len && (text[pos + i] == ' ' || text[pos + i] == '\t' || text[pos + i] == '\r'))
      ++i;
    if (i < len && text[pos + i] != '#' &&
        !(i + 1 < len && text[pos + i] == '/' && text[pos + i + 1] == '/'))
      ++n;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return n;
}

struct MetricsRow {
  size_t vocabulary_lines = 0;
  size_t architecture_lines = 0;
  size_t deployment_lines = 0;
  size_t logic_lines = 0;
  size_t manifest_lines = 0;
  size_t scaffold_lines = 0;
  size_t package_lines = 0;

  size_t handwritten() const {
    return vocabulary_lines + architecture_lines + deployment_lines + logic_lines;
  }
  size_t generated() const { return manifest_lines + scaffold_lines + package_lines; }
  double ratio() const {
    size_t total = handwritten() + generated();
    return total == 0 ? 0.0 : double(generated()) / double(total);
  }
};

struct GeneratedArtifacts {
  std::vector<std::string> manifests;
  std::vector<std::pair<std::string, std::string>> scaffolds;  // (path, text)
  std::vector<std::string> packages;
};

inline MetricsRow count_generated_vs_handwritten(const std::string& vocab_text,
                                                 const std::string& arch_text,
                                                 const std::string& dep_text,
                                                 const std::string& logic_text,
                                                 const GeneratedArtifacts& gen) {
  MetricsRow row;
  row.vocabulary_lines = count_countable_lines(vocab_text);
  row.architecture_lines = count_countable_lines(arch_text);
  row.deployment_lines = count_countable_lines(dep_text);
  row.logic_lines = count_countable_lines(logic_text);
  for (const auto& m : gen.manifests) row.manifest_lines += count_countable_lines(m);
  for (const auto& [path, text] : gen.scaffolds)
    row.scaffold_lines += count_countable_lines(text);
  for (const auto& p : gen.packages) row.package_lines += count_countable_lines(p);
  return row;
}

inline std::string render_metrics_row(const std::string& bundle, size_t devices,
                                      const MetricsRow& r) {
  std::ostringstream os;
  os << "bundle: " << bundle << "  devices: " << devices << "\n"
     << "handwritten  vocabulary: " << r.vocabulary_lines
     << "  architecture: " << r.architecture_lines << "  deployment: " << r.deployment_lines
     << "  logic: " << r.logic_lines << "  total: " << r.handwritten() << "\n"
     << "generated    manifests: " << r.manifest_lines << "  scaffolds: " << r.scaffold_lines
     << "  packages: " << r.package_lines << "  total: " << r.generated() << "\n";
  os << "ratio: ";
  double pct = r.ratio() * 100.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", pct);
  os << buf << "\n";
  return os.str();
}

}  // namespace iotc
