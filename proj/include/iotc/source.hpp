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

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iotc {

// Half-open source range, 1-based line/column.
struct SourceSpan {
  std::string file;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

inline bool span_before(const SourceSpan& a, const SourceSpan& b) {
  if (a.line != b.line) return a.line < b.line;
  if (a.col != b.col) return a.col < b.col;
  if (a.end_line != b.end_line) return a.end_line < b.end_line;
  return a.end_col < b.end_col;
}

struct ParseError {
  std::string message;
  SourceSpan span;
  std::vector<std::string> expected;  // tokens that would have been accepted

  std::string render() const {
    std::ostringstream os;
    os << span.file << ':' << span.line << ':' << span.col << ": error[E-PARSE] " << message;
    if (!expected.empty()) {
      os << " (expected: ";
      for (size_t i = 0; i < expected.size(); ++i) {
        if (i) os << ", ";
        os << expected[i];
      }
      os << ')';
    }
    return os.str();
  }
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceSpan span;
};

inline std::string render_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << d.span.file << ':' << d.span.line << ':' << d.span.col << ": "
     << (d.severity == Severity::error ? "error" : "warning") << '[' << d.code << "] "
     << d.message;
  return os.str();
}

inline void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.span.file != b.span.file) return a.span.file < b.span.file;
    if (!(a.span == b.span)) return span_before(a.span, b.span);
    return a.code < b.code;
  });
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace iotc
