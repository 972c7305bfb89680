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

#include <sstream>
#include <string>

#include "iotc/model.hpp"

// Canonical printers. Reparsing a printed form yields a structurally equal
// model, and printing is idempotent, so these are the normal form of the
// three languages. A printed deployment is exactly 8 lines per device plus
// the one-line header.

namespace iotc {

namespace detail {

inline void print_action_sig(std::ostringstream& os, const char* kw, const ActionSig& sig,
                             const char* indent) {
  os << indent << kw << ' ' << sig.name << '(';
  for (size_t i = 0; i < sig.params.size(); ++i) {
    if (i) os << ", ";
    os << sig.params[i].name << ": " << to_keyword(sig.params[i].type);
  }
  os << ");\n";
}

inline void print_retrieval(std::ostringstream& os, const char* kw, const Retrieval& r,
                            const char* indent) {
  os << indent << kw << ' ' << r.name << ": " << r.struct_name << " accessed-by " << r.key_name
     << ": " << to_keyword(r.key_type) << ";\n";
}

}  // namespace detail

inline std::string print_vocabulary(const Vocabulary& v) {
  std::ostringstream os;
  os << "vocabulary " << v.name << '\n';
  os << "regions {\n";
  for (const auto& r : v.regions) os << "  " << r.name << ";\n";
  os << "}\n";
  if (!v.structs.empty()) {
    os << "structs {\n";
    for (const auto& s : v.structs) {
      os << "  " << s.name << " {\n";
      for (const auto& f : s.fields) os << "    " << f.name << ": " << to_keyword(f.type) << ";\n";
      os << "  }\n";
    }
    os << "}\n";
  }
  bool any_resources = !v.sensors.empty() || !v.actuators.empty() || !v.storages.empty() ||
                       !v.user_interfaces.empty();
  if (any_resources) {
    os << "resources {\n";
    if (!v.sensors.empty()) {
      os << "  sensors {\n";
      for (const auto& s : v.sensors) {
        os << "    " << s.name << " {\n";
        for (const auto& g : s.generates)
          os << "      generate " << g.event << ": " << g.struct_name << ";\n";
        os << "    }\n";
      }
      os << "  }\n";
    }
    if (!v.actuators.empty()) {
      os << "  actuators {\n";
      for (const auto& a : v.actuators) {
        os << "    " << a.name << " {\n";
        for (const auto& act : a.actions) detail::print_action_sig(os, "action", act, "      ");
        os << "    }\n";
      }
      os << "  }\n";
    }
    if (!v.storages.empty()) {
      os << "  storages {\n";
      for (const auto& s : v.storages) {
        os << "    " << s.name << " {\n";
        for (const auto& r : s.retrievals) detail::print_retrieval(os, "generate", r, "      ");
        os << "    }\n";
      }
      os << "  }\n";
    }
    if (!v.user_interfaces.empty()) {
      os << "  userinterfaces {\n";
      for (const auto& u : v.user_interfaces) {
        os << "    " << u.name << " {\n";
        for (const auto& cmd : u.commands) detail::print_action_sig(os, "command", cmd, "      ");
        for (const auto& act : u.actions) detail::print_action_sig(os, "action", act, "      ");
        for (const auto& r : u.requests) detail::print_retrieval(os, "request", r, "      ");
        os << "    }\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

inline std::string print_architecture(const Architecture& a) {
  std::ostringstream os;
  os << "architecture " << a.name << " uses " << a.vocabulary_name << '\n';
  for (const auto& svc : a.services) {
    os << "computationalService " << svc.name << " {\n";
    for (const auto& c : svc.consumes)
      os << "  consume " << c.event << " from " << format_scope(c.scope) << ";\n";
    for (const auto& r : svc.requests) os << "  request " << r.retrieval << ";\n";
    for (const auto& g : svc.generates)
      os << "  generate " << g.event << ": " << g.struct_name << ";\n";
    for (const auto& cmd : svc.commands) {
      os << "  command " << cmd.action << '(';
      for (size_t i = 0; i < cmd.arg_names.size(); ++i) {
        if (i) os << ", ";
        os << cmd.arg_names[i];
      }
      os << ") to " << format_scope(cmd.scope) << ";\n";
    }
    os << "  in-region: " << svc.in_region << ";\n";
    os << "}\n";
  }
  return os.str();
}

inline std::string print_deployment(const Deployment& d) {
  std::ostringstream os;
  os << "deployment " << d.name << " uses " << d.vocabulary_name << '\n';
  for (const auto& dev : d.devices) {
    os << "device " << dev.name << " {\n";
    os << "  region {\n";
    os << "   ";
    for (const auto& e : dev.region.entries) os << ' ' << e.label << ": " << e.value << ';';
    os << '\n';
    os << "  }\n";
    os << "  resources { ";
    for (size_t i = 0; i < dev.resources.size(); ++i) {
      if (i) os << ", ";
      os << dev.resources[i].name;
    }
    os << (dev.resources.empty() ? "}\n" : " }\n");
    os << "  type: " << dev.platform_type << ";\n";
    os << "  mobile: " << (dev.mobile ? "true" : "false") << ";\n";
    os << "}\n";
  }
  return os.str();
}

}  // namespace iotc
