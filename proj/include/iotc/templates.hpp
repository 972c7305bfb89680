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

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iotc/codegen.hpp"

// Text scaffolds, rendered from the manifests through a two-construct
// template language: `{{name}}` substitutes a bound string, and
// `{{#each list}}...{{/each}}` repeats its body once per list element with
// the element's bindings in scope (outer bindings stay visible). A block tag
// alone on a line swallows its trailing newline. Nothing else: no
// conditionals, no expressions, so a template's output is a pure function of
// the manifest.

namespace iotc {

struct TemplateValue;
using TemplateDict = std::map<std::string, TemplateValue>;

struct TemplateValue {
  std::string text;
  std::vector<TemplateDict> list;
  bool is_list = false;

  TemplateValue() = default;
  TemplateValue(std::string t) : text(std::move(t)) {}
  TemplateValue(const char* t) : text(t) {}
  TemplateValue(std::vector<TemplateDict> l) : list(std::move(l)), is_list(true) {}
};

namespace detail {

inline const TemplateValue* lookup(const std::vector<const TemplateDict*>& scopes,
                                   const std::string& name) {
  for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
    auto found = (*it)->find(name);
    if (found != (*it)->end()) return &found->second;
  }
  return nullptr;
}

inline void render_into(const std::string& tpl, std::vector<const TemplateDict*>& scopes,
                        std::string& out) {
  size_t pos = 0;
  while (pos < tpl.size()) {
    size_t open = tpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      return;
    }
    out.append(tpl, pos, open - pos);
    size_t close = tpl.find("}}", open);
    if (close == std::string::npos) throw std::runtime_error("template: unterminated {{");
    std::string tag = tpl.substr(open + 2, close - open - 2);
    pos = close + 2;

    if (tag.rfind("#each ", 0) == 0) {
      std::string name = tag.substr(6);
      if (pos < tpl.size() && tpl[pos] == '\n') ++pos;
      // matching {{/each}}, minding nested blocks
      size_t depth = 1, scan = pos, body_end = std::string::npos, after = pos;
      while (scan < tpl.size()) {
        size_t t = tpl.find("{{", scan);
        if (t == std::string::npos) break;
        size_t tc = tpl.find("}}", t);
        if (tc == std::string::npos) throw std::runtime_error("template: unterminated {{");
        std::string inner = tpl.substr(t + 2, tc - t - 2);
        if (inner.rfind("#each ", 0) == 0) ++depth;
        if (inner == "/each" && --depth == 0) {
          body_end = t;
          after = tc + 2;
          if (after < tpl.size() && tpl[after] == '\n') ++after;
          break;
        }
        scan = tc + 2;
      }
      if (body_end == std::string::npos)
        throw std::runtime_error("template: {{#each " + name + "}} without {{/each}}");
      std::string body = tpl.substr(pos, body_end - pos);
      const TemplateValue* v = lookup(scopes, name);
      if (!v || !v->is_list)
        throw std::runtime_error("template: '" + name + "' is not a bound list");
      for (const auto& item : v->list) {
        scopes.push_back(&item);
        render_into(body, scopes, out);
        scopes.pop_back();
      }
      pos = after;
    } else if (tag == "/each") {
      throw std::runtime_error("template: {{/each}} without {{#each}}");
    } else {
      const TemplateValue* v = lookup(scopes, tag);
      if (!v || v->is_list)
        throw std::runtime_error("template: placeholder '" + tag + "' not bound to text");
      out += v->text;
    }
  }
}

}  // namespace detail

inline std::string render_template(const std::string& tpl, const TemplateDict& dict) {
  std::string out;
  std::vector<const TemplateDict*> scopes{&dict};
  detail::render_into(tpl, scopes, out);
  return out;
}

// The shipped template set. Scaffolds are plain-text skeletons: every
// abstract hook gets a TODO slot, every concrete operation a wiring line.
struct TemplateSet {
  std::string service_template;
  std::string driver_template;
};

inline const std::map<std::string, TemplateSet>& template_sets() {
  static const std::map<std::string, TemplateSet> sets = {
      {"neutral",
       {// service scaffold
        "service {{service}}\n"
        "partitioned by {{partition}}\n"
        "one instance runs per distinct {{partition}} path in the deployment\n"
        "\n"
        "{{#each hooks}}\n"
        "abstract hook {{name}}(event)\n"
        "  TODO supply the application logic for {{name}}\n"
        "  the event payload carries the fields of the consumed structure\n"
        "{{/each}}\n"
        "{{#each subscribe}}\n"
        "concrete op {{op}} scope {{scope}}\n"
        "  installs the subscription and dispatches into the matching hook\n"
        "{{/each}}\n"
        "{{#each publish}}\n"
        "concrete op {{op}}(payload)\n"
        "  stamps the instance partition and hands the event to the bus\n"
        "{{/each}}\n"
        "{{#each send}}\n"
        "concrete op {{op}}(args) scope {{scope}}\n"
        "  delivers the command to every providing device within scope\n"
        "{{/each}}\n"
        "{{#each request}}\n"
        "concrete op {{op}}(key)\n"
        "  synchronous fetch answered by the nearest hosted storage\n"
        "{{/each}}\n"
        "end service {{service}}\n",
        // driver scaffold
        "driver interface {{interface}}\n"
        "binds resource {{resource}} of kind {{kind}}\n"
        "factory key {{factoryKey}} selects the platform implementation\n"
        "\n"
        "{{#each methods}}\n"
        "method {{signature}}\n"
        "  TODO provide the platform implementation\n"
        "{{/each}}\n"
        "end driver {{interface}}\n"}}};
  return sets;
}

inline std::vector<std::pair<std::string, std::string>> render_scaffolds(
    const FrameworkManifest& framework, const DriverManifest& drivers,
    const std::string& set_name) {
  auto it = template_sets().find(set_name);
  if (it == template_sets().end())
    throw std::runtime_error("E-TEMPLATE-MISSING: unknown template set '" + set_name + "'");
  const TemplateSet& set = it->second;

  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : framework.services) {
    TemplateDict d;
    d["service"] = f.service_name;
    d["partition"] = f.partition_attribute;
    std::vector<TemplateDict> hooks, subs, pubs, sends, reqs;
    for (const auto& h : f.abstract_hooks) hooks.push_back({{"name", h}});
    for (const auto& s : f.subscribe_ops)
      subs.push_back({{"op", s.op}, {"scope", format_scope(s.scope)}});
    for (const auto& p : f.publish_ops) pubs.push_back({{"op", p}});
    for (const auto& s : f.send_ops)
      sends.push_back({{"op", s.op}, {"scope", format_scope(s.scope)}});
    for (const auto& r : f.request_ops) reqs.push_back({{"op", r}});
    d["hooks"] = hooks;
    d["subscribe"] = subs;
    d["publish"] = pubs;
    d["send"] = sends;
    d["request"] = reqs;
    out.emplace_back("services/" + f.service_name + ".txt",
                     render_template(set.service_template, d));
  }
  for (const auto& r : drivers.resources) {
    TemplateDict d;
    d["interface"] = r.interface_name;
    d["resource"] = r.resource_name;
    d["kind"] = to_string(r.kind);
    d["factoryKey"] = factory_key(r.resource_name, "<platformType>");
    std::vector<TemplateDict> methods;
    for (const auto& m : r.methods) methods.push_back({{"signature", m}});
    d["methods"] = methods;
    out.emplace_back("drivers/" + r.resource_name + ".txt",
                     render_template(set.driver_template, d));
  }
  return out;
}

}  // namespace iotc
