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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iotc/model.hpp"

// The two generated frameworks, as data. The architecture framework gives
// each service its abstract handler hooks plus the concrete interaction
// operations wired to scopes; the vocabulary framework gives each resource a
// driver interface and the methods a device developer must supply. Emitting
// manifests instead of platform source keeps the toolchain language-neutral;
// scaffolds rendered from them live in templates.hpp.

namespace iotc {

struct ScopedOp {
  std::string op;
  ScopeSpec scope;

  friend bool operator==(const ScopedOp& a, const ScopedOp& b) {
    return a.op == b.op && a.scope == b.scope;
  }
};

struct ServiceFramework {
  std::string service_name;
  std::vector<std::string> abstract_hooks;  // one per consume, onNew<event>
  std::vector<ScopedOp> subscribe_ops;      // subscribe<event>, consume scope
  std::vector<std::string> publish_ops;     // publish<event>
  std::vector<ScopedOp> send_ops;           // send<action>, command scope
  std::vector<std::string> request_ops;     // request<retrieval>
  std::string partition_attribute;          // the in-region label

  friend bool operator==(const ServiceFramework&, const ServiceFramework&) = default;
};

struct FrameworkManifest {
  std::vector<ServiceFramework> services;  // sorted by service name

  friend bool operator==(const FrameworkManifest&, const FrameworkManifest&) = default;
};

struct ResourceDriver {
  std::string resource_name;
  std::string interface_name;  // I<Resource>
  ResourceKind kind = ResourceKind::sensor;
  std::vector<std::string> methods;  // rendered signatures

  friend bool operator==(const ResourceDriver&, const ResourceDriver&) = default;
};

struct DriverManifest {
  std::vector<ResourceDriver> resources;  // sorted by resource name

  friend bool operator==(const DriverManifest&, const DriverManifest&) = default;
};

using HookKey = std::pair<std::string, std::string>;  // (service, hook)

struct EvolutionReport {
  std::vector<HookKey> added_hooks;
  std::vector<HookKey> removed_hooks;
  std::vector<HookKey> unchanged_hooks;

  friend bool operator==(const EvolutionReport&, const EvolutionReport&) = default;
};

inline std::string hook_name(const std::string& event) { return "onNew" + event; }

inline FrameworkManifest generate_architecture_framework(const Architecture& arch,
                                                         const Vocabulary&) {
  FrameworkManifest m;
  for (const auto& svc : arch.services) {
    ServiceFramework f;
    f.service_name = svc.name;
    f.partition_attribute = svc.in_region;
    for (const auto& c : svc.consumes) {
      f.abstract_hooks.push_back(hook_name(c.event));
      f.subscribe_ops.push_back({"subscribe" + c.event, c.scope});
    }
    for (const auto& g : svc.generates) f.publish_ops.push_back("publish" + g.event);
    for (const auto& cmd : svc.commands) f.send_ops.push_back({"send" + cmd.action, cmd.scope});
    for (const auto& r : svc.requests) f.request_ops.push_back("request" + r.retrieval);
    m.services.push_back(std::move(f));
  }
  std::sort(m.services.begin(), m.services.end(),
            [](const ServiceFramework& a, const ServiceFramework& b) {
              return a.service_name < b.service_name;
            });
  return m;
}

namespace detail {

inline std::string join_params(const std::vector<Param>& params) {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += ", ";
    out += p.name;
  }
  return out;
}

}  // namespace detail

inline DriverManifest generate_vocabulary_framework(const Vocabulary& vocab) {
  DriverManifest m;
  for (const auto& s : vocab.sensors) {
    ResourceDriver d{s.name, "I" + s.name, ResourceKind::sensor, {}};
    for (const auto& g : s.generates) {
      d.methods.push_back("get" + g.event + "()");
      d.methods.push_back("get" + g.event + "(handler)");
    }
    m.resources.push_back(std::move(d));
  }
  for (const auto& a : vocab.actuators) {
    ResourceDriver d{a.name, "I" + a.name, ResourceKind::actuator, {}};
    for (const auto& act : a.actions)
      d.methods.push_back("do" + act.name + "(" + detail::join_params(act.params) + ")");
    m.resources.push_back(std::move(d));
  }
  for (const auto& s : vocab.storages) {
    ResourceDriver d{s.name, "I" + s.name, ResourceKind::storage, {}};
    for (const auto& r : s.retrievals)
      d.methods.push_back("query" + r.name + "(" + r.key_name + ")");
    m.resources.push_back(std::move(d));
  }
  for (const auto& u : vocab.user_interfaces) {
    ResourceDriver d{u.name, "I" + u.name, ResourceKind::user_interface, {}};
    for (const auto& act : u.actions)
      d.methods.push_back("notify" + act.name + "(" + detail::join_params(act.params) + ")");
    for (const auto& cmd : u.commands)
      d.methods.push_back("issue" + cmd.name + "(" + detail::join_params(cmd.params) + ")");
    for (const auto& r : u.requests)
      d.methods.push_back("fetch" + r.name + "(" + r.key_name + ")");
    m.resources.push_back(std::move(d));
  }
  std::sort(m.resources.begin(), m.resources.end(),
            [](const ResourceDriver& a, const ResourceDriver& b) {
              return a.resource_name < b.resource_name;
            });
  return m;
}

// Concrete driver instantiations are bound per device at link time with the
// key <resource>/<platformType>; the manifest records the resource half.
inline std::string factory_key(const std::string& resource, const std::string& platform) {
  return resource + "/" + platform;
}

inline nlohmann::json framework_to_json(const FrameworkManifest& m) {
  nlohmann::json j;
  auto services = nlohmann::json::array();
  for (const auto& f : m.services) {
    nlohmann::json s;
    s["service"] = f.service_name;
    s["partitionAttribute"] = f.partition_attribute;
    s["hooks"] = f.abstract_hooks;
    auto subs = nlohmann::json::array();
    for (const auto& op : f.subscribe_ops)
      subs.push_back({{"op", op.op}, {"scope", format_scope(op.scope)}});
    s["subscribe"] = subs;
    s["publish"] = f.publish_ops;
    auto sends = nlohmann::json::array();
    for (const auto& op : f.send_ops)
      sends.push_back({{"op", op.op}, {"scope", format_scope(op.scope)}});
    s["send"] = sends;
    s["request"] = f.request_ops;
    services.push_back(std::move(s));
  }
  j["services"] = services;
  return j;
}

inline nlohmann::json driver_to_json(const DriverManifest& m) {
  nlohmann::json j;
  auto resources = nlohmann::json::array();
  for (const auto& d : m.resources) {
    nlohmann::json r;
    r["resource"] = d.resource_name;
    r["interface"] = d.interface_name;
    r["kind"] = to_string(d.kind);
    r["methods"] = d.methods;
    r["factoryKey"] = factory_key(d.resource_name, "<platformType>");
    resources.push_back(std::move(r));
  }
  j["resources"] = resources;
  return j;
}

inline std::vector<HookKey> all_hooks(const FrameworkManifest& m) {
  std::vector<HookKey> out;
  for (const auto& f : m.services)
    for (const auto& h : f.abstract_hooks) out.emplace_back(f.service_name, h);
  std::sort(out.begin(), out.end());
  return out;
}

// Evolution: which handler implementations survive a respecification, which
// become dead, which are newly demanded. Previously registered handlers with
// no old-manifest hook (hand-added strays) count as removed too.
inline EvolutionReport diff_frameworks(const FrameworkManifest& old_m,
                                       const FrameworkManifest& new_m,
                                       const std::set<HookKey>& registered_handlers) {
  std::vector<HookKey> old_hooks = all_hooks(old_m);
  std::vector<HookKey> new_hooks = all_hooks(new_m);
  std::set<HookKey> old_set(old_hooks.begin(), old_hooks.end());
  std::set<HookKey> new_set(new_hooks.begin(), new_hooks.end());

  std::set<HookKey> known = old_set;
  known.insert(registered_handlers.begin(), registered_handlers.end());

  EvolutionReport r;
  for (const auto& h : known)
    if (!new_set.count(h)) r.removed_hooks.push_back(h);
  for (const auto& h : new_set)
    if (!old_set.count(h)) r.added_hooks.push_back(h);
  for (const auto& h : old_set)
    if (new_set.count(h)) r.unchanged_hooks.push_back(h);
  return r;
}

inline nlohmann::json evolution_to_json(const EvolutionReport& r) {
  auto list = [](const std::vector<HookKey>& hooks) {
    auto arr = nlohmann::json::array();
    for (const auto& [service, hook] : hooks)
      arr.push_back({{"service", service}, {"hook", hook}});
    return arr;
  };
  nlohmann::json j;
  j["added"] = list(r.added_hooks);
  j["removed"] = list(r.removed_hooks);
  j["unchanged"] = list(r.unchanged_hooks);
  return j;
}

inline std::string render_evolution(const EvolutionReport& r) {
  std::string out;
  auto section = [&](const char* title, const std::vector<HookKey>& hooks) {
    out += title;
    out += hooks.empty() ? " none\n" : "\n";
    for (const auto& [service, hook] : hooks) out += "  " + service + "." + hook + "\n";
  };
  section("added:", r.added_hooks);
  section("removed:", r.removed_hooks);
  section("unchanged:", r.unchanged_hooks);
  return out;
}

}  // namespace iotc
