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

#include <set>
#include <string>
#include <vector>

#include "iotc/model.hpp"
#include "iotc/source.hpp"

// Cross-reference checks between the three inputs. Parsing already enforces
// syntax and per-file uniqueness; everything here is about names resolving
// across files and about region paths being well-formed against the declared
// hierarchy. A system with no error-severity diagnostics is guaranteed to
// survive mapping, linking and simulation without reference failures.
//
// Error codes:
//   E-USES-MISMATCH      uses clause names a different vocabulary
//   E-CONSUME-UNRESOLVED consumed event generated by no sensor or service
//   E-COMMAND-UNRESOLVED commanded action provided by no actuator or interface
//   E-COMMAND-ARITY      command argument list disagrees with the action
//   E-REQUEST-UNRESOLVED requested retrieval answered by nothing
//   E-STRUCT-UNRESOLVED  generate clause names an undeclared struct
//   E-SCOPE-LABEL        in-region or hops label is not a declared region
//   E-SCOPE-DEPTH        scope level lies below the service's partition level
//   E-DUP-EVENT          one event name produced by two different producers
//   E-RESOURCE-UNKNOWN   device hosts a resource the vocabulary lacks
//   E-REGION-LABEL       device path uses an undeclared region label
//   E-REGION-ORDER       device path labels out of hierarchy order
//   E-REGION-DEPTH       device path does not reach the innermost level
//   E-NO-RESPONDER       a requested retrieval is hosted on no device
// Warning codes:
//   W-NO-PRODUCER        consumed sensor event hosted on no device
//   W-NO-ACTUATOR        commanded action unreachable in some partition

namespace iotc {

namespace detail {

inline Diagnostic err(std::string code, std::string msg, SourceSpan span) {
  return {Severity::error, std::move(code), std::move(msg), std::move(span)};
}

inline Diagnostic warn(std::string code, std::string msg, SourceSpan span) {
  return {Severity::warning, std::move(code), std::move(msg), std::move(span)};
}

// True when the device's region path uses known labels, in declaration order,
// all the way down to the innermost level. Mirrors validate_deployment.
inline bool region_path_ok(const DeviceDecl& dev, const Vocabulary& vocab) {
  if (dev.region.size() != vocab.regions.size()) return false;
  for (size_t i = 0; i < dev.region.entries.size(); ++i)
    if (dev.region.entries[i].label != vocab.regions[i].name) return false;
  return true;
}

}  // namespace detail

inline std::vector<Diagnostic> validate_architecture(const Architecture& arch,
                                                     const Vocabulary& vocab) {
  using detail::err;
  std::vector<Diagnostic> out;

  if (arch.vocabulary_name != vocab.name)
    out.push_back(err("E-USES-MISMATCH",
                      "architecture uses vocabulary '" + arch.vocabulary_name +
                          "' but was checked against '" + vocab.name + "'",
                      arch.uses_span));

  // An event may come from exactly one producer: a sensor or a service.
  std::set<std::string> sensor_events;
  for (const auto& s : vocab.sensors)
    for (const auto& g : s.generates) sensor_events.insert(g.event);
  std::set<std::string> service_events;
  for (const auto& svc : arch.services) {
    for (const auto& g : svc.generates) {
      if (sensor_events.count(g.event) || service_events.count(g.event))
        out.push_back(err("E-DUP-EVENT",
                          "event '" + g.event + "' already has another producer", g.span));
      service_events.insert(g.event);
    }
  }

  auto check_scope = [&](const ScopeSpec& scope, const ComputationalService& svc,
                         bool in_region_ok) {
    auto depth = vocab.label_depth(scope.label);
    if (!depth) {
      out.push_back(err("E-SCOPE-LABEL",
                        "scope label '" + scope.label + "' is not a declared region", scope.span));
      return;
    }
    if (!in_region_ok) return;
    if (*depth > *vocab.label_depth(svc.in_region))
      out.push_back(err("E-SCOPE-DEPTH",
                        "scope level '" + scope.label + "' lies below the partition level '" +
                            svc.in_region + "' of service '" + svc.name + "'",
                        scope.span));
  };

  for (const auto& svc : arch.services) {
    bool in_region_ok = vocab.label_depth(svc.in_region).has_value();
    if (!in_region_ok)
      out.push_back(err("E-SCOPE-LABEL",
                        "in-region label '" + svc.in_region + "' is not a declared region",
                        svc.in_region_span));

    for (const auto& c : svc.consumes) {
      if (!sensor_events.count(c.event) && !service_events.count(c.event))
        out.push_back(err("E-CONSUME-UNRESOLVED",
                          "consumed event '" + c.event + "' has no producer", c.span));
      check_scope(c.scope, svc, in_region_ok);
    }

    for (const auto& g : svc.generates)
      if (!vocab.find_struct(g.struct_name))
        out.push_back(err("E-STRUCT-UNRESOLVED",
                          "generate clause names undeclared struct '" + g.struct_name + "'",
                          g.span));

    for (const auto& r : svc.requests)
      if (vocab.responders_for(r.retrieval).empty())
        out.push_back(err("E-REQUEST-UNRESOLVED",
                          "requested retrieval '" + r.retrieval + "' is answered by nothing",
                          r.span));

    for (const auto& cmd : svc.commands) {
      const ActionSig* sig = vocab.find_action(cmd.action);
      if (!sig) {
        out.push_back(err("E-COMMAND-UNRESOLVED",
                          "commanded action '" + cmd.action +
                              "' is provided by no actuator or user interface",
                          cmd.span));
      } else if (cmd.arg_names.size() != sig->params.size()) {
        out.push_back(err("E-COMMAND-ARITY",
                          "command '" + cmd.action + "' passes " +
                              std::to_string(cmd.arg_names.size()) + " arguments but the action takes " +
                              std::to_string(sig->params.size()),
                          cmd.span));
      }
      check_scope(cmd.scope, svc, in_region_ok);
    }
  }
  sort_diagnostics(out);
  return out;
}

inline std::vector<Diagnostic> validate_deployment(const Deployment& dep,
                                                   const Vocabulary& vocab) {
  using detail::err;
  std::vector<Diagnostic> out;

  if (dep.vocabulary_name != vocab.name)
    out.push_back(err("E-USES-MISMATCH",
                      "deployment uses vocabulary '" + dep.vocabulary_name +
                          "' but was checked against '" + vocab.name + "'",
                      dep.uses_span));

  for (const auto& dev : dep.devices) {
    for (const auto& r : dev.resources)
      if (!vocab.find_resource(r.name))
        out.push_back(err("E-RESOURCE-UNKNOWN",
                          "device '" + dev.name + "' hosts unknown resource '" + r.name + "'",
                          r.span));

    // Unknown labels are reported alone; order and depth only make sense once
    // every label is known.
    bool labels_known = true;
    for (const auto& e : dev.region.entries) {
      if (!vocab.label_depth(e.label)) {
        out.push_back(err("E-REGION-LABEL",
                          "region label '" + e.label + "' is not a declared region", e.span));
        labels_known = false;
      }
    }
    if (!labels_known) continue;

    bool ordered = true;
    for (size_t i = 0; i + 1 < dev.region.entries.size() && ordered; ++i)
      if (*vocab.label_depth(dev.region.entries[i].label) >=
          *vocab.label_depth(dev.region.entries[i + 1].label))
        ordered = false;
    bool from_root = !dev.region.empty() &&
                     *vocab.label_depth(dev.region.entries.front().label) == 0;
    if (!ordered || !from_root) {
      out.push_back(err("E-REGION-ORDER",
                        "region path of device '" + dev.name +
                            "' does not follow the declared hierarchy order",
                        dev.span));
      continue;
    }
    if (dev.region.size() != vocab.regions.size())
      out.push_back(err("E-REGION-DEPTH",
                        "region path of device '" + dev.name +
                            "' must name every level down to '" +
                            vocab.regions.back().name + "'",
                        dev.span));
  }
  sort_diagnostics(out);
  return out;
}

// Whole-system checks: hosting obligations that only exist once vocabulary,
// architecture and deployment are all on the table. References that failed
// the per-file validations are skipped here, so mutating one name yields one
// diagnostic, not a cascade.
inline std::vector<Diagnostic> validate_system(const Vocabulary& vocab, const Architecture& arch,
                                               const Deployment& dep) {
  using detail::err;
  using detail::warn;
  std::vector<Diagnostic> out;

  std::set<std::string> sensor_events;
  for (const auto& s : vocab.sensors)
    for (const auto& g : s.generates) sensor_events.insert(g.event);

  std::vector<const DeviceDecl*> placed;  // devices with well-formed paths
  for (const auto& dev : dep.devices)
    if (detail::region_path_ok(dev, vocab)) placed.push_back(&dev);

  auto hosted_anywhere = [&](const std::string& resource) {
    for (const auto& dev : dep.devices)
      if (dev.hosts(resource)) return true;
    return false;
  };

  for (const auto& svc : arch.services) {
    auto partition_depth = vocab.label_depth(svc.in_region);

    // Partitions this service is instantiated in (well-formed devices only).
    std::set<RegionPath> partitions;
    if (partition_depth)
      for (const auto* dev : placed)
        partitions.insert(dev->region.prefix(size_t(*partition_depth) + 1));

    for (const auto& c : svc.consumes) {
      if (!sensor_events.count(c.event)) continue;  // service events always have a producer
      bool hosted = false;
      for (const auto& sensor : vocab.sensors_generating(c.event))
        if (hosted_anywhere(sensor)) hosted = true;
      if (!hosted)
        out.push_back(warn("W-NO-PRODUCER",
                           "consumed event '" + c.event +
                               "' has no hosting device for its generating sensor",
                           c.span));
    }

    // Requests resolve against storages and user-interface request entries,
    // but an interface request is the asking side. Answering takes a hosted
    // storage, and the interaction is synchronous, so a miss is an error.
    for (const auto& r : svc.requests) {
      auto responders = vocab.responders_for(r.retrieval);
      if (responders.empty()) continue;  // E-REQUEST-UNRESOLVED already reported
      bool hosted = false;
      for (const auto& [resource, kind] : responders)
        if (kind == ResourceKind::storage && hosted_anywhere(resource)) hosted = true;
      if (!hosted)
        out.push_back(err("E-NO-RESPONDER",
                          "retrieval '" + r.retrieval + "' has no hosted storage to answer it",
                          r.span));
    }

    for (const auto& cmd : svc.commands) {
      auto providers = vocab.action_providers(cmd.action);
      if (providers.empty()) continue;  // unresolved, reported elsewhere
      auto scope_depth = vocab.label_depth(cmd.scope.label);
      if (!scope_depth || !partition_depth || *scope_depth > *partition_depth) continue;
      bool somewhere_empty = false;
      for (const auto& partition : partitions) {
        bool reachable = false;
        for (const auto* dev : placed) {
          if (!region_distance(dev->region, partition, cmd.scope)) continue;
          for (const auto& [resource, kind] : providers)
            if (dev->hosts(resource)) reachable = true;
          if (reachable) break;
        }
        if (!reachable) somewhere_empty = true;
      }
      if (somewhere_empty)
        out.push_back(warn("W-NO-ACTUATOR",
                           "command '" + cmd.action + "' of service '" + svc.name +
                               "' reaches no providing device in some partition",
                           cmd.span));
    }
  }
  sort_diagnostics(out);
  return out;
}

// Convenience used by the command line and tests: all checks, one sorted list.
inline std::vector<Diagnostic> validate_all(const Vocabulary& vocab, const Architecture& arch,
                                            const Deployment& dep) {
  std::vector<Diagnostic> out = validate_architecture(arch, vocab);
  auto d = validate_deployment(dep, vocab);
  out.insert(out.end(), d.begin(), d.end());
  auto s = validate_system(vocab, arch, dep);
  out.insert(out.end(), s.begin(), s.end());
  sort_diagnostics(out);
  return out;
}

}  // namespace iotc
