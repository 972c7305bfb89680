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

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotc/source.hpp"

// Value model for the three input languages: a vocabulary of domain concepts,
// an architecture of computational services over that vocabulary, and a
// deployment of concrete devices. Everything is plain data; parsing, checking
// and code generation live in their own headers.

namespace iotc {

enum class FieldType { string_t, integer_t, long_t, double_t, boolean_t };

inline const char* to_keyword(FieldType t) {
  switch (t) {
    case FieldType::string_t: return "string";
    case FieldType::integer_t: return "integer";
    case FieldType::long_t: return "long";
    case FieldType::double_t: return "double";
    case FieldType::boolean_t: return "boolean";
  }
  return "?";
}

inline std::optional<FieldType> field_type_from(const std::string& kw) {
  if (kw == "string") return FieldType::string_t;
  if (kw == "integer") return FieldType::integer_t;
  if (kw == "long") return FieldType::long_t;
  if (kw == "double") return FieldType::double_t;
  if (kw == "boolean") return FieldType::boolean_t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Regions

struct RegionLabel {
  std::string name;
  int depth = 0;  // 0 is outermost
  SourceSpan span;

  friend bool operator==(const RegionLabel& a, const RegionLabel& b) {
    return a.name == b.name && a.depth == b.depth;
  }
};

struct RegionEntry {
  std::string label;
  std::int64_t value = 0;
  SourceSpan span;

  friend bool operator==(const RegionEntry& a, const RegionEntry& b) {
    return a.label == b.label && a.value == b.value;
  }
};

// Ordered (label, value) path from the outermost region level inward.
struct RegionPath {
  std::vector<RegionEntry> entries;

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }

  std::optional<size_t> index_of(const std::string& label) const {
    for (size_t i = 0; i < entries.size(); ++i)
      if (entries[i].label == label) return i;
    return std::nullopt;
  }

  RegionPath prefix(size_t n) const {
    RegionPath p;
    p.entries.assign(entries.begin(), entries.begin() + std::min(n, entries.size()));
    return p;
  }

  friend bool operator==(const RegionPath& a, const RegionPath& b) {
    return a.entries == b.entries;
  }
};

// Element-wise order: label name, then numeric value.
inline int compare_paths(const RegionPath& a, const RegionPath& b) {
  size_t n = std::min(a.entries.size(), b.entries.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.entries[i].label != b.entries[i].label)
      return a.entries[i].label < b.entries[i].label ? -1 : 1;
    if (a.entries[i].value != b.entries[i].value)
      return a.entries[i].value < b.entries[i].value ? -1 : 1;
  }
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size() ? -1 : 1;
  return 0;
}

inline bool operator<(const RegionPath& a, const RegionPath& b) {
  return compare_paths(a, b) < 0;
}

inline std::string format_path(const RegionPath& p) {
  std::ostringstream os;
  for (size_t i = 0; i < p.entries.size(); ++i) {
    if (i) os << '/';
    os << p.entries[i].label << ':' << p.entries[i].value;
  }
  return os.str();
}

// Parses the format_path form back; used by package/mapping deserialization.
inline RegionPath parse_path(const std::string& s) {
  RegionPath p;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t slash = s.find('/', pos);
    std::string part = s.substr(pos, slash == std::string::npos ? std::string::npos : slash - pos);
    size_t colon = part.rfind(':');
    if (colon == std::string::npos) throw std::runtime_error("bad region path: " + s);
    RegionEntry e;
    e.label = part.substr(0, colon);
    e.value = std::stoll(part.substr(colon + 1));
    p.entries.push_back(e);
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Vocabulary

struct Field {
  std::string name;
  FieldType type = FieldType::string_t;
  SourceSpan span;

  friend bool operator==(const Field& a, const Field& b) {
    return a.name == b.name && a.type == b.type;
  }
};

struct DataStructure {
  std::string name;
  std::vector<Field> fields;
  SourceSpan span;

  friend bool operator==(const DataStructure& a, const DataStructure& b) {
    return a.name == b.name && a.fields == b.fields;
  }
};

// An event an information resource can produce, typed by a declared struct.
struct EventSig {
  std::string event;
  std::string struct_name;
  SourceSpan span;

  friend bool operator==(const EventSig& a, const EventSig& b) {
    return a.event == b.event && a.struct_name == b.struct_name;
  }
};

struct Param {
  std::string name;
  FieldType type = FieldType::string_t;

  friend bool operator==(const Param&, const Param&) = default;
};

struct ActionSig {
  std::string name;
  std::vector<Param> params;
  SourceSpan span;

  friend bool operator==(const ActionSig& a, const ActionSig& b) {
    return a.name == b.name && a.params == b.params;
  }
};

// A keyed lookup a storage (or user interface) can answer.
struct Retrieval {
  std::string name;
  std::string struct_name;
  std::string key_name;
  FieldType key_type = FieldType::string_t;
  SourceSpan span;

  friend bool operator==(const Retrieval& a, const Retrieval& b) {
    return a.name == b.name && a.struct_name == b.struct_name && a.key_name == b.key_name &&
           a.key_type == b.key_type;
  }
};

enum class ResourceKind { sensor, actuator, storage, user_interface };

inline const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::sensor: return "sensor";
    case ResourceKind::actuator: return "actuator";
    case ResourceKind::storage: return "storage";
    case ResourceKind::user_interface: return "userinterface";
  }
  return "?";
}

struct SensorDecl {
  std::string name;
  std::vector<EventSig> generates;
  SourceSpan span;

  friend bool operator==(const SensorDecl& a, const SensorDecl& b) {
    return a.name == b.name && a.generates == b.generates;
  }
};

struct ActuatorDecl {
  std::string name;
  std::vector<ActionSig> actions;
  SourceSpan span;

  friend bool operator==(const ActuatorDecl& a, const ActuatorDecl& b) {
    return a.name == b.name && a.actions == b.actions;
  }
};

struct StorageDecl {
  std::string name;
  std::vector<Retrieval> retrievals;
  SourceSpan span;

  friend bool operator==(const StorageDecl& a, const StorageDecl& b) {
    return a.name == b.name && a.retrievals == b.retrievals;
  }
};

struct UserInterfaceDecl {
  std::string name;
  std::vector<ActionSig> commands;  // user-issued, control actuators
  std::vector<ActionSig> actions;   // invoked by services to notify the user
  std::vector<Retrieval> requests;
  SourceSpan span;

  friend bool operator==(const UserInterfaceDecl& a, const UserInterfaceDecl& b) {
    return a.name == b.name && a.commands == b.commands && a.actions == b.actions &&
           a.requests == b.requests;
  }
};

struct Vocabulary {
  std::string name;
  std::vector<RegionLabel> regions;
  std::vector<DataStructure> structs;
  std::vector<SensorDecl> sensors;
  std::vector<ActuatorDecl> actuators;
  std::vector<StorageDecl> storages;
  std::vector<UserInterfaceDecl> user_interfaces;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.name == b.name && a.regions == b.regions && a.structs == b.structs &&
           a.sensors == b.sensors && a.actuators == b.actuators && a.storages == b.storages &&
           a.user_interfaces == b.user_interfaces;
  }

  std::optional<int> label_depth(const std::string& label) const {
    for (const auto& r : regions)
      if (r.name == label) return r.depth;
    return std::nullopt;
  }

  const DataStructure* find_struct(const std::string& name) const {
    for (const auto& s : structs)
      if (s.name == name) return &s;
    return nullptr;
  }

  // Struct behind a sensor-produced event, if any sensor produces it.
  const EventSig* find_sensor_event(const std::string& event) const {
    for (const auto& s : sensors)
      for (const auto& g : s.generates)
        if (g.event == event) return &g;
    return nullptr;
  }

  std::vector<std::string> sensors_generating(const std::string& event) const {
    std::vector<std::string> out;
    for (const auto& s : sensors)
      for (const auto& g : s.generates)
        if (g.event == event) out.push_back(s.name);
    return out;
  }

  // Actuators and user interfaces providing an action of this name.
  std::vector<std::pair<std::string, ResourceKind>> action_providers(const std::string& action) const {
    std::vector<std::pair<std::string, ResourceKind>> out;
    for (const auto& a : actuators)
      for (const auto& act : a.actions)
        if (act.name == action) out.emplace_back(a.name, ResourceKind::actuator);
    for (const auto& u : user_interfaces)
      for (const auto& act : u.actions)
        if (act.name == action) out.emplace_back(u.name, ResourceKind::user_interface);
    return out;
  }

  const ActionSig* find_action(const std::string& action) const {
    for (const auto& a : actuators)
      for (const auto& act : a.actions)
        if (act.name == action) return &act;
    for (const auto& u : user_interfaces)
      for (const auto& act : u.actions)
        if (act.name == action) return &act;
    return nullptr;
  }

  // Storages and user interfaces able to answer a retrieval of this name.
  std::vector<std::pair<std::string, ResourceKind>> responders_for(const std::string& retrieval) const {
    std::vector<std::pair<std::string, ResourceKind>> out;
    for (const auto& s : storages)
      for (const auto& r : s.retrievals)
        if (r.name == retrieval) out.emplace_back(s.name, ResourceKind::storage);
    for (const auto& u : user_interfaces)
      for (const auto& r : u.requests)
        if (r.name == retrieval) out.emplace_back(u.name, ResourceKind::user_interface);
    return out;
  }

  const Retrieval* find_retrieval(const std::string& retrieval) const {
    for (const auto& s : storages)
      for (const auto& r : s.retrievals)
        if (r.name == retrieval) return &r;
    for (const auto& u : user_interfaces)
      for (const auto& r : u.requests)
        if (r.name == retrieval) return &r;
    return nullptr;
  }

  struct ResourceRef {
    std::string name;
    ResourceKind kind;
  };

  std::optional<ResourceRef> find_resource(const std::string& name) const {
    for (const auto& s : sensors)
      if (s.name == name) return ResourceRef{name, ResourceKind::sensor};
    for (const auto& a : actuators)
      if (a.name == name) return ResourceRef{name, ResourceKind::actuator};
    for (const auto& s : storages)
      if (s.name == name) return ResourceRef{name, ResourceKind::storage};
    for (const auto& u : user_interfaces)
      if (u.name == name) return ResourceRef{name, ResourceKind::user_interface};
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Architecture

// hops:<radius>:<Label> — all regions whose <Label> value differs by at most
// radius, with every level above <Label> equal.
struct ScopeSpec {
  std::int64_t radius = 0;
  std::string label;
  SourceSpan span;

  friend bool operator==(const ScopeSpec& a, const ScopeSpec& b) {
    return a.radius == b.radius && a.label == b.label;
  }
};

inline std::string format_scope(const ScopeSpec& s) {
  return "hops:" + std::to_string(s.radius) + ":" + s.label;
}

inline ScopeSpec parse_scope(const std::string& s) {
  size_t second = s.find(':', 5);
  if (s.rfind("hops:", 0) != 0 || second == std::string::npos)
    throw std::runtime_error("malformed scope '" + s + "'");
  ScopeSpec out;
  out.radius = std::stoll(s.substr(5, second - 5));
  out.label = s.substr(second + 1);
  if (out.label.empty() || out.radius < 0)
    throw std::runtime_error("malformed scope '" + s + "'");
  return out;
}

struct ConsumeClause {
  std::string event;
  ScopeSpec scope;
  SourceSpan span;

  friend bool operator==(const ConsumeClause& a, const ConsumeClause& b) {
    return a.event == b.event && a.scope == b.scope;
  }
};

struct GenerateClause {
  std::string event;
  std::string struct_name;
  SourceSpan span;

  friend bool operator==(const GenerateClause& a, const GenerateClause& b) {
    return a.event == b.event && a.struct_name == b.struct_name;
  }
};

struct RequestClause {
  std::string retrieval;
  SourceSpan span;

  friend bool operator==(const RequestClause& a, const RequestClause& b) {
    return a.retrieval == b.retrieval;
  }
};

struct CommandClause {
  std::string action;
  std::vector<std::string> arg_names;
  ScopeSpec scope;
  SourceSpan span;

  friend bool operator==(const CommandClause& a, const CommandClause& b) {
    return a.action == b.action && a.arg_names == b.arg_names && a.scope == b.scope;
  }
};

struct ComputationalService {
  std::string name;
  std::vector<ConsumeClause> consumes;
  std::vector<GenerateClause> generates;
  std::vector<RequestClause> requests;
  std::vector<CommandClause> commands;
  std::string in_region;  // partition label: one instance per region of this level
  SourceSpan in_region_span;
  SourceSpan span;

  friend bool operator==(const ComputationalService& a, const ComputationalService& b) {
    return a.name == b.name && a.consumes == b.consumes && a.generates == b.generates &&
           a.requests == b.requests && a.commands == b.commands && a.in_region == b.in_region;
  }
};

struct Architecture {
  std::string name;
  std::string vocabulary_name;
  std::vector<ComputationalService> services;
  SourceSpan uses_span;

  friend bool operator==(const Architecture& a, const Architecture& b) {
    return a.name == b.name && a.vocabulary_name == b.vocabulary_name &&
           a.services == b.services;
  }

  const ComputationalService* find_service(const std::string& name) const {
    for (const auto& s : services)
      if (s.name == name) return &s;
    return nullptr;
  }

  // Struct behind a service-produced event, if any service produces it.
  const GenerateClause* find_service_event(const std::string& event) const {
    for (const auto& s : services)
      for (const auto& g : s.generates)
        if (g.event == event) return &g;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Deployment

struct HostedResource {
  std::string name;
  SourceSpan span;

  friend bool operator==(const HostedResource& a, const HostedResource& b) {
    return a.name == b.name;
  }
};

struct DeviceDecl {
  std::string name;
  RegionPath region;
  std::vector<HostedResource> resources;
  std::string platform_type;
  bool mobile = false;
  SourceSpan span;

  friend bool operator==(const DeviceDecl& a, const DeviceDecl& b) {
    return a.name == b.name && a.region == b.region && a.resources == b.resources &&
           a.platform_type == b.platform_type && a.mobile == b.mobile;
  }

  bool hosts(const std::string& resource) const {
    for (const auto& r : resources)
      if (r.name == resource) return true;
    return false;
  }
};

struct Deployment {
  std::string name;
  std::string vocabulary_name;
  std::vector<DeviceDecl> devices;
  SourceSpan uses_span;

  friend bool operator==(const Deployment& a, const Deployment& b) {
    return a.name == b.name && a.vocabulary_name == b.vocabulary_name && a.devices == b.devices;
  }

  const DeviceDecl* find_device(const std::string& name) const {
    for (const auto& d : devices)
      if (d.name == name) return &d;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Instances and mapping results

struct ServiceInstance {
  std::string service_name;
  RegionPath partition_path;

  friend bool operator==(const ServiceInstance&, const ServiceInstance&) = default;
};

inline std::string instance_id(const std::string& service, const RegionPath& partition) {
  return service + "@" + format_path(partition);
}

struct Assignment {
  std::string service_name;
  RegionPath partition_path;
  std::string device_name;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct MappingOutput {
  std::uint64_t seed = 0;
  std::vector<Assignment> assignments;

  friend bool operator==(const MappingOutput&, const MappingOutput&) = default;
};

// ---------------------------------------------------------------------------
// Region scope test

// True iff `a` and `b` lie within `scope` of each other: both paths reach the
// scope level, agree on every level strictly above it, and differ at the scope
// level by at most `radius`. Throws if a path does not reach the level.
inline bool region_distance(const RegionPath& a, const RegionPath& b, const ScopeSpec& scope) {
  auto ia = a.index_of(scope.label);
  auto ib = b.index_of(scope.label);
  if (!ia || !ib) throw std::runtime_error("region_distance: path too shallow for " + scope.label);
  if (*ia != *ib) return false;
  for (size_t i = 0; i < *ia; ++i) {
    if (a.entries[i].label != b.entries[i].label) return false;
    if (a.entries[i].value != b.entries[i].value) return false;
  }
  std::int64_t va = a.entries[*ia].value, vb = b.entries[*ib].value;
  std::uint64_t diff = va > vb ? std::uint64_t(va) - std::uint64_t(vb)
                               : std::uint64_t(vb) - std::uint64_t(va);
  return diff <= std::uint64_t(scope.radius);
}

// One instance of every service per distinct truncated device path at the
// service's partition level, sorted by (service name, partition path).
inline std::vector<ServiceInstance> derive_instances(const Architecture& arch,
                                                     const Deployment& dep) {
  std::vector<ServiceInstance> out;
  for (const auto& svc : arch.services) {
    std::set<RegionPath> partitions;
    for (const auto& dev : dep.devices) {
      auto idx = dev.region.index_of(svc.in_region);
      if (!idx) continue;  // validated deployments always reach every label
      partitions.insert(dev.region.prefix(*idx + 1));
    }
    for (const auto& p : partitions) out.push_back({svc.name, p});
  }
  std::sort(out.begin(), out.end(), [](const ServiceInstance& x, const ServiceInstance& y) {
    if (x.service_name != y.service_name) return x.service_name < y.service_name;
    return compare_paths(x.partition_path, y.partition_path) < 0;
  });
  return out;
}

}  // namespace iotc
