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
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "iotc/codegen.hpp"
#include "iotc/model.hpp"

// Final stage: one package per device that plays a role. A package is data,
// not code; it carries the device's driver bindings and the wiring tables of
// every service instance mapped onto it, and the runtime interprets it. A
// device hosting nothing and running nothing gets no package.

namespace iotc {

struct SubscriptionEntry {
  std::string event;
  ScopeSpec scope;
  std::string handler;  // hook fed by this subscription

  friend bool operator==(const SubscriptionEntry& a, const SubscriptionEntry& b) {
    return a.event == b.event && a.scope == b.scope && a.handler == b.handler;
  }
};

struct CommandEntry {
  std::string action;
  ScopeSpec scope;

  friend bool operator==(const CommandEntry& a, const CommandEntry& b) {
    return a.action == b.action && a.scope == b.scope;
  }
};

struct PackagedInstance {
  std::string service_name;
  RegionPath partition_path;
  std::vector<SubscriptionEntry> subscriptions;
  std::vector<std::string> publications;   // event names
  std::vector<CommandEntry> commands;
  std::vector<std::string> requests;       // retrieval names

  friend bool operator==(const PackagedInstance&, const PackagedInstance&) = default;
};

// Bindings carry the capability lists the runtime routes by: which events a
// sensor can emit, which actions an actuator or interface performs, which
// retrievals a storage answers (its responder entries).
struct DriverBinding {
  std::string resource_name;
  std::string interface_name;
  std::string factory_key;
  std::string kind;
  std::vector<std::string> events;
  std::vector<std::string> actions;
  std::vector<std::string> retrievals;

  friend bool operator==(const DriverBinding&, const DriverBinding&) = default;
};

struct DevicePackage {
  std::string device_name;
  std::string platform_type;
  RegionPath region_path;  // full device path, the runtime's routing anchor
  std::vector<DriverBinding> driver_bindings;
  std::vector<PackagedInstance> instances;

  friend bool operator==(const DevicePackage&, const DevicePackage&) = default;
};

inline std::vector<DevicePackage> link(const Architecture& arch, const Deployment& dep,
                                       const Vocabulary& vocab, const MappingOutput& mapping,
                                       const FrameworkManifest& framework) {
  // mapping must cover derive_instances exactly
  auto instances = derive_instances(arch, dep);
  std::map<std::pair<std::string, RegionPath>, const Assignment*> assigned;
  for (const auto& a : mapping.assignments) {
    if (!dep.find_device(a.device_name))
      throw std::runtime_error("E-UNKNOWN-DEVICE: mapping names device '" + a.device_name +
                               "' absent from the deployment");
    assigned[{a.service_name, a.partition_path}] = &a;
  }

  std::map<std::string, const ServiceFramework*> frameworks;
  for (const auto& f : framework.services) frameworks[f.service_name] = &f;

  std::map<std::string, DevicePackage> by_device;
  auto package_of = [&](const DeviceDecl& dev) -> DevicePackage& {
    DevicePackage& p = by_device[dev.name];
    if (p.device_name.empty()) {
      p.device_name = dev.name;
      p.platform_type = dev.platform_type;
      p.region_path = dev.region;
      for (const auto& r : dev.resources) {
        auto ref = vocab.find_resource(r.name);
        if (!ref)
          throw std::runtime_error("E-RESOURCE-UNKNOWN: device '" + dev.name +
                                   "' hosts unknown resource '" + r.name + "'");
        DriverBinding b;
        b.resource_name = r.name;
        b.interface_name = "I" + r.name;
        b.factory_key = factory_key(r.name, dev.platform_type);
        b.kind = to_string(ref->kind);
        switch (ref->kind) {
          case ResourceKind::sensor:
            for (const auto& s : vocab.sensors)
              if (s.name == r.name)
                for (const auto& g : s.generates) b.events.push_back(g.event);
            break;
          case ResourceKind::actuator:
            for (const auto& a : vocab.actuators)
              if (a.name == r.name)
                for (const auto& act : a.actions) b.actions.push_back(act.name);
            break;
          case ResourceKind::storage:
            for (const auto& s : vocab.storages)
              if (s.name == r.name)
                for (const auto& ret : s.retrievals) b.retrievals.push_back(ret.name);
            break;
          case ResourceKind::user_interface:
            for (const auto& u : vocab.user_interfaces)
              if (u.name == r.name)
                for (const auto& act : u.actions) b.actions.push_back(act.name);
            break;
        }
        p.driver_bindings.push_back(std::move(b));
      }
    }
    return p;
  };

  for (const auto& dev : dep.devices)
    if (!dev.resources.empty()) package_of(dev);

  for (const auto& inst : instances) {
    auto it = assigned.find({inst.service_name, inst.partition_path});
    if (it == assigned.end())
      throw std::runtime_error("E-UNMAPPED-INSTANCE: no assignment for " +
                               instance_id(inst.service_name, inst.partition_path));
    const DeviceDecl* dev = dep.find_device(it->second->device_name);
    const ComputationalService* svc = arch.find_service(inst.service_name);
    auto fw = frameworks.find(inst.service_name);
    if (!svc || fw == frameworks.end() ||
        fw->second->abstract_hooks.size() != svc->consumes.size())
      throw std::runtime_error("framework manifest out of date for service '" +
                               inst.service_name + "'");

    PackagedInstance pi;
    pi.service_name = inst.service_name;
    pi.partition_path = inst.partition_path;
    for (size_t k = 0; k < svc->consumes.size(); ++k) {
      const ConsumeClause& c = svc->consumes[k];
      pi.subscriptions.push_back({c.event, c.scope, fw->second->abstract_hooks[k]});
    }
    for (const auto& g : svc->generates) pi.publications.push_back(g.event);
    for (const auto& cmd : svc->commands) pi.commands.push_back({cmd.action, cmd.scope});
    for (const auto& r : svc->requests) pi.requests.push_back(r.retrieval);
    package_of(*dev).instances.push_back(std::move(pi));
  }

  std::vector<DevicePackage> out;
  for (auto& [name, pkg] : by_device) out.push_back(std::move(pkg));
  return out;  // std::map iteration is already sorted by device name
}

inline nlohmann::json package_to_json(const DevicePackage& p) {
  nlohmann::json j;
  j["device"] = p.device_name;
  j["platformType"] = p.platform_type;
  j["regionPath"] = format_path(p.region_path);
  auto drivers = nlohmann::json::array();
  for (const auto& d : p.driver_bindings)
    drivers.push_back({{"resource", d.resource_name},
                       {"interface", d.interface_name},
                       {"factoryKey", d.factory_key},
                       {"kind", d.kind},
                       {"events", d.events},
                       {"actions", d.actions},
                       {"retrievals", d.retrievals}});
  j["driverBindings"] = drivers;
  auto instances = nlohmann::json::array();
  for (const auto& inst : p.instances) {
    nlohmann::json i;
    i["service"] = inst.service_name;
    i["partition"] = format_path(inst.partition_path);
    auto subs = nlohmann::json::array();
    for (const auto& s : inst.subscriptions)
      subs.push_back(
          {{"event", s.event}, {"scope", format_scope(s.scope)}, {"handler", s.handler}});
    i["subscriptionTable"] = subs;
    i["publicationTable"] = inst.publications;
    auto cmds = nlohmann::json::array();
    for (const auto& c : inst.commands)
      cmds.push_back({{"action", c.action}, {"scope", format_scope(c.scope)}});
    i["commandTable"] = cmds;
    i["requestTable"] = inst.requests;
    instances.push_back(std::move(i));
  }
  j["serviceInstances"] = instances;
  return j;
}

inline std::string package_to_string(const DevicePackage& p) {
  return package_to_json(p).dump(2) + "\n";
}

inline DevicePackage package_from_json(const nlohmann::json& j) {
  DevicePackage p;
  p.device_name = j.at("device").get<std::string>();
  p.platform_type = j.at("platformType").get<std::string>();
  p.region_path = parse_path(j.at("regionPath").get<std::string>());
  for (const auto& d : j.at("driverBindings"))
    p.driver_bindings.push_back({d.at("resource").get<std::string>(),
                                 d.at("interface").get<std::string>(),
                                 d.at("factoryKey").get<std::string>(),
                                 d.at("kind").get<std::string>(),
                                 d.at("events").get<std::vector<std::string>>(),
                                 d.at("actions").get<std::vector<std::string>>(),
                                 d.at("retrievals").get<std::vector<std::string>>()});
  for (const auto& i : j.at("serviceInstances")) {
    PackagedInstance inst;
    inst.service_name = i.at("service").get<std::string>();
    inst.partition_path = parse_path(i.at("partition").get<std::string>());
    for (const auto& s : i.at("subscriptionTable"))
      inst.subscriptions.push_back({s.at("event").get<std::string>(),
                                    parse_scope(s.at("scope").get<std::string>()),
                                    s.at("handler").get<std::string>()});
    inst.publications = i.at("publicationTable").get<std::vector<std::string>>();
    for (const auto& c : i.at("commandTable"))
      inst.commands.push_back(
          {c.at("action").get<std::string>(), parse_scope(c.at("scope").get<std::string>())});
    inst.requests = i.at("requestTable").get<std::vector<std::string>>();
    p.instances.push_back(std::move(inst));
  }
  return p;
}

inline DevicePackage package_from_string(const std::string& text) {
  return package_from_json(nlohmann::json::parse(text));
}

inline std::vector<std::string> write_packages(const std::vector<DevicePackage>& packages,
                                               const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create directory '" + out_dir + "': " + ec.message());
  std::vector<std::string> paths;
  for (const auto& p : packages) {
    fs::path file = fs::path(out_dir) / (p.device_name + ".pkg.json");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
    out << package_to_string(p);
    if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
    paths.push_back(file.string());
  }
  return paths;
}

inline std::vector<DevicePackage> read_packages(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().string().size() >= 9 &&
        entry.path().string().rfind(".pkg.json") == entry.path().string().size() - 9)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<DevicePackage> out;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + f.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out.push_back(package_from_string(text));
  }
  return out;
}

}  // namespace iotc
