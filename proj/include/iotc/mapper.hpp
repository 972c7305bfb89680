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
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "iotc/model.hpp"

// Service placement. Every service instance derived from the architecture and
// deployment is assigned one device inside its partition, chosen uniformly by
// a seeded generator, so a (inputs, seed) pair always reproduces the same
// placement. Region bookkeeping keys on full truncated paths, never on bare
// region values; room 1 on floor 11 and room 1 on floor 12 stay distinct.

namespace iotc {

// splitmix64. Chosen over xorshift variants because a zero seed is a valid
// input, and the recurrence is small enough to restate in another language
// from the docs. One draw per instance, consumed in derive_instances order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

struct RegionIndex {
  // label name → every truncated path ending at that label
  std::map<std::string, std::set<RegionPath>> region_map;
  // truncated path → devices whose full path starts with it, sorted by name
  std::map<RegionPath, std::vector<std::string>> device_list_by_path;
};

inline RegionIndex build_region_index(const Deployment& dep) {
  RegionIndex idx;
  for (const auto& dev : dep.devices) {
    for (size_t len = 1; len <= dev.region.size(); ++len) {
      RegionPath p = dev.region.prefix(len);
      idx.region_map[p.entries.back().label].insert(p);
      idx.device_list_by_path[p].push_back(dev.name);
    }
  }
  for (auto& [path, names] : idx.device_list_by_path)
    std::sort(names.begin(), names.end());
  return idx;
}

inline MappingOutput map_services(const Architecture& arch, const Deployment& dep,
                                  std::uint64_t seed) {
  RegionIndex idx = build_region_index(dep);
  SplitMix64 rng(seed);
  MappingOutput out;
  out.seed = seed;
  for (const auto& inst : derive_instances(arch, dep)) {
    auto it = idx.device_list_by_path.find(inst.partition_path);
    if (it == idx.device_list_by_path.end() || it->second.empty())
      throw std::runtime_error("E-EMPTY-PARTITION: no device in partition " +
                               format_path(inst.partition_path) + " for service '" +
                               inst.service_name + "'");
    const std::vector<std::string>& candidates = it->second;
    std::uint64_t pick = rng.next() % candidates.size();
    out.assignments.push_back({inst.service_name, inst.partition_path, candidates[size_t(pick)]});
  }
  return out;
}

// Canonical document: 2-space indentation, keys sorted, trailing newline.
// Assignment order matches derive_instances, which is already sorted by
// (service name, partition path); the device adds nothing since each
// (service, partition) pair appears once.
inline nlohmann::json mapping_to_json(const MappingOutput& m) {
  nlohmann::json j;
  j["seed"] = m.seed;
  auto arr = nlohmann::json::array();
  for (const auto& a : m.assignments) {
    nlohmann::json e;
    e["service"] = a.service_name;
    e["partition"] = format_path(a.partition_path);
    e["device"] = a.device_name;
    arr.push_back(e);
  }
  j["assignments"] = arr;
  return j;
}

inline std::string mapping_to_string(const MappingOutput& m) {
  return mapping_to_json(m).dump(2) + "\n";
}

inline MappingOutput mapping_from_json(const nlohmann::json& j) {
  MappingOutput m;
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& e : j.at("assignments")) {
    Assignment a;
    a.service_name = e.at("service").get<std::string>();
    a.partition_path = parse_path(e.at("partition").get<std::string>());
    a.device_name = e.at("device").get<std::string>();
    m.assignments.push_back(std::move(a));
  }
  return m;
}

inline MappingOutput mapping_from_string(const std::string& text) {
  return mapping_from_json(nlohmann::json::parse(text));
}

// Aligned text table: one row per assignment plus how many devices were in
// the draw, so a surprising placement can be checked by eye.
inline std::string explain_mapping(const MappingOutput& m, const Deployment& dep) {
  RegionIndex idx = build_region_index(dep);
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"instance", "partition", "device", "candidates"});
  for (const auto& a : m.assignments) {
    auto it = idx.device_list_by_path.find(a.partition_path);
    size_t n = it == idx.device_list_by_path.end() ? 0 : it->second.size();
    rows.push_back({instance_id(a.service_name, a.partition_path), format_path(a.partition_path),
                    a.device_name, std::to_string(n)});
  }
  std::array<size_t, 4> width{};
  for (const auto& r : rows)
    for (size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  os << "seed: " << m.seed << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < 4; ++i) {
      os << r[i];
      if (i + 1 < 4) os << std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace iotc
