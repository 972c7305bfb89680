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

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "iotc/mapper.hpp"
#include "iotc/parsers.hpp"

using namespace iotc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string kRoot = IOTC_REPO_ROOT;

Architecture smart_arch() {
  auto a = parse_architecture(slurp(kRoot + "/bundles/smart-building/smart-building.sal"),
                              "smart-building.sal");
  REQUIRE(a.ok());
  return *a;
}

Deployment smart_dep() {
  auto d = parse_deployment(slurp(kRoot + "/bundles/smart-building/building-10.sdl"),
                            "building-10.sdl");
  REQUIRE(d.ok());
  return *d;
}

// Independent of RegionIndex and RegionPath::prefix: walks raw entries.
bool oracle_eligible(const DeviceDecl& dev, const RegionPath& partition) {
  if (partition.entries.size() > dev.region.entries.size()) return false;
  for (size_t i = 0; i < partition.entries.size(); ++i) {
    if (dev.region.entries[i].label != partition.entries[i].label) return false;
    if (dev.region.entries[i].value != partition.entries[i].value) return false;
  }
  return true;
}

std::vector<std::string> oracle_candidates(const Deployment& dep, const RegionPath& partition) {
  std::vector<std::string> out;
  for (const auto& dev : dep.devices)
    if (oracle_eligible(dev, partition)) out.push_back(dev.name);
  std::sort(out.begin(), out.end());
  return out;
}

// Minimal room-partitioned system over the smart-building vocabulary, with
// exactly two interchangeable devices in one room.
const char* kPairArch =
    "architecture Pair uses BuildingAutomation\n"
    "computationalService RoomAvg {\n"
    "  consume tempMeasurement from hops:0:Room;\n"
    "  generate roomAvgTempMeasurement: TempStruct;\n"
    "  in-region: Room;\n"
    "}\n";

const char* kPairDep =
    "deployment Pair uses BuildingAutomation\n"
    "device Left {\n"
    "  region {\n"
    "    Building: 1; Floor: 1; Room: 1;\n"
    "  }\n"
    "  resources { TemperatureSensor }\n"
    "  type: JavaSE;\n"
    "  mobile: false;\n"
    "}\n"
    "device Right {\n"
    "  region {\n"
    "    Building: 1; Floor: 1; Room: 1;\n"
    "  }\n"
    "  resources { TemperatureSensor }\n"
    "  type: JavaSE;\n"
    "  mobile: false;\n"
    "}\n";

std::string synthetic_deployment(int devices) {
  std::ostringstream os;
  os << "deployment Scale uses BuildingAutomation\n";
  for (int i = 0; i < devices; ++i) {
    os << "device Dev-" << i << " {\n  region {\n    Building: " << i % 2 + 1
       << "; Floor: " << i % 3 + 1 << "; Room: " << i % 4 + 1
       << ";\n  }\n  resources { TemperatureSensor, Heater }\n  type: JavaSE;\n"
          "  mobile: false;\n}\n";
  }
  return os.str();
}

}  // namespace

TEST_CASE("region index covers every prefix of a device") {
  auto d = parse_deployment("deployment D uses BuildingAutomation\n"
                            "device X {\n"
                            "  region {\n"
                            "    Building: 15; Floor: 11; Room: 1;\n"
                            "  }\n"
                            "  resources { TemperatureSensor }\n"
                            "  type: JavaSE;\n"
                            "  mobile: false;\n"
                            "}\n",
                            "t.sdl");
  REQUIRE(d.ok());
  RegionIndex idx = build_region_index(*d);
  REQUIRE(idx.device_list_by_path.size() == 3);
  for (const auto& [path, names] : idx.device_list_by_path) {
    CHECK(names == std::vector<std::string>{"X"});
  }
  CHECK(idx.device_list_by_path.count(parse_path("Building:15")) == 1);
  CHECK(idx.device_list_by_path.count(parse_path("Building:15/Floor:11")) == 1);
  CHECK(idx.device_list_by_path.count(parse_path("Building:15/Floor:11/Room:1")) == 1);
  CHECK(idx.region_map["Building"].size() == 1);
  CHECK(idx.region_map["Floor"].size() == 1);
  CHECK(idx.region_map["Room"].size() == 1);
}

TEST_CASE("room level index entries partition the devices") {
  Deployment dep = smart_dep();
  RegionIndex idx = build_region_index(dep);
  // Four distinct rooms in the shipped deployment.
  CHECK(idx.region_map["Room"].size() == 4);
  size_t total = 0;
  for (const auto& room : idx.region_map["Room"]) {
    const auto& names = idx.device_list_by_path.at(room);
    CHECK(names == oracle_candidates(dep, room));
    total += names.size();
  }
  CHECK(total == dep.devices.size());
  CHECK(idx.device_list_by_path.at(parse_path("Building:15")).size() == dep.devices.size());
}

TEST_CASE("mapping is complete sound and deterministic") {
  Architecture arch = smart_arch();
  Deployment dep = smart_dep();
  auto instances = derive_instances(arch, dep);

  MappingOutput m = map_services(arch, dep, 42);
  REQUIRE(m.assignments.size() == instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    const Assignment& a = m.assignments[i];
    CHECK(a.service_name == instances[i].service_name);
    CHECK(a.partition_path == instances[i].partition_path);
    auto eligible = oracle_candidates(dep, a.partition_path);
    CHECK(std::find(eligible.begin(), eligible.end(), a.device_name) != eligible.end());
  }

  CHECK(mapping_to_string(m) == mapping_to_string(map_services(arch, dep, 42)));
  CHECK(m == map_services(arch, dep, 42));
}

TEST_CASE("room partitioned instances land inside their room") {
  Architecture arch = smart_arch();
  Deployment dep = smart_dep();
  RegionPath room = parse_path("Building:15/Floor:11/Room:1");
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 1234567ull}) {
    MappingOutput m = map_services(arch, dep, seed);
    bool found = false;
    for (const auto& a : m.assignments) {
      if (a.service_name != "RoomController" || !(a.partition_path == room)) continue;
      found = true;
      const DeviceDecl* dev = dep.find_device(a.device_name);
      REQUIRE(dev != nullptr);
      CHECK(oracle_eligible(*dev, room));
    }
    CHECK(found);
  }
}

TEST_CASE("a single candidate wins regardless of seed") {
  auto a = parse_architecture(kPairArch, "t.sal");
  REQUIRE(a.ok());
  auto d = parse_deployment("deployment Solo uses BuildingAutomation\n"
                            "device Only {\n"
                            "  region {\n"
                            "    Building: 1; Floor: 1; Room: 1;\n"
                            "  }\n"
                            "  resources { TemperatureSensor }\n"
                            "  type: JavaSE;\n"
                            "  mobile: false;\n"
                            "}\n",
                            "t.sdl");
  REQUIRE(d.ok());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MappingOutput m = map_services(*a, *d, seed);
    REQUIRE(m.assignments.size() == 1);
    CHECK(m.assignments[0].device_name == "Only");
  }
}

TEST_CASE("two candidates split evenly over many seeds") {
  auto a = parse_architecture(kPairArch, "t.sal");
  auto d = parse_deployment(kPairDep, "t.sdl");
  REQUIRE(a.ok());
  REQUIRE(d.ok());
  int left = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    MappingOutput m = map_services(*a, *d, seed);
    REQUIRE(m.assignments.size() == 1);
    if (m.assignments[0].device_name == "Left") ++left;
  }
  CHECK(left >= 4700);
  CHECK(left <= 5300);
}

TEST_CASE("mapping serializes canonically and round-trips") {
  MappingOutput m = map_services(smart_arch(), smart_dep(), 7);
  std::string text = mapping_to_string(m);
  CHECK(text.back() == '\n');
  CHECK(text.find("  \"assignments\"") != std::string::npos);
  CHECK(text.find("\"seed\": 7") != std::string::npos);
  CHECK(mapping_from_string(text) == m);

  // Assignments appear sorted by (service, partition).
  auto j = nlohmann::json::parse(text);
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& e : j["assignments"])
    keys.emplace_back(e["service"].get<std::string>(), e["partition"].get<std::string>());
  auto sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  CHECK(keys == sorted);
}

TEST_CASE("mapping report lists every assignment with its candidate count") {
  Architecture arch = smart_arch();
  Deployment dep = smart_dep();
  MappingOutput m = map_services(arch, dep, 42);
  std::string report = explain_mapping(m, dep);

  size_t lines = 0;
  for (char c : report)
    if (c == '\n') ++lines;
  CHECK(lines == m.assignments.size() + 2);  // seed line + header

  std::istringstream is(report);
  std::string line;
  std::getline(is, line);  // seed
  CHECK(line == "seed: 42");
  std::getline(is, line);  // header
  size_t row = 0;
  while (std::getline(is, line)) {
    const Assignment& a = m.assignments[row++];
    CHECK(line.find(instance_id(a.service_name, a.partition_path)) != std::string::npos);
    CHECK(line.find(a.device_name) != std::string::npos);
    auto want = std::to_string(oracle_candidates(dep, a.partition_path).size());
    CHECK(line.substr(line.find_last_of(' ') + 1) == want);
  }
  CHECK(row == m.assignments.size());
}

TEST_CASE("mapping time grows tamely with device count") {
  Architecture arch = smart_arch();
  auto d1 = parse_deployment(synthetic_deployment(200), "s1.sdl");
  auto d2 = parse_deployment(synthetic_deployment(400), "s2.sdl");
  REQUIRE(d1.ok());
  REQUIRE(d2.ok());

  auto time_runs = [&](const Deployment& dep) {
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 20; ++i) {
      MappingOutput m = map_services(arch, dep, std::uint64_t(i));
      REQUIRE_FALSE(m.assignments.empty());
    }
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  double t1 = time_runs(*d1);
  double t2 = time_runs(*d2);
  CHECK(t2 < t1 * 3.0 + 50.0);
}
