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

// Acceptance gate: nine checks, one [PASS]/[FAIL] line each, exit 0 only if
// all nine hold. Runs the installed command-line binary for the black-box
// checks and the headers directly for the oracle recomputations.
//
//   acceptance <iotc-binary> <repo-root> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iotc/bundles/bundles.hpp"
#include "iotc/codegen.hpp"
#include "iotc/linker.hpp"
#include "iotc/mapper.hpp"
#include "iotc/metrics.hpp"
#include "iotc/parsers.hpp"
#include "iotc/printer.hpp"
#include "iotc/runtime.hpp"
#include "iotc/scale.hpp"
#include "iotc/templates.hpp"
#include "iotc/validator.hpp"

namespace fs = std::filesystem;
using namespace iotc;

namespace {

std::string g_iotc, g_root, g_scratch;
std::vector<std::string> g_notes;  // failure detail for the current criterion

void note(const std::string& s) { g_notes.push_back(s); }

bool expect(bool ok, const std::string& what) {
  if (!ok) note(what);
  return ok;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    note("cannot read " + path);
    return "";
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

// Concatenated bytes of every regular file under dir, in sorted path order.
std::string dir_bytes(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += f.string() + "\n" + slurp(f.string());
  return all;
}

struct Sources {
  std::string svl, sal, sdl;
};

Sources bundle_sources(const std::string& dir, const std::string& svl, const std::string& sal,
                       const std::string& sdl) {
  std::string base = g_root + "/bundles/" + dir + "/";
  return {base + svl, base + sal, base + sdl};
}

struct Loaded {
  Vocabulary vocab;
  Architecture arch;
  Deployment dep;
};

bool load_triple(const Sources& s, Loaded& out) {
  auto v = parse_vocabulary(slurp(s.svl), fs::path(s.svl).filename().string());
  auto a = parse_architecture(slurp(s.sal), fs::path(s.sal).filename().string());
  auto d = parse_deployment(slurp(s.sdl), fs::path(s.sdl).filename().string());
  if (!expect(v.ok(), "vocabulary parse failed: " + (v.ok() ? "" : v.error->render()))) return false;
  if (!expect(a.ok(), "architecture parse failed: " + (a.ok() ? "" : a.error->render()))) return false;
  if (!expect(d.ok(), "deployment parse failed: " + (d.ok() ? "" : d.error->render()))) return false;
  out = {*v, *a, *d};
  return true;
}

std::vector<TraceRecord> run_scenario(const bundles::Bundle& b, const std::string& scn_path,
                                      std::string* text = nullptr) {
  MappingOutput mapping = map_services(b.architecture, b.deployment, 0);
  FrameworkManifest fm = generate_architecture_framework(b.architecture, b.vocabulary);
  auto packages = link(b.architecture, b.deployment, b.vocabulary, mapping, fm);
  Simulator sim = load(packages, b.registry);
  sim.run(parse_scenario(slurp(scn_path)));
  if (text) *text = sim.trace_text();
  return sim.trace();
}

std::string field_of(const TraceRecord& r, const std::string& key) {
  for (const auto& f : r.fields)
    if (f.rfind(key + "=", 0) == 0) return f.substr(key.size() + 1);
  return "";
}

// -------------------------------------------------------------------------
// 1. Both bundles parse; print then parse reproduces the same structures;
//    parsing stays fast.

bool criterion_parse_roundtrip() {
  auto started = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& s :
       {bundle_sources("smart-building", "building.svl", "smart-building.sal", "building-10.sdl"),
        bundle_sources("fire-detection", "fire.svl", "fire-detection.sal", "fire-10.sdl")}) {
    Loaded l;
    if (!load_triple(s, l)) return false;
    auto v2 = parse_vocabulary(print_vocabulary(l.vocab), "reprint.svl");
    auto a2 = parse_architecture(print_architecture(l.arch), "reprint.sal");
    auto d2 = parse_deployment(print_deployment(l.dep), "reprint.sdl");
    ok &= expect(v2.ok() && *v2 == l.vocab, "vocabulary round-trip drifted (" + s.svl + ")");
    ok &= expect(a2.ok() && *a2 == l.arch, "architecture round-trip drifted (" + s.sal + ")");
    ok &= expect(d2.ok() && *d2 == l.dep, "deployment round-trip drifted (" + s.sdl + ")");
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  started);
  ok &= expect(ms.count() < 1000, "parse suite took " + std::to_string(ms.count()) + "ms");
  return ok;
}

// -------------------------------------------------------------------------
// 2. Each deliberate mutation yields exactly its one diagnostic.

bool criterion_validation_fixtures() {
  const std::pair<const char*, const char*> fixtures[] = {
      {"arch-unknown-event.sal", "E-CONSUME-UNRESOLVED"},
      {"arch-unknown-action.sal", "E-COMMAND-UNRESOLVED"},
      {"arch-bad-scope-label.sal", "E-SCOPE-LABEL"},
      {"dep-unknown-resource.sdl", "E-RESOURCE-UNKNOWN"},
      {"dep-region-order.sdl", "E-REGION-ORDER"},
      {"dep-no-responder.sdl", "E-NO-RESPONDER"},
  };
  Sources good =
      bundle_sources("smart-building", "building.svl", "smart-building.sal", "building-10.sdl");
  bool ok = true;
  for (const auto& [name, code] : fixtures) {
    Sources s = good;
    std::string path = g_root + "/tests/fixtures/" + name;
    (std::string(name).find(".sal") != std::string::npos ? s.sal : s.sdl) = path;
    Loaded l;
    if (!load_triple(s, l)) return false;
    auto diags = validate_all(l.vocab, l.arch, l.dep);
    bool one = diags.size() == 1 && diags[0].code == code;
    if (!one) {
      std::string got;
      for (const auto& d : diags) got += " " + d.code;
      note(std::string(name) + " expected exactly [" + code + "], got [" + got + " ]");
    }
    ok &= one;
  }
  return ok;
}

// -------------------------------------------------------------------------
// 3. Mapping: sound against brute-force eligibility, total, reproducible,
//    and unbiased on a two-device partition.

bool mapping_sound_and_total(const Architecture& arch, const Deployment& dep, std::uint64_t seed,
                             const std::string& label) {
  auto instances = derive_instances(arch, dep);
  MappingOutput m = map_services(arch, dep, seed);
  if (!expect(m.assignments.size() == instances.size(),
              label + ": assignment count " + std::to_string(m.assignments.size()) + " != " +
                  std::to_string(instances.size())))
    return false;
  bool ok = true;
  for (size_t i = 0; i < instances.size(); ++i) {
    const Assignment& a = m.assignments[i];
    ok &= expect(a.service_name == instances[i].service_name &&
                     a.partition_path == instances[i].partition_path,
                 label + ": coverage hole at " +
                     instance_id(instances[i].service_name, instances[i].partition_path));
    const DeviceDecl* dev = dep.find_device(a.device_name);
    if (!expect(dev != nullptr, label + ": unknown device " + a.device_name)) {
      ok = false;
      continue;
    }
    // brute-force eligibility: the device's truncated path equals the partition
    bool eligible = dev->region.size() >= a.partition_path.size() &&
                    dev->region.prefix(a.partition_path.size()) == a.partition_path;
    ok &= expect(eligible, label + ": " + a.device_name + " outside partition " +
                               format_path(a.partition_path));
  }
  return ok;
}

bool criterion_mapping_oracle() {
  auto started = std::chrono::steady_clock::now();
  const auto& b = bundles::smart_building();
  bool ok = mapping_sound_and_total(b.architecture, b.deployment, 7, "10-device");
  Deployment big = generate_scaled_deployment(b.deployment, 110, 0);
  ok &= mapping_sound_and_total(b.architecture, big, 7, "110-device");

  // reproducibility through the binary
  Sources s =
      bundle_sources("smart-building", "building.svl", "smart-building.sal", "building-10.sdl");
  std::string base = g_scratch + "/map-rerun";
  std::vector<std::string> bytes;
  for (int i = 0; i < 3; ++i) {
    std::string out = base + std::to_string(i) + ".json";
    if (!expect(run(g_iotc + " map " + s.svl + " " + s.sal + " " + s.sdl + " --seed 42 --out " +
                    out) == 0,
                "map invocation failed"))
      return false;
    bytes.push_back(slurp(out));
  }
  ok &= expect(bytes[0] == bytes[1] && bytes[1] == bytes[2] && !bytes[0].empty(),
               "mapping JSON differs across reruns");

  // uniformity: one service, one two-device partition, ten thousand seeds
  Architecture arch;
  arch.name = "Bias";
  ComputationalService svc;
  svc.name = "Svc";
  svc.in_region = "A";
  arch.services.push_back(svc);
  Deployment dep;
  dep.name = "bias-2";
  for (const char* n : {"dev-a", "dev-b"}) {
    DeviceDecl d;
    d.name = n;
    d.region.entries = {{"A", 1, {}}};
    d.platform_type = "Sim";
    dep.devices.push_back(d);
  }
  int first = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed)
    if (map_services(arch, dep, seed).assignments[0].device_name == "dev-a") ++first;
  ok &= expect(std::abs(first - 5000) <= 300,
               "draw bias: dev-a picked " + std::to_string(first) + "/10000");

  auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started);
  ok &= expect(secs.count() < 10, "mapping checks took " + std::to_string(secs.count()) + "s");
  return ok;
}

// -------------------------------------------------------------------------
// 4. Routing: the simulator's delivered set equals a brute-force scope
//    evaluation over a 2x3x4-region, 50-device topology.

bool criterion_routing_oracle() {
  auto started = std::chrono::steady_clock::now();
  auto parsed = parse_vocabulary(
      "vocabulary RoutingLab\n"
      "regions {\n  A;\n  B;\n  C;\n}\n"
      "structs {\n  PingStruct {\n    n: integer;\n  }\n}\n"
      "resources {\n"
      "  sensors {\n    Beacon {\n      generate ping: PingStruct;\n    }\n  }\n"
      "}\n",
      "routinglab.svl");
  if (!expect(parsed.ok(), "routing vocabulary failed to parse")) return false;
  HandlerRegistry reg;
  reg.add_vocabulary(*parsed);
  reg.add_driver("Beacon/Sim",
                 [](const DriverBinding&, const DevicePackage&) { return std::make_unique<Driver>(); });

  SplitMix64 rng(2026);
  const char* labels[3] = {"A", "B", "C"};
  std::vector<DevicePackage> pkgs;
  for (int i = 0; i < 50; ++i) {
    DevicePackage p;
    char name[16];
    std::snprintf(name, sizeof name, "dev-%02d", i);
    p.device_name = name;
    p.platform_type = "Sim";
    int cell = i % 24;
    p.region_path.entries = {{"A", cell / 12 + 1, {}},
                             {"B", (cell % 12) / 4 + 1, {}},
                             {"C", cell % 4 + 1, {}}};
    p.driver_bindings.push_back({"Beacon", "IBeacon", "Beacon/Sim", "sensor", {"ping"}, {}, {}});
    pkgs.push_back(std::move(p));
  }
  struct Sub {
    RegionPath partition;
    ScopeSpec scope;
    std::string id;
  };
  std::vector<Sub> subs;
  for (int j = 0; j < 60; ++j) {
    auto& host = pkgs[j % 50];
    size_t depth = 1 + rng.next() % 3;
    PackagedInstance inst;
    inst.service_name = "Svc" + std::to_string(j);
    inst.partition_path = host.region_path.prefix(depth);
    ScopeSpec scope;
    scope.label = labels[rng.next() % depth];
    scope.radius = std::int64_t(rng.next() % 4);
    inst.subscriptions.push_back({"ping", scope, "onNewping"});
    reg.add_handler(inst.service_name, "onNewping", [](HandlerContext&, const EventView&) {});
    subs.push_back({inst.partition_path, scope, instance_id(inst.service_name, inst.partition_path)});
    host.instances.push_back(std::move(inst));
  }

  std::ostringstream scn;
  std::vector<size_t> sources;
  for (int i = 0; i < 1000; ++i) {
    size_t d = rng.next() % 50;
    sources.push_back(d);
    scn << "at " << 1000 + i * 10 << " device " << pkgs[d].device_name << " emit ping n=" << i
        << "\n";
  }
  Simulator sim = load(pkgs, reg);
  sim.run(parse_scenario(scn.str()));

  std::set<std::pair<std::string, std::string>> expected, got;
  for (size_t i = 0; i < sources.size(); ++i)
    for (const auto& sub : subs)
      if (region_distance(sim.packages()[sources[i]].region_path, sub.partition, sub.scope))
        expected.insert({std::to_string(i + 1), sub.id});
  for (const auto& r : sim.trace())
    if (r.kind == "DELIVER") got.insert({field_of(r, "pub"), field_of(r, "to")});

  size_t misses = 0, extras = 0;
  for (const auto& e : expected) misses += !got.count(e);
  for (const auto& e : got) extras += !expected.count(e);
  bool ok = expect(misses == 0 && extras == 0,
                   std::to_string(misses) + " missing and " + std::to_string(extras) +
                       " spurious deliveries against the brute-force matcher");
  auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started);
  ok &= expect(secs.count() < 30, "routing oracle took " + std::to_string(secs.count()) + "s");
  return ok;
}

// -------------------------------------------------------------------------
// 5. Badge narrative end to end, byte-exact against the golden trace.

bool criterion_smart_building() {
  const auto& b = bundles::smart_building();
  std::string text;
  auto trace = run_scenario(b, g_root + "/bundles/smart-building/badge.scn", &text);
  bool ok =
      expect(text == slurp(g_root + "/bundles/smart-building/golden/badge.trace"),
             "trace differs from golden badge.trace");
  int requests = 0, responds = 0, set_temp = 0, off = 0;
  for (const auto& r : trace) {
    requests += r.kind == "REQUEST";
    responds += r.kind == "RESPOND";
    if (r.kind == "ACTUATE" && field_of(r, "action") == "SetTemp")
      set_temp += field_of(r, "args") == "[22.0]" &&
                  field_of(r, "device") == "TemperatureMgmt-Device-1";
    off += r.kind == "ACTUATE" && field_of(r, "action") == "Off";
  }
  ok &= expect(requests == 1 && responds == 1, "expected one request/respond pair");
  ok &= expect(set_temp == 1, "expected one SetTemp(22.0) on the room's heater");
  ok &= expect(off == 1, "expected one Off after the badge disappears");
  return ok;
}

// -------------------------------------------------------------------------
// 6. Fire narrative: conjunction trips every building alarm and interface;
//    either condition alone trips nothing; averages aggregate exactly.

bool criterion_fire_detection() {
  const auto& b = bundles::fire_detection();
  std::string text;
  auto trace = run_scenario(b, g_root + "/bundles/fire-detection/fire.scn", &text);
  bool ok = expect(text == slurp(g_root + "/bundles/fire-detection/golden/fire.trace"),
                   "trace differs from golden fire.trace");
  std::set<std::string> actuated, notified;
  for (const auto& r : trace) {
    if (r.kind == "ACTUATE") actuated.insert(field_of(r, "device"));
    if (r.kind == "NOTIFY") notified.insert(field_of(r, "device"));
  }
  ok &= expect(actuated == std::set<std::string>{"Alarm-Device-1", "Alarm-Device-2"},
               "alarms actuated are not exactly the fire building's");
  ok &= expect(notified == std::set<std::string>{"Resident-Device-1"},
               "interfaces notified are not exactly the fire building's");

  auto lone = run_scenario(b, g_root + "/bundles/fire-detection/no-fire.scn");
  for (const auto& r : lone)
    ok &= expect(r.kind != "ACTUATE" && r.kind != "COMMAND" && r.kind != "NOTIFY",
                 "single condition actuated " + render_trace_record(r));

  auto avg = run_scenario(b, g_root + "/bundles/fire-detection/avg.scn");
  double floor_avg = 0.0;
  bool seen = false;
  for (const auto& r : avg)
    if (r.kind == "PUBLISH" && field_of(r, "topic") == "floorAvgTempMeasurement") {
      std::string payload = field_of(r, "payload");
      size_t at = payload.find("tempValue=");
      floor_avg = std::stod(payload.substr(at + 10));
      seen = true;
    }
  ok &= expect(seen && std::fabs(floor_avg - 22.0) <= 1e-9,
               "floor average " + std::to_string(floor_avg) + " != 22.0 for rooms {20.0, 24.0}");
  return ok;
}

// -------------------------------------------------------------------------
// 7. Deployment emitter line law and the generated-versus-handwritten ratio.

size_t recount_lines(const std::string& text) {
  // independent recount: a line counts unless blank or opening with # or //
  size_t n = 0;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    if (line.compare(i, 2, "//") == 0) continue;
    ++n;
  }
  return n;
}

bool criterion_line_counts() {
  const auto& b = bundles::smart_building();
  const std::pair<int, size_t> law[] = {{10, 81},   {34, 273},  {50, 401},  {62, 497},
                                        {86, 689},  {110, 881}, {200, 1601}, {300, 2401},
                                        {350, 2801}, {500, 4001}};
  bool ok = true;
  size_t vocab_lines = recount_lines(b.svl_text);
  size_t arch_lines = recount_lines(b.sal_text);
  size_t logic_lines = recount_lines(b.logic_text);
  for (const auto& [n, want] : law) {
    std::string text = n == int(b.deployment.devices.size())
                           ? b.sdl_text
                           : print_deployment(generate_scaled_deployment(b.deployment, n, 0));
    size_t got = recount_lines(text);
    ok &= expect(got == want, "deployment lines for n=" + std::to_string(n) + ": got " +
                                  std::to_string(got) + ", want " + std::to_string(want));
    // the other handwritten columns never vary with deployment size
    ok &= expect(recount_lines(b.svl_text) == vocab_lines &&
                     recount_lines(b.sal_text) == arch_lines &&
                     recount_lines(b.logic_text) == logic_lines,
                 "handwritten columns drifted at n=" + std::to_string(n));
  }

  for (const char* name : {"smart-building", "fire-detection"}) {
    const auto& bundle = *bundles::find_bundle(name);
    MappingOutput mapping = map_services(bundle.architecture, bundle.deployment, 0);
    FrameworkManifest fm = generate_architecture_framework(bundle.architecture, bundle.vocabulary);
    DriverManifest dm = generate_vocabulary_framework(bundle.vocabulary);
    auto packages = link(bundle.architecture, bundle.deployment, bundle.vocabulary, mapping, fm);
    GeneratedArtifacts gen;
    gen.manifests = {framework_to_json(fm).dump(2) + "\n", driver_to_json(dm).dump(2) + "\n"};
    gen.scaffolds = render_scaffolds(fm, dm, "neutral");
    for (const auto& p : packages) gen.packages.push_back(package_to_string(p));
    MetricsRow row = count_generated_vs_handwritten(bundle.svl_text, bundle.sal_text,
                                                    bundle.sdl_text, bundle.logic_text, gen);
    ok &= expect(row.ratio() >= 0.80, std::string(name) + " ratio " + std::to_string(row.ratio()) +
                                          " below 0.80");

    size_t hand = recount_lines(bundle.svl_text) + recount_lines(bundle.sal_text) +
                  recount_lines(bundle.sdl_text) + recount_lines(bundle.logic_text);
    size_t gen_lines = 0;
    for (const auto& m : gen.manifests) gen_lines += recount_lines(m);
    for (const auto& [p, t] : gen.scaffolds) gen_lines += recount_lines(t);
    for (const auto& p : gen.packages) gen_lines += recount_lines(p);
    double recount = double(gen_lines) / double(gen_lines + hand);
    ok &= expect(std::fabs(recount - row.ratio()) < 1e-12,
                 std::string(name) + " ratio disagrees with the independent recount");
  }
  return ok;
}

// -------------------------------------------------------------------------
// 8. Evolution: dropping one consume retires exactly its hook and keeps all
//    other previously written logic valid.

bool criterion_evolution() {
  const auto& b = bundles::smart_building();
  FrameworkManifest before = generate_architecture_framework(b.architecture, b.vocabulary);

  Architecture after_arch = b.architecture;
  bool erased = false;
  for (auto& svc : after_arch.services)
    if (svc.name == "Proximity")
      for (auto it = svc.consumes.begin(); it != svc.consumes.end(); ++it)
        if (it->event == "badgeDisappeared") {
          svc.consumes.erase(it);
          erased = true;
          break;
        }
  if (!expect(erased, "Proximity no longer consumes badgeDisappeared")) return false;

  FrameworkManifest after = generate_architecture_framework(after_arch, b.vocabulary);
  EvolutionReport report = diff_frameworks(before, after, {});

  bool ok = expect(report.removed_hooks ==
                       std::vector<HookKey>{{"Proximity", "onNewbadgeDisappeared"}},
                   "removed hooks are not exactly Proximity.onNewbadgeDisappeared");
  ok &= expect(report.added_hooks.empty(), "unexpected added hooks");
  std::vector<HookKey> want_unchanged;
  for (const auto& h : all_hooks(before))
    if (h != HookKey{"Proximity", "onNewbadgeDisappeared"}) want_unchanged.push_back(h);
  ok &= expect(report.unchanged_hooks == want_unchanged,
               "unchanged hooks do not cover every other prior hook");
  return ok;
}

// -------------------------------------------------------------------------
// 9. The binary's map, generate, link and simulate are byte-deterministic
//    across three consecutive runs.

bool criterion_cli_determinism() {
  Sources s =
      bundle_sources("smart-building", "building.svl", "smart-building.sal", "building-10.sdl");
  std::string files = s.svl + " " + s.sal + " " + s.sdl;
  bool ok = true;
  std::vector<std::string> maps, gens, links, traces;
  for (int i = 0; i < 3; ++i) {
    std::string dir = g_scratch + "/det" + std::to_string(i);
    fs::remove_all(dir);
    fs::create_directories(dir);
    if (!expect(run(g_iotc + " map " + files + " --seed 9 --out " + dir + "/mapping.json") == 0,
                "map run failed") ||
        !expect(run(g_iotc + " generate " + s.svl + " " + s.sal + " --out " + dir + "/gen") == 0,
                "generate run failed") ||
        !expect(run(g_iotc + " link " + files + " " + dir + "/mapping.json --out " + dir +
                    "/pkgs") == 0,
                "link run failed") ||
        !expect(run(g_iotc + " simulate --packages " + dir + "/pkgs --app smart-building" +
                    " --scenario " + g_root + "/bundles/smart-building/badge.scn --trace " + dir +
                    "/run.trace --seed 5") == 0,
                "simulate run failed"))
      return false;
    maps.push_back(slurp(dir + "/mapping.json"));
    gens.push_back(dir_bytes(dir + "/gen"));
    links.push_back(dir_bytes(dir + "/pkgs"));
    traces.push_back(slurp(dir + "/run.trace"));
  }
  // strip the per-run directory prefix before comparing tree bytes
  for (int i = 0; i < 3; ++i) {
    std::string prefix = g_scratch + "/det" + std::to_string(i);
    for (std::string* t : {&gens[i], &links[i]}) {
      std::string cleaned;
      std::istringstream is(*t);
      std::ostringstream os;
      os << is.rdbuf();
      cleaned = os.str();
      size_t pos = 0;
      while ((pos = cleaned.find(prefix, 0)) != std::string::npos)
        cleaned.erase(pos, prefix.size());
      *t = cleaned;
    }
  }
  ok &= expect(maps[0] == maps[1] && maps[1] == maps[2] && !maps[0].empty(),
               "map output differs across runs");
  ok &= expect(gens[0] == gens[1] && gens[1] == gens[2] && !gens[0].empty(),
               "generate output differs across runs");
  ok &= expect(links[0] == links[1] && links[1] == links[2] && !links[0].empty(),
               "link output differs across runs");
  ok &= expect(traces[0] == traces[1] && traces[1] == traces[2] && !traces[0].empty(),
               "simulate trace differs across runs");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <iotc-binary> <repo-root> <scratch-dir>\n";
    return 2;
  }
  g_iotc = argv[1];
  g_root = argv[2];
  g_scratch = argv[3];
  fs::create_directories(g_scratch);

  const std::pair<const char*, bool (*)()> criteria[] = {
      {"1. bundles parse and print/parse is a fixpoint, under one second", criterion_parse_roundtrip},
      {"2. each mutation fixture yields exactly its diagnostic", criterion_validation_fixtures},
      {"3. mapping is sound, total, reproducible and unbiased", criterion_mapping_oracle},
      {"4. routing equals the brute-force scope matcher", criterion_routing_oracle},
      {"5. badge narrative matches the golden trace", criterion_smart_building},
      {"6. fire narrative: conjunction alarms, lone conditions stay quiet", criterion_fire_detection},
      {"7. deployment line law and generated-code ratio hold", criterion_line_counts},
      {"8. dropping a consume retires exactly its hook", criterion_evolution},
      {"9. map/generate/link/simulate are byte-deterministic", criterion_cli_determinism},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    g_notes.clear();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) {
      ++failures;
      for (const auto& n : g_notes) std::cout << "       " << n << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
