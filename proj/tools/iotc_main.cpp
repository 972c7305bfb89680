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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

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

// Exit codes: 0 clean, 1 diagnostics with errors (parse, validation, runtime
// faults), 2 usage (bad flags, unreadable inputs, unknown names), 3 internal.

namespace {

struct UsageFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Diagnostics were already printed; nothing to add at the top level.
struct ReportedFail : DomainFail {
  ReportedFail() : DomainFail("") {}
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFail("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw DomainFail("cannot create directory '" + p.parent_path().string() + "'");
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw DomainFail("cannot write '" + path + "'");
}

struct System {
  iotc::Vocabulary vocab;
  iotc::Architecture arch;
  iotc::Deployment dep;
};

// Parses the specification triple, reporting every file's parse error before
// giving up so a broken bundle surfaces in one run.
System parse_system(const std::string& svl, const std::string& sal, const std::string& sdl) {
  System sys;
  auto v = iotc::parse_vocabulary(slurp(svl), svl);
  auto a = iotc::parse_architecture(slurp(sal), sal);
  auto d = iotc::parse_deployment(slurp(sdl), sdl);
  bool bad = false;
  for (const auto* e : {v.ok() ? nullptr : &*v.error, a.ok() ? nullptr : &*a.error,
                        d.ok() ? nullptr : &*d.error})
    if (e) {
      std::cerr << e->render() << "\n";
      bad = true;
    }
  if (bad) throw ReportedFail();
  sys.vocab = *v;
  sys.arch = *a;
  sys.dep = *d;
  return sys;
}

// Prints every diagnostic; returns whether errors were among them.
bool report(const std::vector<iotc::Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << iotc::render_diagnostic(d) << "\n";
  return iotc::has_errors(ds);
}

System checked_system(const std::string& svl, const std::string& sal, const std::string& sdl) {
  System sys = parse_system(svl, sal, sdl);
  if (report(iotc::validate_all(sys.vocab, sys.arch, sys.dep)))
    throw ReportedFail();
  return sys;
}

const iotc::bundles::Bundle& bundle_or_die(const std::string& name) {
  const iotc::bundles::Bundle* b = iotc::bundles::find_bundle(name);
  if (!b)
    throw UsageFail("unknown application bundle '" + name +
                    "' (shipped: smart-building, fire-detection)");
  return *b;
}

int run_check(const std::string& svl, const std::string& sal, const std::string& sdl) {
  System sys = parse_system(svl, sal, sdl);
  return report(iotc::validate_all(sys.vocab, sys.arch, sys.dep)) ? 1 : 0;
}

int run_map(const std::string& svl, const std::string& sal, const std::string& sdl,
            std::uint64_t seed, const std::string& out) {
  System sys = checked_system(svl, sal, sdl);
  spill(out, iotc::mapping_to_string(iotc::map_services(sys.arch, sys.dep, seed)));
  return 0;
}

int run_generate(const std::string& svl, const std::string& sal, const std::string& set_name,
                 const std::string& out_dir) {
  auto v = iotc::parse_vocabulary(slurp(svl), svl);
  auto a = iotc::parse_architecture(slurp(sal), sal);
  bool bad = false;
  for (const auto* e : {v.ok() ? nullptr : &*v.error, a.ok() ? nullptr : &*a.error})
    if (e) {
      std::cerr << e->render() << "\n";
      bad = true;
    }
  if (bad) return 1;
  if (report(iotc::validate_architecture(*a, *v))) return 1;
  if (!iotc::template_sets().count(set_name))
    throw UsageFail("unknown template set '" + set_name + "'");

  iotc::FrameworkManifest fm = iotc::generate_architecture_framework(*a, *v);
  iotc::DriverManifest dm = iotc::generate_vocabulary_framework(*v);
  namespace fs = std::filesystem;
  spill((fs::path(out_dir) / "framework.json").string(), iotc::framework_to_json(fm).dump(2) + "\n");
  spill((fs::path(out_dir) / "drivers.json").string(), iotc::driver_to_json(dm).dump(2) + "\n");
  for (const auto& [rel, text] : iotc::render_scaffolds(fm, dm, set_name))
    spill((fs::path(out_dir) / rel).string(), text);
  return 0;
}

int run_link(const std::string& svl, const std::string& sal, const std::string& sdl,
             const std::string& mapping_file, const std::string& out_dir) {
  System sys = checked_system(svl, sal, sdl);
  iotc::MappingOutput mapping = iotc::mapping_from_string(slurp(mapping_file));
  iotc::FrameworkManifest fm = iotc::generate_architecture_framework(sys.arch, sys.vocab);
  auto packages = iotc::link(sys.arch, sys.dep, sys.vocab, mapping, fm);
  iotc::write_packages(packages, out_dir);
  return 0;
}

int run_simulate(const std::string& pkg_dir, const std::string& app, const std::string& scn_file,
                 const std::string& trace_file, std::uint64_t seed) {
  const iotc::bundles::Bundle& bundle = bundle_or_die(app);
  auto packages = iotc::read_packages(pkg_dir);
  if (packages.empty()) throw UsageFail("no .pkg.json files under '" + pkg_dir + "'");
  iotc::Simulator sim = iotc::load(packages, bundle.registry);
  sim.run(iotc::parse_scenario(slurp(scn_file)), seed);
  spill(trace_file, sim.trace_text());
  return 0;
}

int run_metrics(const std::string& name, std::uint64_t devices) {
  const iotc::bundles::Bundle& bundle = bundle_or_die(name);
  if (devices == 0) throw UsageFail("--devices must be positive");

  iotc::Deployment dep = bundle.deployment;
  std::string sdl_text = bundle.sdl_text;
  if (devices != bundle.deployment.devices.size()) {
    dep = iotc::generate_scaled_deployment(bundle.deployment, int(devices), 0);
    sdl_text = iotc::print_deployment(dep);
  }

  iotc::MappingOutput mapping = iotc::map_services(bundle.architecture, dep, 0);
  iotc::FrameworkManifest fm = iotc::generate_architecture_framework(bundle.architecture, bundle.vocabulary);
  iotc::DriverManifest dm = iotc::generate_vocabulary_framework(bundle.vocabulary);
  auto packages = iotc::link(bundle.architecture, dep, bundle.vocabulary, mapping, fm);

  iotc::GeneratedArtifacts gen;
  gen.manifests = {iotc::framework_to_json(fm).dump(2) + "\n", iotc::driver_to_json(dm).dump(2) + "\n"};
  gen.scaffolds = iotc::render_scaffolds(fm, dm, "neutral");
  for (const auto& p : packages) gen.packages.push_back(iotc::package_to_string(p));

  iotc::MetricsRow row = iotc::count_generated_vs_handwritten(bundle.svl_text, bundle.sal_text,
                                                              sdl_text, bundle.logic_text, gen);
  std::cout << iotc::render_metrics_row(name, size_t(devices), row);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DSL compiler, placement mapper, package linker and simulator for sensing apps"};
  app.require_subcommand(1);
  int rc = 0;

  std::string svl, sal, sdl, mapping_file, out, pkg_dir, bundle, scn_file, trace_file;
  std::string templates = "neutral";
  std::uint64_t seed = 0;
  std::uint64_t devices = 10;

  auto* check = app.add_subcommand("check", "Parse and validate a specification triple");
  check->add_option("vocabulary", svl, "vocabulary file (.svl)")->required();
  check->add_option("architecture", sal, "architecture file (.sal)")->required();
  check->add_option("deployment", sdl, "deployment file (.sdl)")->required();
  check->callback([&] { rc = run_check(svl, sal, sdl); });

  auto* map = app.add_subcommand("map", "Assign service instances to devices");
  map->add_option("vocabulary", svl)->required();
  map->add_option("architecture", sal)->required();
  map->add_option("deployment", sdl)->required();
  map->add_option("--seed", seed, "placement seed (default 0)");
  map->add_option("--out", out, "mapping JSON output path")->required();
  map->callback([&] { rc = run_map(svl, sal, sdl, seed, out); });

  auto* gen = app.add_subcommand("generate", "Emit framework manifests and scaffolds");
  gen->add_option("vocabulary", svl)->required();
  gen->add_option("architecture", sal)->required();
  gen->add_option("--templates", templates, "template set (default neutral)");
  gen->add_option("--out", out, "output directory")->required();
  gen->callback([&] { rc = run_generate(svl, sal, templates, out); });

  auto* link = app.add_subcommand("link", "Produce per-device runnable packages");
  link->add_option("vocabulary", svl)->required();
  link->add_option("architecture", sal)->required();
  link->add_option("deployment", sdl)->required();
  link->add_option("mapping", mapping_file, "mapping JSON from 'map'")->required();
  link->add_option("--out", out, "package output directory")->required();
  link->callback([&] { rc = run_link(svl, sal, sdl, mapping_file, out); });

  auto* sim = app.add_subcommand("simulate", "Run a scenario against linked packages");
  sim->add_option("--packages", pkg_dir, "directory of .pkg.json files")->required();
  sim->add_option("--app", bundle, "application bundle providing handlers and drivers")->required();
  sim->add_option("--scenario", scn_file, "scenario script (.scn)")->required();
  sim->add_option("--trace", trace_file, "trace output path")->required();
  sim->add_option("--seed", seed, "run seed, recorded for reproducibility (default 0)");
  sim->callback([&] { rc = run_simulate(pkg_dir, bundle, scn_file, trace_file, seed); });

  auto* met = app.add_subcommand("metrics", "Report handwritten versus generated line counts");
  met->add_option("--bundle", bundle, "application bundle name")->required();
  met->add_option("--devices", devices, "deployment size (default 10, the shipped file)");
  met->callback([&] { rc = run_metrics(bundle, devices); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageFail& e) {
    std::cerr << "iotc: " << e.what() << "\n";
    return 2;
  } catch (const ReportedFail&) {
    return 1;
  } catch (const DomainFail& e) {
    std::cerr << "iotc: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "iotc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "iotc: internal: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
