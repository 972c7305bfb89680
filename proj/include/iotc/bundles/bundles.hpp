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
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "iotc/bundles/fire_detection_logic.hpp"
#include "iotc/bundles/smart_building_logic.hpp"
#include "iotc/parsers.hpp"
#include "iotc/runtime.hpp"
#include "iotc_embedded.hpp"

// The two shipped applications, assembled from their embedded sources: parsed
// specifications, handler registrations, and simulated drivers for every
// resource/platform pair their deployments use. Handlers live in the
// *_logic.hpp headers; everything here is substrate.

namespace iotc::bundles {

// Answers profile lookups from tab-separated "badgeID<TAB>preferredTemp"
// lines. Unknown badges get a neutral default rather than an error, the way
// a profile service would treat a first-time visitor.
class ProfileStore : public Driver {
 public:
  static constexpr double kDefaultPref = 21.0;

  explicit ProfileStore(const std::string& tsv) {
    std::istringstream is(tsv);
    for (std::string line; std::getline(is, line);) {
      size_t tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) continue;
      prefs_[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    }
  }

  Payload query(const std::string& retrieval, const Value& key) override {
    if (retrieval != "profile")
      throw std::runtime_error("profile store cannot answer '" + retrieval + "'");
    auto it = prefs_.find(key.str);
    double pref = it == prefs_.end() ? kDefaultPref : it->second;
    return {{"badgeID", Value::string(key.str)}, {"preferredTemp", Value::real(pref)}};
  }

 private:
  std::map<std::string, double> prefs_;
};

struct Bundle {
  std::string name;
  Vocabulary vocabulary;
  Architecture architecture;
  Deployment deployment;
  std::string svl_text, sal_text, sdl_text, logic_text;
  HandlerRegistry registry;
};

namespace detail {

template <typename T>
inline T parsed_or_die(const Parsed<T>& p) {
  if (!p.ok()) throw std::runtime_error("embedded source failed to parse: " + p.error->render());
  return *p;
}

// One silent driver per resource/platform pair the deployment uses; the
// trace alone witnesses actuations. Storage-specific factories are layered
// on top by the caller.
inline void add_silent_drivers(HandlerRegistry& r, const Deployment& dep) {
  auto silent = [](const DriverBinding&, const DevicePackage&) { return std::make_unique<Driver>(); };
  for (const auto& dev : dep.devices)
    for (const auto& res : dev.resources) r.add_driver(factory_key(res.name, dev.platform_type), silent);
}

inline Bundle make_smart_building() {
  Bundle b;
  b.name = "smart-building";
  b.svl_text = embedded::kSMART_BUILDING_SVL;
  b.sal_text = embedded::kSMART_BUILDING_SAL;
  b.sdl_text = embedded::kSMART_BUILDING_SDL;
  b.logic_text = embedded::kSMART_BUILDING_LOGIC;
  b.vocabulary = parsed_or_die(parse_vocabulary(b.svl_text, "building.svl"));
  b.architecture = parsed_or_die(parse_architecture(b.sal_text, "smart-building.sal"));
  b.deployment = parsed_or_die(parse_deployment(b.sdl_text, "building-10.sdl"));
  b.registry.add_vocabulary(b.vocabulary);
  b.registry.add_architecture(b.architecture, b.vocabulary);
  smart_building_logic::register_handlers(b.registry);
  detail::add_silent_drivers(b.registry, b.deployment);
  b.registry.add_driver(factory_key("ProfileDB", "JavaSE"),
                        [](const DriverBinding&, const DevicePackage&) {
                          return std::make_unique<ProfileStore>(embedded::kSMART_BUILDING_PROFILES);
                        });
  return b;
}

inline Bundle make_fire_detection() {
  Bundle b;
  b.name = "fire-detection";
  b.svl_text = embedded::kFIRE_DETECTION_SVL;
  b.sal_text = embedded::kFIRE_DETECTION_SAL;
  b.sdl_text = embedded::kFIRE_DETECTION_SDL;
  b.logic_text = embedded::kFIRE_DETECTION_LOGIC;
  b.vocabulary = parsed_or_die(parse_vocabulary(b.svl_text, "fire.svl"));
  b.architecture = parsed_or_die(parse_architecture(b.sal_text, "fire-detection.sal"));
  b.deployment = parsed_or_die(parse_deployment(b.sdl_text, "fire-10.sdl"));
  b.registry.add_vocabulary(b.vocabulary);
  b.registry.add_architecture(b.architecture, b.vocabulary);
  fire_detection_logic::register_handlers(b.registry);
  detail::add_silent_drivers(b.registry, b.deployment);
  return b;
}

}  // namespace detail

inline const Bundle& smart_building() {
  static const Bundle b = detail::make_smart_building();
  return b;
}

inline const Bundle& fire_detection() {
  static const Bundle b = detail::make_fire_detection();
  return b;
}

inline const Bundle* find_bundle(const std::string& name) {
  if (name == "smart-building") return &smart_building();
  if (name == "fire-detection") return &fire_detection();
  return nullptr;
}

}  // namespace iotc::bundles
