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
#include <stdexcept>
#include <string>

#include "iotc/model.hpp"

namespace iotc {

// Synthesizes an n-device deployment from a shipped one, for scaling runs.
// Devices land round-robin on a 2x3x4 grid of the template's three region
// levels and copy the resource set, platform, and mobility of a template
// device chosen by (i + seed) % count, so every synthetic fleet mixes the
// same hardware. Names stay unique via an -x<i> suffix. The canonical print
// of the result is always 8n+1 lines.
inline Deployment generate_scaled_deployment(const Deployment& tmpl, int n,
                                             std::uint64_t seed = 0) {
  if (tmpl.devices.empty()) throw std::runtime_error("scaling needs a template device");
  const RegionPath& shape = tmpl.devices.front().region;
  if (shape.size() != 3) throw std::runtime_error("scaling expects three region levels");
  Deployment out;
  out.name = tmpl.name + "-" + std::to_string(n);
  out.vocabulary_name = tmpl.vocabulary_name;
  for (int i = 0; i < n; ++i) {
    const DeviceDecl& base = tmpl.devices[(std::uint64_t(i) + seed) % tmpl.devices.size()];
    DeviceDecl dev = base;
    dev.name = base.name + "-x" + std::to_string(i + 1);
    int cell = i % 24;
    dev.region.entries = {{shape.entries[0].label, cell / 12 + 1, {}},
                          {shape.entries[1].label, (cell % 12) / 4 + 1, {}},
                          {shape.entries[2].label, cell % 4 + 1, {}}};
    out.devices.push_back(std::move(dev));
  }
  return out;
}

}  // namespace iotc
