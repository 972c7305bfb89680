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

#include "iotc/runtime.hpp"

// Hook implementations for the building-comfort application: the body of
// every abstract method the framework manifest leaves open.

namespace iotc::bundles::smart_building_logic {

// Heater setpoint used once the room empties.
constexpr double kLowestSetting = 15.0;

// Latest reading per producer, averaged anew on every input.
inline double averaged(std::map<std::string, double>& seen, const std::string& src, double v) {
  seen[src] = v;
  double sum = 0.0;
  for (const auto& [key, reading] : seen) sum += reading;
  return sum / static_cast<double>(seen.size());
}

inline void register_handlers(HandlerRegistry& r) {
  r.add_handler("Proximity", "onNewbadgeDetected", [](HandlerContext& ctx, const EventView& ev) {
    Payload profile = ctx.request("profile", Value::string(ev.text("badgeID")));
    ctx.publish("tempPref", {{"tempValue", Value::real(payload_num(profile, "preferredTemp"))},
                             {"unitOfMeasurement", Value::string("C")}});
  });
  r.add_handler("Proximity", "onNewbadgeDisappeared", [](HandlerContext& ctx, const EventView&) {
    ctx.publish("lowestSetting", {{"tempValue", Value::real(kLowestSetting)},
                                  {"unitOfMeasurement", Value::string("C")}});
  });
  r.add_handler("RoomAvgTemp", "onNewtempMeasurement", [](HandlerContext& ctx, const EventView& ev) {
    double avg = averaged(ctx.state(), ev.source, ev.num("tempValue"));
    ctx.publish("roomAvgTempMeasurement",
                {{"tempValue", Value::real(avg)},
                 {"unitOfMeasurement", Value::string(ev.text("unitOfMeasurement"))}});
  });
  r.add_handler("FloorAvgTemp", "onNewroomAvgTempMeasurement",
                [](HandlerContext& ctx, const EventView& ev) {
    double avg = averaged(ctx.state(), ev.source, ev.num("tempValue"));
    ctx.publish("floorAvgTempMeasurement",
                {{"tempValue", Value::real(avg)},
                 {"unitOfMeasurement", Value::string(ev.text("unitOfMeasurement"))}});
  });
  r.add_handler("BuildingAvgTemp", "onNewfloorAvgTempMeasurement",
                [](HandlerContext& ctx, const EventView& ev) {
    double avg = averaged(ctx.state(), ev.source, ev.num("tempValue"));
    ctx.publish("buildingAvgTempMeasurement",
                {{"tempValue", Value::real(avg)},
                 {"unitOfMeasurement", Value::string(ev.text("unitOfMeasurement"))}});
  });
  r.add_handler("RoomController", "onNewtempPref", [](HandlerContext& ctx, const EventView& ev) {
    ctx.command("SetTemp", {Value::real(ev.num("tempValue"))});
  });
  r.add_handler("RoomController", "onNewlowestSetting",
                [](HandlerContext& ctx, const EventView&) { ctx.command("Off", {}); });
  r.add_handler("BuildingMonitor", "onNewbuildingAvgTempMeasurement",
                [](HandlerContext& ctx, const EventView& ev) {
    ctx.command("Display",
                {Value::string("building average " + format_double(ev.num("tempValue")))});
  });
}

}  // namespace iotc::bundles::smart_building_logic
