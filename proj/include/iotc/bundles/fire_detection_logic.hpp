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

// Hook implementations for the fire-detection application. Fire state is
// edge-triggered: a room or floor speaks up only when its verdict changes,
// so a quiet building stays quiet on repeated readings.

namespace iotc::bundles::fire_detection_logic {

// A room is on fire when it is hotter than this and smoke is present.
constexpr double kFireTempC = 50.0;

inline double averaged(std::map<std::string, double>& seen, const std::string& src, double v) {
  seen[src] = v;
  double sum = 0.0;
  for (const auto& [key, reading] : seen) sum += reading;
  return sum / static_cast<double>(seen.size());
}

// Publishes `event` {fire} when the verdict differs from what was last told.
inline void publish_on_edge(HandlerContext& ctx, const char* event, bool fire) {
  double verdict = fire ? 1.0 : 0.0;
  if (ctx.state()["told"] == verdict) return;
  ctx.state()["told"] = verdict;
  ctx.publish(event, {{"fire", Value::boolean(fire)}});
}

inline void register_handlers(HandlerRegistry& r) {
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
  r.add_handler("RoomFireState", "onNewroomAvgTempMeasurement",
                [](HandlerContext& ctx, const EventView& ev) {
    ctx.state()["avg"] = ev.num("tempValue");
    bool fire = ctx.state()["avg"] > kFireTempC && ctx.state()["smoke"] != 0.0;
    publish_on_edge(ctx, "roomFireState", fire);
  });
  r.add_handler("RoomFireState", "onNewsmokeDetected",
                [](HandlerContext& ctx, const EventView& ev) {
    ctx.state()["smoke"] = ev.truth("presence") ? 1.0 : 0.0;
    bool fire = ctx.state()["avg"] > kFireTempC && ctx.state()["smoke"] != 0.0;
    publish_on_edge(ctx, "roomFireState", fire);
  });
  r.add_handler("FloorFireState", "onNewroomFireState",
                [](HandlerContext& ctx, const EventView& ev) {
    ctx.state()["room " + ev.source] = ev.truth("fire") ? 1.0 : 0.0;
    bool any = false;
    for (const auto& [key, burning] : ctx.state())
      if (key.rfind("room ", 0) == 0 && burning != 0.0) any = true;
    publish_on_edge(ctx, "floorFireState", any);
  });
  r.add_handler("BuildingFireController", "onNewfloorFireState",
                [](HandlerContext& ctx, const EventView& ev) {
    if (!ev.truth("fire")) return;
    ctx.command("Activate", {});
    ctx.command("Display", {Value::string("fire at " + format_path(ev.source_path))});
  });
}

}  // namespace iotc::bundles::fire_detection_logic
