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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "iotc/linker.hpp"
#include "iotc/model.hpp"
#include "iotc/values.hpp"

// Discrete-event execution of linked device packages. Time is virtual
// milliseconds. Every hop between parties costs one millisecond; a
// request/response pair costs two. The engine is single-threaded and fully
// deterministic: pending work sits in one min-heap keyed by (virtual time,
// order key, sequence number), where the order key is the subscriber instance
// id for deliveries and device/resource for actuations, so ties resolve the
// same way on every run.
//
// A handler executes atomically at its delivery time. Synchronous requests
// advance only that instance's clock; records written by other parties in the
// overlap keep their own times, and the trace is stably sorted by time at the
// end of the run. While an instance is past its delivery time (blocked on a
// request), further deliveries to it are deferred to its busy horizon, never
// interleaved.

namespace iotc {

// ---------------------------------------------------------------------------
// Trace

struct TraceRecord {
  std::int64_t time = 0;
  std::string kind;  // PUBLISH DELIVER REQUEST RESPOND COMMAND ACTUATE NOTIFY
  std::vector<std::string> fields;  // preformatted key=value pairs
};

inline std::string render_trace_record(const TraceRecord& r) {
  std::string out = std::to_string(r.time) + "\t" + r.kind;
  for (const auto& f : r.fields) out += "\t" + f;
  return out;
}

inline std::string render_trace(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const auto& r : trace) out += render_trace_record(r) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Scenarios

// One injected stimulus. `emit` feeds a sensor reading into a device, `ui`
// has the user issue a command through an interface resource on the device.
struct ScenarioStep {
  std::int64_t at = 0;
  std::string device;
  bool is_ui = false;
  std::string name;  // event (emit) or command (ui)
  std::vector<std::pair<std::string, std::string>> fields;  // emit field texts
  std::vector<std::string> args;                            // ui argument texts
  int line = 0;
};

struct Scenario {
  std::vector<ScenarioStep> steps;
};

namespace rtdetail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace rtdetail

inline Scenario parse_scenario(const std::string& text) {
  Scenario out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("E-SCENARIO-PARSE: line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string body = rtdetail::trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto toks = rtdetail::split_ws(body);
    if (toks.size() < 5 || toks[0] != "at" || toks[2] != "device")
      fail("expected 'at <ms> device <name> emit|ui ...'");
    ScenarioStep step;
    step.line = lineno;
    try {
      size_t used = 0;
      step.at = std::stoll(toks[1], &used);
      if (used != toks[1].size() || step.at < 0) throw std::invalid_argument("");
    } catch (...) {
      fail("bad time '" + toks[1] + "'");
    }
    step.device = toks[3];
    if (toks[4] == "emit") {
      if (toks.size() < 6) fail("emit needs an event name");
      step.name = toks[5];
      for (size_t i = 6; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos || eq == 0) fail("expected field=value, got '" + toks[i] + "'");
        step.fields.emplace_back(toks[i].substr(0, eq), toks[i].substr(eq + 1));
      }
    } else if (toks[4] == "ui") {
      std::string call;  // rejoin so string arguments may contain spaces
      for (size_t i = 5; i < toks.size(); ++i) call += (i > 5 ? " " : "") + toks[i];
      size_t open = call.find('(');
      if (open == 0 || open == std::string::npos || call.back() != ')')
        fail("expected <command>(<args>) after 'ui'");
      step.is_ui = true;
      step.name = call.substr(0, open);
      std::string inner = call.substr(open + 1, call.size() - open - 2);
      if (!rtdetail::trim(inner).empty()) {
        size_t start = 0;
        while (true) {
          size_t comma = inner.find(',', start);
          step.args.push_back(rtdetail::trim(inner.substr(start, comma - start)));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      }
    } else {
      fail("expected 'emit' or 'ui', got '" + toks[4] + "'");
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Application-side plumbing: drivers and handlers

// A simulated resource implementation. Actuator and interface drivers see
// each performed action; storage drivers answer retrievals.
class Driver {
 public:
  virtual ~Driver() = default;
  virtual void perform(const std::string& /*action*/, const std::vector<Value>& /*args*/) {}
  virtual Payload query(const std::string& retrieval, const Value& /*key*/) {
    throw std::runtime_error("driver cannot answer retrieval '" + retrieval + "'");
  }
};

using DriverFactory =
    std::function<std::unique_ptr<Driver>(const DriverBinding&, const DevicePackage&)>;

// What a handler sees about the event that woke it.
struct EventView {
  std::string topic;
  Payload payload;
  std::string source;      // publishing instance id, or device name for sensors
  RegionPath source_path;  // routing path the publication used
  std::int64_t time = 0;   // delivery time

  const Value* field(const std::string& name) const { return payload_field(payload, name); }
  const Value& need(const std::string& name) const {
    const Value* v = field(name);
    if (!v) throw std::runtime_error("event '" + topic + "' has no field '" + name + "'");
    return *v;
  }
  double num(const std::string& name) const {
    const Value& v = need(name);
    if (v.type == FieldType::double_t) return v.dbl;
    if (v.type == FieldType::integer_t || v.type == FieldType::long_t)
      return static_cast<double>(v.num);
    throw std::runtime_error("field '" + name + "' of '" + topic + "' is not numeric");
  }
  bool truth(const std::string& name) const {
    const Value& v = need(name);
    if (v.type != FieldType::boolean_t)
      throw std::runtime_error("field '" + name + "' of '" + topic + "' is not boolean");
    return v.flag;
  }
  const std::string& text(const std::string& name) const {
    const Value& v = need(name);
    if (v.type != FieldType::string_t)
      throw std::runtime_error("field '" + name + "' of '" + topic + "' is not a string");
    return v.str;
  }
};

class HandlerContext;
using HandlerFn = std::function<void(HandlerContext&, const EventView&)>;

// Everything a bundle contributes to a run: handler implementations keyed by
// (service, hook), driver factories keyed by resource/platform, and the type
// tables the engine checks payloads and arguments against. The registry must
// outlive any simulator loaded from it.
struct HandlerRegistry {
  std::map<HookKey, HandlerFn> handlers;
  std::map<std::string, DriverFactory> drivers;
  std::map<std::string, std::vector<Field>> event_schemas;
  std::map<std::string, std::vector<Param>> action_params;
  std::map<std::string, Retrieval> retrieval_specs;
  std::map<std::string, std::vector<Field>> retrieval_results;
  std::map<std::string, std::vector<ActionSig>> ui_commands;  // by interface resource

  void add_vocabulary(const Vocabulary& v) {
    auto struct_fields = [&](const std::string& name) -> std::vector<Field> {
      const DataStructure* st = v.find_struct(name);
      if (!st) throw std::runtime_error("vocabulary names unknown struct '" + name + "'");
      return st->fields;
    };
    for (const auto& s : v.sensors)
      for (const auto& g : s.generates) event_schemas[g.event] = struct_fields(g.struct_name);
    for (const auto& a : v.actuators)
      for (const auto& act : a.actions) action_params[act.name] = act.params;
    for (const auto& s : v.storages)
      for (const auto& r : s.retrievals) {
        retrieval_specs[r.name] = r;
        retrieval_results[r.name] = struct_fields(r.struct_name);
      }
    for (const auto& u : v.user_interfaces) {
      for (const auto& act : u.actions) action_params[act.name] = act.params;
      for (const auto& r : u.requests) {
        retrieval_specs.emplace(r.name, r);
        retrieval_results.emplace(r.name, struct_fields(r.struct_name));
      }
      if (!u.commands.empty()) ui_commands[u.name] = u.commands;
    }
  }

  // Service-published events get their structures from the architecture.
  void add_architecture(const Architecture& a, const Vocabulary& v) {
    for (const auto& svc : a.services)
      for (const auto& g : svc.generates) {
        const DataStructure* st = v.find_struct(g.struct_name);
        if (!st) throw std::runtime_error("architecture names unknown struct '" + g.struct_name + "'");
        event_schemas[g.event] = st->fields;
      }
  }

  void add_handler(const std::string& service, const std::string& hook, HandlerFn fn) {
    handlers[{service, hook}] = std::move(fn);
  }
  void add_driver(const std::string& factory_key, DriverFactory factory) {
    drivers[factory_key] = std::move(factory);
  }
};

// ---------------------------------------------------------------------------
// The engine

namespace rtdetail {

struct DeviceRt {
  const DevicePackage* pkg = nullptr;
  std::map<std::string, std::unique_ptr<Driver>> drivers;  // by resource name
};

struct InstanceRt {
  const PackagedInstance* inst = nullptr;
  const DevicePackage* host = nullptr;
  std::string id;
  std::int64_t busy_until = 0;
  std::map<std::string, double> state;
};

struct Pending {
  std::int64_t time = 0;
  std::string order_key;
  std::uint64_t seq = 0;
  enum What { deliver, act, inject } what = deliver;
  // deliver
  size_t instance = 0;
  std::string topic, handler, source;
  RegionPath source_path;
  Payload payload;
  std::uint64_t pub_id = 0;
  // act
  std::string device, resource, action;
  std::vector<Value> args;
  std::uint64_t cmd_id = 0;
  bool notify = false;
  // inject
  ScenarioStep step;
};

struct RunsLater {
  bool operator()(const Pending& a, const Pending& b) const {
    return std::tie(a.time, a.order_key, a.seq) > std::tie(b.time, b.order_key, b.seq);
  }
};

inline size_t common_prefix_len(const RegionPath& a, const RegionPath& b) {
  size_t n = 0;
  while (n < a.entries.size() && n < b.entries.size() &&
         a.entries[n].label == b.entries[n].label && a.entries[n].value == b.entries[n].value)
    ++n;
  return n;
}

// Scope test that treats an unreachable scope level as out of range instead
// of failing; publications simply do not reach such subscribers.
inline bool in_scope(const RegionPath& a, const RegionPath& b, const ScopeSpec& scope) {
  if (!a.index_of(scope.label) || !b.index_of(scope.label)) return false;
  return region_distance(a, b, scope);
}

}  // namespace rtdetail

class Simulator {
 public:
  static constexpr std::int64_t kHopMillis = 1;

  Simulator(std::vector<DevicePackage> packages, const HandlerRegistry& registry)
      : packages_(std::move(packages)), registry_(&registry) {
    std::vector<std::string> missing_handlers, missing_drivers;
    for (const auto& pkg : packages_) {
      for (const auto& b : pkg.driver_bindings)
        if (!registry.drivers.count(b.factory_key)) missing_drivers.push_back(b.factory_key);
      for (const auto& inst : pkg.instances)
        for (const auto& sub : inst.subscriptions)
          if (!registry.handlers.count({inst.service_name, sub.handler}))
            missing_handlers.push_back(inst.service_name + "." + sub.handler);
    }
    auto fail_missing = [](const char* code, std::vector<std::string>& keys) {
      if (keys.empty()) return;
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::string msg = code;
      msg += ": ";
      for (size_t i = 0; i < keys.size(); ++i) msg += (i ? ", " : "") + keys[i];
      throw std::runtime_error(msg);
    };
    fail_missing("E-MISSING-HANDLER", missing_handlers);
    fail_missing("E-MISSING-DRIVER", missing_drivers);

    for (const auto& pkg : packages_) {
      auto& dev = devices_[pkg.device_name];
      dev.pkg = &pkg;
      for (const auto& b : pkg.driver_bindings)
        dev.drivers[b.resource_name] = registry.drivers.at(b.factory_key)(b, pkg);
      for (const auto& inst : pkg.instances) {
        rtdetail::InstanceRt rt;
        rt.inst = &inst;
        rt.host = &pkg;
        rt.id = instance_id(inst.service_name, inst.partition_path);
        instances_.push_back(std::move(rt));
      }
    }
    std::sort(instances_.begin(), instances_.end(),
              [](const rtdetail::InstanceRt& a, const rtdetail::InstanceRt& b) { return a.id < b.id; });
  }

  // Runs the scenario to quiescence. The seed is recorded for reproducibility
  // bookkeeping; the engine itself draws no randomness.
  void run(const Scenario& scenario, std::uint64_t seed = 0) {
    seed_ = seed;
    trace_.clear();
    queue_ = {};
    seq_ = pubs_ = cmds_ = corrs_ = 0;
    for (auto& inst : instances_) {
      inst.busy_until = 0;
      inst.state.clear();
    }
    for (const auto& step : scenario.steps) {
      rtdetail::Pending p;
      p.time = step.at;
      p.order_key = "";  // stimuli sort ahead of same-time traffic
      p.seq = ++seq_;
      p.what = rtdetail::Pending::inject;
      p.step = step;
      queue_.push(std::move(p));
    }
    std::uint64_t budget = 2'000'000;
    while (!queue_.empty()) {
      if (--budget == 0) throw std::runtime_error("event budget exhausted; livelock suspected");
      rtdetail::Pending p = queue_.top();
      queue_.pop();
      dispatch(p);
    }
    std::stable_sort(trace_.begin(), trace_.end(),
                     [](const TraceRecord& a, const TraceRecord& b) { return a.time < b.time; });
  }

  const std::vector<TraceRecord>& trace() const { return trace_; }
  std::string trace_text() const { return render_trace(trace_); }
  std::uint64_t seed() const { return seed_; }

  const std::vector<DevicePackage>& packages() const { return packages_; }

 private:
  friend class HandlerContext;

  void record(std::int64_t time, const char* kind, std::vector<std::string> fields) {
    trace_.push_back({time, kind, std::move(fields)});
  }

  Payload conform(const std::vector<Field>& schema, const Payload& given, const std::string& what) {
    Payload out;
    for (const auto& f : schema) {
      const Value* v = payload_field(given, f.name);
      if (!v)
        throw std::runtime_error("E-PAYLOAD-TYPE: " + what + " misses field '" + f.name + "'");
      if (v->type != f.type)
        throw std::runtime_error("E-PAYLOAD-TYPE: field '" + f.name + "' of " + what + " wants " +
                                 to_keyword(f.type) + ", got " + to_keyword(v->type));
      out.emplace_back(f.name, *v);
    }
    if (given.size() != schema.size())
      throw std::runtime_error("E-PAYLOAD-TYPE: " + what + " carries undeclared fields");
    return out;
  }

  std::uint64_t do_publish(const std::string& source, const RegionPath& source_path,
                           const std::string& topic, const Payload& payload, std::int64_t t) {
    auto schema = registry_->event_schemas.find(topic);
    if (schema == registry_->event_schemas.end())
      throw std::runtime_error("E-PAYLOAD-TYPE: event '" + topic + "' has no declared structure");
    Payload body = conform(schema->second, payload, "event '" + topic + "'");
    std::uint64_t id = ++pubs_;
    record(t, "PUBLISH",
           {"id=" + std::to_string(id), "topic=" + topic, "source=" + source,
            "path=" + format_path(source_path), "payload=" + format_payload(body)});
    for (size_t i = 0; i < instances_.size(); ++i) {
      for (const auto& sub : instances_[i].inst->subscriptions) {
        if (sub.event != topic) continue;
        if (!rtdetail::in_scope(source_path, instances_[i].inst->partition_path, sub.scope))
          continue;
        rtdetail::Pending p;
        p.time = t + kHopMillis;
        p.order_key = instances_[i].id;
        p.seq = ++seq_;
        p.what = rtdetail::Pending::deliver;
        p.instance = i;
        p.topic = topic;
        p.handler = sub.handler;
        p.source = source;
        p.source_path = source_path;
        p.payload = body;
        p.pub_id = id;
        queue_.push(std::move(p));
      }
    }
    return id;
  }

  void do_command(const std::string& issuer, const RegionPath& issuer_path,
                  const std::string& action, const std::vector<Value>& args,
                  const ScopeSpec& scope, std::int64_t t) {
    auto params = registry_->action_params.find(action);
    if (params == registry_->action_params.end())
      throw std::runtime_error("E-ARG-ARITY: action '" + action + "' is not declared");
    if (params->second.size() != args.size())
      throw std::runtime_error("E-ARG-ARITY: action '" + action + "' takes " +
                               std::to_string(params->second.size()) + " arguments, got " +
                               std::to_string(args.size()));
    std::uint64_t id = ++cmds_;
    record(t, "COMMAND",
           {"id=" + std::to_string(id), "action=" + action, "issuer=" + issuer,
            "args=" + format_args(args), "scope=" + format_scope(scope)});
    for (const auto& [name, dev] : devices_) {
      if (!rtdetail::in_scope(dev.pkg->region_path, issuer_path, scope)) continue;
      for (const auto& b : dev.pkg->driver_bindings) {
        if (b.kind != "actuator" && b.kind != "userinterface") continue;
        if (std::find(b.actions.begin(), b.actions.end(), action) == b.actions.end()) continue;
        rtdetail::Pending p;
        p.time = t + kHopMillis;
        p.order_key = name + "/" + b.resource_name;
        p.seq = ++seq_;
        p.what = rtdetail::Pending::act;
        p.device = name;
        p.resource = b.resource_name;
        p.action = action;
        p.args = args;
        p.cmd_id = id;
        p.notify = b.kind == "userinterface";
        queue_.push(std::move(p));
      }
    }
  }

  // Synchronous lookup: the caller's clock advances by a full round trip.
  Payload do_request(rtdetail::InstanceRt& from, const std::string& retrieval, const Value& key,
                     std::int64_t& clock) {
    auto spec = registry_->retrieval_specs.find(retrieval);
    if (spec == registry_->retrieval_specs.end())
      throw std::runtime_error("E-NO-RESPONDER: retrieval '" + retrieval + "' is not declared");
    if (key.type != spec->second.key_type)
      throw std::runtime_error("E-PAYLOAD-TYPE: key '" + spec->second.key_name + "' of retrieval '" +
                               retrieval + "' wants " + to_keyword(spec->second.key_type) +
                               ", got " + to_keyword(key.type));
    // Nearest storage: longest common region prefix with the requester's
    // host, then smallest device name. devices_ already iterates by name.
    const rtdetail::DeviceRt* best = nullptr;
    const DriverBinding* best_binding = nullptr;
    size_t best_len = 0;
    for (const auto& [name, dev] : devices_) {
      for (const auto& b : dev.pkg->driver_bindings) {
        if (b.kind != "storage") continue;
        if (std::find(b.retrievals.begin(), b.retrievals.end(), retrieval) == b.retrievals.end())
          continue;
        size_t len = rtdetail::common_prefix_len(dev.pkg->region_path, from.host->region_path);
        if (!best || len > best_len) {
          best = &dev;
          best_binding = &b;
          best_len = len;
        }
      }
    }
    if (!best)
      throw std::runtime_error("E-NO-RESPONDER: no hosted storage answers retrieval '" +
                               retrieval + "'");
    std::uint64_t corr = ++corrs_;
    record(clock, "REQUEST",
           {"corr=" + std::to_string(corr), "retrieval=" + retrieval,
            "key=" + format_value(key), "from=" + from.id,
            "to=" + best->pkg->device_name + "/" + best_binding->resource_name});
    Payload answer = best->drivers.at(best_binding->resource_name)->query(retrieval, key);
    answer = conform(registry_->retrieval_results.at(retrieval), answer,
                     "retrieval '" + retrieval + "' result");
    clock += 2 * kHopMillis;
    record(clock, "RESPOND",
           {"corr=" + std::to_string(corr), "payload=" + format_payload(answer)});
    return answer;
  }

  void dispatch(rtdetail::Pending& p);  // defined after HandlerContext

  void dispatch_inject(const ScenarioStep& step) {
    auto it = devices_.find(step.device);
    if (it == devices_.end())
      throw std::runtime_error("scenario line " + std::to_string(step.line) +
                               ": no packaged device '" + step.device + "'");
    const DevicePackage& pkg = *it->second.pkg;
    if (!step.is_ui) {
      const DriverBinding* sensor = nullptr;
      for (const auto& b : pkg.driver_bindings)
        if (b.kind == "sensor" &&
            std::find(b.events.begin(), b.events.end(), step.name) != b.events.end())
          sensor = &b;
      if (!sensor)
        throw std::runtime_error("scenario line " + std::to_string(step.line) + ": device '" +
                                 step.device + "' hosts no sensor generating '" + step.name + "'");
      auto schema = registry_->event_schemas.find(step.name);
      if (schema == registry_->event_schemas.end())
        throw std::runtime_error("E-PAYLOAD-TYPE: event '" + step.name +
                                 "' has no declared structure");
      Payload payload;
      for (const auto& [fname, ftext] : step.fields) {
        const Field* field = nullptr;
        for (const auto& f : schema->second)
          if (f.name == fname) field = &f;
        if (!field)
          throw std::runtime_error("E-PAYLOAD-TYPE: event '" + step.name + "' has no field '" +
                                   fname + "'");
        try {
          payload.emplace_back(fname, parse_value(field->type, ftext));
        } catch (const std::exception& e) {
          throw std::runtime_error("E-PAYLOAD-TYPE: field '" + fname + "' of event '" + step.name +
                                   "': " + e.what());
        }
      }
      do_publish(step.device, pkg.region_path, step.name, payload, step.at);
      return;
    }
    // The user acts through an interface resource on this device. The issued
    // command addresses providers in the device's own innermost region.
    const DriverBinding* ui = nullptr;
    const ActionSig* sig = nullptr;
    for (const auto& b : pkg.driver_bindings) {
      if (b.kind != "userinterface") continue;
      auto cmds = registry_->ui_commands.find(b.resource_name);
      if (cmds == registry_->ui_commands.end()) continue;
      for (const auto& c : cmds->second)
        if (c.name == step.name) {
          ui = &b;
          sig = &c;
        }
    }
    if (!ui)
      throw std::runtime_error("scenario line " + std::to_string(step.line) + ": device '" +
                               step.device + "' hosts no interface issuing '" + step.name + "'");
    if (sig->params.size() != step.args.size())
      throw std::runtime_error("E-ARG-ARITY: command '" + step.name + "' takes " +
                               std::to_string(sig->params.size()) + " arguments, got " +
                               std::to_string(step.args.size()));
    std::vector<Value> args;
    for (size_t i = 0; i < step.args.size(); ++i) {
      try {
        args.push_back(parse_value(sig->params[i].type, step.args[i]));
      } catch (const std::exception& e) {
        throw std::runtime_error("E-PAYLOAD-TYPE: argument '" + sig->params[i].name +
                                 "' of command '" + step.name + "': " + e.what());
      }
    }
    if (pkg.region_path.empty())
      throw std::runtime_error("scenario line " + std::to_string(step.line) + ": device '" +
                               step.device + "' has no region to scope the command to");
    ScopeSpec scope;
    scope.radius = 0;
    scope.label = pkg.region_path.entries.back().label;
    do_command(step.device + "/" + ui->resource_name, pkg.region_path, step.name, args, scope,
               step.at);
  }

  std::vector<DevicePackage> packages_;
  const HandlerRegistry* registry_;
  std::map<std::string, rtdetail::DeviceRt> devices_;
  std::vector<rtdetail::InstanceRt> instances_;
  std::priority_queue<rtdetail::Pending, std::vector<rtdetail::Pending>, rtdetail::RunsLater>
      queue_;
  std::vector<TraceRecord> trace_;
  std::uint64_t seq_ = 0, pubs_ = 0, cmds_ = 0, corrs_ = 0;
  std::uint64_t seed_ = 0;
};

// Handed to a handler for the duration of one delivery. Publishing and
// commanding are checked against the instance's linked tables, so a handler
// cannot emit anything its service did not declare.
class HandlerContext {
 public:
  HandlerContext(Simulator& sim, rtdetail::InstanceRt& inst, std::int64_t start)
      : sim_(&sim), inst_(&inst), clock_(start) {}

  const std::string& service() const { return inst_->inst->service_name; }
  const std::string& id() const { return inst_->id; }
  const RegionPath& partition() const { return inst_->inst->partition_path; }
  const std::string& host_device() const { return inst_->host->device_name; }
  std::int64_t now() const { return clock_; }
  std::map<std::string, double>& state() { return inst_->state; }

  void publish(const std::string& event, const Payload& payload) {
    const auto& allowed = inst_->inst->publications;
    if (std::find(allowed.begin(), allowed.end(), event) == allowed.end())
      throw std::runtime_error("service '" + service() + "' does not generate '" + event + "'");
    sim_->do_publish(inst_->id, inst_->inst->partition_path, event, payload, clock_);
  }

  void command(const std::string& action, const std::vector<Value>& args) {
    const CommandEntry* entry = nullptr;
    for (const auto& c : inst_->inst->commands)
      if (c.action == action) entry = &c;
    if (!entry)
      throw std::runtime_error("service '" + service() + "' does not command '" + action + "'");
    sim_->do_command(inst_->id, inst_->inst->partition_path, action, args, entry->scope, clock_);
  }

  Payload request(const std::string& retrieval, const Value& key) {
    const auto& allowed = inst_->inst->requests;
    if (std::find(allowed.begin(), allowed.end(), retrieval) == allowed.end())
      throw std::runtime_error("service '" + service() + "' does not request '" + retrieval + "'");
    return sim_->do_request(*inst_, retrieval, key, clock_);
  }

  std::int64_t finish() const { return clock_; }

 private:
  Simulator* sim_;
  rtdetail::InstanceRt* inst_;
  std::int64_t clock_;
};

inline void Simulator::dispatch(rtdetail::Pending& p) {
  switch (p.what) {
    case rtdetail::Pending::inject:
      dispatch_inject(p.step);
      return;
    case rtdetail::Pending::act: {
      record(p.time, p.notify ? "NOTIFY" : "ACTUATE",
             {"cmd=" + std::to_string(p.cmd_id), "action=" + p.action, "device=" + p.device,
              "resource=" + p.resource, "args=" + format_args(p.args)});
      devices_.at(p.device).drivers.at(p.resource)->perform(p.action, p.args);
      return;
    }
    case rtdetail::Pending::deliver: {
      rtdetail::InstanceRt& inst = instances_[p.instance];
      if (inst.busy_until > p.time) {  // blocked on a request; retry when free
        rtdetail::Pending retry = p;
        retry.time = inst.busy_until;
        retry.seq = ++seq_;
        queue_.push(std::move(retry));
        return;
      }
      record(p.time, "DELIVER",
             {"pub=" + std::to_string(p.pub_id), "topic=" + p.topic, "to=" + inst.id,
              "payload=" + format_payload(p.payload)});
      EventView view;
      view.topic = p.topic;
      view.payload = std::move(p.payload);
      view.source = p.source;
      view.source_path = p.source_path;
      view.time = p.time;
      HandlerContext ctx(*this, inst, p.time);
      registry_->handlers.at({inst.inst->service_name, p.handler})(ctx, view);
      inst.busy_until = ctx.finish();
      return;
    }
  }
}

// Builds a simulator after checking that the registry supplies every handler
// and driver the packages call for; unresolved keys are reported together.
inline Simulator load(std::vector<DevicePackage> packages, const HandlerRegistry& registry) {
  return Simulator(std::move(packages), registry);
}

}  // namespace iotc
