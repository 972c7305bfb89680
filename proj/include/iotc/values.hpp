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

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iotc/model.hpp"

// Runtime values: one scalar per primitive type, tagged so payloads can be
// checked against their declared structures and printed the same way on
// every run. Doubles format through the shortest round-trip form, with a
// trailing ".0" added when nothing marks them as fractional, so 22.0 prints
// as 22.0 and not 22 or 22.000000.

namespace iotc {

struct Value {
  FieldType type = FieldType::string_t;
  std::string str;
  std::int64_t num = 0;  // integer and long
  double dbl = 0.0;
  bool flag = false;

  static Value string(std::string s) {
    Value v;
    v.type = FieldType::string_t;
    v.str = std::move(s);
    return v;
  }
  static Value integer(std::int64_t n) {
    Value v;
    v.type = FieldType::integer_t;
    v.num = n;
    return v;
  }
  static Value longint(std::int64_t n) {
    Value v;
    v.type = FieldType::long_t;
    v.num = n;
    return v;
  }
  static Value real(double d) {
    Value v;
    v.type = FieldType::double_t;
    v.dbl = d;
    return v;
  }
  static Value boolean(bool b) {
    Value v;
    v.type = FieldType::boolean_t;
    v.flag = b;
    return v;
  }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.type != b.type) return false;
    switch (a.type) {
      case FieldType::string_t: return a.str == b.str;
      case FieldType::integer_t:
      case FieldType::long_t: return a.num == b.num;
      case FieldType::double_t: return a.dbl == b.dbl;
      case FieldType::boolean_t: return a.flag == b.flag;
    }
    return false;
  }
};

inline std::string format_double(double d) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";  // n covers inf/nan
  return s;
}

inline std::string format_value(const Value& v) {
  switch (v.type) {
    case FieldType::string_t: return v.str;
    case FieldType::integer_t:
    case FieldType::long_t: return std::to_string(v.num);
    case FieldType::double_t: return format_double(v.dbl);
    case FieldType::boolean_t: return v.flag ? "true" : "false";
  }
  return "?";
}

inline Value parse_value(FieldType type, const std::string& text) {
  switch (type) {
    case FieldType::string_t: return Value::string(text);
    case FieldType::integer_t:
    case FieldType::long_t: {
      std::int64_t n = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::runtime_error("not an integer: '" + text + "'");
      return type == FieldType::integer_t ? Value::integer(n) : Value::longint(n);
    }
    case FieldType::double_t: {
      size_t used = 0;
      double d = std::stod(text, &used);
      if (used != text.size()) throw std::runtime_error("not a number: '" + text + "'");
      return Value::real(d);
    }
    case FieldType::boolean_t: {
      if (text == "true") return Value::boolean(true);
      if (text == "false") return Value::boolean(false);
      throw std::runtime_error("not a boolean: '" + text + "'");
    }
  }
  throw std::runtime_error("unknown value type");
}

// Payload fields keep declaration order so traces print structures the way
// the vocabulary spells them.
using Payload = std::vector<std::pair<std::string, Value>>;

inline std::string format_payload(const Payload& p) {
  std::string out = "{";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ";";
    out += p[i].first + "=" + format_value(p[i].second);
  }
  return out + "}";
}

inline std::string format_args(const std::vector<Value>& args) {
  std::string out = "[";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ";";
    out += format_value(args[i]);
  }
  return out + "]";
}

inline const Value* payload_field(const Payload& p, const std::string& name) {
  for (const auto& [k, v] : p)
    if (k == name) return &v;
  return nullptr;
}

inline double payload_num(const Payload& p, const std::string& name) {
  const Value* v = payload_field(p, name);
  if (!v) throw std::runtime_error("payload has no field '" + name + "'");
  if (v->type == FieldType::double_t) return v->dbl;
  if (v->type == FieldType::integer_t || v->type == FieldType::long_t)
    return static_cast<double>(v->num);
  throw std::runtime_error("payload field '" + name + "' is not numeric");
}

inline const std::string& payload_text(const Payload& p, const std::string& name) {
  const Value* v = payload_field(p, name);
  if (!v || v->type != FieldType::string_t)
    throw std::runtime_error("payload has no string field '" + name + "'");
  return v->str;
}

}  // namespace iotc
