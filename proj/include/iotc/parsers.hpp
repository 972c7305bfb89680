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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iotc/lexer.hpp"
#include "iotc/model.hpp"
#include "iotc/source.hpp"

// Recursive-descent parsers for the vocabulary (.svl), architecture (.sal)
// and deployment (.sdl) languages. Grammar reference: docs/grammar.md.

namespace iotc {

template <class T>
struct Parsed {
  std::optional<T> value;
  std::optional<ParseError> error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(size_t off = 0) const {
    size_t i = pos_ + off;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool at(TokenKind k) const { return peek().kind == k; }

  bool at_word(const char* w) const {
    return peek().kind == TokenKind::ident && peek().text == w;
  }

  Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  Token take(TokenKind k, const char* what) {
    if (!at(k)) throw ParseError{std::string("expected ") + what, peek().span, {what}};
    return take();
  }

  Token take_word(const char* w) {
    if (!at_word(w))
      throw ParseError{std::string("expected '") + w + "'", peek().span, {w}};
    return take();
  }

  Token take_name(const char* what) {
    if (!at(TokenKind::ident))
      throw ParseError{std::string("expected ") + what, peek().span, {what}};
    return take();
  }

  bool skip_word(const char* w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }

  [[noreturn]] void unknown_keyword(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string what = t.kind == TokenKind::ident ? "unknown keyword '" + t.text + "'"
                                                  : std::string("expected keyword");
    throw ParseError{what, t.span, std::move(expected)};
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

inline FieldType take_field_type(Cursor& c) {
  const Token& t = c.peek();
  if (t.kind == TokenKind::ident) {
    if (auto ft = field_type_from(t.text)) {
      c.take();
      return *ft;
    }
  }
  throw ParseError{"expected primitive type", t.span,
                   {"string", "integer", "long", "double", "boolean"}};
}

// name: Type (, name: Type)* inside parentheses, possibly empty
inline std::vector<Param> take_param_list(Cursor& c) {
  std::vector<Param> params;
  c.take(TokenKind::lparen, "'('");
  if (!c.at(TokenKind::rparen)) {
    for (;;) {
      Token name = c.take_name("parameter name");
      c.take(TokenKind::colon, "':'");
      FieldType ft = take_field_type(c);
      params.push_back({name.text, ft});
      if (!c.at(TokenKind::comma)) break;
      c.take();
    }
  }
  c.take(TokenKind::rparen, "')'");
  return params;
}

// <name>: <Struct> accessed-by <key>: <type>
inline Retrieval take_retrieval(Cursor& c) {
  Retrieval r;
  Token name = c.take_name("retrieval name");
  r.name = name.text;
  r.span = name.span;
  c.take(TokenKind::colon, "':'");
  r.struct_name = c.take_name("struct name").text;
  c.take_word("accessed-by");
  r.key_name = c.take_name("key name").text;
  c.take(TokenKind::colon, "':'");
  r.key_type = take_field_type(c);
  c.take(TokenKind::semicolon, "';'");
  return r;
}

inline void check_fresh(std::set<std::string>& seen, const Token& t, const char* what) {
  if (!seen.insert(t.text).second)
    throw ParseError{std::string("duplicate ") + what + " '" + t.text + "'", t.span, {}};
}

// hops:<radius>:<Label>
inline ScopeSpec take_scope(Cursor& c) {
  ScopeSpec s;
  c.take_word("hops");
  c.take(TokenKind::colon, "':'");
  Token radius = c.take(TokenKind::number, "radius");
  if (radius.value < 0)
    throw ParseError{"radius must be non-negative", radius.span, {}};
  s.radius = radius.value;
  c.take(TokenKind::colon, "':'");
  Token label = c.take_name("region label");
  s.label = label.text;
  s.span = label.span;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vocabulary

inline Parsed<Vocabulary> parse_vocabulary(const std::string& text, const std::string& file) {
  using detail::Cursor;
  try {
    Cursor c(Lexer(text, file).tokenize());
    Vocabulary v;
    c.take_word("vocabulary");
    v.name = c.take_name("vocabulary name").text;

    std::set<std::string> resource_names, struct_names, region_names, event_names;
    bool saw_regions = false;

    while (!c.at(TokenKind::end)) {
      if (c.skip_word("regions")) {
        saw_regions = true;
        c.take(TokenKind::lbrace, "'{'");
        while (!c.at(TokenKind::rbrace)) {
          Token label = c.take_name("region label");
          detail::check_fresh(region_names, label, "region label");
          c.take(TokenKind::semicolon, "';'");
          v.regions.push_back({label.text, int(v.regions.size()), label.span});
        }
        Token close = c.take();
        if (v.regions.empty())
          throw ParseError{"regions block must declare at least one label", close.span, {}};
      } else if (c.skip_word("structs")) {
        c.take(TokenKind::lbrace, "'{'");
        while (!c.at(TokenKind::rbrace)) {
          DataStructure ds;
          Token name = c.take_name("struct name");
          detail::check_fresh(struct_names, name, "struct");
          ds.name = name.text;
          ds.span = name.span;
          c.take(TokenKind::lbrace, "'{'");
          std::set<std::string> field_names;
          while (!c.at(TokenKind::rbrace)) {
            Token fname = c.take_name("field name");
            detail::check_fresh(field_names, fname, "field");
            c.take(TokenKind::colon, "':'");
            FieldType ft = detail::take_field_type(c);
            c.take(TokenKind::semicolon, "';'");
            ds.fields.push_back({fname.text, ft, fname.span});
          }
          c.take();
          v.structs.push_back(std::move(ds));
        }
        c.take();
      } else if (c.skip_word("resources")) {
        c.take(TokenKind::lbrace, "'{'");
        while (!c.at(TokenKind::rbrace)) {
          if (c.skip_word("sensors")) {
            c.take(TokenKind::lbrace, "'{'");
            while (!c.at(TokenKind::rbrace)) {
              SensorDecl s;
              Token name = c.take_name("sensor name");
              detail::check_fresh(resource_names, name, "resource");
              s.name = name.text;
              s.span = name.span;
              c.take(TokenKind::lbrace, "'{'");
              while (!c.at(TokenKind::rbrace)) {
                c.take_word("generate");
                Token ev = c.take_name("event name");
                detail::check_fresh(event_names, ev, "event");
                c.take(TokenKind::colon, "':'");
                Token st = c.take_name("struct name");
                c.take(TokenKind::semicolon, "';'");
                s.generates.push_back({ev.text, st.text, st.span});
              }
              c.take();
              v.sensors.push_back(std::move(s));
            }
            c.take();
          } else if (c.skip_word("actuators")) {
            c.take(TokenKind::lbrace, "'{'");
            while (!c.at(TokenKind::rbrace)) {
              ActuatorDecl a;
              Token name = c.take_name("actuator name");
              detail::check_fresh(resource_names, name, "resource");
              a.name = name.text;
              a.span = name.span;
              c.take(TokenKind::lbrace, "'{'");
              std::set<std::string> action_names;
              while (!c.at(TokenKind::rbrace)) {
                c.take_word("action");
                Token an = c.take_name("action name");
                detail::check_fresh(action_names, an, "action");
                ActionSig sig;
                sig.name = an.text;
                sig.span = an.span;
                sig.params = detail::take_param_list(c);
                c.take(TokenKind::semicolon, "';'");
                a.actions.push_back(std::move(sig));
              }
              c.take();
              v.actuators.push_back(std::move(a));
            }
            c.take();
          } else if (c.skip_word("storages")) {
            c.take(TokenKind::lbrace, "'{'");
            while (!c.at(TokenKind::rbrace)) {
              StorageDecl s;
              Token name = c.take_name("storage name");
              detail::check_fresh(resource_names, name, "resource");
              s.name = name.text;
              s.span = name.span;
              c.take(TokenKind::lbrace, "'{'");
              std::set<std::string> retrieval_names;
              while (!c.at(TokenKind::rbrace)) {
                c.take_word("generate");
                Retrieval r = detail::take_retrieval(c);
                if (!retrieval_names.insert(r.name).second)
                  throw ParseError{"duplicate retrieval '" + r.name + "'", r.span, {}};
                s.retrievals.push_back(std::move(r));
              }
              c.take();
              v.storages.push_back(std::move(s));
            }
            c.take();
          } else if (c.skip_word("userinterfaces")) {
            c.take(TokenKind::lbrace, "'{'");
            while (!c.at(TokenKind::rbrace)) {
              UserInterfaceDecl u;
              Token name = c.take_name("user interface name");
              detail::check_fresh(resource_names, name, "resource");
              u.name = name.text;
              u.span = name.span;
              c.take(TokenKind::lbrace, "'{'");
              std::set<std::string> member_names;
              while (!c.at(TokenKind::rbrace)) {
                if (c.skip_word("command")) {
                  Token an = c.take_name("command name");
                  detail::check_fresh(member_names, an, "command");
                  ActionSig sig;
                  sig.name = an.text;
                  sig.span = an.span;
                  sig.params = detail::take_param_list(c);
                  c.take(TokenKind::semicolon, "';'");
                  u.commands.push_back(std::move(sig));
                } else if (c.skip_word("action")) {
                  Token an = c.take_name("action name");
                  detail::check_fresh(member_names, an, "action");
                  ActionSig sig;
                  sig.name = an.text;
                  sig.span = an.span;
                  sig.params = detail::take_param_list(c);
                  c.take(TokenKind::semicolon, "';'");
                  u.actions.push_back(std::move(sig));
                } else if (c.skip_word("request")) {
                  Retrieval r = detail::take_retrieval(c);
                  if (!member_names.insert(r.name).second)
                    throw ParseError{"duplicate request '" + r.name + "'", r.span, {}};
                  u.requests.push_back(std::move(r));
                } else {
                  c.unknown_keyword({"command", "action", "request"});
                }
              }
              c.take();
              v.user_interfaces.push_back(std::move(u));
            }
            c.take();
          } else {
            c.unknown_keyword({"sensors", "actuators", "storages", "userinterfaces"});
          }
        }
        c.take();
      } else {
        c.unknown_keyword({"regions", "structs", "resources"});
      }
    }

    if (!saw_regions)
      throw ParseError{"vocabulary must declare a regions block", {file, 1, 1, 1, 1}, {"regions"}};

    // Struct references resolve within the vocabulary itself.
    auto check_struct = [&](const std::string& name, const SourceSpan& span) {
      if (!struct_names.count(name))
        throw ParseError{"unresolved struct reference '" + name + "'", span, {}};
    };
    for (const auto& s : v.sensors)
      for (const auto& g : s.generates) check_struct(g.struct_name, g.span);
    for (const auto& s : v.storages)
      for (const auto& r : s.retrievals) check_struct(r.struct_name, r.span);
    for (const auto& u : v.user_interfaces)
      for (const auto& r : u.requests) check_struct(r.struct_name, r.span);

    return {std::move(v), std::nullopt};
  } catch (ParseError& e) {
    return {std::nullopt, std::move(e)};
  }
}

// ---------------------------------------------------------------------------
// Architecture

inline Parsed<Architecture> parse_architecture(const std::string& text, const std::string& file) {
  using detail::Cursor;
  try {
    Cursor c(Lexer(text, file).tokenize());
    Architecture arch;
    c.take_word("architecture");
    arch.name = c.take_name("architecture name").text;
    c.take_word("uses");
    Token vocab_name = c.take_name("vocabulary name");
    arch.vocabulary_name = vocab_name.text;
    arch.uses_span = vocab_name.span;

    std::set<std::string> service_names;
    while (!c.at(TokenKind::end)) {
      c.take_word("computationalService");
      ComputationalService svc;
      Token name = c.take_name("service name");
      detail::check_fresh(service_names, name, "service");
      svc.name = name.text;
      svc.span = name.span;
      c.take(TokenKind::lbrace, "'{'");

      std::set<std::string> consumed, generated;
      bool saw_in_region = false;
      while (!c.at(TokenKind::rbrace)) {
        if (c.skip_word("consume")) {
          ConsumeClause cc;
          Token ev = c.take_name("event name");
          detail::check_fresh(consumed, ev, "consume of event");
          cc.event = ev.text;
          cc.span = ev.span;
          c.take_word("from");
          cc.scope = detail::take_scope(c);
          c.take(TokenKind::semicolon, "';'");
          svc.consumes.push_back(std::move(cc));
        } else if (c.skip_word("request")) {
          RequestClause rc;
          Token r = c.take_name("retrieval name");
          rc.retrieval = r.text;
          rc.span = r.span;
          c.take(TokenKind::semicolon, "';'");
          svc.requests.push_back(std::move(rc));
        } else if (c.skip_word("generate")) {
          GenerateClause gc;
          Token ev = c.take_name("event name");
          detail::check_fresh(generated, ev, "generate of event");
          gc.event = ev.text;
          c.take(TokenKind::colon, "':'");
          Token st = c.take_name("struct name");
          gc.struct_name = st.text;
          gc.span = st.span;
          c.take(TokenKind::semicolon, "';'");
          svc.generates.push_back(std::move(gc));
        } else if (c.skip_word("command")) {
          CommandClause cmd;
          Token an = c.take_name("action name");
          cmd.action = an.text;
          cmd.span = an.span;
          c.take(TokenKind::lparen, "'('");
          if (!c.at(TokenKind::rparen)) {
            for (;;) {
              cmd.arg_names.push_back(c.take_name("argument name").text);
              if (!c.at(TokenKind::comma)) break;
              c.take();
            }
          }
          c.take(TokenKind::rparen, "')'");
          c.take_word("to");
          cmd.scope = detail::take_scope(c);
          c.take(TokenKind::semicolon, "';'");
          svc.commands.push_back(std::move(cmd));
        } else if (c.at_word("in-region")) {
          Token kw = c.take();
          if (saw_in_region)
            throw ParseError{"duplicate in-region clause", kw.span, {}};
          saw_in_region = true;
          c.take(TokenKind::colon, "':'");
          Token label = c.take_name("region label");
          svc.in_region = label.text;
          svc.in_region_span = label.span;
          c.take(TokenKind::semicolon, "';'");
        } else {
          c.unknown_keyword({"consume", "request", "generate", "command", "in-region"});
        }
      }
      Token close = c.take();
      if (!saw_in_region)
        throw ParseError{"missing in-region clause in service '" + svc.name + "'", close.span, {}};
      arch.services.push_back(std::move(svc));
    }
    return {std::move(arch), std::nullopt};
  } catch (ParseError& e) {
    return {std::nullopt, std::move(e)};
  }
}

// ---------------------------------------------------------------------------
// Deployment

inline Parsed<Deployment> parse_deployment(const std::string& text, const std::string& file) {
  using detail::Cursor;
  try {
    Cursor c(Lexer(text, file).tokenize());
    Deployment dep;
    c.take_word("deployment");
    dep.name = c.take_name("deployment name").text;
    c.take_word("uses");
    Token vocab_name = c.take_name("vocabulary name");
    dep.vocabulary_name = vocab_name.text;
    dep.uses_span = vocab_name.span;

    std::set<std::string> device_names;
    while (!c.at(TokenKind::end)) {
      c.take_word("device");
      DeviceDecl dev;
      Token name = c.take_name("device name");
      detail::check_fresh(device_names, name, "device");
      dev.name = name.text;
      dev.span = name.span;
      c.take(TokenKind::lbrace, "'{'");

      c.take_word("region");
      c.take(TokenKind::lbrace, "'{'");
      if (c.at(TokenKind::rbrace))
        throw ParseError{"region path must have at least one entry", c.peek().span, {}};
      while (!c.at(TokenKind::rbrace)) {
        RegionEntry entry;
        Token label = c.take_name("region label");
        entry.label = label.text;
        entry.span = label.span;
        c.take(TokenKind::colon, "':'");
        entry.value = c.take(TokenKind::number, "region value").value;
        c.take(TokenKind::semicolon, "';'");
        dev.region.entries.push_back(std::move(entry));
      }
      c.take();

      c.take_word("resources");
      c.take(TokenKind::lbrace, "'{'");
      if (!c.at(TokenKind::rbrace)) {
        std::set<std::string> hosted;
        for (;;) {
          Token r = c.take_name("resource name");
          detail::check_fresh(hosted, r, "hosted resource");
          dev.resources.push_back({r.text, r.span});
          if (!c.at(TokenKind::comma)) break;
          c.take();
        }
      }
      c.take(TokenKind::rbrace, "'}'");

      c.take_word("type");
      c.take(TokenKind::colon, "':'");
      dev.platform_type = c.take_name("platform type").text;
      c.take(TokenKind::semicolon, "';'");

      c.take_word("mobile");
      c.take(TokenKind::colon, "':'");
      if (c.at_word("true")) {
        dev.mobile = true;
        c.take();
      } else if (c.at_word("false")) {
        dev.mobile = false;
        c.take();
      } else {
        throw ParseError{"expected 'true' or 'false'", c.peek().span, {"true", "false"}};
      }
      c.take(TokenKind::semicolon, "';'");
      c.take(TokenKind::rbrace, "'}'");
      dep.devices.push_back(std::move(dev));
    }
    return {std::move(dep), std::nullopt};
  } catch (ParseError& e) {
    return {std::nullopt, std::move(e)};
  }
}

}  // namespace iotc
