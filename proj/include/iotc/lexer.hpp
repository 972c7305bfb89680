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

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "iotc/source.hpp"

// Shared tokenizer for the three input languages. Identifiers may contain
// interior hyphens (accessed-by, in-region, TemperatureMgmt-Device-1), so a
// hyphen continues an identifier when a letter, digit or underscore follows.

namespace iotc {

enum class TokenKind {
  ident,
  number,
  lbrace,
  rbrace,
  lparen,
  rparen,
  colon,
  semicolon,
  comma,
  end
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::int64_t value = 0;  // set for number tokens
  SourceSpan span;
};

inline const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::ident: return "identifier";
    case TokenKind::number: return "number";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::colon: return "':'";
    case TokenKind::semicolon: return "';'";
    case TokenKind::comma: return "','";
    case TokenKind::end: return "end of file";
  }
  return "?";
}

class Lexer {
 public:
  Lexer(std::string text, std::string file) : text_(std::move(text)), file_(std::move(file)) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next_token();
      bool done = t.kind == TokenKind::end;
      out.push_back(std::move(t));
      if (done) return out;
    }
  }

 private:
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char peek(size_t off = 0) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (peek() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next_token() {
    Token t;
    t.span = {file_, line_, col_, line_, col_};
    char c = peek();
    if (c == '\0') {
      t.kind = TokenKind::end;
      return t;
    }
    if (ident_start(c)) {
      std::string s;
      while (ident_cont(peek()) || (peek() == '-' && ident_cont(peek(1)))) {
        s += peek();
        advance();
      }
      t.kind = TokenKind::ident;
      t.text = std::move(s);
      t.span.end_line = line_;
      t.span.end_col = col_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::string s;
      if (peek() == '-') {
        s += '-';
        advance();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        s += peek();
        advance();
      }
      t.kind = TokenKind::number;
      t.text = s;
      t.value = std::stoll(s);
      t.span.end_line = line_;
      t.span.end_col = col_;
      return t;
    }
    switch (c) {
      case '{': t.kind = TokenKind::lbrace; break;
      case '}': t.kind = TokenKind::rbrace; break;
      case '(': t.kind = TokenKind::lparen; break;
      case ')': t.kind = TokenKind::rparen; break;
      case ':': t.kind = TokenKind::colon; break;
      case ';': t.kind = TokenKind::semicolon; break;
      case ',': t.kind = TokenKind::comma; break;
      default:
        throw ParseError{std::string("stray character '") + c + "'", t.span, {}};
    }
    t.text = std::string(1, c);
    advance();
    t.span.end_line = line_;
    t.span.end_col = col_;
    return t;
  }

  std::string text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace iotc
