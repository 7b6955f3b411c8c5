#pragma once

// Tokenizer shared by the formula and action parsers.

#include <cstddef>
#include <string>
#include <string_view>

#include "dorep/error.hpp"
#include "dorep/logic.hpp"

namespace dorep::detail {

enum class Tok {
  End,
  Ident,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Semicolon,
  If,
  Then,
  Else,
  Do,
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t pos = 0;
};

const char* describe(Tok t);
bool is_keyword(std::string_view word);

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }
  bool accept(Tok kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }
  Token expect(Tok kind) {
    if (current_.kind != kind) fail(std::string("expected ") + describe(kind));
    return next();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse,
                what + " at position " + std::to_string(current_.pos) + ", found " +
                    describe(current_.kind),
                current_.pos);
  }

 private:
  void advance();

  std::string_view src_;
  std::size_t offset_ = 0;
  Token current_;
};

/// Parses one formula starting at the lexer's current token.
Formula parse_formula(Lexer& lex, const Signature& sig);

}  // namespace dorep::detail
