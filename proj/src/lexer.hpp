#ifndef SHACLCQA_LEXER_HPP
#define SHACLCQA_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shaclcqa/errors.hpp"

namespace shaclcqa {

// Shared tokenizer for the fact, shapes, and query DSLs.
enum class TokType {
  Ident,
  Var,     // ?name
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Assign,  // :=
  Amp,
  Pipe,
  Bang,
  Star,
  Slash,
  Caret,
  Geq,     // >=
  Leq,     // <=
  Eq,      // =
  LBracket,
  RBracket,
  End,
};

struct Token {
  TokType type = TokType::End;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  Token expect(TokType type, const std::string& what);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace shaclcqa

#endif
