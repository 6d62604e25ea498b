#include "lexer.hpp"

#include <cctype>

namespace shaclcqa {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

Lexer::Lexer(std::string_view text) {
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.type = TokType::Ident;
      t.text = std::string(text.substr(i, j - i));
      bump(j - i);
    } else if (c == '?') {
      std::size_t j = i + 1;
      if (j >= text.size() || !ident_start(text[j]))
        throw ParseError("expected variable name after '?'", line, col);
      while (j < text.size() && ident_char(text[j])) ++j;
      t.type = TokType::Var;
      t.text = std::string(text.substr(i + 1, j - i - 1));
      bump(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.type = TokType::Number;
      t.text = std::string(text.substr(i, j - i));
      bump(j - i);
    } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
      t.type = TokType::Assign;
      bump(2);
    } else if (c == '>' && i + 1 < text.size() && text[i + 1] == '=') {
      t.type = TokType::Geq;
      bump(2);
    } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      t.type = TokType::Leq;
      bump(2);
    } else {
      switch (c) {
        case '(': t.type = TokType::LParen; break;
        case ')': t.type = TokType::RParen; break;
        case '{': t.type = TokType::LBrace; break;
        case '}': t.type = TokType::RBrace; break;
        case '[': t.type = TokType::LBracket; break;
        case ']': t.type = TokType::RBracket; break;
        case ',': t.type = TokType::Comma; break;
        case '.': t.type = TokType::Dot; break;
        case '&': t.type = TokType::Amp; break;
        case '|': t.type = TokType::Pipe; break;
        case '!': t.type = TokType::Bang; break;
        case '*': t.type = TokType::Star; break;
        case '/': t.type = TokType::Slash; break;
        case '^': t.type = TokType::Caret; break;
        case '=': t.type = TokType::Eq; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      bump(1);
    }
    toks_.push_back(std::move(t));
  }
  Token end;
  end.type = TokType::End;
  end.line = line;
  end.col = col;
  toks_.push_back(std::move(end));
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t at = pos_ + ahead;
  if (at >= toks_.size()) at = toks_.size() - 1;
  return toks_[at];
}

Token Lexer::next() {
  Token t = toks_[pos_];
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

Token Lexer::expect(TokType type, const std::string& what) {
  const Token& t = peek();
  if (t.type != type) {
    std::string got = t.type == TokType::End ? "end of input" : "'" + t.text + "'";
    if (t.text.empty() && t.type != TokType::End) got = "token";
    throw ParseError("expected " + what, t.line, t.col);
  }
  return next();
}

void Lexer::fail(const std::string& msg) const {
  const Token& t = peek();
  throw ParseError(msg, t.line, t.col);
}

}  // namespace shaclcqa
