#include "nalab/parser.hpp"

#include <cctype>
#include <string>

namespace nalab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty formula", pos_, pos_);
    Formula f = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input after formula", pos_, text_.size());
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t start, std::size_t end) {
    throw ParseError(what + " at offset " + std::to_string(start), {start, end});
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::imp(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) return Formula::neg(parse_unary());
    if (accept("[]")) {
      std::size_t k = 1;
      if (accept("^")) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected box exponent", start, pos_);
        if (pos_ - start > 4) fail("box exponent too large", start, pos_);
        k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      }
      return Formula::box(parse_unary(), k);
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ == text_.size()) fail("unexpected end of input", pos_, pos_);
    if (accept("(")) {
      Formula f = parse_imp();
      if (!accept(")")) fail("expected ')'", pos_, pos_);
      return f;
    }
    char c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          ++pos_;
        } else {
          break;
        }
      }
      std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "bot") return Formula::bot();
      return Formula::var(ident);
    }
    fail(std::string("unexpected character '") + c + "'", start, start + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(Formula a) {
  switch (a.op()) {
    case Op::Imp:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    default:
      return 4;
  }
}

void render(Formula a, std::string& out);

void render_wrapped(Formula a, bool parens, std::string& out) {
  if (parens) out += '(';
  render(a, out);
  if (parens) out += ')';
}

void render(Formula a, std::string& out) {
  switch (a.op()) {
    case Op::Var:
      out += a.name();
      return;
    case Op::Bot:
      out += "bot";
      return;
    case Op::Neg:
      out += '~';
      render_wrapped(a.child(), precedence(a.child()) < 4, out);
      return;
    case Op::Box:
      out += "[]";
      render_wrapped(a.child(), precedence(a.child()) < 4, out);
      return;
    case Op::And:
    case Op::Or: {
      int p = precedence(a);
      render_wrapped(a.lhs(), precedence(a.lhs()) < p, out);
      out += a.is(Op::And) ? " & " : " | ";
      render_wrapped(a.rhs(), precedence(a.rhs()) <= p, out);
      return;
    }
    case Op::Imp:
      render_wrapped(a.lhs(), precedence(a.lhs()) <= 1, out);
      out += " -> ";
      render(a.rhs(), out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render_formula(Formula a) {
  std::string out;
  render(a, out);
  return out;
}

}  // namespace nalab
