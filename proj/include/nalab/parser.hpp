#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nalab/formula.hpp"

namespace nalab {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error(message), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Grammar, loosest to tightest:
//   imp   := or ( "->" imp )?
//   or    := and ( "|" and )*
//   and   := unary ( "&" unary )*
//   unary := "~" unary | "[]" ( "^" digits )? unary | atom
//   atom  := "bot" | [a-z][a-zA-Z0-9_]* | "(" imp ")"
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering; parse_formula(render_formula(a)) == a.
std::string render_formula(Formula a);

}  // namespace nalab
