#pragma once

#include "newt/poly.hpp"

namespace newt {

// Carries the byte offset of the offending character.
class ParseError : public MathError {
 public:
  ParseError(size_t position, const std::string& what)
      : MathError("parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Grammar (whitespace insignificant, no implicit multiplication):
//   expr       := ('+'|'-')? term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := base ('^' uint)?
//   base       := rational | identifier | '(' expr ')'
//   rational   := int ('/' uint)?
//   identifier := [A-Za-z_][A-Za-z0-9_]*
// The optional sign before the first term is an extension so that canonical
// output such as "-u*v + ..." re-parses.
Poly parse_poly(const std::string& src, const Ctx& ctx);

}  // namespace newt
