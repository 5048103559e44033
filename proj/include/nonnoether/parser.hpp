#pragma once

#include "nonnoether/expr.hpp"

#include <string>
#include <vector>

namespace nonnoether {

// Parses the expression grammar shared by model files and the CLI:
//   expr    := term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := rational | coord | 't' | factor '^' uint
//            | 'exp' '(' linform ')' | '(' expr ')' | '-' factor
//   linform := signed rational-weighted sum of coords
// Rationals are written p or p/q. Coordinate names come from the model.
// Throws UnknownSymbol for undeclared names, NonLinearExponent when an exp
// argument is not a rational-linear form in the coordinates, ParseError for
// malformed input. The result is always in normal form.
Expr parse_expr(const std::string& text, const std::vector<std::string>& coord_names);

} // namespace nonnoether
