#pragma once

#include <string_view>

#include "aclaw/atom.hpp"
#include "aclaw/expr.hpp"

namespace aclaw {

Expr parse(std::string_view text, const SymbolTable& symbols);
Poly parse_poly(std::string_view text, const SymbolTable& symbols);
// A single atom such as `x`, `c`, `u_xx` or `u[1]_x`.
Atom parse_atom(std::string_view text, const SymbolTable& symbols);

}  // namespace aclaw
