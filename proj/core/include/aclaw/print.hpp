#pragma once

#include <string>

#include "aclaw/atom.hpp"
#include "aclaw/expr.hpp"
#include "aclaw/poly.hpp"

namespace aclaw {

enum class PrintStyle { machine, human };

// Machine style re-parses to the same normal form. Terms are grouped by powers of eps,
// ordered by degree, then canonically.
std::string print(const Poly& p, const SymbolTable& symbols, PrintStyle style = PrintStyle::machine);
std::string print(const Expr& e, const SymbolTable& symbols, PrintStyle style = PrintStyle::machine);
std::string print_atom(Atom a, const SymbolTable& symbols, PrintStyle style = PrintStyle::machine);

}  // namespace aclaw
