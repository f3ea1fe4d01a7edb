#pragma once

#include <string>
#include <string_view>

#include "rif/bipoly.hpp"

namespace rif {

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := primary ('^' uint)*
//   primary:= number | number 'i' | 'i' | 'z1' | 'z2' | '(' expr ')'
// Numbers accept an optional decimal exponent (1.5e-3). Throws ParseError.
BiPoly parse_poly(std::string_view text);

// Text that parse_poly maps back to identical coefficients.
std::string format_poly(const BiPoly& p);

}  // namespace rif
