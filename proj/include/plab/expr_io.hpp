#pragma once

#include <stdexcept>
#include <string>

#include "plab/rational_expr.hpp"

namespace plab {

struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at offset " + std::to_string(pos)), offset(pos) {}
    std::size_t offset;
};

// Grammar: integers, symbol names, + - * / ^ and parentheses. Exponents are
// integers (negative allowed). Whitespace is ignored.
RationalExpr parse_expr(const TablePtr& table, const std::string& text);
Polynomial parse_poly(const TablePtr& table, const std::string& text);

}  // namespace plab
