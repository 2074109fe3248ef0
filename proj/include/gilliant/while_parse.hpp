#pragma once

#include <stdexcept>

#include "gilliant/while_ast.hpp"

namespace gilliant::wl {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int l, int c, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                             ": " + what),
          line(l),
          col(c) {}
};

/// Parse a `.wl` source text: procedures, predicate definitions, and
/// specifications. The grammar is documented in the README.
WhileProgram parseWhile(const std::string& source);

/// Parse a single expression (used by the CLI for --arg values).
Expr parseWhileExpr(const std::string& source);

}  // namespace gilliant::wl
