#pragma once

#include "chs/expr.hpp"

namespace chs {

struct ParseError : Error {
    ParseError(const std::string& msg, size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

struct ParseDiagnostics {
    bool odd_power_collapsed = false;  // an odd variable was raised to a power >= 2
};

/// Grammar (UTF-8, whitespace insignificant):
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := rational | ident | ident '^' uint | 'exp' '(' linexpr ')' | '(' expr ')'
///   rational := int ['/' uint]
///   linexpr  := ['-'] linterm (('+'|'-') linterm)*
///   linterm  := [rational '*'] ident
/// idents are [A-Za-z][A-Za-z0-9_]*; '^' is legal only on even variables.
/// An odd variable raised to a power >= 2 yields the zero expression and sets
/// the diagnostic flag. A leading '-' on expr/term is accepted.
GradedExpr parse_expr(const std::string& text, TablePtr table,
                      ParseDiagnostics* diag = nullptr);

/// Deterministic normal-form rendering; parse_expr(print_expr(e)) == e.
std::string print_expr(const GradedExpr& e);

}  // namespace chs
