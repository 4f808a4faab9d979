#pragma once

#include <string>
#include <vector>

#include "orbitlab/poly.hpp"

namespace orbitlab {

/// Recursive-descent parser for polynomial/rational expressions over the
/// named variables: rational literals, + - * / ^ (integer powers), and
/// parentheses. Errors carry line, column, and the offending token.
RatFunc parse_expression(const std::string& text, const std::vector<std::string>& variables);

/// Convenience: a constant expression (no variables), e.g. "-3/5" or "2^10".
Rational parse_constant(const std::string& text);

/// Univariate rational function in the given variable name.
RatFunc1 parse_ratfunc1(const std::string& text, const std::string& variable);

/// Canonical serializations (round-trip through the parser).
std::string ratfunc_to_string(const RatFunc& f, const std::vector<std::string>& variables);

}  // namespace orbitlab
