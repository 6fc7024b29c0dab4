#pragma once

#include <string_view>
#include <vector>

#include "j2aig/ast.hpp"
#include "j2aig/lexer.hpp"

namespace j2aig {

/// Builds the AST of a J program. Throws ParseError on syntax errors and
/// RestrictionError when a rule on functions, calls or returns is violated.
Program parse(const std::vector<Token>& tokens);

/// tokenize + parse.
Program parse_source(std::string_view source);

/// Reads and parses a `.j` file; IoError if it cannot be opened.
Program parse_file(const std::string& path);

} // namespace j2aig
