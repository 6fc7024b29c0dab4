#pragma once

#include <string>

#include "j2aig/ast.hpp"

namespace j2aig {

class LabeledProgram;

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string print_expr(const ExprPtr& e);

std::string print_decl(const Decl& d);

/// Canonical source text. Internal names (`f::x`) and jumps print in a
/// readable but not re-parseable form.
std::string print_program(const Program& p);

/// Source text with `// L` label comments; LabelRef targets print as labels.
std::string print_labeled(const LabeledProgram& lp);

} // namespace j2aig
