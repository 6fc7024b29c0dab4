// Helpers shared by the preprocessing passes.
#pragma once

#include <functional>
#include <string>

#include "j2aig/ast.hpp"

namespace j2aig::detail {

/// Every top-level block: function bodies, routines, then the main body.
void for_each_block(Program& p, const std::function<void(Block&)>& fn);

/// Applies `fn` (as in `rewrite`) to the target and expression of every
/// statement in `b`, nested blocks included.
void rewrite_block(Block& b, const std::function<ExprPtr(const ExprPtr&)>& fn);
void rewrite_program(Program& p, const std::function<ExprPtr(const ExprPtr&)>& fn);

/// `prefix` followed by the smallest positive number not yet declared.
std::string fresh_name(const Program& p, const std::string& prefix);

void add_decl(Program& p, Decl d);

/// Replaces b[i] with `seq`. The first new statement inherits the id of the
/// replaced one so that jumps aimed at it stay valid; any other statement
/// carrying that id (or id 0) gets a fresh one. Returns seq.size().
size_t splice(Program& p, Block& b, size_t i, Block seq);

bool has_call(const ExprPtr& e);
bool has_quantifier(const ExprPtr& e);

} // namespace j2aig::detail
