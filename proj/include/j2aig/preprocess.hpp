#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "j2aig/ast.hpp"
#include "j2aig/labels.hpp"

namespace j2aig {

struct PreprocessConfig {
    /// Frames reserved for each recursive function.
    int max_depth = 8;
    /// Expand constant-range quantifiers inline instead of lowering to loops.
    bool unroll_quantifiers = false;
};

// Generated names. They contain "::", which the lexer never produces, so
// they cannot collide with user identifiers.
std::string scoped_name(const std::string& fn, const std::string& var);
std::string pre_var(const std::string& spec);
std::string post_var(const std::string& spec);
std::string nondet_var(const std::string& var);
std::string stack_pointer(const std::string& fn);
inline const char* depth_flag() { return "depth::exceeded"; }

/// Spec names in declaration order, recovered from the `pre::` variables.
std::vector<std::string> spec_names(const Program& p);

/// Checks names, arities and array shapes; renames function parameters and
/// locals to `f::x` and quantifier-bound variables to unique `q::x<N>`.
Program rename_scopes(Program p);

/// Drops functions unreachable from the main body.
Program remove_uncalled_functions(Program p);

/// Functions on a call-graph cycle.
std::set<std::string> recursive_functions(const Program& p);

/// Function names ordered so that callees precede their callers.
std::vector<std::string> callee_first_order(const Program& p);

/// Replaces array parameters by the actual arrays of each call site, using a
/// per-function call-site id `f::cid` when there is more than one site.
Program resolve_array_reference_args(Program p);

/// Lowers a non-recursive function into a routine entered by jumps.
Program resolve_non_recursive_function(Program p, const std::string& fname);

struct RecursiveFrame {
    std::string name;
    std::vector<std::string> params;
    int entry_id = 0;
    int max_depth = 1;
};

/// Adds a frame dimension to every parameter and local of `fname` and turns
/// its body into a routine indexed by `sp::fname`.
Program resolve_recursive_function_declaration(Program p, const std::string& fname, int max_depth,
                                               RecursiveFrame* frame);

/// Expands every call of a function whose declaration was already resolved.
Program resolve_recursive_function_calls(Program p, const RecursiveFrame& frame);

/// Lowers quantifiers into accumulator loops, or unrolls constant ranges
/// when `unroll` is set.
Program resolve_quantifiers(Program p, bool unroll);

/// Expands a quantifier over a constant range into a conjunction or
/// disjunction. Throws NonConstantRange.
ExprPtr unroll_quantifier(const ExprPtr& q);

/// Replaces `@pre n {b}` / `@post n {b}` by assignments to `pre::n` / `post::n`.
Program resolve_pre_post(Program p);

/// Rewrites two-dimensional arrays to one dimension, row-major.
Program flatten_arrays(Program p);

/// Variables read on some path before any assignment reaches them.
std::set<std::string> nondet_variables(const LabeledProgram& lp);

/// Marks the variables of `nondet_variables` so they start from primary inputs.
LabeledProgram inject_nondet_init(const LabeledProgram& lp);

/// True if only Jcore constructs remain: no calls, quantifiers, specs,
/// returns, functions or two-dimensional arrays.
bool is_jcore(const Program& p);

/// Full lowering from J to labeled Jcore.
LabeledProgram preprocess(Program p, const PreprocessConfig& cfg = {});

} // namespace j2aig
