// One-loop programs: a declaration list, an init list run once, and a next
// list whose assignments are evaluated against the same state and committed
// together on every step while `notdone` holds.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "j2aig/ast.hpp"
#include "j2aig/labels.hpp"

namespace j2aig {

inline constexpr const char* kPc = "pc";
inline constexpr const char* kNotDone = "notdone";

/// `target = value` for scalars, `target[index] = value` for arrays. In the
/// init list an array target without index assigns every element.
struct OlpAssign {
    std::string target;
    ExprPtr index;
    ExprPtr value;
};

struct OlpProgram {
    /// Program variables followed by pc and notdone.
    std::vector<Decl> decls;
    /// Primary inputs `v::nondet`, one per variable read before assignment.
    std::vector<Decl> inputs;
    std::vector<OlpAssign> init;
    std::vector<OlpAssign> next;
    int first = 0;
    int done = 1;
    int pc_width = 1;
    std::shared_ptr<const LabeledProgram> source;

    const Decl* find(const std::string& name) const;
};

std::vector<Decl> generate_declaration_list(const LabeledProgram& lp);
std::vector<OlpAssign> generate_init_list(const LabeledProgram& lp);
OlpAssign generate_var_next(const std::string& var, const LabeledProgram& lp);
OlpAssign generate_array_next(const std::string& array, const LabeledProgram& lp);
OlpAssign generate_pc_next(const LabeledProgram& lp);

OlpProgram generate_one_loop_program(const LabeledProgram& lp);

std::string print_olp(const OlpProgram& olp);

/// Type of any variable or input of the program.
Type olp_var_type(const OlpProgram& olp, const std::string& name);

} // namespace j2aig
