// Reference interpreters for J, Jcore and one-loop programs.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "j2aig/ast.hpp"
#include "j2aig/labels.hpp"
#include "j2aig/oneloop.hpp"

namespace j2aig {

/// Variable name to value; scalars hold one element.
using Values = std::map<std::string, std::vector<int64_t>>;

struct InterpConfig {
    int width = 32;
    uint64_t max_steps = 1'000'000;
    bool check_bounds = false;
    bool check_overflow = false;
    bool check_div_zero = true;
    /// Throw on enabled checks and on the step limit instead of recording flags.
    bool strict = false;
    bool record_trace = false;
    /// Frames per function for run_j.
    int max_depth = 8;
};

/// Sticky runtime error flags, recorded whether or not checks are enabled.
struct ErrorFlags {
    bool oob = false;
    bool overflow = false;
    bool divzero = false;
    bool depth = false;

    bool any() const { return oob || overflow || divzero || depth; }
};

struct RunResult {
    Values env;
    uint64_t steps = 0;
    bool terminated = false;
    ErrorFlags flags;
    /// Label executed at each step (Jcore) or pc before each step (Olp).
    std::vector<int> pcs;
    /// Environment after each step when record_trace is set.
    std::vector<Values> trace;
};

/// Runs a J program directly: functions with real frames, quantifiers by
/// enumeration. Steps count executed statements.
RunResult run_j(const Program& p, const Values& inputs, const InterpConfig& cfg);

/// Runs labeled Jcore, one statement per step.
RunResult run_jcore(const LabeledProgram& lp, const Values& inputs, const InterpConfig& cfg);

/// Runs the init list, then commits the next list simultaneously while
/// notdone holds.
RunResult run_olp(const OlpProgram& olp, const Values& inputs, const InterpConfig& cfg);

/// Initial value of each variable: nondet ones from `inputs` (default 0),
/// others from their constant initializer or 0.
Values initial_values(const std::vector<Decl>& decls, const Values& inputs, int width, int pc_width);

} // namespace j2aig
