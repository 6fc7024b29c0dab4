// Structural register sweep.
#pragma once

#include "j2aig/aig.hpp"

namespace j2aig {

struct SweepResult {
    Aig aig;
    /// Latches replaced by a constant.
    int stuck = 0;
    /// Latches outside the cone of influence of every output.
    int dangling = 0;
    int rounds = 0;
};

/// Ternary simulation from the initial state with all inputs X, until a
/// ternary state repeats (or, after `max_steps`, until the join of all seen
/// states is closed under the transition). Latches with the same binary value
/// in every reached state become constants; the sweep repeats until nothing
/// changes. Inputs and outputs keep their order and names.
SweepResult sweep_stuck_registers(const Aig& g, int max_steps = 256);

} // namespace j2aig
