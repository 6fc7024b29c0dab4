// Bounded model checking, k-induction and the termination-bound scheme.
#pragma once

#include <cstdint>
#include <string>

#include "j2aig/aig.hpp"
#include "j2aig/simulate.hpp"

namespace j2aig {

struct Verdict {
    enum class Kind { Counterexample, SafeUpTo, Proved, Unknown };
    Kind kind = Kind::Unknown;
    /// Counterexample: frame at which the target holds. SafeUpTo: last frame
    /// checked. Proved: induction depth or termination bound.
    int depth = 0;
    /// Counterexample inputs, frames 0..depth.
    InputFrames inputs;
    std::string note;

    bool is_cex() const { return kind == Kind::Counterexample; }
};

std::string to_string(const Verdict& v);

struct BmcOptions {
    /// Conflict budget per SAT call; negative is unlimited.
    int64_t conflict_budget = -1;
    /// When set, every frame query is written as `<prefix><frame>.cnf`.
    std::string dimacs_prefix;
};

/// Checks frames 0..max_frames in order. A counterexample is replayed by
/// simulation before it is returned.
Verdict bmc_check(const Aig& g, Lit target, int max_frames, const BmcOptions& opt = {});
Verdict bmc_check(const Aig& g, const std::string& output, int max_frames, const BmcOptions& opt = {});

/// Base case over frames 0..k-1, then the step case: k frames from an
/// arbitrary state with the target false imply it is false at frame k.
Verdict prove_by_induction(const Aig& g, Lit target, int k, const BmcOptions& opt = {});
Verdict prove_by_induction(const Aig& g, const std::string& output, int k, const BmcOptions& opt = {});

/// Copy of `g` with a saturating step counter and an extra output `nonterm`
/// that holds when at least `theta` steps have been taken, `pre` holds and
/// `done` does not.
Aig add_termination_monitor(const Aig& g, int theta);

struct TerminationResult {
    /// Proved(theta) when no admissible run is still going after theta steps.
    Verdict termination;
    /// Complete BMC of `bad` to theta frames; Unknown when termination failed.
    Verdict correctness;
};

TerminationResult termination_scheme(const Aig& g, int theta, const BmcOptions& opt = {});

} // namespace j2aig
