// End-to-end verification pipeline shared by the command-line tool and tests.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "j2aig/bmc.hpp"
#include "j2aig/lower.hpp"
#include "j2aig/trace.hpp"

namespace j2aig {

struct ProveConfig {
    int width = 32;
    /// When positive, every global one-dimensional array gets this extent.
    int array_bound = 0;
    int recursion_depth = 8;
    bool check_overflow = false;
    bool check_bounds = false;
    bool unroll_quantifiers = false;
    bool abstract_nonlinear = false;
    std::optional<int> theta;
    int max_frames = 256;
    int induction_k = 4;
    int64_t conflict_budget = -1;

    /// Throws Error on out-of-range settings.
    void validate() const;
};

/// Resizes global one-dimensional arrays.
void apply_array_bound(Program& p, int bound);

/// preprocess -> one-loop program -> circuit.
Circuit compile(const Program& p, const ProveConfig& cfg);

/// Loop-count bound on the termination bound search: statements times
/// 2^width per loop, saturated.
int64_t theta_cap(const LabeledProgram& lp, int width);

/// Label, source line and statement of every labeled statement.
std::string label_table(const LabeledProgram& lp);

enum class Status { Proved, Violated, SafeUpTo, Unknown };

struct ProveResult {
    Status status = Status::Unknown;
    /// SafeUpTo: frames checked. Violated: frame of the violation.
    int depth = 0;
    std::string note;
    int theta = 0;
    size_t registers = 0;
    size_t registers_swept = 0;
    Circuit circuit;
    /// Violated only.
    Verdict cex;
    CexTrace trace;
    Values inputs;
    std::vector<std::pair<std::string, double>> timings;

    /// `VIOLATED`, `PROVED`, `SAFE-UP-TO k` or `UNKNOWN`.
    std::string verdict_line() const;
};

/// Sweep, k-induction, then the termination-bound scheme with bounded model
/// checking. Counterexamples are back-translated on the unswept circuit.
ProveResult prove(const Program& p, const ProveConfig& cfg);

} // namespace j2aig
