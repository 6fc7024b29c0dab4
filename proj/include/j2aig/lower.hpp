// Lowering of one-loop programs to sequential circuits.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "j2aig/aig.hpp"
#include "j2aig/bitvec.hpp"
#include "j2aig/oneloop.hpp"

namespace j2aig {

inline constexpr const char* kOutViolation = "violation";
inline constexpr const char* kOutBad = "bad";
inline constexpr const char* kOutDone = "done";
inline constexpr const char* kOutPre = "pre";
inline constexpr const char* kOutOob = "oob";
inline constexpr const char* kOutOverflow = "overflow";
inline constexpr const char* kOutDivZero = "divzero";
inline constexpr const char* kOutDepth = "depth";

struct LowerConfig {
    int width = 32;
    bool check_overflow = false;
    bool check_bounds = false;
    /// Replace multiplication, division and remainder by fresh inputs.
    bool abstract_nonlinear = false;
};

/// Bits of one program variable (or primary input), one vector per element.
struct CircuitVar {
    std::string name;
    Type type = Type::Int;
    int bits = 0;
    std::vector<BitVec> elems;
};

struct Circuit {
    Aig aig;
    std::vector<CircuitVar> vars;
    std::vector<CircuitVar> inputs;
    LowerConfig cfg;
    int pc_width = 1;
    int first = 0;
    int done = 1;
    std::shared_ptr<const OlpProgram> olp;

    const CircuitVar* find_var(const std::string& name) const;
    const CircuitVar* find_input(const std::string& name) const;
};

/// Selects elems[j] for the first j with index == j, else the last element.
BitVec resolve_array_access(Aig& g, const std::vector<BitVec>& elems, const BitVec& index);

/// Expands every array assignment of the next list into per-element
/// assignments `a[j] = (j == ie) ? e : a[j]`; a constant index rewrites only
/// the addressed element.
OlpProgram resolve_array_target_terms(const OlpProgram& olp, int width);

Circuit build_circuit(const OlpProgram& olp, const LowerConfig& cfg);

} // namespace j2aig
