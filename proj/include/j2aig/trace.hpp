// Counterexample back-translation and waveform output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "j2aig/interp.hpp"
#include "j2aig/lower.hpp"
#include "j2aig/simulate.hpp"

namespace j2aig {

/// One program variable; arrays have one element per entry of `elems`.
struct TraceSignal {
    std::string name;
    Type type = Type::Int;
    int bits = 0;
    int elems = 1;
    bool array = false;

    /// `a(j)` for array elements, the plain name otherwise.
    std::string element_name(int j) const;
};

struct CexStep {
    /// Per signal, per element.
    std::vector<std::vector<int64_t>> values;
    int pc = 0;
    bool notdone = true;
    ErrorFlags flags;
    /// Source line of the statement at pc, 0 if none.
    int line = 0;
};

struct CexTrace {
    std::string program;
    std::vector<TraceSignal> signals;
    std::vector<CexStep> steps;
    /// Nondeterministic initial values, keyed by variable name.
    Values inputs;

    int find(const std::string& name) const;
    int64_t value(size_t step, const std::string& name, int elem = 0) const;
};

/// Frames for `steps` steps: nondet inputs from `in` at step 0 (missing
/// values read as 0), every other input 0.
InputFrames encode_inputs(const Circuit& c, const Values& in, int steps);
/// Nondet inputs as set in frame 0.
Values decode_inputs(const Circuit& c, const InputFrames& frames);

/// Integer value of bits at a step; Int is sign-extended.
int64_t decode_bits(const SimTrace& tr, int step, const BitVec& bits, Type type);

/// Throws MissingSymbol when the circuit lacks pc or notdone.
CexTrace back_translate(const Circuit& c, const SimTrace& tr, const std::string& program = "program");

/// Register bits of the program variables at one step, in `c.vars` order.
std::vector<bool> encode_registers(const Circuit& c, const CexStep& step);
std::vector<bool> register_bits(const Circuit& c, const SimTrace& tr, int step);

void write_vcd(const CexTrace& t, std::ostream& out);
void write_vcd_file(const CexTrace& t, const std::string& path);

/// Raw VCD content: signal names and widths, and the value of every signal
/// at every time step (as an unsigned bit pattern).
struct VcdData {
    std::vector<std::string> names;
    std::vector<int> widths;
    std::vector<std::vector<uint64_t>> rows;
};
VcdData read_vcd(const std::string& text);

/// Tab separated: step, line, then every signal element, then error flags.
void write_tsv(const CexTrace& t, std::ostream& out);
void write_tsv_file(const CexTrace& t, const std::string& path);

/// First line of a TSV file written when there is nothing to show.
inline constexpr const char* kNoCounterexample = "# no counterexample";

struct TsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<int64_t>> rows;
    bool empty_marker = false;
};
/// Throws FormatError on malformed or empty input.
TsvData read_tsv(const std::string& text);

} // namespace j2aig
