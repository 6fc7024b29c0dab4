// ASCII AIGER ("aag") reading and writing.
//
// Latches whose initial value is neither 0 nor 1 are written uninitialized,
// with a comment line `j2aig init <latch> <literal>` giving the initial-value
// literal. The reader honours those lines; an uninitialized latch without one
// gets a fresh input `<latch>::init` as its initial value.
#pragma once

#include <string>

#include "j2aig/aig.hpp"

namespace j2aig {

struct AigerStats {
    size_t max_var = 0;
    size_t inputs = 0;
    size_t latches = 0;
    size_t outputs = 0;
    size_t ands = 0;
};

std::string write_aiger(const Aig& g);
void write_aiger_file(const Aig& g, const std::string& path);

/// Throws FormatError on malformed text.
Aig read_aiger(const std::string& text);
Aig read_aiger_file(const std::string& path);

/// Header counts of an aag text.
AigerStats aiger_header(const std::string& text);

} // namespace j2aig
