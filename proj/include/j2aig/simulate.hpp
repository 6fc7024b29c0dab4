// Cycle-accurate simulation of sequential AIGs.
#pragma once

#include <cstdint>
#include <vector>

#include "j2aig/aig.hpp"

namespace j2aig {

/// Value of every node at every simulated step.
struct SimTrace {
    int steps = 0;
    std::vector<std::vector<uint8_t>> values;

    bool value(int step, Lit l) const {
        return (values.at(static_cast<size_t>(step))[lit_node(l)] != 0) != lit_compl(l);
    }
};

/// One row per step, one entry per primary input (in `g.inputs()` order).
/// Steps without a row read every input as 0.
using InputFrames = std::vector<std::vector<bool>>;

/// Step 0 loads every latch with its initial-value function of the step-0
/// inputs; later steps load the previous step's next-state values.
SimTrace simulate(const Aig& g, const InputFrames& inputs, int steps);

/// 64 independent stimuli per word. Layout is [step][input][word].
struct PackedStimulus {
    int steps = 0;
    size_t num_inputs = 0;
    size_t words = 0;
    std::vector<uint64_t> bits;

    PackedStimulus() = default;
    PackedStimulus(int steps_, size_t num_inputs_, size_t words_)
        : steps(steps_), num_inputs(num_inputs_), words(words_),
          bits(static_cast<size_t>(steps_) * num_inputs_ * words_, 0) {}
    uint64_t& at(int step, size_t input, size_t word) {
        return bits[(static_cast<size_t>(step) * num_inputs + input) * words + word];
    }
    uint64_t at(int step, size_t input, size_t word) const {
        return bits[(static_cast<size_t>(step) * num_inputs + input) * words + word];
    }
};

/// Output values, laid out as [step][output][word].
struct PackedOutputs {
    int steps = 0;
    size_t num_outputs = 0;
    size_t words = 0;
    std::vector<uint64_t> bits;

    uint64_t at(int step, size_t output, size_t word) const {
        return bits[(static_cast<size_t>(step) * num_outputs + output) * words + word];
    }
    bool operator==(const PackedOutputs&) const = default;
};

/// Single-threaded packed simulation.
PackedOutputs simulate_packed_serial(const Aig& g, const PackedStimulus& stim);
/// Packed simulation with stimulus words distributed over OpenMP threads.
PackedOutputs simulate_packed(const Aig& g, const PackedStimulus& stim);

} // namespace j2aig
