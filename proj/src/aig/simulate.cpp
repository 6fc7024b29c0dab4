#include "j2aig/simulate.hpp"

#include "j2aig/errors.hpp"

namespace j2aig {

namespace {

void eval_ands(const Aig& g, std::vector<uint8_t>& v) {
    auto lv = [&](Lit l) -> uint8_t { return v[lit_node(l)] ^ static_cast<uint8_t>(lit_compl(l)); };
    for (uint32_t i = 1; i < g.num_nodes(); ++i) {
        const AigNode& n = g.node(i);
        if (n.kind == NodeKind::And) v[i] = lv(n.a) & lv(n.b);
    }
}

uint64_t word_of(const std::vector<uint64_t>& v, Lit l) { return lit_compl(l) ? ~v[lit_node(l)] : v[lit_node(l)]; }

void eval_ands(const Aig& g, std::vector<uint64_t>& v) {
    for (uint32_t i = 1; i < g.num_nodes(); ++i) {
        const AigNode& n = g.node(i);
        if (n.kind == NodeKind::And) v[i] = word_of(v, n.a) & word_of(v, n.b);
    }
}

// Simulates stimulus word `w` through all steps.
void simulate_word(const Aig& g, const PackedStimulus& stim, size_t w, std::vector<uint64_t>& v,
                   std::vector<uint64_t>& latch_next, PackedOutputs& out) {
    const auto& ins = g.inputs();
    const auto& lats = g.latches();
    std::fill(v.begin(), v.end(), 0);
    for (int t = 0; t < stim.steps; ++t) {
        for (size_t i = 0; i < ins.size(); ++i) v[ins[i]] = stim.at(t, i, w);
        if (t == 0) {
            // Initial-value cones are latch free, so one pass settles them.
            eval_ands(g, v);
            for (size_t k = 0; k < lats.size(); ++k) latch_next[k] = word_of(v, g.node(lats[k]).b);
        }
        for (size_t k = 0; k < lats.size(); ++k) v[lats[k]] = latch_next[k];
        eval_ands(g, v);
        for (size_t o = 0; o < g.outputs().size(); ++o)
            out.bits[(static_cast<size_t>(t) * out.num_outputs + o) * out.words + w] = word_of(v, g.outputs()[o].second);
        for (size_t k = 0; k < lats.size(); ++k) latch_next[k] = word_of(v, g.node(lats[k]).a);
    }
}

PackedOutputs make_outputs(const Aig& g, const PackedStimulus& stim) {
    if (stim.num_inputs != g.inputs().size()) throw Error("stimulus does not match the circuit inputs");
    PackedOutputs out;
    out.steps = stim.steps;
    out.num_outputs = g.outputs().size();
    out.words = stim.words;
    out.bits.assign(static_cast<size_t>(stim.steps) * out.num_outputs * stim.words, 0);
    return out;
}

} // namespace

SimTrace simulate(const Aig& g, const InputFrames& inputs, int steps) {
    const auto& ins = g.inputs();
    const auto& lats = g.latches();
    if (steps < 0) throw Error("simulate: negative step count");
    SimTrace tr;
    tr.steps = steps;
    std::vector<uint8_t> v(g.num_nodes(), 0);
    std::vector<uint8_t> next(lats.size(), 0);
    auto lv = [&](Lit l) -> uint8_t { return v[lit_node(l)] ^ static_cast<uint8_t>(lit_compl(l)); };
    for (int t = 0; t < steps; ++t) {
        if (static_cast<size_t>(t) < inputs.size()) {
            const auto& frame = inputs[static_cast<size_t>(t)];
            if (frame.size() != ins.size()) throw Error("simulate: input frame has the wrong size");
            for (size_t i = 0; i < ins.size(); ++i) v[ins[i]] = frame[i] ? 1 : 0;
        } else {
            for (uint32_t n : ins) v[n] = 0;
        }
        if (t == 0) {
            eval_ands(g, v);
            for (size_t k = 0; k < lats.size(); ++k) next[k] = lv(g.node(lats[k]).b);
        }
        for (size_t k = 0; k < lats.size(); ++k) v[lats[k]] = next[k];
        eval_ands(g, v);
        tr.values.push_back(v);
        for (size_t k = 0; k < lats.size(); ++k) next[k] = lv(g.node(lats[k]).a);
    }
    return tr;
}

PackedOutputs simulate_packed_serial(const Aig& g, const PackedStimulus& stim) {
    PackedOutputs out = make_outputs(g, stim);
    std::vector<uint64_t> v(g.num_nodes());
    std::vector<uint64_t> next(g.latches().size());
    for (size_t w = 0; w < stim.words; ++w) simulate_word(g, stim, w, v, next, out);
    return out;
}

PackedOutputs simulate_packed(const Aig& g, const PackedStimulus& stim) {
    PackedOutputs out = make_outputs(g, stim);
    const auto words = static_cast<long long>(stim.words);
#pragma omp parallel
    {
        std::vector<uint64_t> v(g.num_nodes());
        std::vector<uint64_t> next(g.latches().size());
#pragma omp for schedule(static)
        for (long long w = 0; w < words; ++w) simulate_word(g, stim, static_cast<size_t>(w), v, next, out);
    }
    return out;
}

} // namespace j2aig
