// Sequential and-inverter graphs.
//
// A literal is `node * 2 + complement`; node 0 is constant false, so literal
// 0 is false and 1 is true. Latches carry a next-state and an initial-value
// literal; the initial value may only depend on inputs.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace j2aig {

using Lit = uint32_t;

inline constexpr Lit kFalse = 0;
inline constexpr Lit kTrue = 1;

inline constexpr Lit lit_not(Lit l) { return l ^ 1U; }
inline constexpr uint32_t lit_node(Lit l) { return l >> 1; }
inline constexpr bool lit_compl(Lit l) { return (l & 1U) != 0; }
inline constexpr Lit make_lit(uint32_t node, bool compl_ = false) { return (node << 1) | (compl_ ? 1U : 0U); }
inline constexpr Lit lit_regular(Lit l) { return l & ~1U; }

enum class NodeKind : uint8_t { Const, Input, Latch, And };

struct AigNode {
    NodeKind kind = NodeKind::Const;
    /// And: fanins. Latch: a = next state, b = initial value.
    Lit a = 0;
    Lit b = 0;
    std::string name;
};

class Aig {
public:
    Aig();

    Lit add_input(std::string name = {});
    Lit add_latch(std::string name = {}, Lit init = kFalse);
    void set_next(Lit latch, Lit next);
    void set_init(Lit latch, Lit init);

    /// Structurally hashed AND with constant folding.
    Lit and2(Lit a, Lit b);
    /// AND node without hashing or folding (for readers that must keep
    /// the exact structure).
    Lit and_raw(Lit a, Lit b);
    Lit or2(Lit a, Lit b) { return lit_not(and2(lit_not(a), lit_not(b))); }
    Lit xor2(Lit a, Lit b);
    Lit xnor2(Lit a, Lit b) { return lit_not(xor2(a, b)); }
    Lit mux(Lit sel, Lit then_, Lit else_);
    Lit and_all(const std::vector<Lit>& ls);
    Lit or_all(const std::vector<Lit>& ls);

    void add_output(std::string name, Lit l);
    void set_output(size_t index, Lit l) { outputs_.at(index).second = l; }

    size_t num_nodes() const { return nodes_.size(); }
    const AigNode& node(uint32_t id) const { return nodes_.at(id); }
    AigNode& node_mut(uint32_t id) { return nodes_.at(id); }
    const std::vector<uint32_t>& inputs() const { return inputs_; }
    const std::vector<uint32_t>& latches() const { return latches_; }
    const std::vector<std::pair<std::string, Lit>>& outputs() const { return outputs_; }
    size_t num_ands() const { return num_ands_; }

    /// Index of the named output, or -1.
    int find_output(const std::string& name) const;
    Lit output(const std::string& name) const;

    Lit next_of(Lit latch) const { return nodes_.at(lit_node(latch)).a; }
    Lit init_of(Lit latch) const { return nodes_.at(lit_node(latch)).b; }

    /// Longest AND path feeding any output or latch.
    int levels() const;

    /// Throws Error unless latches have both fanins set, AND fanins precede
    /// their node, and no initial value depends on a latch.
    void check() const;

private:
    std::vector<AigNode> nodes_;
    std::vector<uint32_t> inputs_;
    std::vector<uint32_t> latches_;
    std::vector<std::pair<std::string, Lit>> outputs_;
    std::unordered_map<uint64_t, uint32_t> strash_;
    size_t num_ands_ = 0;
};

} // namespace j2aig
