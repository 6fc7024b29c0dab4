#include "j2aig/aig.hpp"

#include <algorithm>

#include "j2aig/errors.hpp"

namespace j2aig {

Aig::Aig() { nodes_.push_back(AigNode{}); }

Lit Aig::add_input(std::string name) {
    auto id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(AigNode{NodeKind::Input, 0, 0, std::move(name)});
    inputs_.push_back(id);
    return make_lit(id);
}

Lit Aig::add_latch(std::string name, Lit init) {
    auto id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(AigNode{NodeKind::Latch, kFalse, init, std::move(name)});
    latches_.push_back(id);
    return make_lit(id);
}

void Aig::set_next(Lit latch, Lit next) {
    AigNode& n = nodes_.at(lit_node(latch));
    if (n.kind != NodeKind::Latch) throw Error("set_next on a non-latch node");
    n.a = next;
}

void Aig::set_init(Lit latch, Lit init) {
    AigNode& n = nodes_.at(lit_node(latch));
    if (n.kind != NodeKind::Latch) throw Error("set_init on a non-latch node");
    n.b = init;
}

Lit Aig::and2(Lit a, Lit b) {
    if (a > b) std::swap(a, b);
    if (a == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (a == b) return a;
    if (a == lit_not(b)) return kFalse;
    uint64_t key = (static_cast<uint64_t>(a) << 32) | b;
    auto it = strash_.find(key);
    if (it != strash_.end()) return make_lit(it->second);
    Lit l = and_raw(a, b);
    strash_.emplace(key, lit_node(l));
    return l;
}

Lit Aig::and_raw(Lit a, Lit b) {
    auto id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(AigNode{NodeKind::And, a, b, {}});
    ++num_ands_;
    return make_lit(id);
}

Lit Aig::xor2(Lit a, Lit b) { return or2(and2(a, lit_not(b)), and2(lit_not(a), b)); }

Lit Aig::mux(Lit sel, Lit then_, Lit else_) {
    if (sel == kTrue) return then_;
    if (sel == kFalse) return else_;
    if (then_ == else_) return then_;
    return or2(and2(sel, then_), and2(lit_not(sel), else_));
}

Lit Aig::and_all(const std::vector<Lit>& ls) {
    Lit r = kTrue;
    for (Lit l : ls) r = and2(r, l);
    return r;
}

Lit Aig::or_all(const std::vector<Lit>& ls) {
    Lit r = kFalse;
    for (Lit l : ls) r = or2(r, l);
    return r;
}

void Aig::add_output(std::string name, Lit l) { outputs_.emplace_back(std::move(name), l); }

int Aig::find_output(const std::string& name) const {
    for (size_t k = 0; k < outputs_.size(); ++k)
        if (outputs_[k].first == name) return static_cast<int>(k);
    return -1;
}

Lit Aig::output(const std::string& name) const {
    int k = find_output(name);
    if (k < 0) throw Error("no output named '" + name + "'");
    return outputs_[static_cast<size_t>(k)].second;
}

int Aig::levels() const {
    std::vector<int> level(nodes_.size(), 0);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const AigNode& n = nodes_[i];
        if (n.kind == NodeKind::And)
            level[i] = 1 + std::max(level[lit_node(n.a)], level[lit_node(n.b)]);
    }
    int best = 0;
    for (const auto& o : outputs_) best = std::max(best, level[lit_node(o.second)]);
    for (uint32_t l : latches_) best = std::max(best, level[lit_node(nodes_[l].a)]);
    return best;
}

void Aig::check() const {
    const auto n = static_cast<uint32_t>(nodes_.size());
    auto valid = [&](Lit l) { return lit_node(l) < n; };
    // Nodes whose value depends on some latch.
    std::vector<char> seq(nodes_.size(), 0);
    for (uint32_t i = 0; i < n; ++i) {
        const AigNode& x = nodes_[i];
        switch (x.kind) {
        case NodeKind::Const:
            if (i != 0) throw Error("constant node at position " + std::to_string(i));
            break;
        case NodeKind::Input: break;
        case NodeKind::Latch:
            if (!valid(x.a) || !valid(x.b)) throw Error("latch " + std::to_string(i) + " has a dangling fanin");
            seq[i] = 1;
            break;
        case NodeKind::And:
            // Fanins must precede the gate, which also rules out
            // combinational cycles.
            if (lit_node(x.a) >= i || lit_node(x.b) >= i)
                throw Error("and gate " + std::to_string(i) + " has a fanin that does not precede it");
            seq[i] = seq[lit_node(x.a)] || seq[lit_node(x.b)];
            break;
        }
    }
    for (uint32_t l : latches_)
        if (seq[lit_node(nodes_[l].b)])
            throw Error("initial value of latch " + std::to_string(l) + " depends on a latch");
    for (const auto& o : outputs_)
        if (!valid(o.second)) throw Error("output '" + o.first + "' has a dangling literal");
}

} // namespace j2aig
