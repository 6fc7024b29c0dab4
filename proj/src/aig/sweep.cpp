#include "j2aig/sweep.hpp"

#include <set>

namespace j2aig {

namespace {

constexpr uint8_t kX = 2;

uint8_t tnot(uint8_t v) { return v == kX ? kX : static_cast<uint8_t>(1 - v); }

uint8_t tand(uint8_t a, uint8_t b) {
    if (a == 0 || b == 0) return 0;
    if (a == 1 && b == 1) return 1;
    return kX;
}

uint8_t tjoin(uint8_t a, uint8_t b) { return a == b ? a : kX; }

class Ternary {
public:
    explicit Ternary(const Aig& g) : g_(g), v_(g.num_nodes(), kX) { v_[0] = 0; }

    std::vector<uint8_t> initial() {
        std::fill(v_.begin() + 1, v_.end(), kX);
        eval();
        std::vector<uint8_t> s;
        for (uint32_t l : g_.latches()) s.push_back(lit(g_.node(l).b));
        return s;
    }

    std::vector<uint8_t> step(const std::vector<uint8_t>& state) {
        const auto& lats = g_.latches();
        for (size_t k = 0; k < lats.size(); ++k) v_[lats[k]] = state[k];
        eval();
        std::vector<uint8_t> s;
        for (uint32_t l : lats) s.push_back(lit(g_.node(l).a));
        return s;
    }

private:
    uint8_t lit(Lit l) const { return lit_compl(l) ? tnot(v_[lit_node(l)]) : v_[lit_node(l)]; }

    void eval() {
        for (uint32_t i = 1; i < g_.num_nodes(); ++i) {
            const AigNode& n = g_.node(i);
            if (n.kind == NodeKind::And) v_[i] = tand(lit(n.a), lit(n.b));
        }
    }

    const Aig& g_;
    std::vector<uint8_t> v_;
};

// Per latch: 0 or 1 if stuck at that value, X otherwise.
std::vector<uint8_t> stuck_values(const Aig& g, int max_steps) {
    Ternary sim(g);
    std::vector<uint8_t> s = sim.initial();
    std::vector<uint8_t> acc = s;
    std::set<std::vector<uint8_t>> seen{s};
    for (int t = 0; t < max_steps; ++t) {
        s = sim.step(s);
        if (!seen.insert(s).second) return acc;
        for (size_t k = 0; k < s.size(); ++k) acc[k] = tjoin(acc[k], s[k]);
    }
    // Widen: the join only moves towards X, so this terminates.
    for (;;) {
        std::vector<uint8_t> n = sim.step(acc);
        bool changed = false;
        for (size_t k = 0; k < n.size(); ++k) {
            uint8_t j = tjoin(acc[k], n[k]);
            changed |= j != acc[k];
            acc[k] = j;
        }
        if (!changed) return acc;
    }
}

struct Rebuilt {
    Aig aig;
    int stuck = 0;
    int dangling = 0;
};

Rebuilt rebuild(const Aig& g, const std::vector<uint8_t>& stuck) {
    const auto& lats = g.latches();
    std::vector<int> latch_pos(g.num_nodes(), -1);
    for (size_t k = 0; k < lats.size(); ++k) latch_pos[lats[k]] = static_cast<int>(k);
    auto is_stuck = [&](uint32_t id) { return latch_pos[id] >= 0 && stuck[static_cast<size_t>(latch_pos[id])] != kX; };

    // Cone of influence of the outputs, with stuck latches as leaves.
    std::vector<char> live(g.num_nodes(), 0);
    std::vector<uint32_t> work;
    auto mark = [&](Lit l) {
        uint32_t id = lit_node(l);
        if (!live[id]) {
            live[id] = 1;
            work.push_back(id);
        }
    };
    for (const auto& o : g.outputs()) mark(o.second);
    while (!work.empty()) {
        uint32_t id = work.back();
        work.pop_back();
        const AigNode& n = g.node(id);
        if (n.kind == NodeKind::And || (n.kind == NodeKind::Latch && !is_stuck(id))) {
            mark(n.a);
            mark(n.b);
        }
    }

    Rebuilt r;
    std::vector<Lit> map(g.num_nodes(), kFalse);
    auto m = [&](Lit l) { return map[lit_node(l)] ^ static_cast<Lit>(lit_compl(l)); };
    for (uint32_t i = 1; i < g.num_nodes(); ++i) {
        const AigNode& n = g.node(i);
        switch (n.kind) {
        case NodeKind::Const: break;
        case NodeKind::Input: map[i] = r.aig.add_input(n.name); break;
        case NodeKind::Latch:
            if (is_stuck(i)) {
                map[i] = stuck[static_cast<size_t>(latch_pos[i])] ? kTrue : kFalse;
                ++r.stuck;
            } else if (!live[i]) {
                ++r.dangling;
            } else {
                map[i] = r.aig.add_latch(n.name);
            }
            break;
        case NodeKind::And:
            if (live[i]) map[i] = r.aig.and2(m(n.a), m(n.b));
            break;
        }
    }
    for (uint32_t l : lats)
        if (live[l] && !is_stuck(l)) {
            r.aig.set_next(map[l], m(g.node(l).a));
            r.aig.set_init(map[l], m(g.node(l).b));
        }
    for (const auto& o : g.outputs()) r.aig.add_output(o.first, m(o.second));
    return r;
}

} // namespace

SweepResult sweep_stuck_registers(const Aig& g, int max_steps) {
    SweepResult res;
    res.aig = g;
    for (;;) {
        ++res.rounds;
        Rebuilt r = rebuild(res.aig, stuck_values(res.aig, max_steps));
        res.stuck += r.stuck;
        res.dangling += r.dangling;
        const bool changed = r.stuck + r.dangling > 0 || r.aig.num_ands() != res.aig.num_ands();
        res.aig = std::move(r.aig);
        if (!changed) break;
    }
    res.aig.check();
    return res;
}

} // namespace j2aig
