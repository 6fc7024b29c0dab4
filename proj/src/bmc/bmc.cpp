#include "j2aig/bmc.hpp"

#include <fstream>

#include "j2aig/errors.hpp"
#include "j2aig/sat.hpp"

namespace j2aig {

namespace {

using sat::SLit;

// Time-frame expansion with constant folding. Variable 0 is constant true.
class Unroller {
public:
    Unroller(const Aig& g, bool free_initial) : g_(g), free_initial_(free_initial) {
        s_.new_var();
        s_.add_clause({kT});
        cnf_.num_vars = 1;
        cnf_.clauses.push_back({1});
    }

    SLit lit(Lit l, int frame) {
        SLit s = node(lit_node(l), frame);
        return lit_compl(l) ? sat::lnot(s) : s;
    }

    sat::Solver& solver() { return s_; }
    const sat::Cnf& cnf() const { return cnf_; }

    void add(std::vector<SLit> c) {
        std::vector<int> d;
        for (SLit l : c) d.push_back(sat::is_neg(l) ? -(sat::var_of(l) + 1) : sat::var_of(l) + 1);
        cnf_.clauses.push_back(std::move(d));
        s_.add_clause(std::move(c));
    }

    /// Input values of frames 0..last; inputs never encoded read as 0.
    InputFrames inputs(int last) const {
        InputFrames out;
        for (int t = 0; t <= last; ++t) {
            std::vector<bool> row;
            for (uint32_t id : g_.inputs()) {
                auto it = map_.find(key(id, t));
                row.push_back(it != map_.end() && s_.model_value(it->second));
            }
            out.push_back(std::move(row));
        }
        return out;
    }

    static constexpr SLit kT = sat::pos(0);
    static constexpr SLit kF = sat::neg(0);

private:
    static uint64_t key(uint32_t id, int frame) { return (static_cast<uint64_t>(frame) << 32) | id; }

    SLit fresh() {
        ++cnf_.num_vars;
        return sat::pos(s_.new_var());
    }

    SLit and_of(SLit a, SLit b) {
        if (a == kF || b == kF || a == sat::lnot(b)) return kF;
        if (a == kT) return b;
        if (b == kT || a == b) return a;
        SLit x = fresh();
        add({sat::lnot(x), a});
        add({sat::lnot(x), b});
        add({x, sat::lnot(a), sat::lnot(b)});
        return x;
    }

    // Iterative so that long latch chains across frames do not overflow the
    // call stack.
    SLit node(uint32_t id, int frame) {
        if (id == 0) return kF;
        if (auto it = map_.find(key(id, frame)); it != map_.end()) return it->second;
        std::vector<std::pair<uint32_t, int>> stack{{id, frame}};
        while (!stack.empty()) {
            auto [n, t] = stack.back();
            if (n == 0 || map_.count(key(n, t))) {
                stack.pop_back();
                continue;
            }
            const AigNode& x = g_.node(n);
            std::vector<std::pair<uint32_t, int>> deps;
            if (x.kind == NodeKind::And) {
                deps = {{lit_node(x.a), t}, {lit_node(x.b), t}};
            } else if (x.kind == NodeKind::Latch) {
                if (t > 0) deps = {{lit_node(x.a), t - 1}};
                else if (!free_initial_) deps = {{lit_node(x.b), 0}};
            }
            bool ready = true;
            for (auto d : deps)
                if (d.first != 0 && !map_.count(key(d.first, d.second))) {
                    stack.push_back(d);
                    ready = false;
                }
            if (!ready) continue;
            stack.pop_back();
            auto get = [&](Lit l, int f) {
                SLit s = lit_node(l) == 0 ? kF : map_.at(key(lit_node(l), f));
                return lit_compl(l) ? sat::lnot(s) : s;
            };
            SLit v = kF;
            switch (x.kind) {
            case NodeKind::Const: v = kF; break;
            case NodeKind::Input: v = fresh(); break;
            case NodeKind::Latch:
                if (t > 0) v = get(x.a, t - 1);
                else v = free_initial_ ? fresh() : get(x.b, 0);
                break;
            case NodeKind::And: v = and_of(get(x.a, t), get(x.b, t)); break;
            }
            map_[key(n, t)] = v;
        }
        return map_.at(key(id, frame));
    }

    const Aig& g_;
    bool free_initial_;
    sat::Solver s_;
    sat::Cnf cnf_;
    std::unordered_map<uint64_t, SLit> map_;
};

sat::Result solve_frame(Unroller& u, SLit target, int frame, const BmcOptions& opt) {
    if (!opt.dimacs_prefix.empty()) {
        sat::Cnf q = u.cnf();
        q.clauses.push_back({sat::is_neg(target) ? -(sat::var_of(target) + 1) : sat::var_of(target) + 1});
        std::ofstream out(opt.dimacs_prefix + std::to_string(frame) + ".cnf");
        if (!out) throw IoError("cannot write " + opt.dimacs_prefix + std::to_string(frame) + ".cnf");
        out << sat::to_dimacs(q);
    }
    return u.solver().solve({target}, opt.conflict_budget);
}

Lit named_output(const Aig& g, const std::string& name) {
    int k = g.find_output(name);
    if (k < 0) throw Error("no output named '" + name + "'");
    return g.outputs()[static_cast<size_t>(k)].second;
}

Verdict unknown(int frame, const std::string& why) {
    Verdict v;
    v.kind = Verdict::Kind::Unknown;
    v.depth = frame;
    v.note = why;
    return v;
}

} // namespace

std::string to_string(const Verdict& v) {
    switch (v.kind) {
    case Verdict::Kind::Counterexample: return "counterexample at frame " + std::to_string(v.depth);
    case Verdict::Kind::SafeUpTo: return "safe up to frame " + std::to_string(v.depth);
    case Verdict::Kind::Proved: return "proved (" + std::to_string(v.depth) + ")";
    case Verdict::Kind::Unknown: return "unknown" + (v.note.empty() ? std::string{} : ": " + v.note);
    }
    return {};
}

Verdict bmc_check(const Aig& g, Lit target, int max_frames, const BmcOptions& opt) {
    if (max_frames < 0) throw Error("max_frames must be non-negative");
    Unroller u(g, false);
    for (int k = 0; k <= max_frames; ++k) {
        SLit t = u.lit(target, k);
        if (t == Unroller::kF) continue;
        sat::Result r = t == Unroller::kT ? u.solver().solve({}, opt.conflict_budget) : solve_frame(u, t, k, opt);
        if (r == sat::Result::Unknown) {
            Verdict v = unknown(k, "conflict budget exhausted at frame " + std::to_string(k));
            if (k > 0) {
                v.kind = Verdict::Kind::SafeUpTo;
                v.depth = k - 1;
            }
            return v;
        }
        if (r == sat::Result::Sat) {
            Verdict v;
            v.kind = Verdict::Kind::Counterexample;
            v.depth = k;
            v.inputs = u.inputs(k);
            SimTrace tr = simulate(g, v.inputs, k + 1);
            if (!tr.value(k, target)) throw Error("internal error: counterexample does not replay");
            return v;
        }
        u.add({sat::lnot(t)});
    }
    Verdict v;
    v.kind = Verdict::Kind::SafeUpTo;
    v.depth = max_frames;
    return v;
}

Verdict bmc_check(const Aig& g, const std::string& output, int max_frames, const BmcOptions& opt) {
    return bmc_check(g, named_output(g, output), max_frames, opt);
}

Verdict prove_by_induction(const Aig& g, Lit target, int k, const BmcOptions& opt) {
    if (k < 1) throw Error("induction depth must be at least 1");
    Verdict base = bmc_check(g, target, k - 1, opt);
    if (base.is_cex()) return base;
    if (base.kind == Verdict::Kind::Unknown || base.depth < k - 1) return unknown(base.depth, "base case inconclusive");

    Unroller u(g, true);
    for (int t = 0; t < k; ++t) u.add({sat::lnot(u.lit(target, t))});
    SLit last = u.lit(target, k);
    sat::Result r = last == Unroller::kF ? sat::Result::Unsat : u.solver().solve({last}, opt.conflict_budget);
    if (r == sat::Result::Unsat) {
        Verdict v;
        v.kind = Verdict::Kind::Proved;
        v.depth = k;
        v.note = "k-induction";
        return v;
    }
    return unknown(k, r == sat::Result::Sat ? "induction step fails at depth " + std::to_string(k) : "conflict budget exhausted in the induction step");
}

Verdict prove_by_induction(const Aig& g, const std::string& output, int k, const BmcOptions& opt) {
    return prove_by_induction(g, named_output(g, output), k, opt);
}

Aig add_termination_monitor(const Aig& g, int theta) {
    if (theta < 1) throw Error("termination bound must be at least 1");
    Aig m = g;
    int bits = 1;
    while ((int64_t{1} << bits) <= theta) ++bits;
    std::vector<Lit> cnt;
    for (int b = 0; b < bits; ++b) cnt.push_back(m.add_latch("time:" + std::to_string(b)));
    // reached: counter >= theta, as a comparison against the constant.
    Lit ge = kTrue;
    for (int b = 0; b < bits; ++b) {
        const bool one = (theta >> b) & 1;
        ge = one ? m.and2(cnt[static_cast<size_t>(b)], ge) : m.or2(cnt[static_cast<size_t>(b)], ge);
    }
    Lit carry = lit_not(ge);
    for (int b = 0; b < bits; ++b) {
        m.set_next(cnt[static_cast<size_t>(b)], m.xor2(cnt[static_cast<size_t>(b)], carry));
        carry = m.and2(cnt[static_cast<size_t>(b)], carry);
    }
    Lit pre = g.find_output("pre") >= 0 ? g.output("pre") : kTrue;
    m.add_output("nonterm", m.and2(m.and2(ge, pre), lit_not(named_output(g, "done"))));
    return m;
}

TerminationResult termination_scheme(const Aig& g, int theta, const BmcOptions& opt) {
    TerminationResult res;
    Aig m = add_termination_monitor(g, theta);
    Verdict t = bmc_check(m, "nonterm", theta, opt);
    if (t.is_cex()) {
        res.termination = unknown(theta, "termination unproved: a run is still active after " + std::to_string(theta) + " steps");
        res.termination.inputs = t.inputs;
        res.correctness = unknown(0, "termination unproved");
        return res;
    }
    if (t.kind != Verdict::Kind::SafeUpTo || t.depth < theta) {
        res.termination = unknown(theta, "termination check inconclusive");
        res.correctness = unknown(0, "termination unproved");
        return res;
    }
    res.termination.kind = Verdict::Kind::Proved;
    res.termination.depth = theta;
    Verdict c = bmc_check(g, "bad", theta, opt);
    if (c.kind == Verdict::Kind::SafeUpTo && c.depth == theta) {
        c.kind = Verdict::Kind::Proved;
        c.note = "termination bound " + std::to_string(theta);
    }
    res.correctness = c;
    return res;
}

} // namespace j2aig
