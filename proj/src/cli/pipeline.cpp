#include "j2aig/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "j2aig/errors.hpp"
#include "j2aig/oneloop.hpp"
#include "j2aig/preprocess.hpp"
#include "j2aig/printer.hpp"
#include "j2aig/sweep.hpp"

namespace j2aig {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(std::vector<std::pair<std::string, double>>& out) : out_(out) {}
    void lap(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        out_.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }

private:
    std::vector<std::pair<std::string, double>>& out_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string statement_text(const Stmt& s) {
    switch (s.kind) {
    case StmtKind::Assign: return print_expr(s.target) + " = " + print_expr(s.expr);
    case StmtKind::Jump: return "jump " + print_expr(s.target);
    case StmtKind::If: return "if (" + print_expr(s.expr) + ")";
    case StmtKind::While: return "while (" + print_expr(s.expr) + ")";
    case StmtKind::Break: return "break";
    default: return "?";
    }
}

} // namespace

void ProveConfig::validate() const {
    if (width < 1 || width > 64) throw Error("--width must be between 1 and 64");
    if (array_bound < 0) throw Error("--array-bound must be positive");
    if (recursion_depth < 1) throw Error("--recursion-depth must be positive");
    if (theta && *theta < 1) throw Error("--theta must be positive");
    if (max_frames < 1) throw Error("--frames must be at least 1");
    if (induction_k < 1) throw Error("--induction-k must be positive");
}

void apply_array_bound(Program& p, int bound) {
    if (bound <= 0) return;
    for (auto& d : p.decls)
        if (d.dims.size() == 1) d.dims[0] = bound;
}

Circuit compile(const Program& p, const ProveConfig& cfg) {
    cfg.validate();
    Program q = p;
    apply_array_bound(q, cfg.array_bound);
    PreprocessConfig pc;
    pc.max_depth = cfg.recursion_depth;
    pc.unroll_quantifiers = cfg.unroll_quantifiers;
    LabeledProgram lp = preprocess(q, pc);
    OlpProgram olp = generate_one_loop_program(lp);
    LowerConfig lc;
    lc.width = cfg.width;
    lc.check_overflow = cfg.check_overflow;
    lc.check_bounds = cfg.check_bounds;
    lc.abstract_nonlinear = cfg.abstract_nonlinear;
    return build_circuit(olp, lc);
}

int64_t theta_cap(const LabeledProgram& lp, int width) {
    constexpr int64_t kMax = int64_t{1} << 40;
    int loops = 0;
    for (const auto& info : lp.infos()) {
        if (info.stmt->kind == StmtKind::While) ++loops;
        // Backward jumps of lowered calls close loops too.
        if (info.stmt->kind == StmtKind::Jump) ++loops;
    }
    int64_t cap = std::max(1, lp.count());
    for (int k = 0; k < loops && cap < kMax; ++k) cap = width >= 40 ? kMax : std::min(kMax, cap << width);
    return cap;
}

std::string label_table(const LabeledProgram& lp) {
    std::ostringstream out;
    out << "label\tline\tstatement\n";
    for (const auto& info : lp.infos())
        out << info.label << '\t' << info.stmt->line << '\t' << statement_text(*info.stmt) << '\n';
    out << lp.done() << "\t-\tdone\n";
    return out.str();
}

std::string ProveResult::verdict_line() const {
    switch (status) {
    case Status::Proved: return "PROVED";
    case Status::Violated: return "VIOLATED";
    case Status::SafeUpTo: return "SAFE-UP-TO " + std::to_string(depth);
    case Status::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

ProveResult prove(const Program& p, const ProveConfig& cfg) {
    ProveResult res;
    Stopwatch clock(res.timings);
    res.circuit = compile(p, cfg);
    clock.lap("compile");
    const Circuit& c = res.circuit;
    const LabeledProgram& lp = *c.olp->source;
    res.registers = c.aig.latches().size();

    SweepResult swept = sweep_stuck_registers(c.aig);
    const Aig& g = swept.aig;
    res.registers_swept = g.latches().size();
    clock.lap("sweep");

    BmcOptions opt;
    opt.conflict_budget = cfg.conflict_budget;

    auto violated = [&](const Verdict& v) {
        res.status = Status::Violated;
        res.depth = v.depth;
        res.cex = v;
        // Sweeping keeps the inputs in order, so the stimulus replays on the
        // original circuit.
        SimTrace tr = simulate(c.aig, v.inputs, v.depth + 1);
        if (!tr.value(v.depth, c.aig.output(kOutBad))) throw Error("internal error: counterexample does not replay on the unswept circuit");
        res.trace = back_translate(c, tr);
        res.inputs = decode_inputs(c, v.inputs);
        clock.lap("trace");
        return res;
    };

    Verdict ind = prove_by_induction(g, kOutBad, cfg.induction_k, opt);
    clock.lap("induction");
    if (ind.is_cex()) return violated(ind);
    const bool partial = ind.kind == Verdict::Kind::Proved;

    std::vector<int> candidates;
    if (cfg.theta) {
        candidates.push_back(*cfg.theta);
    } else {
        const int64_t cap = std::min<int64_t>(theta_cap(lp, cfg.width), cfg.max_frames);
        for (int64_t t = std::min<int64_t>(lp.done() + 1, cap);; t *= 2) {
            if (t >= cap) {
                candidates.push_back(static_cast<int>(cap));
                break;
            }
            candidates.push_back(static_cast<int>(t));
        }
    }
    for (int theta : candidates) {
        TerminationResult tr = termination_scheme(g, theta, opt);
        if (tr.termination.kind != Verdict::Kind::Proved) continue;
        clock.lap("termination");
        res.theta = theta;
        if (partial) {
            res.status = Status::Proved;
            res.note = "k-induction at depth " + std::to_string(ind.depth) + ", termination within " + std::to_string(theta) + " steps";
            return res;
        }
        const Verdict& v = tr.correctness;
        if (v.is_cex()) return violated(v);
        if (v.kind == Verdict::Kind::Proved) {
            res.status = Status::Proved;
            res.note = "bounded model checking to the termination bound " + std::to_string(theta);
        } else if (v.kind == Verdict::Kind::SafeUpTo) {
            res.status = Status::SafeUpTo;
            res.depth = v.depth;
            res.note = v.note;
        } else {
            res.status = Status::Unknown;
            res.note = v.note;
        }
        return res;
    }
    clock.lap("termination");

    // No termination bound: look for violations within the frame budget.
    Verdict v = bmc_check(g, kOutBad, cfg.max_frames, opt);
    clock.lap("bmc");
    if (v.is_cex()) return violated(v);
    if (partial || v.kind == Verdict::Kind::Unknown) {
        res.status = Status::Unknown;
        res.note = partial ? "no reachable violation (k-induction), termination unproved" : v.note;
    } else {
        res.status = Status::SafeUpTo;
        res.depth = v.depth;
        res.note = "termination unproved";
    }
    return res;
}

} // namespace j2aig
