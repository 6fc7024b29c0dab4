#include "j2aig/interp.hpp"

#include <functional>

#include "j2aig/arith.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

namespace {

// Raised when a lenient run cannot continue meaningfully.
struct Abort {};

class Evaluator {
public:
    Evaluator(const InterpConfig& cfg, ErrorFlags& flags, int label_width)
        : cfg_(cfg), flags_(flags), label_width_(label_width) {}

    std::function<int64_t(const std::string&)> scalar;
    std::function<const std::vector<int64_t>&(const std::string&)> array;
    std::function<int64_t(const Expr&)> call;
    std::function<int64_t(int)> label_of;

    int64_t eval(const ExprPtr& e) { return eval(*e); }

    int64_t eval(const Expr& e) {
        switch (e.kind) {
        case ExprKind::IntConst: return arith::wrap(e.value, cfg_.width);
        case ExprKind::BoolConst: return e.value ? 1 : 0;
        case ExprKind::LabelConst: return static_cast<int64_t>(arith::mask(e.value, label_width_));
        case ExprKind::LabelRef: return label_of(static_cast<int>(e.value));
        case ExprKind::Var: {
            auto b = bound_.find(e.name);
            if (b != bound_.end()) return b->second;
            return scalar(e.name);
        }
        case ExprKind::Index: return read(e.name, eval(index_of(e)));
        case ExprKind::Call:
            if (!call) throw SemanticError("function call in a core program");
            return call(e);
        case ExprKind::Unary: {
            int64_t a = eval(e.args[0]);
            if (e.op == Op::Not) return a == 0 ? 1 : 0;
            return arithmetic(arith::neg(a, cfg_.width));
        }
        case ExprKind::Binary: return binary(e);
        case ExprKind::Ternary: return eval(e.args[0]) != 0 ? eval(e.args[1]) : eval(e.args[2]);
        case ExprKind::Forall:
        case ExprKind::Exists: {
            const bool forall = e.kind == ExprKind::Forall;
            int64_t lo = eval(e.args[0]);
            int64_t hi = eval(e.args[1]);
            auto it = bound_.find(e.name);
            const bool shadows = it != bound_.end();
            const int64_t saved = shadows ? it->second : 0;
            int64_t result = forall ? 1 : 0;
            for (int64_t k = lo; k <= hi; ++k) {
                bound_[e.name] = k;
                bool holds = eval(e.args[2]) != 0;
                if (holds != forall) {
                    result = forall ? 0 : 1;
                    break;
                }
            }
            if (shadows) bound_[e.name] = saved;
            else bound_.erase(e.name);
            return result;
        }
        }
        return 0;
    }

    /// Flattened index of a possibly two-dimensional access, as the
    /// preprocessor would compute it.
    ExprPtr index_of(const Expr& e) {
        if (e.args.size() == 1) return e.args[0];
        ExprPtr flat = e.args[0];
        const auto& shape = dims(e.name);
        for (size_t k = 1; k < e.args.size(); ++k) flat = index2d(flat, e.args[k], shape.at(k));
        return flat;
    }

    std::function<const std::vector<int>&(const std::string&)> dims;

    int64_t read(const std::string& name, int64_t idx) {
        const auto& a = array(name);
        const auto size = static_cast<int64_t>(a.size());
        if (idx < 0 || idx >= size) fault_oob(name, idx, size);
        if (idx >= 0 && idx < size) return a[static_cast<size_t>(idx)];
        for (int64_t j = 0; j + 1 < size; ++j)
            if (arith::wrap(j, cfg_.width) == idx) return a[static_cast<size_t>(j)];
        return a.back();
    }

    /// Elements written by `name[idx] = ...`: every j whose wrapped value is idx.
    std::vector<size_t> write_slots(const std::string& name, int64_t idx, size_t size) {
        const auto n = static_cast<int64_t>(size);
        if (idx < 0 || idx >= n) fault_oob(name, idx, n);
        std::vector<size_t> out;
        for (int64_t j = 0; j < n; ++j)
            if (arith::wrap(j, cfg_.width) == idx) out.push_back(static_cast<size_t>(j));
        return out;
    }

    void fault_depth(const std::string& fn) {
        flags_.depth = true;
        if (cfg_.strict) throw DepthExceeded(fn);
    }

private:
    int64_t arithmetic(const arith::Result& r) {
        if (r.overflow) {
            flags_.overflow = true;
            if (cfg_.strict && cfg_.check_overflow) throw ArithmeticOverflow();
        }
        if (r.divzero) {
            flags_.divzero = true;
            if (cfg_.strict && cfg_.check_div_zero) throw DivisionByZero();
        }
        return r.value;
    }

    void fault_oob(const std::string& name, int64_t idx, int64_t size) {
        flags_.oob = true;
        if (cfg_.strict && cfg_.check_bounds) throw OutOfBounds(name, idx, size);
    }

    int64_t binary(const Expr& e) {
        switch (e.op) {
        case Op::And: return eval(e.args[0]) != 0 && eval(e.args[1]) != 0 ? 1 : 0;
        case Op::Or: return eval(e.args[0]) != 0 || eval(e.args[1]) != 0 ? 1 : 0;
        case Op::Implies: return eval(e.args[0]) == 0 || eval(e.args[1]) != 0 ? 1 : 0;
        default: break;
        }
        int64_t a = eval(e.args[0]);
        int64_t b = eval(e.args[1]);
        const int w = cfg_.width;
        switch (e.op) {
        case Op::Add: return arithmetic(arith::add(a, b, w));
        case Op::Sub: return arithmetic(arith::sub(a, b, w));
        case Op::Mul: return arithmetic(arith::mul(a, b, w));
        case Op::Div: return arithmetic(arith::div(a, b, w));
        case Op::Mod: return arithmetic(arith::mod(a, b, w));
        case Op::Lt: return a < b;
        case Op::Le: return a <= b;
        case Op::Gt: return a > b;
        case Op::Ge: return a >= b;
        case Op::Eq: return a == b;
        case Op::Ne: return a != b;
        default: return 0;
        }
    }

    const InterpConfig& cfg_;
    ErrorFlags& flags_;
    int label_width_;
    std::map<std::string, int64_t> bound_;
};

int64_t convert(int64_t v, Type t, int width, int pc_width) {
    switch (t) {
    case Type::Bool: return v != 0 ? 1 : 0;
    case Type::Label: return static_cast<int64_t>(arith::mask(v, pc_width));
    default: return arith::wrap(v, width);
    }
}

void step_limit(const InterpConfig& cfg, RunResult& r) {
    if (cfg.strict) throw StepLimitExceeded(r.steps);
    r.terminated = false;
}

// Direct execution of J with a frame per active call.
class JRunner {
public:
    JRunner(const Program& p, const InterpConfig& cfg, RunResult& r)
        : p_(p), cfg_(cfg), r_(r), ev_(cfg, r.flags, 63) {
        ev_.scalar = [this](const std::string& n) { return slot(n).at(0); };
        ev_.array = [this](const std::string& n) -> const std::vector<int64_t>& { return slot(n); };
        ev_.dims = [this](const std::string& n) -> const std::vector<int>& { return decl(n).dims; };
        ev_.call = [this](const Expr& e) { return invoke(e); };
        ev_.label_of = [](int) -> int64_t { throw SemanticError("label reference in a J program"); };
    }

    void run(const Values& inputs) {
        for (const auto& d : p_.decls) {
            std::vector<int64_t> v(static_cast<size_t>(d.size()), d.init.value_or(0));
            auto it = inputs.find(d.name);
            if (it != inputs.end())
                for (size_t k = 0; k < v.size() && k < it->second.size(); ++k)
                    v[k] = convert(it->second[k], d.type, cfg_.width, 63);
            globals_[d.name] = v;
        }
        for_each_stmt(p_.body, [&](const Stmt& s) {
            if (s.kind == StmtKind::Pre || s.kind == StmtKind::Post) {
                std::string n = s.kind == StmtKind::Pre ? pre_var(s.spec) : post_var(s.spec);
                globals_[n] = {0};
                types_[n] = Type::Bool;
            }
        });
        try {
            block(p_.body);
            r_.terminated = true;
        } catch (const Abort&) {
            r_.terminated = false;
        }
        r_.env = globals_;
    }

private:
    struct Frame {
        const FunctionDecl* fn = nullptr;
        std::map<std::string, std::vector<int64_t>> own;
        std::map<std::string, std::vector<int64_t>*> alias;
        std::map<std::string, Decl> decls;
        int64_t result = 0;
    };

    enum class Flow { Normal, Break, Return };

    std::vector<int64_t>& slot(const std::string& n) {
        if (!frames_.empty()) {
            Frame& f = frames_.back();
            auto a = f.alias.find(n);
            if (a != f.alias.end()) return *a->second;
            auto o = f.own.find(n);
            if (o != f.own.end()) return o->second;
        }
        auto g = globals_.find(n);
        if (g == globals_.end()) throw SemanticError("undeclared variable '" + n + "'");
        return g->second;
    }

    const Decl& decl(const std::string& n) {
        if (!frames_.empty()) {
            auto it = frames_.back().decls.find(n);
            if (it != frames_.back().decls.end()) return it->second;
        }
        const Decl* d = p_.find_decl(n);
        if (!d) throw SemanticError("undeclared variable '" + n + "'");
        return *d;
    }

    Type type_of(const std::string& n) {
        auto t = types_.find(n);
        if (t != types_.end() && (frames_.empty() || !frames_.back().decls.count(n))) return t->second;
        return decl(n).type;
    }

    void tick() {
        if (r_.steps >= cfg_.max_steps) {
            step_limit(cfg_, r_);
            throw Abort{};
        }
        ++r_.steps;
    }

    void store(const ExprPtr& target, int64_t v) {
        Type t = type_of(target->name);
        v = convert(v, t, cfg_.width, 63);
        auto& dst = slot(target->name);
        if (target->kind == ExprKind::Var) {
            dst.at(0) = v;
            return;
        }
        int64_t idx = ev_.eval(ev_.index_of(*target));
        for (size_t j : ev_.write_slots(target->name, idx, dst.size())) dst[j] = v;
    }

    Flow block(const Block& b) {
        for (const auto& s : b) {
            Flow f = stmt(s);
            if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
    }

    Flow stmt(const Stmt& s) {
        tick();
        switch (s.kind) {
        case StmtKind::Assign: store(s.target, ev_.eval(s.expr)); break;
        case StmtKind::Call: ev_.eval(s.expr); break;
        case StmtKind::If: return block(ev_.eval(s.expr) ? s.body : s.orelse);
        case StmtKind::While:
            while (ev_.eval(s.expr)) {
                Flow f = block(s.body);
                if (f == Flow::Break) break;
                if (f == Flow::Return) return f;
                tick();
            }
            break;
        case StmtKind::Break: return Flow::Break;
        case StmtKind::Return:
            frames_.back().result = ev_.eval(s.expr);
            return Flow::Return;
        case StmtKind::Pre: globals_[pre_var(s.spec)] = {ev_.eval(s.expr) ? 1 : 0}; break;
        case StmtKind::Post: globals_[post_var(s.spec)] = {ev_.eval(s.expr) ? 1 : 0}; break;
        case StmtKind::Jump: throw SemanticError("jump in a J program");
        }
        return Flow::Normal;
    }

    int64_t invoke(const Expr& e) {
        const FunctionDecl* fn = p_.find_func(e.name);
        if (!fn) throw UnknownFunction("unknown function '" + e.name + "'");
        if (fn->params.size() != e.args.size()) throw ArityMismatch("wrong number of arguments to '" + e.name + "'");
        int& depth = depth_[e.name];
        if (depth >= cfg_.max_depth) {
            ev_.fault_depth(e.name);
            throw Abort{};
        }
        Frame f;
        f.fn = fn;
        for (size_t k = 0; k < fn->params.size(); ++k) {
            const Decl& prm = fn->params[k];
            f.decls[prm.name] = prm;
            if (prm.is_array()) {
                const std::string& actual = e.args[k]->name;
                f.alias[prm.name] = &slot(actual);
                f.decls[prm.name].dims = decl(actual).dims;
            } else {
                f.own[prm.name] = {convert(ev_.eval(e.args[k]), prm.type, cfg_.width, 63)};
            }
        }
        for (const auto& d : fn->locals) {
            f.decls[d.name] = d;
            f.own[d.name] = std::vector<int64_t>(static_cast<size_t>(d.size()), 0);
        }
        frames_.push_back(std::move(f));
        ++depth;
        block(fn->body);
        --depth;
        int64_t result = convert(frames_.back().result, fn->ret, cfg_.width, 63);
        frames_.pop_back();
        return result;
    }

    const Program& p_;
    const InterpConfig& cfg_;
    RunResult& r_;
    Evaluator ev_;
    Values globals_;
    std::map<std::string, Type> types_;
    std::vector<Frame> frames_;
    std::map<std::string, int> depth_;
};

} // namespace

Values initial_values(const std::vector<Decl>& decls, const Values& inputs, int width, int pc_width) {
    Values env;
    for (const auto& d : decls) {
        std::vector<int64_t> v(static_cast<size_t>(d.size()), 0);
        if (d.nondet) {
            auto it = inputs.find(d.name);
            if (it != inputs.end())
                for (size_t k = 0; k < v.size() && k < it->second.size(); ++k) v[k] = it->second[k];
        } else if (d.init) {
            std::fill(v.begin(), v.end(), *d.init);
        }
        for (auto& x : v) x = convert(x, d.type, width, pc_width);
        env[d.name] = std::move(v);
    }
    return env;
}

RunResult run_j(const Program& p, const Values& inputs, const InterpConfig& cfg) {
    RunResult r;
    JRunner(p, cfg, r).run(inputs);
    return r;
}

RunResult run_jcore(const LabeledProgram& lp, const Values& inputs, const InterpConfig& cfg) {
    const Program& p = lp.program();
    const int pcw = lp.pc_width();
    RunResult r;
    Values env = initial_values(p.decls, inputs, cfg.width, pcw);
    std::map<std::string, Type> types;
    for (const auto& d : p.decls) types[d.name] = d.type;

    Evaluator ev(cfg, r.flags, pcw);
    ev.scalar = [&](const std::string& n) { return env.at(n).at(0); };
    ev.array = [&](const std::string& n) -> const std::vector<int64_t>& { return env.at(n); };
    ev.label_of = [&](int id) -> int64_t { return lp.label_of(id); };
    ev.dims = [&](const std::string& n) -> const std::vector<int>& { return p.find_decl(n)->dims; };

    int pc = lp.first();
    r.terminated = true;
    while (pc != lp.done()) {
        if (pc < 1 || pc > lp.count()) {
            // No statement carries this label, so the machine is stuck.
            r.steps = cfg.max_steps;
            step_limit(cfg, r);
            break;
        }
        if (r.steps >= cfg.max_steps) {
            step_limit(cfg, r);
            break;
        }
        r.pcs.push_back(pc);
        const LabelInfo& li = lp.at(pc);
        const Stmt& s = *li.stmt;
        int nxt = li.next;
        switch (s.kind) {
        case StmtKind::Assign: {
            int64_t v = convert(ev.eval(s.expr), types.at(s.target->name), cfg.width, pcw);
            auto& dst = env.at(s.target->name);
            if (s.target->kind == ExprKind::Var) {
                dst.at(0) = v;
            } else {
                int64_t idx = ev.eval(s.target->args.at(0));
                for (size_t j : ev.write_slots(s.target->name, idx, dst.size())) dst[j] = v;
            }
            break;
        }
        case StmtKind::If: nxt = ev.eval(s.expr) ? li.then_target : li.else_target; break;
        case StmtKind::While: nxt = ev.eval(s.expr) ? li.body_target : li.next; break;
        case StmtKind::Jump: nxt = static_cast<int>(arith::mask(ev.eval(s.expr), pcw)); break;
        case StmtKind::Break: break;
        default: throw SemanticError("statement is not part of Jcore");
        }
        pc = nxt;
        ++r.steps;
        if (cfg.record_trace) r.trace.push_back(env);
    }
    r.env = std::move(env);
    return r;
}

RunResult run_olp(const OlpProgram& olp, const Values& inputs, const InterpConfig& cfg) {
    const int pcw = olp.pc_width;
    RunResult r;
    std::map<std::string, Type> types;
    for (const auto& d : olp.decls) types[d.name] = d.type;
    for (const auto& d : olp.inputs) types[d.name] = d.type;

    Values env;
    for (const auto& d : olp.inputs) {
        std::vector<int64_t> v(static_cast<size_t>(d.size()), 0);
        const std::string base = d.name.substr(0, d.name.size() - std::string("::nondet").size());
        auto it = inputs.find(base);
        if (it != inputs.end())
            for (size_t k = 0; k < v.size() && k < it->second.size(); ++k)
                v[k] = convert(it->second[k], d.type, cfg.width, pcw);
        env[d.name] = std::move(v);
    }
    for (const auto& d : olp.decls) env[d.name] = std::vector<int64_t>(static_cast<size_t>(d.size()), 0);

    Evaluator ev(cfg, r.flags, pcw);
    ev.scalar = [&](const std::string& n) { return env.at(n).at(0); };
    ev.array = [&](const std::string& n) -> const std::vector<int64_t>& { return env.at(n); };
    ev.label_of = [](int) -> int64_t { throw SemanticError("unresolved label reference in a one-loop program"); };
    ev.dims = [&](const std::string& n) -> const std::vector<int>& { return olp.find(n)->dims; };

    for (const auto& a : olp.init) {
        auto& dst = env.at(a.target);
        Type t = types.at(a.target);
        if (a.value->kind == ExprKind::Var && env.at(a.value->name).size() == dst.size() && dst.size() > 1) {
            const auto& src = env.at(a.value->name);
            for (size_t k = 0; k < dst.size(); ++k) dst[k] = convert(src[k], t, cfg.width, pcw);
            continue;
        }
        int64_t v = convert(ev.eval(a.value), t, cfg.width, pcw);
        std::fill(dst.begin(), dst.end(), v);
    }

    struct Pending {
        std::vector<int64_t>* dst;
        std::vector<size_t> slots;
        int64_t value;
    };
    std::vector<Pending> pending;
    r.terminated = true;
    while (env.at(kNotDone)[0]) {
        if (r.steps >= cfg.max_steps) {
            step_limit(cfg, r);
            break;
        }
        r.pcs.push_back(static_cast<int>(env.at(kPc)[0]));
        pending.clear();
        for (const auto& a : olp.next) {
            auto& dst = env.at(a.target);
            int64_t v = convert(ev.eval(a.value), types.at(a.target), cfg.width, pcw);
            if (a.index) pending.push_back({&dst, ev.write_slots(a.target, ev.eval(a.index), dst.size()), v});
            else pending.push_back({&dst, {0}, v});
        }
        for (auto& w : pending)
            for (size_t j : w.slots) (*w.dst)[j] = w.value;
        ++r.steps;
        if (cfg.record_trace) r.trace.push_back(env);
    }
    for (const auto& d : olp.inputs) env.erase(d.name);
    r.env = std::move(env);
    return r;
}

} // namespace j2aig
