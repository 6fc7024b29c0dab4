#include "j2aig/lower.hpp"

#include <map>

#include "j2aig/arith.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

const CircuitVar* Circuit::find_var(const std::string& name) const {
    for (const auto& v : vars)
        if (v.name == name) return &v;
    return nullptr;
}

const CircuitVar* Circuit::find_input(const std::string& name) const {
    for (const auto& v : inputs)
        if (v.name == name) return &v;
    return nullptr;
}

BitVec resolve_array_access(Aig& g, const std::vector<BitVec>& elems, const BitVec& index) {
    if (elems.empty()) throw Error("access to an empty array");
    const int w = static_cast<int>(index.size());
    BitVec out = elems.back();
    for (size_t j = elems.size() - 1; j-- > 0;)
        out = bv::mux(g, bv::eq(g, index, bv::constant(static_cast<int64_t>(j), w)), elems[j], out);
    return out;
}

OlpProgram resolve_array_target_terms(const OlpProgram& olp, int width) {
    OlpProgram out = olp;
    out.next.clear();
    for (const auto& a : olp.next) {
        if (!a.index) {
            out.next.push_back(a);
            continue;
        }
        const Decl* d = olp.find(a.target);
        if (!d) throw SemanticError("undeclared array '" + a.target + "'");
        if (auto k = constant_value(a.index)) {
            int64_t idx = arith::wrap(*k, width);
            for (int j = 0; j < d->size(); ++j)
                if (arith::wrap(j, width) == idx) out.next.push_back(OlpAssign{a.target, ex::int_const(j), a.value});
            continue;
        }
        for (int j = 0; j < d->size(); ++j) {
            ExprPtr jj = ex::int_const(j);
            out.next.push_back(OlpAssign{a.target, jj,
                                         ex::ternary(ex::eq(jj, a.index), a.value, ex::index(a.target, {jj}))});
        }
    }
    return out;
}

namespace {

struct Val {
    BitVec bits;
    Type type = Type::Int;
};

bool is_constant(const BitVec& v) {
    for (Lit l : v)
        if (l != kTrue && l != kFalse) return false;
    return true;
}

int64_t constant_of(const BitVec& v) {
    uint64_t u = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] == kTrue) u |= uint64_t{1} << i;
    return arith::wrap(static_cast<int64_t>(u), static_cast<int>(v.size()));
}

class Lowerer {
public:
    Lowerer(Circuit& c, const OlpProgram& olp) : c_(c), g_(c.aig), olp_(olp), w_(c.cfg.width), pcw_(c.pc_width) {}

    void build() {
        for (const auto& d : olp_.inputs) c_.inputs.push_back(make_var(d, false));
        for (const auto& d : olp_.decls) c_.vars.push_back(make_var(d, true));
        for (auto& v : c_.inputs) sym_[v.name] = &v;
        for (auto& v : c_.vars) sym_[v.name] = &v;

        Lit oob_latch = c_.cfg.check_bounds ? g_.add_latch("err::oob") : kFalse;
        Lit ovf_latch = c_.cfg.check_overflow ? g_.add_latch("err::overflow") : kFalse;
        Lit div_latch = g_.add_latch("err::divzero");

        for (const auto& a : olp_.init) init(a);

        std::vector<std::pair<const CircuitVar*, std::vector<BitVec>>> next;
        for (const auto& a : olp_.next) next.emplace_back(sym_.at(a.target), next_of(a));
        for (auto& [var, elems] : next)
            for (size_t j = 0; j < elems.size(); ++j)
                for (size_t b = 0; b < elems[j].size(); ++b) g_.set_next(var->elems[j][b], elems[j][b]);

        if (oob_latch != kFalse) g_.set_next(oob_latch, g_.or2(oob_latch, oob_));
        if (ovf_latch != kFalse) g_.set_next(ovf_latch, g_.or2(ovf_latch, ovf_));
        g_.set_next(div_latch, g_.or2(div_latch, div_));

        outputs(oob_latch, ovf_latch, div_latch);
    }

private:
    int bits_of(Type t) const { return t == Type::Bool ? 1 : t == Type::Label ? pcw_ : w_; }

    CircuitVar make_var(const Decl& d, bool latch) {
        CircuitVar v{d.name, d.type, bits_of(d.type), {}};
        for (int j = 0; j < d.size(); ++j) {
            std::string base = d.is_array() ? d.name + "(" + std::to_string(j) + ")" : d.name;
            BitVec bits;
            for (int b = 0; b < v.bits; ++b) {
                std::string n = base + ":" + std::to_string(b);
                bits.push_back(latch ? g_.add_latch(n) : g_.add_input(n));
            }
            v.elems.push_back(bits);
        }
        return v;
    }

    BitVec as_int(const Val& v) const {
        return v.type == Type::Int ? v.bits : bv::zext(v.bits, w_);
    }
    Lit as_bool(const Val& v) { return v.type == Type::Bool ? v.bits.at(0) : bv::any(g_, v.bits); }
    BitVec as_label(const Val& v) const { return v.type == Type::Label ? v.bits : bv::zext(v.bits, pcw_); }

    BitVec convert(const Val& v, Type t) {
        switch (t) {
        case Type::Bool: return {as_bool(v)};
        case Type::Label: return as_label(v);
        default: return as_int(v);
        }
    }

    void flag(Lit& acc, Lit guard, Lit cond) { acc = g_.or2(acc, g_.and2(guard, cond)); }

    Lit out_of_range(const BitVec& idx, size_t size) {
        Lit neg = idx.back();
        if (static_cast<int64_t>(size) > arith::max_value(w_)) return neg;
        return g_.or2(neg, bv::sle(g_, bv::constant(static_cast<int64_t>(size), w_), idx));
    }

    const CircuitVar& var(const std::string& name) const {
        auto it = sym_.find(name);
        if (it == sym_.end()) throw SemanticError("undeclared variable '" + name + "'");
        return *it->second;
    }

    Val traverse(const Expr& e, Lit guard) {
        switch (e.kind) {
        case ExprKind::IntConst: return {bv::constant(e.value, w_), Type::Int};
        case ExprKind::BoolConst: return {{e.value ? kTrue : kFalse}, Type::Bool};
        case ExprKind::LabelConst: return {bv::constant(e.value, pcw_), Type::Label};
        case ExprKind::Var: {
            const CircuitVar& v = var(e.name);
            return {v.elems.at(0), v.type};
        }
        case ExprKind::Index: {
            const CircuitVar& v = var(e.name);
            BitVec idx = as_int(traverse(*e.args.at(0), guard));
            if (is_constant(idx)) {
                int64_t k = constant_of(idx);
                if (k >= 0 && k < static_cast<int64_t>(v.elems.size())) return {v.elems[static_cast<size_t>(k)], v.type};
            }
            flag(oob_, guard, out_of_range(idx, v.elems.size()));
            return {resolve_array_access(g_, v.elems, idx), v.type};
        }
        case ExprKind::Unary: {
            Val a = traverse(*e.args[0], guard);
            if (e.op == Op::Not) return {{lit_not(as_bool(a))}, Type::Bool};
            bv::ArithOut r = bv::neg(g_, as_int(a));
            flag(ovf_, guard, r.overflow);
            return {r.value, Type::Int};
        }
        case ExprKind::Binary: return binary(e, guard);
        case ExprKind::Ternary: {
            Lit c = as_bool(traverse(*e.args[0], guard));
            Val t = traverse(*e.args[1], g_.and2(guard, c));
            Val f = traverse(*e.args[2], g_.and2(guard, lit_not(c)));
            Type rt = t.type == Type::Bool && f.type == Type::Bool ? Type::Bool
                      : t.type == Type::Label || f.type == Type::Label ? Type::Label
                                                                       : Type::Int;
            return {bv::mux(g_, c, convert(t, rt), convert(f, rt)), rt};
        }
        default: throw UnsupportedOp("expression kind not supported in circuits");
        }
    }

    Val binary(const Expr& e, Lit guard) {
        if (is_logical_op(e.op)) {
            Lit a = as_bool(traverse(*e.args[0], guard));
            Lit inner = e.op == Op::Or ? g_.and2(guard, lit_not(a)) : g_.and2(guard, a);
            Lit b = as_bool(traverse(*e.args[1], inner));
            switch (e.op) {
            case Op::And: return {{g_.and2(a, b)}, Type::Bool};
            case Op::Or: return {{g_.or2(a, b)}, Type::Bool};
            default: return {{g_.or2(lit_not(a), b)}, Type::Bool};
            }
        }
        Val x = traverse(*e.args[0], guard);
        Val y = traverse(*e.args[1], guard);
        if (e.op == Op::Eq || e.op == Op::Ne) {
            Lit same;
            if (x.type == Type::Bool && y.type == Type::Bool) same = g_.xnor2(x.bits[0], y.bits[0]);
            else if (x.type == Type::Label && y.type == Type::Label) same = bv::eq(g_, x.bits, y.bits);
            else same = bv::eq(g_, as_int(x), as_int(y));
            return {{e.op == Op::Eq ? same : lit_not(same)}, Type::Bool};
        }
        BitVec a = as_int(x);
        BitVec b = as_int(y);
        switch (e.op) {
        case Op::Lt: return {{bv::slt(g_, a, b)}, Type::Bool};
        case Op::Le: return {{bv::sle(g_, a, b)}, Type::Bool};
        case Op::Gt: return {{bv::slt(g_, b, a)}, Type::Bool};
        case Op::Ge: return {{bv::sle(g_, b, a)}, Type::Bool};
        default: break;
        }
        if ((e.op == Op::Mul || e.op == Op::Div || e.op == Op::Mod) && c_.cfg.abstract_nonlinear)
            return {bv::inputs(g_, "abs::" + std::to_string(++abstracted_), w_), Type::Int};
        bv::ArithOut r;
        switch (e.op) {
        case Op::Add: r = bv::add(g_, a, b); break;
        case Op::Sub: r = bv::sub(g_, a, b); break;
        case Op::Mul: r = bv::mul(g_, a, b, c_.cfg.check_overflow); break;
        case Op::Div:
        case Op::Mod: {
            bv::DivOut d = bv::divmod(g_, a, b);
            flag(div_, guard, d.divzero);
            flag(ovf_, guard, d.overflow);
            return {e.op == Op::Div ? d.quotient : d.remainder, Type::Int};
        }
        default: throw UnsupportedOp(std::string("operator ") + op_symbol(e.op));
        }
        flag(ovf_, guard, r.overflow);
        return {r.value, Type::Int};
    }

    void init(const OlpAssign& a) {
        const CircuitVar& v = var(a.target);
        std::vector<BitVec> values;
        if (a.value->kind == ExprKind::Var && c_.find_input(a.value->name)) {
            const CircuitVar& src = *c_.find_input(a.value->name);
            for (size_t j = 0; j < v.elems.size(); ++j)
                values.push_back(convert({src.elems.at(std::min(j, src.elems.size() - 1)), src.type}, v.type));
        } else {
            // Errors in initial values are not tracked.
            Lit saved[] = {oob_, ovf_, div_};
            BitVec bits = convert(traverse(*a.value, kFalse), v.type);
            oob_ = saved[0];
            ovf_ = saved[1];
            div_ = saved[2];
            values.assign(v.elems.size(), bits);
        }
        for (size_t j = 0; j < v.elems.size(); ++j)
            for (size_t b = 0; b < v.elems[j].size(); ++b) g_.set_init(v.elems[j][b], values[j][b]);
    }

    std::vector<BitVec> next_of(const OlpAssign& a) {
        const CircuitVar& v = var(a.target);
        BitVec value = convert(traverse(*a.value, kTrue), v.type);
        if (!a.index) return {value};
        BitVec idx = as_int(traverse(*a.index, kTrue));
        std::vector<BitVec> out = v.elems;
        if (is_constant(idx)) {
            int64_t k = constant_of(idx);
            if (k >= 0 && k < static_cast<int64_t>(out.size())) {
                out[static_cast<size_t>(k)] = value;
                return out;
            }
        }
        flag(oob_, kTrue, out_of_range(idx, out.size()));
        for (size_t j = 0; j < out.size(); ++j)
            out[j] = bv::mux(g_, bv::eq(g_, idx, bv::constant(static_cast<int64_t>(j), w_)), value, out[j]);
        return out;
    }

    void outputs(Lit oob, Lit ovf, Lit div) {
        const CircuitVar& pc = var(kPc);
        Lit done = bv::eq(g_, pc.elems[0], bv::constant(c_.done, pcw_));
        Lit pre_all = kTrue;
        Lit violation = kFalse;
        for (const auto& d : olp_.decls) {
            if (d.name.rfind("pre::", 0) != 0) continue;
            Lit pre = var(d.name).elems[0][0];
            pre_all = g_.and2(pre_all, pre);
            const std::string post = post_var(d.name.substr(5));
            if (sym_.count(post)) {
                Lit p = var(post).elems[0][0];
                violation = g_.or2(violation, g_.and2(g_.and2(pre, done), lit_not(p)));
            }
        }
        Lit depth = sym_.count(depth_flag()) ? var(depth_flag()).elems[0][0] : kFalse;
        Lit errors = g_.or_all({oob, ovf, div, depth});
        g_.add_output(kOutViolation, violation);
        g_.add_output(kOutBad, g_.or2(violation, g_.and2(pre_all, errors)));
        g_.add_output(kOutDone, done);
        g_.add_output(kOutPre, pre_all);
        g_.add_output(kOutOob, oob);
        g_.add_output(kOutOverflow, ovf);
        g_.add_output(kOutDivZero, div);
        g_.add_output(kOutDepth, depth);
    }

    Circuit& c_;
    Aig& g_;
    const OlpProgram& olp_;
    int w_;
    int pcw_;
    std::map<std::string, CircuitVar*> sym_;
    Lit oob_ = kFalse;
    Lit ovf_ = kFalse;
    Lit div_ = kFalse;
    int abstracted_ = 0;
};

} // namespace

Circuit build_circuit(const OlpProgram& olp, const LowerConfig& cfg) {
    if (cfg.width < 1 || cfg.width > 64) throw Error("width must be between 1 and 64");
    Circuit c;
    c.cfg = cfg;
    c.pc_width = olp.pc_width;
    c.first = olp.first;
    c.done = olp.done;
    c.olp = std::make_shared<const OlpProgram>(olp);
    Lowerer(c, olp).build();
    c.aig.check();
    return c;
}

} // namespace j2aig
