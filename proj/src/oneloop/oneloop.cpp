#include "j2aig/oneloop.hpp"

#include <sstream>

#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"
#include "j2aig/printer.hpp"

namespace j2aig {

namespace {

ExprPtr at_label(int label) { return ex::eq(ex::var(kPc), ex::label_const(label)); }

// Assignments targeting `name`, in ascending label order.
std::vector<const LabelInfo*> writers(const LabeledProgram& lp, const std::string& name) {
    std::vector<const LabelInfo*> out;
    for (const auto& li : lp.infos())
        if (li.stmt->kind == StmtKind::Assign && li.stmt->target->name == name) out.push_back(&li);
    return out;
}

} // namespace

const Decl* OlpProgram::find(const std::string& name) const {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    for (const auto& d : inputs)
        if (d.name == name) return &d;
    return nullptr;
}

Type olp_var_type(const OlpProgram& olp, const std::string& name) {
    const Decl* d = olp.find(name);
    if (!d) throw SemanticError("undeclared variable '" + name + "'");
    return d->type;
}

std::vector<Decl> generate_declaration_list(const LabeledProgram& lp) {
    std::vector<Decl> out = lp.program().decls;
    out.push_back(Decl{kPc, Type::Label, {}, std::nullopt, false, 0});
    out.push_back(Decl{kNotDone, Type::Bool, {}, std::nullopt, false, 0});
    return out;
}

std::vector<OlpAssign> generate_init_list(const LabeledProgram& lp) {
    std::vector<OlpAssign> out;
    for (const auto& d : lp.program().decls) {
        ExprPtr v = d.nondet ? ex::var(nondet_var(d.name))
                    : d.init ? (d.type == Type::Bool ? ex::bool_const(*d.init != 0) : ex::int_const(*d.init))
                             : (d.type == Type::Bool ? ex::bool_const(false) : ex::int_const(0));
        if (!d.nondet && d.type == Type::Label) v = ex::label_const(d.init.value_or(0));
        out.push_back(OlpAssign{d.name, nullptr, v});
    }
    out.push_back(OlpAssign{kPc, nullptr, ex::label_const(lp.first())});
    out.push_back(OlpAssign{kNotDone, nullptr, ex::bool_const(true)});
    return out;
}

OlpAssign generate_var_next(const std::string& var, const LabeledProgram& lp) {
    auto ws = writers(lp, var);
    ExprPtr e = ex::var(var);
    for (auto it = ws.rbegin(); it != ws.rend(); ++it)
        e = ex::ternary(at_label((*it)->label), lp.resolve((*it)->stmt->expr), e);
    return OlpAssign{var, nullptr, e};
}

OlpAssign generate_array_next(const std::string& array, const LabeledProgram& lp) {
    auto ws = writers(lp, array);
    ExprPtr idx = ex::int_const(0);
    ExprPtr val = ex::index(array, {ex::int_const(0)});
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
        const Stmt& s = *(*it)->stmt;
        idx = ex::ternary(at_label((*it)->label), lp.resolve(s.target->args.at(0)), idx);
        val = ex::ternary(at_label((*it)->label), lp.resolve(s.expr), val);
    }
    return OlpAssign{array, idx, val};
}

OlpAssign generate_pc_next(const LabeledProgram& lp) {
    ExprPtr e = ex::var(kPc);
    const auto& infos = lp.infos();
    for (auto it = infos.rbegin(); it != infos.rend(); ++it) {
        const LabelInfo& li = *it;
        const Stmt& s = *li.stmt;
        ExprPtr to;
        switch (s.kind) {
        case StmtKind::If:
            to = ex::ternary(lp.resolve(s.expr), ex::label_const(li.then_target), ex::label_const(li.else_target));
            break;
        case StmtKind::While:
            to = ex::ternary(lp.resolve(s.expr), ex::label_const(li.body_target), ex::label_const(li.next));
            break;
        case StmtKind::Jump: to = lp.resolve(s.expr); break;
        default: to = ex::label_const(li.next); break;
        }
        e = ex::ternary(at_label(li.label), to, e);
    }
    return OlpAssign{kPc, nullptr, e};
}

OlpProgram generate_one_loop_program(const LabeledProgram& lp) {
    const Program& p = lp.program();
    if (!is_jcore(p)) throw SemanticError("one-loop translation needs a Jcore program");
    OlpProgram olp;
    olp.decls = generate_declaration_list(lp);
    for (const auto& d : p.decls) {
        if (!d.nondet) continue;
        Decl in = d;
        in.name = nondet_var(d.name);
        in.init.reset();
        in.nondet = false;
        olp.inputs.push_back(in);
    }
    olp.init = generate_init_list(lp);
    for (const auto& d : p.decls)
        olp.next.push_back(d.is_array() ? generate_array_next(d.name, lp) : generate_var_next(d.name, lp));
    olp.next.push_back(generate_pc_next(lp));
    olp.next.push_back(
        OlpAssign{kNotDone, nullptr, ex::lnot(ex::eq(ex::var(kPc), ex::label_const(lp.done())))});
    olp.first = lp.first();
    olp.done = lp.done();
    olp.pc_width = lp.pc_width();
    olp.source = std::make_shared<const LabeledProgram>(lp);
    return olp;
}

std::string print_olp(const OlpProgram& olp) {
    std::ostringstream out;
    for (const auto& d : olp.decls) {
        Decl plain = d;
        plain.init.reset();
        out << print_decl(plain) << "\n";
    }
    for (const auto& d : olp.inputs) out << "primary " << print_decl(d) << "\n";
    auto line = [&](const OlpAssign& a) {
        out << "  " << a.target;
        if (a.index) out << "[" << print_expr(a.index) << "]";
        out << " = " << print_expr(a.value) << ";\n";
    };
    out << "@dotogether {\n";
    for (const auto& a : olp.init) line(a);
    out << "}\n";
    out << "while (" << kNotDone << ") {\n@dotogether {\n";
    for (const auto& a : olp.next) line(a);
    out << "}\n}\n";
    return out.str();
}

} // namespace j2aig
