#include "j2aig/printer.hpp"

#include <sstream>

#include "j2aig/labels.hpp"

namespace j2aig {

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Ternary: return 0;
    case ExprKind::Unary: return 8;
    case ExprKind::Binary:
        switch (e.op) {
        case Op::Implies: return 1;
        case Op::Or: return 2;
        case Op::And: return 3;
        case Op::Eq: case Op::Ne: return 4;
        case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 5;
        case Op::Add: case Op::Sub: return 6;
        default: return 7;
        }
    case ExprKind::IntConst: return e.value < 0 ? 8 : 9;
    default: return 9;
    }
}

const char* type_name(Type t) { return t == Type::Bool ? "bool" : "int"; }

class ExprPrinter {
public:
    explicit ExprPrinter(const LabeledProgram* lp) : lp_(lp) {}

    std::string str(const ExprPtr& e, int min_prec = 0) const {
        std::string s = raw(*e);
        return precedence(*e) < min_prec ? "(" + s + ")" : s;
    }

private:
    std::string raw(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::IntConst: return std::to_string(e.value);
        case ExprKind::BoolConst: return e.value ? "true" : "false";
        case ExprKind::LabelConst: return std::to_string(e.value);
        case ExprKind::LabelRef:
            if (lp_) return std::to_string(lp_->label_of(static_cast<int>(e.value)));
            return "@" + std::to_string(e.value);
        case ExprKind::Var: return e.name;
        case ExprKind::Index: {
            std::string s = e.name;
            for (const auto& i : e.args) s += "[" + str(i) + "]";
            return s;
        }
        case ExprKind::Call: {
            std::string s = e.name + "(";
            for (size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + str(e.args[i]);
            return s + ")";
        }
        case ExprKind::Unary: {
            const auto& a = e.args[0];
            if (e.op == Op::Neg && a->kind == ExprKind::IntConst) return "-(" + raw(*a) + ")";
            return std::string(op_symbol(e.op)) + str(a, 8);
        }
        case ExprKind::Binary: {
            int p = precedence(e);
            bool right_assoc = e.op == Op::Implies;
            return str(e.args[0], right_assoc ? p + 1 : p) + " " + op_symbol(e.op) + " " +
                   str(e.args[1], right_assoc ? p : p + 1);
        }
        case ExprKind::Ternary:
            return str(e.args[0], 1) + " ? " + str(e.args[1]) + " : " + str(e.args[2]);
        case ExprKind::Forall:
        case ExprKind::Exists:
            return std::string(e.kind == ExprKind::Forall ? "forall" : "exists") + "(int " + e.name + ")[" +
                   str(e.args[0]) + " .. " + str(e.args[1]) + "]{ " + str(e.args[2]) + " }";
        }
        return "?";
    }

    const LabeledProgram* lp_;
};

class ProgramPrinter {
public:
    explicit ProgramPrinter(const LabeledProgram* lp) : lp_(lp), ep_(lp) {}

    void block(const Block& b, int indent) {
        for (const auto& s : b) stmt(s, indent);
    }

    std::ostringstream out;

private:
    void pad(int indent) { out << std::string(static_cast<size_t>(indent) * 2, ' '); }

    void tag(const Stmt& s) {
        if (lp_) out << "  // " << lp_->label_of(s.id);
        out << "\n";
    }

    void stmt(const Stmt& s, int indent) {
        pad(indent);
        switch (s.kind) {
        case StmtKind::Assign:
            out << ep_.str(s.target) << " = " << ep_.str(s.expr) << ";";
            tag(s);
            break;
        case StmtKind::Call:
            out << ep_.str(s.expr) << ";";
            tag(s);
            break;
        case StmtKind::Jump:
            out << "pc = " << ep_.str(s.expr) << ";";
            tag(s);
            break;
        case StmtKind::Break:
            out << "break;";
            tag(s);
            break;
        case StmtKind::Return:
            out << "return " << ep_.str(s.expr) << ";";
            tag(s);
            break;
        case StmtKind::Pre:
        case StmtKind::Post:
            out << (s.kind == StmtKind::Pre ? "@pre " : "@post ") << s.spec << " { " << ep_.str(s.expr) << " }";
            tag(s);
            break;
        case StmtKind::If:
            out << "if (" << ep_.str(s.expr) << ") {";
            tag(s);
            block(s.body, indent + 1);
            pad(indent);
            if (s.orelse.empty()) {
                out << "}\n";
            } else {
                out << "} else {\n";
                block(s.orelse, indent + 1);
                pad(indent);
                out << "}\n";
            }
            break;
        case StmtKind::While:
            out << "while (" << ep_.str(s.expr) << ") {";
            tag(s);
            block(s.body, indent + 1);
            pad(indent);
            out << "}\n";
            break;
        }
    }

    const LabeledProgram* lp_;
    ExprPrinter ep_;
};

std::string dims_suffix(const Decl& d) {
    std::string s;
    for (int n : d.dims) s += n == 0 ? std::string("[]") : "[" + std::to_string(n) + "]";
    return s;
}

std::string render(const Program& p, const LabeledProgram* lp) {
    ProgramPrinter pp(lp);
    for (const auto& d : p.decls) pp.out << print_decl(d) << "\n";
    for (const auto& f : p.funcs) {
        pp.out << type_name(f.ret) << " " << f.name << "(";
        for (size_t i = 0; i < f.params.size(); ++i) {
            const Decl& prm = f.params[i];
            pp.out << (i ? ", " : "") << type_name(prm.type) << " " << prm.name << dims_suffix(prm);
        }
        pp.out << ") {\n";
        for (const auto& d : f.locals) pp.out << "  " << print_decl(d) << "\n";
        pp.block(f.body, 1);
        pp.out << "}\n";
    }
    for (size_t r = 0; r < p.routines.size(); ++r) {
        pp.out << "// routine " << r << "\n";
        pp.block(p.routines[r], 1);
    }
    pp.block(p.body, 0);
    return pp.out.str();
}

} // namespace

std::string print_expr(const ExprPtr& e) { return ExprPrinter(nullptr).str(e); }

std::string print_decl(const Decl& d) {
    std::string s = std::string(type_name(d.type)) + " " + d.name + dims_suffix(d);
    if (d.init) s += " = " + std::to_string(*d.init);
    return s + ";";
}

std::string print_program(const Program& p) { return render(p, nullptr); }

std::string print_labeled(const LabeledProgram& lp) { return render(lp.program(), &lp); }

} // namespace j2aig
