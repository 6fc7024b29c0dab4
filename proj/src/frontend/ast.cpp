#include "j2aig/ast.hpp"

#include "j2aig/errors.hpp"

namespace j2aig {

namespace ex {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
} // namespace

ExprPtr int_const(int64_t v) { return make(Expr{ExprKind::IntConst, Op::Add, v, {}, {}}); }
ExprPtr bool_const(bool v) { return make(Expr{ExprKind::BoolConst, Op::Add, v ? 1 : 0, {}, {}}); }
ExprPtr label_const(int64_t label) { return make(Expr{ExprKind::LabelConst, Op::Add, label, {}, {}}); }
ExprPtr label_ref(int stmt_id) { return make(Expr{ExprKind::LabelRef, Op::Add, stmt_id, {}, {}}); }
ExprPtr var(std::string name) { return make(Expr{ExprKind::Var, Op::Add, 0, std::move(name), {}}); }

ExprPtr index(std::string name, std::vector<ExprPtr> indices) {
    return make(Expr{ExprKind::Index, Op::Add, 0, std::move(name), std::move(indices)});
}

ExprPtr call(std::string name, std::vector<ExprPtr> args) {
    return make(Expr{ExprKind::Call, Op::Add, 0, std::move(name), std::move(args)});
}

ExprPtr unary(Op op, ExprPtr a) { return make(Expr{ExprKind::Unary, op, 0, {}, {std::move(a)}}); }

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
    return make(Expr{ExprKind::Binary, op, 0, {}, {std::move(a), std::move(b)}});
}

ExprPtr ternary(ExprPtr c, ExprPtr t, ExprPtr e) {
    return make(Expr{ExprKind::Ternary, Op::Add, 0, {}, {std::move(c), std::move(t), std::move(e)}});
}

ExprPtr quantifier(bool forall, std::string bound, ExprPtr lo, ExprPtr hi, ExprPtr body) {
    return make(Expr{forall ? ExprKind::Forall : ExprKind::Exists, Op::Add, 0, std::move(bound),
                     {std::move(lo), std::move(hi), std::move(body)}});
}

} // namespace ex

bool is_quantifier(const Expr& e) { return e.kind == ExprKind::Forall || e.kind == ExprKind::Exists; }

bool is_arith_op(Op op) {
    switch (op) {
    case Op::Neg: case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Mod: return true;
    default: return false;
    }
}

bool is_relational_op(Op op) {
    switch (op) {
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return true;
    default: return false;
    }
}

bool is_logical_op(Op op) {
    switch (op) {
    case Op::Not: case Op::And: case Op::Or: case Op::Implies: return true;
    default: return false;
    }
}

const char* op_symbol(Op op) {
    switch (op) {
    case Op::Neg: return "-";
    case Op::Not: return "!";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "->";
    }
    return "?";
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->value != b->value || a->name != b->name || a->args.size() != b->args.size())
        return false;
    if ((a->kind == ExprKind::Unary || a->kind == ExprKind::Binary) && a->op != b->op) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!same_expr(a->args[i], b->args[i])) return false;
    return true;
}

ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& fn) {
    if (!e) return e;
    ExprPtr cur = e;
    if (!e->args.empty()) {
        std::vector<ExprPtr> args;
        args.reserve(e->args.size());
        bool changed = false;
        for (const auto& a : e->args) {
            args.push_back(rewrite(a, fn));
            changed |= args.back() != a;
        }
        if (changed) {
            Expr copy = *e;
            copy.args = std::move(args);
            cur = std::make_shared<const Expr>(std::move(copy));
        }
    }
    if (auto r = fn(cur)) return r;
    return cur;
}

void visit(const ExprPtr& e, const std::function<bool(const Expr&)>& fn) {
    if (!e) return;
    if (!fn(*e)) return;
    for (const auto& a : e->args) visit(a, fn);
}

bool contains(const ExprPtr& e, const std::function<bool(const Expr&)>& pred) {
    bool found = false;
    visit(e, [&](const Expr& x) {
        if (found) return false;
        if (pred(x)) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

std::optional<int64_t> constant_value(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::IntConst:
    case ExprKind::BoolConst:
        return e->value;
    case ExprKind::Unary: {
        auto a = constant_value(e->args[0]);
        if (!a) return std::nullopt;
        return e->op == Op::Neg ? -*a : static_cast<int64_t>(*a == 0);
    }
    case ExprKind::Binary: {
        auto a = constant_value(e->args[0]);
        auto b = constant_value(e->args[1]);
        if (!a || !b) return std::nullopt;
        switch (e->op) {
        case Op::Add: return *a + *b;
        case Op::Sub: return *a - *b;
        case Op::Mul: return *a * *b;
        case Op::Div: if (*b == 0) return std::nullopt; return *a / *b;
        case Op::Mod: if (*b == 0) return std::nullopt; return *a % *b;
        case Op::Lt: return *a < *b;
        case Op::Le: return *a <= *b;
        case Op::Gt: return *a > *b;
        case Op::Ge: return *a >= *b;
        case Op::Eq: return *a == *b;
        case Op::Ne: return *a != *b;
        case Op::And: return *a != 0 && *b != 0;
        case Op::Or: return *a != 0 || *b != 0;
        case Op::Implies: return *a == 0 || *b != 0;
        default: return std::nullopt;
        }
    }
    case ExprKind::Ternary: {
        auto c = constant_value(e->args[0]);
        if (!c) return std::nullopt;
        return constant_value(*c != 0 ? e->args[1] : e->args[2]);
    }
    default:
        return std::nullopt;
    }
}

int Decl::size() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

const Decl* Program::find_decl(const std::string& name) const {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

Decl* Program::find_decl(const std::string& name) {
    for (auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

const FunctionDecl* Program::find_func(const std::string& name) const {
    for (const auto& f : funcs)
        if (f.name == name) return &f;
    return nullptr;
}

namespace st {

Stmt assign(int id, ExprPtr target, ExprPtr expr, int line) {
    Stmt s;
    s.kind = StmtKind::Assign;
    s.id = id;
    s.line = line;
    s.target = std::move(target);
    s.expr = std::move(expr);
    return s;
}

Stmt jump(int id, ExprPtr target, int line) {
    Stmt s;
    s.kind = StmtKind::Jump;
    s.id = id;
    s.line = line;
    s.expr = std::move(target);
    return s;
}

Stmt if_(int id, ExprPtr cond, Block then_block, Block else_block, int line) {
    Stmt s;
    s.kind = StmtKind::If;
    s.id = id;
    s.line = line;
    s.expr = std::move(cond);
    s.body = std::move(then_block);
    s.orelse = std::move(else_block);
    return s;
}

Stmt while_(int id, ExprPtr cond, Block body, int line) {
    Stmt s;
    s.kind = StmtKind::While;
    s.id = id;
    s.line = line;
    s.expr = std::move(cond);
    s.body = std::move(body);
    return s;
}

Stmt break_(int id, int line) {
    Stmt s;
    s.kind = StmtKind::Break;
    s.id = id;
    s.line = line;
    return s;
}

} // namespace st

void for_each_stmt(const Block& b, const std::function<void(const Stmt&)>& fn) {
    for (const auto& s : b) {
        fn(s);
        for_each_stmt(s.body, fn);
        for_each_stmt(s.orelse, fn);
    }
}

void for_each_stmt(const Program& p, const std::function<void(const Stmt&)>& fn) {
    for (const auto& f : p.funcs) for_each_stmt(f.body, fn);
    for (const auto& r : p.routines) for_each_stmt(r, fn);
    for_each_stmt(p.body, fn);
}

void for_each_stmt_mut(Block& b, const std::function<void(Stmt&)>& fn) {
    for (auto& s : b) {
        fn(s);
        for_each_stmt_mut(s.body, fn);
        for_each_stmt_mut(s.orelse, fn);
    }
}

std::vector<ExprPtr> stmt_exprs(const Stmt& s) {
    std::vector<ExprPtr> out;
    if (s.target) out.push_back(s.target);
    if (s.expr) out.push_back(s.expr);
    return out;
}

ExprPtr index2d(const ExprPtr& e1, const ExprPtr& e2, int cols) {
    auto c1 = constant_value(e1);
    auto c2 = constant_value(e2);
    if (c1 && c2) return ex::int_const(*c1 * cols + *c2);
    return ex::add(ex::binary(Op::Mul, e1, ex::int_const(cols)), e2);
}

Type expr_type(const Expr& e, const std::function<Type(const std::string&)>& var_type) {
    switch (e.kind) {
    case ExprKind::IntConst: return Type::Int;
    case ExprKind::BoolConst: return Type::Bool;
    case ExprKind::LabelConst:
    case ExprKind::LabelRef: return Type::Label;
    case ExprKind::Var:
    case ExprKind::Index:
    case ExprKind::Call: return var_type(e.name);
    case ExprKind::Unary: return e.op == Op::Neg ? Type::Int : Type::Bool;
    case ExprKind::Binary: return is_arith_op(e.op) ? Type::Int : Type::Bool;
    case ExprKind::Ternary: {
        Type t = expr_type(*e.args[1], var_type);
        Type f = expr_type(*e.args[2], var_type);
        if (t == Type::Label || f == Type::Label) {
            if (t != f) throw SemanticError("conditional mixes labels with data values");
            return Type::Label;
        }
        return (t == Type::Bool && f == Type::Bool) ? Type::Bool : Type::Int;
    }
    case ExprKind::Forall:
    case ExprKind::Exists: return Type::Bool;
    }
    return Type::Int;
}

} // namespace j2aig
