#include <map>

#include "common.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

using detail::add_decl;
using detail::splice;

namespace {

ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& value) {
    return rewrite(e, [&](const ExprPtr& x) -> ExprPtr {
        return x->kind == ExprKind::Var && x->name == name ? value : nullptr;
    });
}

// Outermost, leftmost quantifier of a statement.
ExprPtr first_quantifier(const Stmt& s) {
    std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& x) -> ExprPtr {
        if (is_quantifier(*x)) return x;
        for (const auto& a : x->args)
            if (auto q = walk(a)) return q;
        return nullptr;
    };
    for (const auto& e : stmt_exprs(s))
        if (auto q = walk(e)) return q;
    return nullptr;
}

// Replaces the node `from` (by identity) in the statement's expressions.
void replace_in(Stmt& s, const ExprPtr& from, const ExprPtr& to) {
    std::function<ExprPtr(const ExprPtr&)> go = [&](const ExprPtr& x) -> ExprPtr {
        if (x == from) return to;
        bool changed = false;
        std::vector<ExprPtr> args;
        for (const auto& a : x->args) {
            args.push_back(go(a));
            changed |= args.back() != a;
        }
        if (!changed) return x;
        auto copy = std::make_shared<Expr>(*x);
        copy->args = std::move(args);
        return copy;
    };
    if (s.target) s.target = go(s.target);
    if (s.expr) s.expr = go(s.expr);
}

Block clone_fresh(Program& p, const Block& b) {
    Block out = b;
    for_each_stmt_mut(out, [&](Stmt& s) { s.id = p.fresh_id(); });
    return out;
}

class QuantifierLowering {
public:
    QuantifierLowering(Program& p, bool unroll) : p_(p), unroll_(unroll) {}

    void block(Block& b) {
        for (size_t i = 0; i < b.size();) {
            ExprPtr q = first_quantifier(b[i]);
            if (!q) {
                block(b[i].body);
                block(b[i].orelse);
                ++i;
                continue;
            }
            if (unroll_ && constant_value(q->args[0]) && constant_value(q->args[1])) {
                replace_in(b[i], q, unroll_quantifier(q));
                continue;
            }
            lower(b, i, q);
        }
    }

private:
    void lower(Block& b, size_t i, const ExprPtr& q) {
        const Stmt& s = b[i];
        const bool forall = q->kind == ExprKind::Forall;
        const int line = s.line;
        if (!p_.find_decl(q->name)) add_decl(p_, Decl{q->name, Type::Int, {}, std::nullopt, false, line});
        std::string acc = detail::fresh_name(p_, "q::");
        add_decl(p_, Decl{acc, Type::Bool, {}, std::nullopt, false, line});
        ExprPtr k = ex::var(q->name);
        ExprPtr v = ex::var(acc);
        ExprPtr more = ex::binary(Op::Le, k, q->args[1]);
        ExprPtr cond = ex::land(more, forall ? v : ex::lnot(v));
        Block loop_body{
            st::assign(p_.fresh_id(), v, forall ? ex::land(v, q->args[2]) : ex::lor(v, q->args[2]), line),
            st::assign(p_.fresh_id(), k, ex::add(k, ex::int_const(1)), line)};
        Block seq{st::assign(p_.fresh_id(), k, q->args[0], line),
                  st::assign(p_.fresh_id(), v, ex::bool_const(forall), line),
                  st::while_(p_.fresh_id(), cond, std::move(loop_body), line)};
        Stmt rest = s;
        rest.id = p_.fresh_id();
        replace_in(rest, q, v);
        if (rest.kind == StmtKind::While) {
            // The condition is evaluated again after every iteration.
            Block again = clone_fresh(p_, seq);
            for (auto& x : again) rest.body.push_back(std::move(x));
        }
        seq.push_back(std::move(rest));
        splice(p_, b, i, std::move(seq));
    }

    Program& p_;
    bool unroll_;
};

} // namespace

ExprPtr unroll_quantifier(const ExprPtr& q) {
    if (!q || !is_quantifier(*q)) throw SemanticError("not a quantifier");
    auto lo = constant_value(q->args[0]);
    auto hi = constant_value(q->args[1]);
    if (!lo || !hi) throw NonConstantRange("range of quantifier over '" + q->name + "' is not constant");
    const bool forall = q->kind == ExprKind::Forall;
    if (*hi - *lo > 65536) throw NonConstantRange("range of quantifier over '" + q->name + "' is too large");
    ExprPtr out;
    for (int64_t k = *lo; k <= *hi; ++k) {
        ExprPtr term = substitute(q->args[2], q->name, ex::int_const(k));
        out = !out ? term : forall ? ex::land(out, term) : ex::lor(out, term);
    }
    return out ? out : ex::bool_const(forall);
}

Program resolve_quantifiers(Program p, bool unroll) {
    QuantifierLowering ql(p, unroll);
    detail::for_each_block(p, [&](Block& b) { ql.block(b); });
    return p;
}

Program resolve_pre_post(Program p) {
    std::set<std::string> pres, posts;
    std::vector<std::string> post_order;
    detail::for_each_block(p, [&](Block& b) {
        for_each_stmt(b, [&](const Stmt& s) {
            if (s.kind == StmtKind::Pre && !pres.insert(s.spec).second)
                throw DuplicateSpecName("duplicate precondition '" + s.spec + "'");
            if (s.kind == StmtKind::Post) {
                if (!posts.insert(s.spec).second) throw DuplicateSpecName("duplicate postcondition '" + s.spec + "'");
                post_order.push_back(s.spec);
            }
        });
    });
    for (const auto& n : post_order)
        if (!pres.count(n)) throw PostWithoutPre("postcondition '" + n + "' has no precondition");
    detail::for_each_block(p, [&](Block& b) {
        for_each_stmt_mut(b, [&](Stmt& s) {
            if (s.kind != StmtKind::Pre && s.kind != StmtKind::Post) return;
            std::string name = s.kind == StmtKind::Pre ? pre_var(s.spec) : post_var(s.spec);
            add_decl(p, Decl{name, Type::Bool, {}, 0, false, s.line});
            s.kind = StmtKind::Assign;
            s.target = ex::var(name);
            s.spec.clear();
        });
    });
    return p;
}

Program flatten_arrays(Program p) {
    std::map<std::string, std::vector<int>> shapes;
    for (auto& d : p.decls) {
        if (d.dims.size() < 2) continue;
        shapes[d.name] = d.dims;
        int n = 1;
        for (int x : d.dims) n *= x;
        d.dims = {n};
    }
    if (shapes.empty()) return p;
    detail::rewrite_program(p, [&](const ExprPtr& e) -> ExprPtr {
        if (e->kind != ExprKind::Index) return nullptr;
        auto it = shapes.find(e->name);
        if (it == shapes.end()) return nullptr;
        ExprPtr flat = e->args[0];
        for (size_t k = 1; k < e->args.size(); ++k) flat = index2d(flat, e->args[k], it->second[k]);
        return ex::index(e->name, {flat});
    });
    return p;
}

bool is_jcore(const Program& p) {
    if (!p.funcs.empty()) return false;
    for (const auto& d : p.decls)
        if (d.dims.size() > 1) return false;
    bool ok = true;
    for_each_stmt(p, [&](const Stmt& s) {
        if (s.kind == StmtKind::Return || s.kind == StmtKind::Pre || s.kind == StmtKind::Post ||
            s.kind == StmtKind::Call)
            ok = false;
        for (const auto& e : stmt_exprs(s))
            if (contains(e, [](const Expr& x) {
                    return x.kind == ExprKind::Call || is_quantifier(x) ||
                           (x.kind == ExprKind::Index && x.args.size() != 1);
                }))
                ok = false;
    });
    return ok;
}

} // namespace j2aig
