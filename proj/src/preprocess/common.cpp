#include "common.hpp"

#include "j2aig/errors.hpp"

namespace j2aig::detail {

void for_each_block(Program& p, const std::function<void(Block&)>& fn) {
    for (auto& f : p.funcs) fn(f.body);
    for (auto& r : p.routines) fn(r);
    fn(p.body);
}

void rewrite_block(Block& b, const std::function<ExprPtr(const ExprPtr&)>& fn) {
    for_each_stmt_mut(b, [&](Stmt& s) {
        if (s.target) s.target = rewrite(s.target, fn);
        if (s.expr) s.expr = rewrite(s.expr, fn);
    });
}

void rewrite_program(Program& p, const std::function<ExprPtr(const ExprPtr&)>& fn) {
    for_each_block(p, [&](Block& b) { rewrite_block(b, fn); });
}

std::string fresh_name(const Program& p, const std::string& prefix) {
    for (int n = 1;; ++n) {
        std::string name = prefix + std::to_string(n);
        if (!p.find_decl(name)) return name;
    }
}

void add_decl(Program& p, Decl d) {
    if (p.find_decl(d.name)) throw SemanticError("duplicate declaration of '" + d.name + "'");
    p.decls.push_back(std::move(d));
}

size_t splice(Program& p, Block& b, size_t i, Block seq) {
    auto at = b.begin() + static_cast<std::ptrdiff_t>(i);
    if (seq.empty()) {
        b.erase(at);
        return 0;
    }
    int old_id = at->id;
    for (auto& s : seq)
        if (s.id == old_id || s.id == 0) s.id = p.fresh_id();
    seq.front().id = old_id;
    size_t n = seq.size();
    b.erase(at);
    b.insert(b.begin() + static_cast<std::ptrdiff_t>(i), std::make_move_iterator(seq.begin()),
             std::make_move_iterator(seq.end()));
    return n;
}

bool has_call(const ExprPtr& e) {
    return e && contains(e, [](const Expr& x) { return x.kind == ExprKind::Call; });
}

bool has_quantifier(const ExprPtr& e) {
    return e && contains(e, [](const Expr& x) { return is_quantifier(x); });
}

} // namespace j2aig::detail
