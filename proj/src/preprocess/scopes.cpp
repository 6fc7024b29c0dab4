#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "common.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

std::string scoped_name(const std::string& fn, const std::string& var) { return fn + "::" + var; }
std::string pre_var(const std::string& spec) { return "pre::" + spec; }
std::string post_var(const std::string& spec) { return "post::" + spec; }
std::string nondet_var(const std::string& var) { return var + "::nondet"; }
std::string stack_pointer(const std::string& fn) { return "sp::" + fn; }

std::vector<std::string> spec_names(const Program& p) {
    std::vector<std::string> out;
    for (const auto& d : p.decls)
        if (d.name.rfind("pre::", 0) == 0) out.push_back(d.name.substr(5));
    return out;
}

namespace {

class Renamer {
public:
    explicit Renamer(const Program& p) : p_(p) {}

    void rename_function(FunctionDecl& f) {
        fn_ = &f;
        block(f.body);
        fn_ = nullptr;
    }

    void rename_main(Block& b) { block(b); }

    std::string local(const std::string& name) const {
        return fn_ ? scoped_name(fn_->name, name) : name;
    }

private:
    const Decl* lookup(const std::string& name) const {
        if (fn_) {
            for (const auto& d : fn_->params)
                if (d.name == name) return &d;
            for (const auto& d : fn_->locals)
                if (d.name == name) return &d;
        }
        return p_.find_decl(name);
    }

    bool is_local(const std::string& name) const {
        if (!fn_) return false;
        for (const auto& d : fn_->params)
            if (d.name == name) return true;
        for (const auto& d : fn_->locals)
            if (d.name == name) return true;
        return false;
    }

    std::string renamed(const std::string& name) const { return is_local(name) ? local(name) : name; }

    const Decl& require(const std::string& name) const {
        const Decl* d = lookup(name);
        if (!d) throw SemanticError("undeclared variable '" + name + "'");
        return *d;
    }

    void block(Block& b) {
        for (auto& s : b) {
            if (s.target) s.target = target(s.target);
            if (s.expr) s.expr = expr(s.expr);
            block(s.body);
            block(s.orelse);
        }
    }

    ExprPtr target(const ExprPtr& t) {
        if (t->kind == ExprKind::Var) {
            const Decl& d = require(t->name);
            if (d.is_array()) throw SemanticError("cannot assign whole array '" + t->name + "'");
            return ex::var(renamed(t->name));
        }
        return expr(t);
    }

    ExprPtr expr(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::Var: {
            auto b = bound_.find(e->name);
            if (b != bound_.end()) return ex::var(b->second);
            const Decl& d = require(e->name);
            if (d.is_array()) throw SemanticError("array '" + e->name + "' used without an index");
            return ex::var(renamed(e->name));
        }
        case ExprKind::Index: {
            if (bound_.count(e->name)) throw SemanticError("'" + e->name + "' is not an array");
            const Decl& d = require(e->name);
            if (!d.is_array()) throw SemanticError("'" + e->name + "' is not an array");
            if (d.dims.size() != e->args.size())
                throw SemanticError("array '" + e->name + "' expects " + std::to_string(d.dims.size()) +
                                    " indices");
            std::vector<ExprPtr> idx;
            for (const auto& a : e->args) idx.push_back(expr(a));
            return ex::index(renamed(e->name), std::move(idx));
        }
        case ExprKind::Call: return call(e);
        case ExprKind::Forall:
        case ExprKind::Exists: {
            if (detail::has_call(e->args[2]))
                throw NestedUnsupported("function call inside quantifier over '" + e->name + "'");
            ExprPtr lo = expr(e->args[0]);
            ExprPtr hi = expr(e->args[1]);
            std::string fresh = "q::" + e->name + std::to_string(++qcount_);
            auto saved = bound_.find(e->name) != bound_.end() ? std::optional(bound_[e->name]) : std::nullopt;
            bound_[e->name] = fresh;
            ExprPtr body = expr(e->args[2]);
            if (saved) bound_[e->name] = *saved;
            else bound_.erase(e->name);
            return ex::quantifier(e->kind == ExprKind::Forall, fresh, lo, hi, body);
        }
        default: {
            if (e->args.empty()) return e;
            auto copy = std::make_shared<Expr>(*e);
            for (auto& a : copy->args) a = expr(a);
            return copy;
        }
        }
    }

    ExprPtr call(const ExprPtr& e) {
        const FunctionDecl* f = p_.find_func(e->name);
        if (!f) throw UnknownFunction("unknown function '" + e->name + "'");
        if (f->params.size() != e->args.size()) throw ArityMismatch("'" + e->name + "' expects " + std::to_string(f->params.size()) +
                                " arguments, got " + std::to_string(e->args.size()));
        std::vector<ExprPtr> args;
        for (size_t k = 0; k < e->args.size(); ++k) {
            const Decl& prm = f->params[k];
            const ExprPtr& a = e->args[k];
            const Decl* actual = nullptr;
            if (a->kind == ExprKind::Var && !bound_.count(a->name)) actual = lookup(a->name);
            if (prm.is_array()) {
                if (!actual || !actual->is_array())
                    throw ArraySizeMismatch("argument " + std::to_string(k + 1) + " of '" + e->name +
                                            "' must be an array");
                if (actual->dims.size() != prm.dims.size())
                    throw ArraySizeMismatch("argument " + std::to_string(k + 1) + " of '" + e->name +
                                            "' has the wrong number of dimensions");
                for (size_t d = 0; d < prm.dims.size(); ++d)
                    if (prm.dims[d] != 0 && actual->dims[d] != 0 && prm.dims[d] > actual->dims[d])
                        throw ArraySizeMismatch("argument " + std::to_string(k + 1) + " of '" + e->name +
                                                "' is smaller than the parameter");
                args.push_back(ex::var(renamed(a->name)));
            } else {
                if (actual && actual->is_array())
                    throw ArraySizeMismatch("argument " + std::to_string(k + 1) + " of '" + e->name +
                                            "' must be a scalar");
                args.push_back(expr(a));
            }
        }
        return ex::call(e->name, std::move(args));
    }

    const Program& p_;
    const FunctionDecl* fn_ = nullptr;
    std::map<std::string, std::string> bound_;
    int qcount_ = 0;
};

std::map<std::string, std::set<std::string>> call_graph(const Program& p) {
    std::map<std::string, std::set<std::string>> g;
    for (const auto& f : p.funcs) {
        auto& callees = g[f.name];
        for_each_stmt(f.body, [&](const Stmt& s) {
            for (const auto& e : stmt_exprs(s))
                visit(e, [&](const Expr& x) {
                    if (x.kind == ExprKind::Call) callees.insert(x.name);
                    return true;
                });
        });
    }
    return g;
}

std::set<std::string> calls_in(const Block& b) {
    std::set<std::string> out;
    for_each_stmt(b, [&](const Stmt& s) {
        for (const auto& e : stmt_exprs(s))
            visit(e, [&](const Expr& x) {
                if (x.kind == ExprKind::Call) out.insert(x.name);
                return true;
            });
    });
    return out;
}

} // namespace

Program rename_scopes(Program p) {
    std::set<std::string> fnames;
    for (const auto& f : p.funcs) {
        if (!fnames.insert(f.name).second) throw SemanticError("duplicate function '" + f.name + "'");
        std::set<std::string> locals;
        for (const auto& d : f.params)
            if (!locals.insert(d.name).second)
                throw SemanticError("duplicate parameter '" + d.name + "' in '" + f.name + "'");
        for (const auto& d : f.locals)
            if (!locals.insert(d.name).second)
                throw SemanticError("duplicate declaration of '" + d.name + "' in '" + f.name + "'");
    }
    Renamer r(p);
    Program out = p;
    for (auto& f : out.funcs) r.rename_function(f);
    r.rename_main(out.body);
    for (auto& f : out.funcs) {
        for (auto& d : f.params) d.name = scoped_name(f.name, d.name);
        for (auto& d : f.locals) d.name = scoped_name(f.name, d.name);
    }
    return out;
}

Program remove_uncalled_functions(Program p) {
    auto g = call_graph(p);
    std::set<std::string> live;
    std::vector<std::string> work;
    for (const auto& n : calls_in(p.body)) work.push_back(n);
    for (const auto& r : p.routines)
        for (const auto& n : calls_in(r)) work.push_back(n);
    while (!work.empty()) {
        std::string n = work.back();
        work.pop_back();
        if (!live.insert(n).second) continue;
        for (const auto& c : g[n]) work.push_back(c);
    }
    std::erase_if(p.funcs, [&](const FunctionDecl& f) { return !live.count(f.name); });
    return p;
}

std::set<std::string> recursive_functions(const Program& p) {
    auto g = call_graph(p);
    std::set<std::string> out;
    for (const auto& f : p.funcs) {
        std::set<std::string> seen;
        std::vector<std::string> work(g[f.name].begin(), g[f.name].end());
        while (!work.empty()) {
            std::string n = work.back();
            work.pop_back();
            if (n == f.name) {
                out.insert(f.name);
                break;
            }
            if (!seen.insert(n).second) continue;
            for (const auto& c : g[n]) work.push_back(c);
        }
    }
    return out;
}

std::vector<std::string> callee_first_order(const Program& p) {
    auto g = call_graph(p);
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::function<void(const std::string&)> dfs = [&](const std::string& n) {
        if (!seen.insert(n).second) return;
        for (const auto& c : g[n]) dfs(c);
        order.push_back(n);
    };
    for (const auto& f : p.funcs) dfs(f.name);
    return order;
}

} // namespace j2aig
