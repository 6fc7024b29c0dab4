#include <algorithm>
#include <map>

#include "common.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

using detail::add_decl;
using detail::for_each_block;
using detail::fresh_name;
using detail::splice;

namespace {

FunctionDecl& find_function(Program& p, const std::string& name) {
    for (auto& f : p.funcs)
        if (f.name == name) return f;
    throw UnknownFunction("unknown function '" + name + "'");
}

bool is_call_to(const Expr& e, const std::string& fname) {
    return e.kind == ExprKind::Call && e.name == fname;
}

// Produces the statements that perform one call and store its result in
// `result` (empty for a call statement). The landing statement, which reads
// the return value, must carry `landing_id`.
using CallExpander =
    std::function<Block(const std::vector<ExprPtr>& args, const std::string& result, int landing_id, int line)>;

// Replaces every call of `fname` in `b` by the expander's sequence followed by
// the statement with the call replaced by its result variable.
void expand_calls(Program& p, Block& b, const FunctionDecl& f, const CallExpander& expand) {
    for (size_t i = 0; i < b.size();) {
        Stmt& s = b[i];
        bool calls = false;
        for (const auto& e : stmt_exprs(s))
            if (contains(e, [&](const Expr& x) { return is_call_to(x, f.name); })) calls = true;
        if (!calls) {
            expand_calls(p, s.body, f, expand);
            expand_calls(p, s.orelse, f, expand);
            ++i;
            continue;
        }
        if (s.kind != StmtKind::Assign && s.kind != StmtKind::Call)
            throw RestrictionError(s.line, "call of '" + f.name + "' outside an assignment");
        Block seq;
        auto replace = [&](const ExprPtr& e) -> ExprPtr {
            if (!is_call_to(*e, f.name)) return nullptr;
            for (const auto& a : e->args)
                if (detail::has_call(a)) throw RestrictionError(s.line, "nested call of '" + f.name + "'");
            std::string result;
            if (s.kind != StmtKind::Call) {
                result = fresh_name(p, "fcall::");
                Decl d;
                d.name = result;
                d.type = f.ret;
                d.line = s.line;
                add_decl(p, d);
            }
            int landing = p.fresh_id();
            Block part = expand(e->args, result, landing, s.line);
            for (auto& x : part) seq.push_back(std::move(x));
            return result.empty() ? e : ex::var(result);
        };
        Stmt rest = s;
        if (rest.target) rest.target = rewrite(rest.target, replace);
        if (rest.expr) rest.expr = rewrite(rest.expr, replace);
        if (rest.kind != StmtKind::Call) {
            rest.id = p.fresh_id();
            seq.push_back(std::move(rest));
        }
        i += splice(p, b, i, std::move(seq));
    }
}

ExprPtr frame_index(const std::string& name, std::vector<ExprPtr> idx, const ExprPtr& frame) {
    idx.push_back(frame);
    return ex::index(name, std::move(idx));
}

} // namespace

Program resolve_array_reference_args(Program p) {
    auto recursive = recursive_functions(p);
    for (const auto& fname : callee_first_order(p)) {
        FunctionDecl& f = find_function(p, fname);
        std::vector<size_t> array_params;
        for (size_t k = 0; k < f.params.size(); ++k)
            if (f.params[k].is_array()) array_params.push_back(k);
        if (array_params.empty()) continue;
        if (recursive.count(fname))
            throw RestrictionError(f.line, "recursive function '" + fname + "' has array parameters");

        // Actual arrays per call site, in program order.
        std::vector<std::vector<std::string>> sites;
        for_each_block(p, [&](Block& b) {
            for_each_stmt(b, [&](const Stmt& s) {
                for (const auto& e : stmt_exprs(s))
                    visit(e, [&](const Expr& x) {
                        if (is_call_to(x, fname)) {
                            std::vector<std::string> actual;
                            for (size_t k : array_params) actual.push_back(x.args[k]->name);
                            sites.push_back(std::move(actual));
                        }
                        return true;
                    });
            });
        });
        if (sites.empty()) continue;
        const bool dispatch = sites.size() > 1;
        const std::string cid = scoped_name(fname, "cid");

        int site = 0;
        detail::rewrite_program(p, [&](const ExprPtr& e) -> ExprPtr {
            if (!is_call_to(*e, fname)) return nullptr;
            std::vector<ExprPtr> args;
            for (size_t k = 0; k < e->args.size(); ++k)
                if (!std::count(array_params.begin(), array_params.end(), k)) args.push_back(e->args[k]);
            if (dispatch) args.push_back(ex::int_const(site));
            ++site;
            return ex::call(fname, std::move(args));
        });

        FunctionDecl& g = find_function(p, fname);
        std::vector<std::string> formal;
        for (size_t k : array_params) formal.push_back(g.params[k].name);
        std::vector<Decl> kept;
        for (auto& d : g.params)
            if (!d.is_array()) kept.push_back(d);
        if (dispatch) {
            Decl d;
            d.name = cid;
            d.type = Type::Int;
            d.line = g.line;
            kept.push_back(d);
        }
        g.params = std::move(kept);

        auto which = [&](const std::string& name) -> int {
            for (size_t j = 0; j < formal.size(); ++j)
                if (formal[j] == name) return static_cast<int>(j);
            return -1;
        };
        auto site_is = [&](size_t k) { return ex::eq(ex::var(cid), ex::int_const(static_cast<int64_t>(k))); };

        // Reads become a selection over the call sites. Callees may have
        // inherited the formal array name from earlier rewrites, so every
        // block is searched.
        detail::rewrite_program(p, [&](const ExprPtr& e) -> ExprPtr {
            if (e->kind != ExprKind::Index) return nullptr;
            int j = which(e->name);
            if (j < 0) return nullptr;
            ExprPtr r = ex::index(sites.back()[j], e->args);
            for (size_t k = sites.size() - 1; k-- > 0;)
                r = ex::ternary(site_is(k), ex::index(sites[k][j], e->args), r);
            return r;
        });
        if (!dispatch) continue;
        // Write targets became selections too; turn them into a chain of
        // conditional writes.
        std::function<void(Block&)> writes = [&](Block& b) {
            for (size_t i = 0; i < b.size();) {
                writes(b[i].body);
                writes(b[i].orelse);
                const Stmt& s = b[i];
                if (s.kind != StmtKind::Assign || s.target->kind != ExprKind::Ternary) {
                    ++i;
                    continue;
                }
                ExprPtr t = s.target;
                std::vector<ExprPtr> alts;
                while (t->kind == ExprKind::Ternary) {
                    alts.push_back(t->args[1]);
                    t = t->args[2];
                }
                alts.push_back(t);
                Block chain{st::assign(p.fresh_id(), alts.back(), s.expr, s.line)};
                for (size_t k = alts.size() - 1; k-- > 0;) {
                    Stmt c = st::if_(p.fresh_id(), site_is(k), {st::assign(p.fresh_id(), alts[k], s.expr, s.line)},
                                     std::move(chain), s.line);
                    chain = Block{std::move(c)};
                }
                i += splice(p, b, i, std::move(chain));
            }
        };
        for_each_block(p, writes);
    }
    return p;
}

Program resolve_non_recursive_function(Program p, const std::string& fname) {
    auto it = std::find_if(p.funcs.begin(), p.funcs.end(), [&](const FunctionDecl& f) { return f.name == fname; });
    if (it == p.funcs.end()) throw UnknownFunction("unknown function '" + fname + "'");
    FunctionDecl f = std::move(*it);
    p.funcs.erase(it);

    const std::string return_pc = scoped_name(fname, "return_pc");
    const std::string rv = scoped_name(fname, "rv");
    for (auto d : f.params) add_decl(p, d);
    for (auto d : f.locals) add_decl(p, d);
    add_decl(p, Decl{return_pc, Type::Label, {}, std::nullopt, false, f.line});
    add_decl(p, Decl{rv, f.ret, {}, std::nullopt, false, f.line});

    Block& body = f.body;
    Stmt ret = body.back();
    body.pop_back();
    body.push_back(st::assign(ret.id, ex::var(rv), ret.expr, ret.line));
    body.push_back(st::jump(p.fresh_id(), ex::var(return_pc), ret.line));
    const int entry = body.front().id;

    std::vector<std::string> params;
    for (const auto& d : f.params) params.push_back(d.name);
    CallExpander expand = [&](const std::vector<ExprPtr>& args, const std::string& result, int landing, int line) {
        Block out;
        for (size_t k = 0; k < args.size(); ++k)
            out.push_back(st::assign(p.fresh_id(), ex::var(params[k]), args[k], line));
        out.push_back(st::assign(p.fresh_id(), ex::var(return_pc), ex::label_ref(landing), line));
        out.push_back(st::jump(p.fresh_id(), ex::label_ref(entry), line));
        // A call statement still needs a landing statement to return to.
        ExprPtr target = ex::var(result.empty() ? rv : result);
        out.push_back(st::assign(landing, target, ex::var(rv), line));
        return out;
    };
    for_each_block(p, [&](Block& b) { expand_calls(p, b, f, expand); });
    p.routines.push_back(std::move(f.body));
    return p;
}

Program resolve_recursive_function_declaration(Program p, const std::string& fname, int max_depth,
                                               RecursiveFrame* frame) {
    if (max_depth < 1) throw SemanticError("recursion depth must be positive");
    auto it = std::find_if(p.funcs.begin(), p.funcs.end(), [&](const FunctionDecl& f) { return f.name == fname; });
    if (it == p.funcs.end()) throw UnknownFunction("unknown function '" + fname + "'");
    FunctionDecl f = std::move(*it);
    p.funcs.erase(it);

    const std::string sp = stack_pointer(fname);
    const std::string return_pc = scoped_name(fname, "return_pc");
    const std::string rv = scoped_name(fname, "rv");
    std::set<std::string> framed;
    for (auto d : f.params) {
        framed.insert(d.name);
        d.dims.push_back(max_depth);
        add_decl(p, d);
    }
    for (auto d : f.locals) {
        framed.insert(d.name);
        d.dims.push_back(max_depth);
        add_decl(p, d);
    }
    add_decl(p, Decl{return_pc, Type::Label, {max_depth}, std::nullopt, false, f.line});
    add_decl(p, Decl{rv, f.ret, {max_depth}, std::nullopt, false, f.line});
    add_decl(p, Decl{sp, Type::Int, {}, -1, false, f.line});
    if (!p.find_decl(depth_flag())) add_decl(p, Decl{depth_flag(), Type::Bool, {}, 0, false, 0});

    const ExprPtr top = ex::var(sp);
    Block body = f.body;
    Stmt ret = body.back();
    body.pop_back();
    body.push_back(st::assign(ret.id, ex::index(rv, {top}), ret.expr, ret.line));
    body.push_back(st::jump(p.fresh_id(), ex::index(return_pc, {top}), ret.line));

    // Frame variables may also be read by inlined code of callees, so the
    // whole program is rewritten, not only this body.
    p.routines.push_back(std::move(body));
    detail::rewrite_program(p, [&](const ExprPtr& e) -> ExprPtr {
        if (!framed.count(e->name)) return nullptr;
        if (e->kind == ExprKind::Var) return frame_index(e->name, {}, top);
        if (e->kind == ExprKind::Index) return frame_index(e->name, e->args, top);
        return nullptr;
    });
    if (frame) {
        frame->name = fname;
        frame->params.clear();
        for (const auto& d : f.params) frame->params.push_back(d.name);
        frame->entry_id = p.routines.back().front().id;
        frame->max_depth = max_depth;
    }
    // Keep a signature stub so call sites can still be validated and typed.
    FunctionDecl stub;
    stub.name = fname;
    stub.ret = f.ret;
    stub.params = f.params;
    stub.line = f.line;
    p.funcs.push_back(std::move(stub));
    return p;
}

Program resolve_recursive_function_calls(Program p, const RecursiveFrame& frame) {
    auto it = std::find_if(p.funcs.begin(), p.funcs.end(),
                           [&](const FunctionDecl& f) { return f.name == frame.name && f.body.empty(); });
    if (it == p.funcs.end()) throw SemanticError("declaration of '" + frame.name + "' not resolved");
    FunctionDecl f = std::move(*it);
    p.funcs.erase(it);

    const std::string sp = stack_pointer(frame.name);
    const std::string return_pc = scoped_name(frame.name, "return_pc");
    const std::string rv = scoped_name(frame.name, "rv");
    const ExprPtr next = ex::add(ex::var(sp), ex::int_const(1));
    CallExpander expand = [&](const std::vector<ExprPtr>& args, const std::string& result, int landing, int line) {
        Block out;
        ExprPtr overflow = ex::binary(Op::Ge, next, ex::int_const(frame.max_depth));
        out.push_back(st::assign(p.fresh_id(), ex::var(depth_flag()), ex::lor(ex::var(depth_flag()), overflow), line));
        for (size_t k = 0; k < args.size(); ++k)
            out.push_back(st::assign(p.fresh_id(), ex::index(frame.params[k], {next}), args[k], line));
        out.push_back(st::assign(p.fresh_id(), ex::index(return_pc, {next}), ex::label_ref(landing), line));
        out.push_back(st::assign(p.fresh_id(), ex::var(sp), next, line));
        out.push_back(st::jump(p.fresh_id(), ex::label_ref(frame.entry_id), line));
        if (!result.empty())
            out.push_back(st::assign(landing, ex::var(result), ex::index(rv, {ex::var(sp)}), line));
        out.push_back(st::assign(result.empty() ? landing : p.fresh_id(), ex::var(sp),
                                 ex::sub(ex::var(sp), ex::int_const(1)), line));
        return out;
    };
    for_each_block(p, [&](Block& b) { expand_calls(p, b, f, expand); });
    return p;
}

} // namespace j2aig
