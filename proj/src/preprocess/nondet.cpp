#include <map>

#include "j2aig/errors.hpp"
#include "j2aig/preprocess.hpp"

namespace j2aig {

namespace {

using Bits = std::vector<bool>;

class DefinedVars {
public:
    explicit DefinedVars(const LabeledProgram& lp) : lp_(lp) {
        const Program& p = lp.program();
        for (size_t k = 0; k < p.decls.size(); ++k) index_[p.decls[k].name] = k;
        // An indirect jump through v can reach any label stored into v.
        for_each_stmt(p, [&](const Stmt& s) {
            if (s.kind != StmtKind::Assign) return;
            visit(s.expr, [&](const Expr& x) {
                if (x.kind == ExprKind::LabelRef)
                    return_points_[s.target->name].push_back(lp.label_of(static_cast<int>(x.value)));
                return true;
            });
        });
    }

    std::set<std::string> undefined_reads() {
        const Program& p = lp_.program();
        const size_t n = p.decls.size();
        const int count = lp_.count();
        std::vector<Bits> in(static_cast<size_t>(count) + 1, Bits(n, true));
        std::vector<bool> reached(static_cast<size_t>(count) + 1, false);
        Bits entry(n, false);
        for (size_t k = 0; k < n; ++k) entry[k] = p.decls[k].init.has_value();

        std::vector<int> work;
        if (lp_.first() <= count) {
            in[static_cast<size_t>(lp_.first())] = entry;
            reached[static_cast<size_t>(lp_.first())] = true;
            work.push_back(lp_.first());
        }
        while (!work.empty()) {
            int l = work.back();
            work.pop_back();
            Bits out = in[static_cast<size_t>(l)];
            const Stmt& s = *lp_.at(l).stmt;
            if (s.kind == StmtKind::Assign) out[index_.at(target_name(s))] = true;
            for (int succ : successors(l)) {
                if (succ < 1 || succ > count) continue;
                auto& dst = in[static_cast<size_t>(succ)];
                bool changed = !reached[static_cast<size_t>(succ)];
                if (changed) {
                    dst = out;
                } else {
                    for (size_t k = 0; k < n; ++k)
                        if (dst[k] && !out[k]) {
                            dst[k] = false;
                            changed = true;
                        }
                }
                reached[static_cast<size_t>(succ)] = true;
                if (changed) work.push_back(succ);
            }
        }

        std::set<std::string> result;
        for (int l = 1; l <= count; ++l) {
            if (!reached[static_cast<size_t>(l)]) continue;
            const Stmt& s = *lp_.at(l).stmt;
            auto use = [&](const ExprPtr& e) {
                visit(e, [&](const Expr& x) {
                    if (x.kind == ExprKind::Var || x.kind == ExprKind::Index) {
                        auto it = index_.find(x.name);
                        if (it != index_.end() && !in[static_cast<size_t>(l)][it->second]) result.insert(x.name);
                    }
                    return true;
                });
            };
            if (s.expr) use(s.expr);
            if (s.target)
                for (const auto& a : s.target->args) use(a);
        }
        return result;
    }

private:
    static const std::string& target_name(const Stmt& s) { return s.target->name; }

    std::vector<int> successors(int l) const {
        const LabelInfo& li = lp_.at(l);
        const Stmt& s = *li.stmt;
        switch (s.kind) {
        case StmtKind::If: return {li.then_target, li.else_target};
        case StmtKind::While: return {li.body_target, li.next};
        case StmtKind::Jump: {
            if (s.expr->kind == ExprKind::LabelRef) return {lp_.label_of(static_cast<int>(s.expr->value))};
            if (s.expr->kind == ExprKind::LabelConst) return {static_cast<int>(s.expr->value)};
            auto it = return_points_.find(s.expr->name);
            return it == return_points_.end() ? std::vector<int>{} : it->second;
        }
        default: return {li.next};
        }
    }

    const LabeledProgram& lp_;
    std::map<std::string, size_t> index_;
    std::map<std::string, std::vector<int>> return_points_;
};

} // namespace

std::set<std::string> nondet_variables(const LabeledProgram& lp) { return DefinedVars(lp).undefined_reads(); }

LabeledProgram inject_nondet_init(const LabeledProgram& lp) {
    auto vars = nondet_variables(lp);
    Program p = lp.program();
    for (auto& d : p.decls) d.nondet = vars.count(d.name) > 0;
    return LabeledProgram(std::move(p));
}

LabeledProgram preprocess(Program p, const PreprocessConfig& cfg) {
    p = rename_scopes(std::move(p));
    p = remove_uncalled_functions(std::move(p));
    p = resolve_array_reference_args(std::move(p));
    const auto recursive = recursive_functions(p);
    const auto order = callee_first_order(p);
    for (const auto& f : order)
        if (!recursive.count(f)) p = resolve_non_recursive_function(std::move(p), f);
    std::vector<RecursiveFrame> frames;
    for (const auto& f : order) {
        if (!recursive.count(f)) continue;
        RecursiveFrame frame;
        p = resolve_recursive_function_declaration(std::move(p), f, cfg.max_depth, &frame);
        frames.push_back(frame);
    }
    for (const auto& frame : frames) p = resolve_recursive_function_calls(std::move(p), frame);
    p = resolve_quantifiers(std::move(p), cfg.unroll_quantifiers);
    p = resolve_pre_post(std::move(p));
    p = flatten_arrays(std::move(p));
    if (!is_jcore(p)) throw Error("internal error: preprocessing left non-core constructs");
    return inject_nondet_init(label(std::move(p)));
}

} // namespace j2aig
