#include "j2aig/labels.hpp"

#include "j2aig/errors.hpp"

namespace j2aig {

namespace {

class Labeler {
public:
    Labeler(std::vector<LabelInfo>& infos, std::unordered_map<int, int>& by_id) : infos_(infos), by_id_(by_id) {}

    void number(const Block& b, int block) {
        for (const auto& s : b) {
            LabelInfo li;
            li.label = static_cast<int>(infos_.size()) + 1;
            li.stmt = &s;
            li.block = block;
            infos_.push_back(li);
            if (!by_id_.emplace(s.id, li.label).second)
                throw SemanticError("duplicate statement id " + std::to_string(s.id));
            number(s.body, block);
            number(s.orelse, block);
        }
    }

    void link(const Block& b, int after, int loop_exit) {
        for (size_t i = 0; i < b.size(); ++i) {
            const Stmt& s = b[i];
            int nxt = i + 1 < b.size() ? by_id_.at(b[i + 1].id) : after;
            LabelInfo& li = infos_[by_id_.at(s.id) - 1];
            li.next = nxt;
            switch (s.kind) {
            case StmtKind::If:
                li.then_target = s.body.empty() ? nxt : by_id_.at(s.body.front().id);
                li.else_target = s.orelse.empty() ? nxt : by_id_.at(s.orelse.front().id);
                link(s.body, nxt, loop_exit);
                link(s.orelse, nxt, loop_exit);
                break;
            case StmtKind::While:
                li.body_target = s.body.empty() ? li.label : by_id_.at(s.body.front().id);
                link(s.body, li.label, nxt);
                break;
            case StmtKind::Break:
                if (loop_exit < 0) throw SemanticError("'break' outside of a loop");
                li.next = loop_exit;
                break;
            default:
                break;
            }
        }
    }

private:
    std::vector<LabelInfo>& infos_;
    std::unordered_map<int, int>& by_id_;
};

} // namespace

int bits_for(int64_t n) {
    int b = 1;
    while (b < 63 && (int64_t{1} << b) <= n) ++b;
    return b;
}

LabeledProgram::LabeledProgram(Program p) : prog_(std::make_shared<const Program>(std::move(p))) {
    Labeler lab(infos_, by_id_);
    const Program& prog = *prog_;
    int block = 0;
    for (const auto& f : prog.funcs) lab.number(f.body, block++);
    for (const auto& r : prog.routines) lab.number(r, block++);
    lab.number(prog.body, -1);
    done_ = static_cast<int>(infos_.size()) + 1;
    for (const auto& f : prog.funcs) lab.link(f.body, done_, -1);
    for (const auto& r : prog.routines) lab.link(r, done_, -1);
    lab.link(prog.body, done_, -1);
    first_ = prog.body.empty() ? done_ : by_id_.at(prog.body.front().id);
}

const LabelInfo& LabeledProgram::at(int label) const {
    if (label < 1 || label > count()) throw SemanticError("no statement with label " + std::to_string(label));
    return infos_[label - 1];
}

int LabeledProgram::label_of(int stmt_id) const {
    auto it = by_id_.find(stmt_id);
    if (it == by_id_.end()) throw SemanticError("jump to unknown statement id " + std::to_string(stmt_id));
    return it->second;
}

int LabeledProgram::line_of(int label) const {
    if (label < 1 || label > count()) return 0;
    return infos_[label - 1].stmt->line;
}

ExprPtr LabeledProgram::resolve(const ExprPtr& e) const {
    return rewrite(e, [this](const ExprPtr& x) -> ExprPtr {
        if (x->kind == ExprKind::LabelRef) return ex::label_const(label_of(static_cast<int>(x->value)));
        return nullptr;
    });
}

int LabeledProgram::pc_width() const { return bits_for(done_); }

LabeledProgram label(Program p) { return LabeledProgram(std::move(p)); }

} // namespace j2aig
