#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "j2aig/ast.hpp"

namespace j2aig {

struct LabelInfo {
    int label = 0;
    const Stmt* stmt = nullptr;
    /// Successor in straight-line flow; for `break` the successor of its loop.
    int next = 0;
    int then_target = 0; // If: first of then-block, or next if empty
    int else_target = 0; // If: first of else-block, or next if empty
    int body_target = 0; // While: first of body, or the loop itself if empty
    /// Index into funcs followed by routines, or -1 for the main body.
    int block = -1;
};

/// A program with dense statement labels. Labels follow source order with
/// function bodies (or lowered routines) first, then the main body; `done`
/// is one past the largest label.
class LabeledProgram {
public:
    explicit LabeledProgram(Program p);

    const Program& program() const { return *prog_; }
    const std::shared_ptr<const Program>& program_ptr() const { return prog_; }

    int first() const { return first_; }
    int done() const { return done_; }
    int count() const { return static_cast<int>(infos_.size()); }
    const std::vector<LabelInfo>& infos() const { return infos_; }
    const LabelInfo& at(int label) const;

    /// Label of the statement with the given id; throws if unknown.
    int label_of(int stmt_id) const;

    /// Source line of a label; 0 for `done` or synthesized statements.
    int line_of(int label) const;

    /// Replaces every LabelRef by the LabelConst of its target.
    ExprPtr resolve(const ExprPtr& e) const;

    /// Bits needed to encode every label including `done`.
    int pc_width() const;

private:
    std::shared_ptr<const Program> prog_;
    std::vector<LabelInfo> infos_;
    std::unordered_map<int, int> by_id_;
    int first_ = 0;
    int done_ = 1;
};

LabeledProgram label(Program p);

/// ceil(log2(n + 1)), at least 1: bits to represent 0..n unsigned.
int bits_for(int64_t n);

} // namespace j2aig
