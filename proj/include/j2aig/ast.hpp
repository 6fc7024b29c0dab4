// Abstract syntax shared by J programs and their Jcore lowering.
//
// Expressions are immutable and shared between program versions, so passes
// rebuild only the spine they touch. Statements carry a stable `id`; jump
// targets created before labels exist (return points, function entries) are
// `ExprKind::LabelRef` nodes resolved when the program is labeled.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace j2aig {

/// Value domain of a variable. `Label` is internal: program counters and
/// return addresses introduced by preprocessing.
enum class Type : uint8_t { Int, Bool, Label };

enum class Op : uint8_t {
    Neg, Not,
    Add, Sub, Mul, Div, Mod,
    Lt, Le, Gt, Ge, Eq, Ne,
    And, Or, Implies
};

enum class ExprKind : uint8_t {
    IntConst,
    BoolConst,
    LabelConst, // resolved statement label
    LabelRef,   // statement id, resolved by labeling
    Var,
    Index,      // name[args...]
    Call,       // name(args...)
    Unary,
    Binary,
    Ternary,    // args = {cond, then, else}
    Forall,     // name = bound variable, args = {lo, hi, body}
    Exists
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::IntConst;
    Op op = Op::Add;
    int64_t value = 0;
    std::string name;
    std::vector<ExprPtr> args;
};

namespace ex {

ExprPtr int_const(int64_t v);
ExprPtr bool_const(bool v);
ExprPtr label_const(int64_t label);
ExprPtr label_ref(int stmt_id);
ExprPtr var(std::string name);
ExprPtr index(std::string name, std::vector<ExprPtr> indices);
ExprPtr call(std::string name, std::vector<ExprPtr> args);
ExprPtr unary(Op op, ExprPtr a);
ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
ExprPtr ternary(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr quantifier(bool forall, std::string bound, ExprPtr lo, ExprPtr hi, ExprPtr body);

inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(Op::Add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
inline ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(Op::Eq, std::move(a), std::move(b)); }
inline ExprPtr land(ExprPtr a, ExprPtr b) { return binary(Op::And, std::move(a), std::move(b)); }
inline ExprPtr lor(ExprPtr a, ExprPtr b) { return binary(Op::Or, std::move(a), std::move(b)); }
inline ExprPtr lnot(ExprPtr a) { return unary(Op::Not, std::move(a)); }

} // namespace ex

bool is_quantifier(const Expr& e);
bool is_arith_op(Op op);
bool is_relational_op(Op op);
bool is_logical_op(Op op);
const char* op_symbol(Op op);

/// Structural equality of expression trees.
bool same_expr(const ExprPtr& a, const ExprPtr& b);

/// Bottom-up rewrite: `fn` sees each node after its children were rewritten and
/// returns a replacement or nullptr to keep it.
ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& fn);

/// Pre-order visit; returning false from `fn` stops descent into that node.
void visit(const ExprPtr& e, const std::function<bool(const Expr&)>& fn);

bool contains(const ExprPtr& e, const std::function<bool(const Expr&)>& pred);

/// Folds an expression built only from integer/boolean literals.
std::optional<int64_t> constant_value(const ExprPtr& e);

enum class StmtKind : uint8_t {
    Assign, // target = expr
    If,     // if (expr) body else orelse
    While,  // while (expr) body
    Break,
    Return, // J only
    Pre,    // J only: @pre spec { expr }
    Post,   // J only: @post spec { expr }
    Jump,   // direct program counter assignment, from function lowering
    Call    // J only: call evaluated for effect
};

struct Stmt {
    StmtKind kind = StmtKind::Assign;
    int id = 0;
    int line = 0;
    ExprPtr target; // Var or Index
    ExprPtr expr;
    std::string spec;
    std::vector<Stmt> body;
    std::vector<Stmt> orelse;
};

using Block = std::vector<Stmt>;

struct Decl {
    std::string name;
    Type type = Type::Int;
    /// Empty for scalars. A zero extent marks an unsized array parameter.
    std::vector<int> dims;
    std::optional<int64_t> init;
    /// Read before any assignment; initialized from primary inputs.
    bool nondet = false;
    int line = 0;

    bool is_array() const { return !dims.empty(); }
    int size() const;
};

struct FunctionDecl {
    std::string name;
    Type ret = Type::Int;
    std::vector<Decl> params;
    std::vector<Decl> locals;
    Block body; // ends with the single Return statement
    int line = 0;
};

struct Program {
    std::vector<Decl> decls;
    std::vector<FunctionDecl> funcs;
    Block body;
    /// Lowered function bodies, entered only through Jump statements.
    std::vector<Block> routines;
    int next_id = 1;

    const Decl* find_decl(const std::string& name) const;
    Decl* find_decl(const std::string& name);
    const FunctionDecl* find_func(const std::string& name) const;
    int fresh_id() { return next_id++; }
};

namespace st {

Stmt assign(int id, ExprPtr target, ExprPtr expr, int line = 0);
Stmt jump(int id, ExprPtr target, int line = 0);
Stmt if_(int id, ExprPtr cond, Block then_block, Block else_block, int line = 0);
Stmt while_(int id, ExprPtr cond, Block body, int line = 0);
Stmt break_(int id, int line = 0);

} // namespace st

/// Visits every statement (nested ones included) of the main body and routines.
void for_each_stmt(const Program& p, const std::function<void(const Stmt&)>& fn);
void for_each_stmt(const Block& b, const std::function<void(const Stmt&)>& fn);
void for_each_stmt_mut(Block& b, const std::function<void(Stmt&)>& fn);

/// Every expression held by a statement (not descending into nested blocks).
std::vector<ExprPtr> stmt_exprs(const Stmt& s);

/// Index of a 2D access flattened row-major: e1 * cols + e2.
ExprPtr index2d(const ExprPtr& e1, const ExprPtr& e2, int cols);

/// Type of an expression given the types of its variables.
Type expr_type(const Expr& e, const std::function<Type(const std::string&)>& var_type);

} // namespace j2aig
