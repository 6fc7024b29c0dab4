#include "j2aig/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "j2aig/errors.hpp"

namespace j2aig {

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

    Program run() {
        bool seen_stmt = false;
        while (!at(Tok::End)) {
            if (at(Tok::KwInt) || at(Tok::KwBool)) {
                if (is_function_start()) {
                    if (seen_stmt)
                        throw RestrictionError(cur().line, "function declarations must precede all statements");
                    parse_function();
                } else {
                    parse_declaration(prog_.decls, prog_.body, /*top_level=*/!seen_stmt, /*global=*/true);
                }
                continue;
            }
            prog_.body.push_back(parse_statement());
            seen_stmt = true;
        }
        if (prog_.body.empty())
            throw ParseError(cur().line, cur().col, "expected at least one statement");
        return std::move(prog_);
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok t) const { return cur().kind == t; }

    bool accept(Tok t) {
        if (!at(t)) return false;
        ++pos_;
        return true;
    }

    const Token& expect(Tok t, const char* context) {
        if (!at(t)) {
            throw ParseError(cur().line, cur().col,
                             std::string("expected ") + token_name(t) + " " + context + ", found " +
                                 (cur().kind == Tok::End ? std::string("end of input") : "'" + cur().text + "'"));
        }
        return toks_[pos_++];
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(cur().line, cur().col, what); }

    bool is_function_start() const {
        // type ident '(' ; array forms never start a function.
        return ahead(1).kind == Tok::Ident && ahead(2).kind == Tok::LParen;
    }

    Type parse_type() {
        if (accept(Tok::KwInt)) return Type::Int;
        if (accept(Tok::KwBool)) return Type::Bool;
        fail("expected a type");
    }

    int parse_extent(bool allow_unsized) {
        if (at(Tok::RBracket)) {
            if (!allow_unsized) fail("array size required");
            return 0;
        }
        const Token& n = expect(Tok::Number, "as array size");
        if (n.value <= 0) throw ParseError(n.line, n.col, "array size must be positive");
        if (n.value > 1 << 20) throw ParseError(n.line, n.col, "array size too large");
        return static_cast<int>(n.value);
    }

    std::vector<int> parse_dims(bool allow_unsized) {
        std::vector<int> dims;
        while (accept(Tok::LBracket)) {
            dims.push_back(parse_extent(allow_unsized));
            expect(Tok::RBracket, "after array size");
        }
        return dims;
    }

    void check_dims(const std::vector<int>& dims, int line) {
        if (dims.size() > 2) throw ParseError(line, 1, "arrays have at most two dimensions");
    }

    // Handles `int x;`, `int x = e;`, `int a[4], b;`, `int [5] in;`.
    void parse_declaration(std::vector<Decl>& into, Block& stmts, bool constant_init_ok, bool global) {
        int line = cur().line;
        Type type = parse_type();
        std::vector<int> prefix = parse_dims(false);
        do {
            const Token& name = expect(Tok::Ident, "in declaration");
            Decl d;
            d.name = name.text;
            d.type = type;
            d.line = name.line;
            d.dims = prefix;
            auto post = parse_dims(false);
            d.dims.insert(d.dims.end(), post.begin(), post.end());
            check_dims(d.dims, line);
            declare(d.name, name, global);
            if (accept(Tok::Assign)) {
                if (d.is_array()) fail("array declarations cannot have initializers");
                ExprPtr init = parse_expr();
                check_no_calls(init, name.line);
                auto c = constant_value(init);
                if (constant_init_ok && c) {
                    d.init = *c;
                } else {
                    stmts.push_back(st::assign(prog_.fresh_id(), ex::var(d.name), init, name.line));
                }
            }
            into.push_back(std::move(d));
        } while (accept(Tok::Comma));
        expect(Tok::Semi, "after declaration");
    }

    void declare(const std::string& name, const Token& tok, bool global) {
        auto& scope = global ? globals_ : locals_;
        if (!scope.insert(name).second)
            throw ParseError(tok.line, tok.col, "duplicate declaration of '" + name + "'");
    }

    void parse_function() {
        FunctionDecl f;
        f.line = cur().line;
        f.ret = parse_type();
        const Token& name = expect(Tok::Ident, "as function name");
        f.name = name.text;
        if (!functions_.insert(f.name).second)
            throw ParseError(name.line, name.col, "duplicate function '" + f.name + "'");
        locals_.clear();
        expect(Tok::LParen, "after function name");
        if (!at(Tok::RParen)) {
            do {
                Decl p;
                p.line = cur().line;
                p.type = parse_type();
                p.dims = parse_dims(true);
                const Token& pn = expect(Tok::Ident, "as parameter name");
                p.name = pn.text;
                auto post = parse_dims(true);
                p.dims.insert(p.dims.end(), post.begin(), post.end());
                check_dims(p.dims, p.line);
                declare(p.name, pn, false);
                f.params.push_back(std::move(p));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "after parameters");
        expect(Tok::LBrace, "to open function body");
        in_function_ = true;
        int returns = 0;
        while (!at(Tok::RBrace)) {
            if (at(Tok::End)) fail("unterminated function body");
            if (at(Tok::KwInt) || at(Tok::KwBool)) {
                if (is_function_start()) throw RestrictionError(cur().line, "nested function declarations");
                parse_declaration(f.locals, f.body, false, false);
                continue;
            }
            if (!f.body.empty() && f.body.back().kind == StmtKind::Return)
                throw RestrictionError(cur().line, "the return statement must be the last statement of '" +
                                                       f.name + "'");
            f.body.push_back(parse_statement());
            if (f.body.back().kind == StmtKind::Return) ++returns;
        }
        expect(Tok::RBrace, "to close function body");
        in_function_ = false;
        if (returns == 0 || f.body.back().kind != StmtKind::Return)
            throw RestrictionError(f.line, "function '" + f.name + "' must end with a return statement");
        prog_.funcs.push_back(std::move(f));
    }

    Block parse_block() {
        Block b;
        if (accept(Tok::LBrace)) {
            while (!accept(Tok::RBrace)) {
                if (at(Tok::End)) fail("unterminated block");
                if (at(Tok::KwInt) || at(Tok::KwBool)) fail("declarations are not allowed in nested blocks");
                b.push_back(parse_statement());
            }
        } else {
            b.push_back(parse_statement());
        }
        return b;
    }

    Stmt parse_statement() {
        int line = cur().line;
        if (accept(Tok::KwIf)) {
            expect(Tok::LParen, "after 'if'");
            ExprPtr c = parse_expr();
            expect(Tok::RParen, "after condition");
            check_no_calls(c, line);
            Stmt s = st::if_(prog_.fresh_id(), c, {}, {}, line);
            s.body = parse_nested_block();
            if (accept(Tok::KwElse)) s.orelse = parse_nested_block();
            return s;
        }
        if (accept(Tok::KwWhile)) {
            expect(Tok::LParen, "after 'while'");
            ExprPtr c = parse_expr();
            expect(Tok::RParen, "after condition");
            check_no_calls(c, line);
            Stmt s = st::while_(prog_.fresh_id(), c, {}, line);
            ++loop_depth_;
            s.body = parse_nested_block();
            --loop_depth_;
            return s;
        }
        if (at(Tok::KwBreak)) {
            if (loop_depth_ == 0) fail("'break' outside of a loop");
            ++pos_;
            expect(Tok::Semi, "after 'break'");
            return st::break_(prog_.fresh_id(), line);
        }
        if (accept(Tok::KwReturn)) {
            if (!in_function_) throw RestrictionError(line, "'return' outside of a function");
            if (block_depth_ > 0) throw RestrictionError(line, "only one return statement is allowed, at the end");
            Stmt s;
            s.kind = StmtKind::Return;
            s.id = prog_.fresh_id();
            s.line = line;
            s.expr = parse_expr();
            check_no_calls(s.expr, line);
            expect(Tok::Semi, "after return value");
            return s;
        }
        if (at(Tok::AtPre) || at(Tok::AtPost)) {
            bool pre = at(Tok::AtPre);
            ++pos_;
            Stmt s;
            s.kind = pre ? StmtKind::Pre : StmtKind::Post;
            s.id = prog_.fresh_id();
            s.line = line;
            s.spec = expect(Tok::Ident, "as specification name").text;
            expect(Tok::LBrace, "to open specification");
            s.expr = parse_expr();
            check_no_calls(s.expr, line);
            accept(Tok::Semi);
            expect(Tok::RBrace, "to close specification");
            return s;
        }
        if (at(Tok::Ident) && ahead(1).kind == Tok::LParen) {
            ExprPtr call = parse_primary();
            for (const auto& a : call->args) check_no_calls(a, line);
            expect(Tok::Semi, "after call");
            Stmt s;
            s.kind = StmtKind::Call;
            s.id = prog_.fresh_id();
            s.line = line;
            s.expr = call;
            return s;
        }
        if (at(Tok::Ident)) {
            const Token& name = toks_[pos_++];
            std::vector<ExprPtr> idx;
            while (accept(Tok::LBracket)) {
                idx.push_back(parse_expr());
                check_no_calls(idx.back(), line);
                expect(Tok::RBracket, "after index");
            }
            if (idx.size() > 2) fail("arrays have at most two dimensions");
            ExprPtr target = idx.empty() ? ex::var(name.text) : ex::index(name.text, std::move(idx));
            expect(Tok::Assign, "in assignment");
            ExprPtr rhs = parse_expr();
            if (rhs->kind == ExprKind::Call) {
                for (const auto& a : rhs->args) check_no_calls(a, line);
            } else {
                check_no_calls(rhs, line);
            }
            expect(Tok::Semi, "after assignment");
            return st::assign(prog_.fresh_id(), target, rhs, line);
        }
        if (at(Tok::KwInt) || at(Tok::KwBool)) fail("declarations are not allowed here");
        fail("expected a statement, found " +
             (cur().kind == Tok::End ? std::string("end of input") : "'" + cur().text + "'"));
    }

    Block parse_nested_block() {
        ++block_depth_;
        Block b = parse_block();
        --block_depth_;
        return b;
    }

    void check_no_calls(const ExprPtr& e, int line) {
        if (contains(e, [](const Expr& x) { return x.kind == ExprKind::Call; }))
            throw RestrictionError(line, "function calls are only allowed as the whole right-hand side of an "
                                         "assignment or as a call statement");
    }

    // Expression grammar, loosest first:
    // ternary < '->' (right assoc) < '||' < '&&' < '==' '!=' < relational < '+' '-' < '*' '/' '%' < unary
    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr c = parse_implies();
        if (accept(Tok::Question)) {
            ExprPtr t = parse_expr();
            expect(Tok::Colon, "in conditional expression");
            ExprPtr e = parse_ternary();
            return ex::ternary(c, t, e);
        }
        return c;
    }

    ExprPtr parse_implies() {
        ExprPtr a = parse_or();
        if (accept(Tok::Arrow)) return ex::binary(Op::Implies, a, parse_implies());
        return a;
    }

    ExprPtr parse_or() {
        ExprPtr a = parse_and();
        while (accept(Tok::OrOr)) a = ex::binary(Op::Or, a, parse_and());
        return a;
    }

    ExprPtr parse_and() {
        ExprPtr a = parse_equality();
        while (accept(Tok::AndAnd)) a = ex::binary(Op::And, a, parse_equality());
        return a;
    }

    ExprPtr parse_equality() {
        ExprPtr a = parse_relational();
        for (;;) {
            if (accept(Tok::EqEq)) a = ex::binary(Op::Eq, a, parse_relational());
            else if (accept(Tok::NotEq)) a = ex::binary(Op::Ne, a, parse_relational());
            else return a;
        }
    }

    ExprPtr parse_relational() {
        ExprPtr a = parse_additive();
        for (;;) {
            if (accept(Tok::Lt)) a = ex::binary(Op::Lt, a, parse_additive());
            else if (accept(Tok::Le)) a = ex::binary(Op::Le, a, parse_additive());
            else if (accept(Tok::Gt)) a = ex::binary(Op::Gt, a, parse_additive());
            else if (accept(Tok::Ge)) a = ex::binary(Op::Ge, a, parse_additive());
            else return a;
        }
    }

    ExprPtr parse_additive() {
        ExprPtr a = parse_multiplicative();
        for (;;) {
            if (accept(Tok::Plus)) a = ex::add(a, parse_multiplicative());
            else if (accept(Tok::Minus)) a = ex::sub(a, parse_multiplicative());
            else return a;
        }
    }

    ExprPtr parse_multiplicative() {
        ExprPtr a = parse_unary();
        for (;;) {
            if (accept(Tok::Star)) a = ex::binary(Op::Mul, a, parse_unary());
            else if (accept(Tok::Slash)) a = ex::binary(Op::Div, a, parse_unary());
            else if (accept(Tok::Percent)) a = ex::binary(Op::Mod, a, parse_unary());
            else return a;
        }
    }

    ExprPtr parse_unary() {
        if (accept(Tok::Minus)) {
            // Fold negative literals so `-1` prints and compares as a constant.
            if (at(Tok::Number) && ahead(1).kind != Tok::LBracket) {
                ExprPtr inner = parse_unary();
                if (inner->kind == ExprKind::IntConst) return ex::int_const(-inner->value);
                return ex::unary(Op::Neg, inner);
            }
            return ex::unary(Op::Neg, parse_unary());
        }
        if (accept(Tok::Bang)) return ex::unary(Op::Not, parse_unary());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Number:
            ++pos_;
            return ex::int_const(t.value);
        case Tok::KwTrue:
            ++pos_;
            return ex::bool_const(true);
        case Tok::KwFalse:
            ++pos_;
            return ex::bool_const(false);
        case Tok::LParen: {
            ++pos_;
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "to close parenthesis");
            return e;
        }
        case Tok::KwForall:
        case Tok::KwExists: {
            bool forall = t.kind == Tok::KwForall;
            ++pos_;
            expect(Tok::LParen, "after quantifier");
            accept(Tok::KwInt);
            std::string bound = expect(Tok::Ident, "as bound variable").text;
            expect(Tok::RParen, "after bound variable");
            expect(Tok::LBracket, "to open quantifier range");
            ExprPtr lo = parse_expr();
            expect(Tok::Range, "in quantifier range");
            ExprPtr hi = parse_expr();
            expect(Tok::RBracket, "to close quantifier range");
            expect(Tok::LBrace, "to open quantifier body");
            ExprPtr body = parse_expr();
            accept(Tok::Semi);
            expect(Tok::RBrace, "to close quantifier body");
            return ex::quantifier(forall, bound, lo, hi, body);
        }
        case Tok::Ident: {
            ++pos_;
            if (accept(Tok::LParen)) {
                std::vector<ExprPtr> args;
                if (!at(Tok::RParen)) {
                    do {
                        args.push_back(parse_expr());
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RParen, "after arguments");
                return ex::call(t.text, std::move(args));
            }
            std::vector<ExprPtr> idx;
            while (accept(Tok::LBracket)) {
                idx.push_back(parse_expr());
                expect(Tok::RBracket, "after index");
            }
            if (idx.size() > 2) fail("arrays have at most two dimensions");
            return idx.empty() ? ex::var(t.text) : ex::index(t.text, std::move(idx));
        }
        default:
            fail("expected an expression, found " +
                 (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"));
        }
    }

    const std::vector<Token>& toks_;
    size_t pos_ = 0;
    Program prog_;
    std::set<std::string> globals_;
    std::set<std::string> locals_;
    std::set<std::string> functions_;
    int loop_depth_ = 0;
    int block_depth_ = 0;
    bool in_function_ = false;
};

} // namespace

Program parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

Program parse_source(std::string_view source) { return parse(tokenize(source)); }

Program parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_source(ss.str());
}

} // namespace j2aig
