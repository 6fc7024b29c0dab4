#include "j2aig/lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

#include "j2aig/errors.hpp"

namespace j2aig {

const char* token_name(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::KwInt: return "'int'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwBreak: return "'break'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwExists: return "'exists'";
    case Tok::AtPre: return "'@pre'";
    case Tok::AtPost: return "'@post'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "'='";
    case Tok::Question: return "'?'";
    case Tok::Colon: return "':'";
    case Tok::Range: return "'..'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
    }
    return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
    static const std::unordered_map<std::string_view, Tok> kw = {
        {"int", Tok::KwInt},       {"bool", Tok::KwBool},     {"if", Tok::KwIf},
        {"else", Tok::KwElse},     {"while", Tok::KwWhile},   {"break", Tok::KwBreak},
        {"return", Tok::KwReturn}, {"true", Tok::KwTrue},     {"false", Tok::KwFalse},
        {"forall", Tok::KwForall}, {"exists", Tok::KwExists},
    };
    return kw;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        Token end;
        end.kind = Tok::End;
        end.line = line_;
        end.col = col_;
        out.push_back(end);
        return out;
    }

private:
    char peek(size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                int line = line_, col = col_;
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) throw LexError(line, col, "unterminated comment");
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token make(Tok kind, size_t len, int line, int col) {
        Token t;
        t.kind = kind;
        t.text = std::string(src_.substr(pos_, len));
        t.line = line;
        t.col = col;
        for (size_t i = 0; i < len; ++i) advance();
        return t;
    }

    Token next() {
        int line = line_, col = col_;
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t len = 0;
            while (std::isalnum(static_cast<unsigned char>(peek(len))) || peek(len) == '_') ++len;
            auto word = src_.substr(pos_, len);
            auto it = keywords().find(word);
            return make(it == keywords().end() ? Tok::Ident : it->second, len, line, col);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t len = 0;
            while (std::isdigit(static_cast<unsigned char>(peek(len)))) ++len;
            if (std::isalpha(static_cast<unsigned char>(peek(len))) || peek(len) == '_')
                throw LexError(line, col + static_cast<int>(len), "malformed number");
            Token t = make(Tok::Number, len, line, col);
            uint64_t v = 0;
            for (char d : t.text) {
                if (v > (static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) - (d - '0')) / 10)
                    throw LexError(line, col, "integer literal too large");
                v = v * 10 + static_cast<uint64_t>(d - '0');
            }
            t.value = static_cast<int64_t>(v);
            return t;
        }
        if (c == '@') {
            size_t len = 1;
            while (std::isalpha(static_cast<unsigned char>(peek(len)))) ++len;
            auto word = src_.substr(pos_, len);
            if (word == "@pre") return make(Tok::AtPre, len, line, col);
            if (word == "@post") return make(Tok::AtPost, len, line, col);
            throw LexError(line, col, "unknown annotation '" + std::string(word) + "'");
        }
        char d = peek(1);
        switch (c) {
        case '(': return make(Tok::LParen, 1, line, col);
        case ')': return make(Tok::RParen, 1, line, col);
        case '{': return make(Tok::LBrace, 1, line, col);
        case '}': return make(Tok::RBrace, 1, line, col);
        case '[': return make(Tok::LBracket, 1, line, col);
        case ']': return make(Tok::RBracket, 1, line, col);
        case ';': return make(Tok::Semi, 1, line, col);
        case ',': return make(Tok::Comma, 1, line, col);
        case '?': return make(Tok::Question, 1, line, col);
        case ':': return make(Tok::Colon, 1, line, col);
        case '+': return make(Tok::Plus, 1, line, col);
        case '*': return make(Tok::Star, 1, line, col);
        case '/': return make(Tok::Slash, 1, line, col);
        case '%': return make(Tok::Percent, 1, line, col);
        case '.':
            if (d == '.') return make(Tok::Range, peek(2) == '.' ? 3 : 2, line, col);
            break;
        case '-': return d == '>' ? make(Tok::Arrow, 2, line, col) : make(Tok::Minus, 1, line, col);
        case '<': return d == '=' ? make(Tok::Le, 2, line, col) : make(Tok::Lt, 1, line, col);
        case '>': return d == '=' ? make(Tok::Ge, 2, line, col) : make(Tok::Gt, 1, line, col);
        case '=': return d == '=' ? make(Tok::EqEq, 2, line, col) : make(Tok::Assign, 1, line, col);
        case '!': return d == '=' ? make(Tok::NotEq, 2, line, col) : make(Tok::Bang, 1, line, col);
        case '&':
            if (d == '&') return make(Tok::AndAnd, 2, line, col);
            break;
        case '|':
            if (d == '|') return make(Tok::OrOr, 2, line, col);
            break;
        default:
            break;
        }
        std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                                ? "byte " + std::to_string(static_cast<unsigned char>(c))
                                : "'" + std::string(1, c) + "'";
        throw LexError(line, col, "illegal character " + shown);
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

} // namespace j2aig
