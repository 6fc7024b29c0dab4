#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace j2aig {

enum class Tok : uint8_t {
    Ident, Number,
    KwInt, KwBool, KwIf, KwElse, KwWhile, KwBreak, KwReturn, KwTrue, KwFalse, KwForall, KwExists,
    AtPre, AtPost,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Semi, Comma, Assign, Question, Colon, Range,
    Plus, Minus, Star, Slash, Percent,
    Lt, Le, Gt, Ge, EqEq, NotEq,
    AndAnd, OrOr, Bang, Arrow,
    End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int64_t value = 0;
    int line = 1;
    int col = 1;
};

const char* token_name(Tok t);

/// Splits J source into tokens; the list always ends with a `Tok::End`.
std::vector<Token> tokenize(std::string_view source);

} // namespace j2aig
