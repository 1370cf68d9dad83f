#ifndef BAUML_LEXER_HPP
#define BAUML_LEXER_HPP

#include <cctype>
#include <string>
#include <vector>

#include "bauml/diag.hpp"

namespace bauml {

// One tokenizer shared by the model DSL, the OCL subset and the property
// language. `#` starts a line comment. Multi-char operators are listed in
// lex(); everything else is a single-char punct.
struct Token {
    enum Kind { Ident, Str, Int, Punct, End };
    Kind kind = End;
    std::string text;
    SourcePos pos;

    bool is(Kind k) const { return kind == k; }
    bool is_punct(const char* p) const { return kind == Punct && text == p; }
    bool is_ident(const char* id) const { return kind == Ident && text == id; }
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto bump = [&](size_t n) {
        for (size_t j = 0; j < n; ++j) {
            if (src[i + j] == '\n') { ++line; col = 1; } else { ++col; }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') bump(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { bump(1); continue; }
        SourcePos pos{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t n = 0;
            while (i + n < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_'))
                ++n;
            out.push_back({Token::Ident, src.substr(i, n), pos});
            bump(n);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t n = 0;
            while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
            out.push_back({Token::Int, src.substr(i, n), pos});
            bump(n);
            continue;
        }
        if (c == '"') {
            std::string s;
            size_t n = 1;
            while (i + n < src.size() && src[i + n] != '"') {
                if (src[i + n] == '\n') throw syntax_error(pos, "unterminated string literal");
                s += src[i + n];
                ++n;
            }
            if (i + n >= src.size()) throw syntax_error(pos, "unterminated string literal");
            out.push_back({Token::Str, s, pos});
            bump(n + 1);
            continue;
        }
        static const char* two[] = {"->", "--", "..", "<>", "/\\", "\\/", "[]"};
        bool matched = false;
        for (const char* op : two) {
            if (src.compare(i, 2, op) == 0) {
                out.push_back({Token::Punct, op, pos});
                bump(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static const std::string singles = "(){}[],.:;|=*@<>!-";
        if (singles.find(c) == std::string::npos)
            throw syntax_error(pos, std::string("unexpected character '") + c + "'");
        out.push_back({Token::Punct, std::string(1, c), pos});
        bump(1);
    }
    out.push_back({Token::End, "", SourcePos{line, col}});
    return out;
}

// Cursor over a token stream, shared by the recursive-descent parsers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(size_t ahead = 0) const {
        size_t j = idx_ + ahead;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (idx_ + 1 < toks_.size()) ++idx_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::End; }

    bool accept_punct(const char* p) {
        if (peek().is_punct(p)) { next(); return true; }
        return false;
    }
    bool accept_ident(const char* id) {
        if (peek().is_ident(id)) { next(); return true; }
        return false;
    }
    void expect_punct(const char* p) {
        if (!accept_punct(p))
            throw syntax_error(peek().pos, std::string("expected '") + p + "', got '" + peek().text + "'");
    }
    std::string expect_ident(const char* what = "identifier") {
        if (!peek().is(Token::Ident))
            throw syntax_error(peek().pos, std::string("expected ") + what + ", got '" + peek().text + "'");
        return next().text;
    }
    void expect_kw(const char* kw) {
        if (!accept_ident(kw))
            throw syntax_error(peek().pos, std::string("expected '") + kw + "', got '" + peek().text + "'");
    }

private:
    std::vector<Token> toks_;
    size_t idx_ = 0;
};

}  // namespace bauml

#endif
