#include <cctype>
#include <charconv>
#include <string>

#include "qnogo/dsl.hpp"

namespace qnogo::dsl {

std::string format_diagnostic(const std::string& origin, const Diagnostic& d) {
    return origin + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
           (d.severity == Severity::Error ? "error" : "warning") + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

std::string_view token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Machine: return "'machine'";
        case TokenKind::On: return "'on'";
        case TokenKind::Extend: return "'extend'";
        case TokenKind::Require: return "'require'";
        case TokenKind::Universal: return "'universal'";
        case TokenKind::Target: return "'target'";
        case TokenKind::Candidate: return "'candidate'";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Number: return "number";
        case TokenKind::Imag: return "imaginary number";
        case TokenKind::Ket: return "ket";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::Eq: return "'='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semi: return "';'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

TokenKind keyword_or_ident(const std::string& s) {
    if (s == "machine") return TokenKind::Machine;
    if (s == "on") return TokenKind::On;
    if (s == "extend") return TokenKind::Extend;
    if (s == "require") return TokenKind::Require;
    if (s == "universal") return TokenKind::Universal;
    if (s == "target") return TokenKind::Target;
    if (s == "candidate") return TokenKind::Candidate;
    return TokenKind::Ident;
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    TokenizeResult run() {
        TokenizeResult out;
        while (true) {
            skip_space_and_comments();
            if (i_ >= s_.size()) break;
            const std::size_t line = line_, col = col_;
            const char c = s_[i_];
            auto simple = [&](TokenKind k, std::size_t len) {
                out.tokens.push_back({k, s_.substr(i_, len), 0.0, line, col});
                advance(len);
            };
            if (ident_start(c)) {
                const std::size_t b = i_;
                while (i_ < s_.size() && ident_char(s_[i_])) advance(1);
                std::string word = s_.substr(b, i_ - b);
                out.tokens.push_back({keyword_or_ident(word), word, 0.0, line, col});
            } else if (digit(c) || (c == '.' && i_ + 1 < s_.size() && digit(s_[i_ + 1]))) {
                lex_number(out, line, col);
            } else if (c == '|') {
                lex_ket(out, line, col);
            } else if (c == '-' && peek(1) == '>') {
                simple(TokenKind::Arrow, 2);
            } else {
                switch (c) {
                    case '=': simple(TokenKind::Eq, 1); break;
                    case '+': simple(TokenKind::Plus, 1); break;
                    case '-': simple(TokenKind::Minus, 1); break;
                    case '*': simple(TokenKind::Star, 1); break;
                    case ',': simple(TokenKind::Comma, 1); break;
                    case ';': simple(TokenKind::Semi, 1); break;
                    case '(': simple(TokenKind::LParen, 1); break;
                    case ')': simple(TokenKind::RParen, 1); break;
                    case '{': simple(TokenKind::LBrace, 1); break;
                    case '}': simple(TokenKind::RBrace, 1); break;
                    default: {
                        const std::size_t len = utf8_length(static_cast<unsigned char>(c));
                        out.diagnostics.push_back(
                            {Severity::Error, line, col, "unexpected character '" + s_.substr(i_, len) + "'"});
                        advance(len);
                    }
                }
            }
        }
        out.tokens.push_back({TokenKind::End, "", 0.0, line_, col_});
        return out;
    }

private:
    char peek(std::size_t k) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

    static std::size_t utf8_length(unsigned char c) {
        if (c >= 0xF0) return 4;
        if (c >= 0xE0) return 3;
        if (c >= 0xC0) return 2;
        return 1;
    }

    // Columns count code points, not bytes.
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n && i_ < s_.size(); ++k, ++i_) {
            const auto c = static_cast<unsigned char>(s_[i_]);
            if (c == '\n') {
                ++line_;
                col_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col_;
            }
        }
    }

    void skip_space_and_comments() {
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    void lex_number(TokenizeResult& out, std::size_t line, std::size_t col) {
        const std::size_t b = i_;
        while (i_ < s_.size() && digit(s_[i_])) advance(1);
        if (peek(0) == '.') {
            advance(1);
            while (i_ < s_.size() && digit(s_[i_])) advance(1);
        }
        if ((peek(0) == 'e' || peek(0) == 'E') &&
            (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
            advance(2);
            while (i_ < s_.size() && digit(s_[i_])) advance(1);
        }
        const std::string text = s_.substr(b, i_ - b);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            out.diagnostics.push_back({Severity::Error, line, col, "malformed number '" + text + "'"});
        }
        if (peek(0) == 'i' && !ident_char(peek(1))) {
            advance(1);
            out.tokens.push_back({TokenKind::Imag, text + "i", v, line, col});
        } else {
            out.tokens.push_back({TokenKind::Number, text, v, line, col});
        }
    }

    void lex_ket(TokenizeResult& out, std::size_t line, std::size_t col) {
        advance(1);  // '|'
        const std::size_t b = i_;
        while (i_ < s_.size() && s_[i_] != '>' && s_[i_] != '\n' && s_[i_] != ';') advance(1);
        const std::string label = s_.substr(b, i_ - b);
        if (peek(0) != '>') {
            out.diagnostics.push_back({Severity::Error, line, col, "unterminated ket '|" + label + "'"});
            return;
        }
        advance(1);
        bool valid = !label.empty();
        for (char c : label) valid = valid && (c == '0' || c == '1' || c == '+' || c == '-');
        if (!valid) {
            out.diagnostics.push_back({Severity::Error, line, col, "unknown ket label '|" + label + ">'"});
            return;
        }
        out.tokens.push_back({TokenKind::Ket, label, 0.0, line, col});
    }

    const std::string& s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

}  // namespace

TokenizeResult tokenize(const SourceUnit& src) { return Lexer(src.text).run(); }

}  // namespace qnogo::dsl
