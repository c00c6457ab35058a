#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qnogo/dsl.hpp"

namespace qnogo::dsl {
namespace {

/// Thrown to abandon the current statement; the parser resynchronizes at `;`.
struct SyntaxError {};

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : t_(tokens) {
        if (t_.empty() || t_.back().kind != TokenKind::End)
            throw std::invalid_argument("token list must end with an End token");
    }

    ParseResult run() {
        ParseResult out;
        while (!at(TokenKind::End)) {
            if (!at(TokenKind::Machine)) {
                error(cur(), "expected 'machine', found " + describe(cur()));
                // Skip to the next machine declaration.
                while (!at(TokenKind::End) && !at(TokenKind::Machine)) ++i_;
                continue;
            }
            if (auto m = machine()) out.ast.machines.push_back(std::move(*m));
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    const Token& cur() const { return t_[i_]; }
    const Token& ahead(std::size_t k) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
    bool at(TokenKind k) const { return cur().kind == k; }
    bool at_ident(std::string_view word) const { return at(TokenKind::Ident) && cur().text == word; }
    static Pos pos_of(const Token& t) { return {t.line, t.column}; }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::End) return "end of input";
        if (t.kind == TokenKind::Ket) return "ket '|" + t.text + ">'";
        return std::string(token_kind_name(t.kind)) +
               (t.kind == TokenKind::Ident || t.kind == TokenKind::Number || t.kind == TokenKind::Imag
                    ? " '" + t.text + "'"
                    : "");
    }

    void error(const Token& at_tok, std::string msg) { diags_.push_back({Severity::Error, at_tok.line, at_tok.column, std::move(msg)}); }
    void error(const Pos& p, std::string msg) { diags_.push_back({Severity::Error, p.line, p.column, std::move(msg)}); }

    [[noreturn]] void fail(std::string msg) {
        error(cur(), std::move(msg));
        throw SyntaxError{};
    }

    const Token& expect(TokenKind k, std::string_view context = {}) {
        if (!at(k)) {
            fail("expected " + std::string(token_kind_name(k)) + (context.empty() ? "" : " " + std::string(context)) +
                 ", found " + describe(cur()));
        }
        return t_[i_++];
    }

    bool accept(TokenKind k) {
        if (!at(k)) return false;
        ++i_;
        return true;
    }

    // Skip past the next ';', stopping early at '}' or a new machine.
    void synchronize() {
        while (!at(TokenKind::End) && !at(TokenKind::RBrace) && !at(TokenKind::Machine)) {
            if (t_[i_++].kind == TokenKind::Semi) return;
        }
    }

    std::optional<MachineDecl> machine() {
        MachineDecl m;
        const Token& kw = expect(TokenKind::Machine);
        m.pos = pos_of(kw);
        try {
            const Token& name = expect(TokenKind::Ident, "(machine name)");
            m.name = name.text;
            m.pos = pos_of(name);
            expect(TokenKind::LBrace, "after machine name");
        } catch (const SyntaxError&) {
            while (!at(TokenKind::End) && !at(TokenKind::Machine) && !at(TokenKind::LBrace)) ++i_;
            if (!accept(TokenKind::LBrace)) return std::nullopt;
        }
        const std::size_t errors_before = diags_.size();
        while (!at(TokenKind::RBrace) && !at(TokenKind::End) && !at(TokenKind::Machine)) {
            try {
                statement(m);
            } catch (const SyntaxError&) {
                synchronize();
            }
        }
        if (!accept(TokenKind::RBrace)) error(cur(), "expected '}' to close machine '" + m.name + "', found " + describe(cur()));
        // A clause lost to a syntax error is not reported a second time as missing.
        if (diags_.size() == errors_before) {
            if (!m.extension) error(m.pos, "machine must declare extension");
            if (!m.require) error(m.pos, "machine must declare requirement");
        }
        return m;
    }

    void statement(MachineDecl& m) {
        const Token& head = cur();
        switch (head.kind) {
            case TokenKind::On: {
                ++i_;
                RuleDecl r;
                r.pos = pos_of(head);
                const Token& basis = expect(TokenKind::Ket, "after 'on'");
                if (basis.text != "0" && basis.text != "1") {
                    error(basis, "basis rule must be on |0> or |1>");
                    throw SyntaxError{};
                }
                r.basis = basis.text == "0" ? 0 : 1;
                expect(TokenKind::Arrow, "in basis rule");
                r.output = ket_expr();
                expect(TokenKind::Semi, "after basis rule");
                const bool dup = std::any_of(m.rules.begin(), m.rules.end(),
                                             [&](const RuleDecl& x) { return x.basis == r.basis; });
                if (dup) {
                    error(head, "duplicate basis rule for |" + std::to_string(r.basis) + ">");
                    return;
                }
                m.rules.push_back(std::move(r));
                return;
            }
            case TokenKind::Extend: {
                ++i_;
                ExtensionDecl e;
                e.pos = pos_of(head);
                const Token& kind = expect(TokenKind::Ident, "after 'extend'");
                if (kind.text == "linear") {
                    e.kind = ExtensionDecl::Kind::Linear;
                } else if (kind.text == "antilinear") {
                    e.kind = ExtensionDecl::Kind::Antilinear;
                } else if (kind.text == "hybrid") {
                    e.kind = ExtensionDecl::Kind::Hybrid;
                    auto params = param_list({"lambda"}, {"lambda"});
                    e.lambda = lambda_value(params.at("lambda"));
                } else {
                    error(kind, "unknown extension '" + kind.text + "' (expected linear, antilinear or hybrid)");
                    throw SyntaxError{};
                }
                expect(TokenKind::Semi, "after extension clause");
                if (m.extension) {
                    error(head, "duplicate extension clause");
                    return;
                }
                m.extension = e;
                return;
            }
            case TokenKind::Candidate: {
                ++i_;
                CandidateDecl c;
                c.pos = pos_of(head);
                const Token& gate = expect(TokenKind::Ident, "after 'candidate'");
                static const std::vector<std::string> kGates{"H", "HP", "HE", "CNOT", "I", "X", "UG"};
                if (std::find(kGates.begin(), kGates.end(), gate.text) == kGates.end()) {
                    error(gate, "unknown candidate gate '" + gate.text + "' (expected H, HP, HE, CNOT, I, X or UG(a=, b=))");
                    throw SyntaxError{};
                }
                c.gate = gate.text;
                if (c.gate == "UG") {
                    auto params = param_list({"a", "b"}, {"a", "b"});
                    c.a = params.at("a").value;
                    c.b = params.at("b").value;
                }
                expect(TokenKind::Semi, "after candidate clause");
                if (m.candidate) {
                    error(head, "duplicate candidate clause");
                    return;
                }
                m.candidate = c;
                return;
            }
            case TokenKind::Require: {
                ++i_;
                RequireDecl r;
                r.pos = pos_of(head);
                expect(TokenKind::Universal, "after 'require'");
                expect(TokenKind::On, "after 'universal'");
                r.set = set_decl();
                expect(TokenKind::Target, "after the state set");
                r.target = target_decl();
                expect(TokenKind::Semi, "after requirement clause");
                if (m.require) {
                    error(head, "duplicate requirement clause");
                    return;
                }
                m.require = std::move(r);
                return;
            }
            default:
                fail("expected statement ('on', 'extend', 'candidate' or 'require'), found " + describe(head));
        }
    }

    SetDecl set_decl() {
        SetDecl s;
        const Token& name = expect(TokenKind::Ident, "(state set)");
        if (name.text == "bloch") {
            s.kind = SetDecl::Kind::Bloch;
        } else if (name.text == "polar") {
            s.kind = SetDecl::Kind::Polar;
        } else if (name.text == "equatorial") {
            s.kind = SetDecl::Kind::Equatorial;
        } else if (name.text == "list") {
            s.kind = SetDecl::Kind::List;
            expect(TokenKind::LParen, "after 'list'");
            s.list.push_back(ket_expr());
            while (accept(TokenKind::Comma)) s.list.push_back(ket_expr());
            expect(TokenKind::RParen, "to close the state list");
        } else {
            error(name, "unknown state set '" + name.text + "' (expected bloch, polar, equatorial or list(...))");
            throw SyntaxError{};
        }
        return s;
    }

    TargetDecl target_decl() {
        TargetDecl t;
        const Token& name = expect(TokenKind::Ident, "(target)");
        t.pos = pos_of(name);
        t.name = name.text;
        if (t.name == "clone" || t.name == "complement" || t.name == "conjugate" || t.name == "hadamard9" ||
            t.name == "hadamard10" || t.name == "cnot") {
            return t;
        }
        if (t.name == "hybrid") {
            auto params = param_list({"lambda"}, {"lambda"});
            t.lambda = lambda_value(params.at("lambda"));
            return t;
        }
        if (t.name == "unequal") {
            auto params = param_list({"a", "b"}, {"a", "b"});
            t.a = params.at("a").value;
            t.b = params.at("b").value;
            return t;
        }
        error(name, "unknown target '" + t.name +
                        "' (expected clone, complement, conjugate, hybrid(lambda=), hadamard9, hadamard10, "
                        "unequal(a=, b=) or cnot)");
        throw SyntaxError{};
    }

    struct Param {
        Complex value;
        Token where;
    };

    std::map<std::string, Param> param_list(const std::vector<std::string>& allowed,
                                            const std::vector<std::string>& required) {
        std::map<std::string, Param> out;
        const Token& open = expect(TokenKind::LParen, "to open the parameter list");
        do {
            const Token& key = expect(TokenKind::Ident, "(parameter name)");
            if (std::find(allowed.begin(), allowed.end(), key.text) == allowed.end()) {
                error(key, "unknown parameter '" + key.text + "'");
                throw SyntaxError{};
            }
            expect(TokenKind::Eq, "after parameter name");
            const Token& where = cur();
            const Complex v = signed_scalar(false);
            if (!out.emplace(key.text, Param{v, where}).second) {
                error(key, "duplicate parameter '" + key.text + "'");
                throw SyntaxError{};
            }
        } while (accept(TokenKind::Comma));
        expect(TokenKind::RParen, "to close the parameter list");
        for (const auto& r : required) {
            if (!out.count(r)) {
                error(open, "missing parameter '" + r + "'");
                throw SyntaxError{};
            }
        }
        return out;
    }

    double lambda_value(const Param& p) {
        if (std::abs(p.value.imag()) != 0.0 || !(p.value.real() >= 0.0 && p.value.real() <= 1.0)) {
            error(p.where, "lambda must be a real number in [0, 1]");
            throw SyntaxError{};
        }
        return p.value.real();
    }

    // --- scalars ----------------------------------------------------------------

    bool at_scalar_start() const {
        return at(TokenKind::Number) || at(TokenKind::Imag) || at(TokenKind::LParen) || at_ident("sqrt") ||
               at_ident("i");
    }

    /// [sign] scalar {* atom}, where a sign binds to the real part of `a+bi`.
    Complex signed_scalar(bool allow_missing) {
        double sign = 1.0;
        if (accept(TokenKind::Minus)) {
            sign = -1.0;
        } else {
            accept(TokenKind::Plus);
        }
        if (!at_scalar_start()) {
            if (allow_missing) return sign;
            fail("expected a number, found " + describe(cur()));
        }
        Complex v = scalar(sign);
        // Further factors: `(1+i)*sqrt(0.5)|0>`. A `*` directly before a ket belongs to the term.
        while (at(TokenKind::Star) && ahead(1).kind != TokenKind::Ket) {
            ++i_;
            v *= atom();
        }
        return v;
    }

    /// Number [(+|-) Imag] | Imag | i | sqrt(...) | '(' sum ')'. The sign is
    /// applied to the leading real part only.
    Complex scalar(double sign) {
        if (at(TokenKind::Number) && (ahead(1).kind == TokenKind::Plus || ahead(1).kind == TokenKind::Minus) &&
            ahead(2).kind == TokenKind::Imag) {
            const double re = sign * t_[i_].value;
            const double im_sign = ahead(1).kind == TokenKind::Plus ? 1.0 : -1.0;
            const double im = im_sign * ahead(2).value;
            i_ += 3;
            return {re, im};
        }
        return sign * atom();
    }

    Complex atom() {
        const Token& tok = cur();
        if (tok.kind == TokenKind::Number) {
            ++i_;
            return tok.value;
        }
        if (tok.kind == TokenKind::Imag) {
            ++i_;
            return {0.0, tok.value};
        }
        if (at_ident("i")) {
            ++i_;
            return {0.0, 1.0};
        }
        if (at_ident("sqrt")) {
            ++i_;
            expect(TokenKind::LParen, "after 'sqrt'");
            const Token& arg_tok = cur();
            const Complex arg = paren_sum();
            expect(TokenKind::RParen, "to close 'sqrt('");
            if (arg.imag() != 0.0 || arg.real() < 0.0) {
                error(arg_tok, "sqrt needs a non-negative real argument");
                throw SyntaxError{};
            }
            return std::sqrt(arg.real());
        }
        if (accept(TokenKind::LParen)) {
            const Complex v = paren_sum();
            expect(TokenKind::RParen, "to close '('");
            return v;
        }
        fail("expected a number, found " + describe(tok));
    }

    /// Inside parentheses: [sign] product {(+|-) product}.
    Complex paren_sum() {
        Complex total = 0.0;
        double sign = 1.0;
        if (accept(TokenKind::Minus)) {
            sign = -1.0;
        } else {
            accept(TokenKind::Plus);
        }
        total += sign * product();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            sign = at(TokenKind::Plus) ? 1.0 : -1.0;
            ++i_;
            total += sign * product();
        }
        return total;
    }

    Complex product() {
        Complex v = atom();
        while (accept(TokenKind::Star)) v *= atom();
        return v;
    }

    // --- ket expressions ------------------------------------------------------------

    KetExpr ket_expr() {
        KetExpr e;
        e.pos = pos_of(cur());
        e.terms.push_back(ket_term(signed_scalar(true)));
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            e.terms.push_back(ket_term(signed_scalar(true)));
        }
        return e;
    }

    KetTerm ket_term(Complex coeff) {
        KetTerm term;
        term.coeff = coeff;
        accept(TokenKind::Star);
        const Token& first = expect(TokenKind::Ket, "in ket expression");
        term.labels = first.text;
        while (at(TokenKind::Ket)) term.labels += t_[i_++].text;
        return term;
    }

    const std::vector<Token>& t_;
    std::size_t i_ = 0;
    std::vector<Diagnostic> diags_;
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ParseResult parse(const SourceUnit& src) {
    TokenizeResult lexed = tokenize(src);
    ParseResult parsed = parse(lexed.tokens);
    parsed.diagnostics.insert(parsed.diagnostics.end(), lexed.diagnostics.begin(), lexed.diagnostics.end());
    std::stable_sort(parsed.diagnostics.begin(), parsed.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return a.line != b.line ? a.line < b.line : a.column < b.column;
    });
    return parsed;
}

}  // namespace qnogo::dsl
