#pragma once

// The .qmachine language: declare a candidate machine by its action on the
// basis, say how that action extends to arbitrary inputs, and state which
// universal behaviour is required. See docs/grammar.ebnf.
//
//   machine clone {
//     on |0> -> |0>|0>;
//     on |1> -> |1>|1>;
//     extend linear;
//     require universal on bloch target clone;
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qnogo/algebra.hpp"
#include "qnogo/verifier.hpp"

namespace qnogo::dsl {

struct SourceUnit {
    std::string text;
    std::string origin = "<stdin>";
};

enum class Severity { Error, Warning };

/// 1-based line and column.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;
};

/// origin:line:col: severity: message
std::string format_diagnostic(const std::string& origin, const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diags);

// --- tokens -------------------------------------------------------------------

enum class TokenKind {
    Machine,
    On,
    Extend,
    Require,
    Universal,
    Target,
    Candidate,
    Ident,
    Number,  // 0.5, 1e-3
    Imag,    // 0.5i
    Ket,     // |01>, |+>
    Arrow,
    Eq,
    Plus,
    Minus,
    Star,
    Comma,
    Semi,
    LParen,
    RParen,
    LBrace,
    RBrace,
    End,
};

std::string_view token_kind_name(TokenKind k);

struct Token {
    TokenKind kind;
    std::string text;
    /// Number and Imag tokens: the magnitude written.
    double value = 0.0;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct TokenizeResult {
    /// Always terminated by an End token.
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;
};

TokenizeResult tokenize(const SourceUnit& src);

// --- syntax tree ------------------------------------------------------------------

/// Source position. Positions never take part in AST equality, so a
/// pretty-printed tree compares equal to the original.
struct Pos {
    std::size_t line = 1;
    std::size_t column = 1;
    friend bool operator==(const Pos&, const Pos&) { return true; }
};

/// coeff * |labels>, labels over {0, 1, +, -}; adjacent kets are concatenated.
struct KetTerm {
    Complex coeff{1.0, 0.0};
    std::string labels;
    friend bool operator==(const KetTerm&, const KetTerm&) = default;
};

struct KetExpr {
    std::vector<KetTerm> terms;
    Pos pos;
    friend bool operator==(const KetExpr&, const KetExpr&) = default;
};

struct RuleDecl {
    int basis = 0;
    KetExpr output;
    Pos pos;
    friend bool operator==(const RuleDecl&, const RuleDecl&) = default;
};

struct ExtensionDecl {
    enum class Kind { Linear, Antilinear, Hybrid };
    Kind kind = Kind::Linear;
    double lambda = 1.0;
    Pos pos;
    friend bool operator==(const ExtensionDecl&, const ExtensionDecl&) = default;
};

/// H, HP, HE, CNOT, I, X or UG(a=.., b=..).
struct CandidateDecl {
    std::string gate;
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Pos pos;
    friend bool operator==(const CandidateDecl&, const CandidateDecl&) = default;
};

struct SetDecl {
    enum class Kind { Bloch, Polar, Equatorial, List };
    Kind kind = Kind::Bloch;
    std::vector<KetExpr> list;
    friend bool operator==(const SetDecl&, const SetDecl&) = default;
};

/// clone, complement, conjugate, hybrid(lambda=..), hadamard9, hadamard10,
/// unequal(a=.., b=..) or cnot.
struct TargetDecl {
    std::string name;
    double lambda = 1.0;
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Pos pos;
    friend bool operator==(const TargetDecl&, const TargetDecl&) = default;
};

struct RequireDecl {
    SetDecl set;
    TargetDecl target;
    Pos pos;
    friend bool operator==(const RequireDecl&, const RequireDecl&) = default;
};

struct MachineDecl {
    std::string name;
    std::vector<RuleDecl> rules;
    std::optional<ExtensionDecl> extension;
    std::optional<CandidateDecl> candidate;
    std::optional<RequireDecl> require;
    Pos pos;
    friend bool operator==(const MachineDecl&, const MachineDecl&) = default;
};

struct Ast {
    std::vector<MachineDecl> machines;
    friend bool operator==(const Ast&, const Ast&) = default;
};

struct ParseResult {
    Ast ast;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return !has_errors(diagnostics); }
};

/// Recursive descent; syntax errors are collected and parsing resumes after
/// the next `;` (or at the next machine).
ParseResult parse(const std::vector<Token>& tokens);
/// tokenize + parse, diagnostics of both stages merged in source order.
ParseResult parse(const SourceUnit& src);

/// Canonical text for an AST; parse(pretty_print(a)).ast == a.
std::string pretty_print(const Ast& ast);

// --- compilation ----------------------------------------------------------------

/// Evaluates a ket expression. Throws std::invalid_argument on mixed term
/// dimensions, bad labels or more than four factors.
StateVector evaluate(const KetExpr& e);

using StateSelector = std::variant<verify::StateSet, std::vector<Qubit>>;

struct CompiledMachine {
    std::string name;
    /// Present for clone-like targets.
    std::optional<verify::MachineSpec> machine;
    /// Present for gate targets.
    std::optional<DenseOperator> candidate;
    verify::TargetTransform target;
    /// Target as written, e.g. "hybrid(lambda=0.5)".
    std::string target_label;
    StateSelector states;
    std::string set_name;
};

struct CompileResult {
    std::vector<CompiledMachine> machines;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return !has_errors(diagnostics); }
};

CompileResult compile(const Ast& ast);

// --- checking -------------------------------------------------------------------

struct CheckOptions {
    /// Sample count for bloch/polar/equatorial sets.
    std::size_t samples = 256;
    std::uint64_t seed = 42;
    double tol = kVerdictTol;
};

struct CheckOutcome {
    std::string name;
    std::string target;
    std::string set;
    std::size_t states_checked = 0;
    verify::Verdict verdict;
};

CheckOutcome check(const CompiledMachine& m, const CheckOptions& opts);

}  // namespace qnogo::dsl
