#include <charconv>
#include <cmath>
#include <string>

#include "qnogo/dsl.hpp"

namespace qnogo::dsl {
namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string scalar(Complex c) {
    if (c.imag() == 0.0) return num(c.real());
    if (c.real() == 0.0) return num(c.imag()) + "i";
    return "(" + num(c.real()) + (c.imag() < 0 ? "-" : "+") + num(std::abs(c.imag())) + "i)";
}

std::string ket_expr(const KetExpr& e) {
    std::string out;
    bool first = true;
    for (const KetTerm& t : e.terms) {
        const std::string ket = "|" + t.labels + ">";
        const Complex c = t.coeff;
        if (c.imag() == 0.0 || c.real() == 0.0) {
            // Real or purely imaginary: the sign goes in front.
            const double part = c.imag() == 0.0 ? c.real() : c.imag();
            const bool negative = std::signbit(part);
            const double mag = std::abs(part);
            std::string body = c.imag() == 0.0 ? (mag == 1.0 ? "" : num(mag)) : num(mag) + "i";
            if (first) {
                out += (negative ? "-" : "") + body + ket;
            } else {
                out += (negative ? " - " : " + ") + body + ket;
            }
        } else {
            out += (first ? "" : " + ") + scalar(c) + ket;
        }
        first = false;
    }
    return out;
}

}  // namespace

std::string pretty_print(const Ast& ast) {
    std::string out;
    for (std::size_t k = 0; k < ast.machines.size(); ++k) {
        const MachineDecl& m = ast.machines[k];
        if (k) out += "\n";
        out += "machine " + m.name + " {\n";
        for (const RuleDecl& r : m.rules)
            out += "  on |" + std::to_string(r.basis) + "> -> " + ket_expr(r.output) + ";\n";
        if (m.candidate) {
            out += "  candidate " + m.candidate->gate;
            if (m.candidate->gate == "UG")
                out += "(a=" + scalar(m.candidate->a) + ", b=" + scalar(m.candidate->b) + ")";
            out += ";\n";
        }
        if (m.extension) {
            switch (m.extension->kind) {
                case ExtensionDecl::Kind::Linear: out += "  extend linear;\n"; break;
                case ExtensionDecl::Kind::Antilinear: out += "  extend antilinear;\n"; break;
                case ExtensionDecl::Kind::Hybrid:
                    out += "  extend hybrid(lambda=" + num(m.extension->lambda) + ");\n";
                    break;
            }
        }
        if (m.require) {
            out += "  require universal on ";
            const SetDecl& s = m.require->set;
            switch (s.kind) {
                case SetDecl::Kind::Bloch: out += "bloch"; break;
                case SetDecl::Kind::Polar: out += "polar"; break;
                case SetDecl::Kind::Equatorial: out += "equatorial"; break;
                case SetDecl::Kind::List: {
                    out += "list(";
                    for (std::size_t i = 0; i < s.list.size(); ++i) out += (i ? ", " : "") + ket_expr(s.list[i]);
                    out += ")";
                    break;
                }
            }
            const TargetDecl& t = m.require->target;
            out += " target " + t.name;
            if (t.name == "hybrid") out += "(lambda=" + num(t.lambda) + ")";
            if (t.name == "unequal") out += "(a=" + scalar(t.a) + ", b=" + scalar(t.b) + ")";
            out += ";\n";
        }
        out += "}\n";
    }
    return out;
}

}  // namespace qnogo::dsl
