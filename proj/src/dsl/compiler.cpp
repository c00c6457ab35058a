#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qnogo/dsl.hpp"
#include "qnogo/gates.hpp"

namespace qnogo::dsl {
namespace {

constexpr double kNormTol = 1e-9;

StateVector label_state(char c) {
    const double h = std::numbers::sqrt2 / 2;
    switch (c) {
        case '0': return StateVector::basis(2, 0);
        case '1': return StateVector::basis(2, 1);
        case '+': return StateVector{h, h};
        case '-': return StateVector{h, -h};
    }
    throw std::invalid_argument(std::string("unknown ket label '") + c + "'");
}

bool is_gate_target(const TargetDecl& t) { return t.name != "clone" && t.name != "complement" && t.name != "conjugate" && t.name != "hybrid"; }

/// q with out = f (x) q for some f over the first two registers, if one exists.
std::optional<StateVector> factor_ancilla(const StateVector& out) {
    const std::size_t da = out.dim() / 4;
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t r = 0; r < 4; ++r) {
        double n = 0.0;
        for (std::size_t a = 0; a < da; ++a) n += std::norm(out[r * da + a]);
        if (n > best_norm) {
            best_norm = n;
            best = r;
        }
    }
    std::vector<Complex> q(da);
    for (std::size_t a = 0; a < da; ++a) q[a] = out[best * da + a] / std::sqrt(best_norm);
    for (std::size_t r = 0; r < 4; ++r) {
        Complex f = 0.0;
        for (std::size_t a = 0; a < da; ++a) f += out[r * da + a] * std::conj(q[a]);
        for (std::size_t a = 0; a < da; ++a)
            if (std::abs(out[r * da + a] - f * q[a]) > kNormTol) return std::nullopt;
    }
    return StateVector(std::move(q));
}

DenseOperator candidate_operator(const CandidateDecl& c) {
    if (c.gate == "H") return gates::hadamard();
    if (c.gate == "HP") return gates::hadamard_polar();
    if (c.gate == "HE") return gates::hadamard_equatorial();
    if (c.gate == "CNOT") return gates::cnot_computational();
    if (c.gate == "I") return gates::identity();
    if (c.gate == "X") return gates::pauli_x();
    if (c.gate == "UG") return gates::unequal_gate(gates::UnequalAmplitudes(c.a, c.b));
    throw std::invalid_argument("unknown candidate gate '" + c.gate + "'");
}

class MachineCompiler {
public:
    MachineCompiler(const MachineDecl& m, std::vector<Diagnostic>& diags) : m_(m), diags_(diags) {}

    std::optional<CompiledMachine> run() {
        if (!m_.extension || !m_.require) return std::nullopt;  // already reported by the parser
        const std::size_t errors_before = error_count();

        auto target = make_target();
        auto states = make_states();
        std::optional<StateVector> outs[2];
        for (const RuleDecl& r : m_.rules) outs[r.basis] = rule_output(r);
        if (error_count() != errors_before || !target || !states) return std::nullopt;

        CompiledMachine out{m_.name, std::nullopt, std::nullopt, *target, target_label(), std::move(*states), set_name()};
        if (is_gate_target(m_.require->target)) {
            out.candidate = gate_candidate(outs);
            if (!out.candidate) return std::nullopt;
        } else {
            out.machine = machine_spec(outs);
            if (!out.machine) return std::nullopt;
        }
        return out;
    }

private:
    std::size_t error_count() const {
        std::size_t n = 0;
        for (const auto& d : diags_) n += d.severity == Severity::Error;
        return n;
    }

    void error(const Pos& p, std::string msg) { diags_.push_back({Severity::Error, p.line, p.column, std::move(msg)}); }

    std::string target_label() const {
        std::ostringstream os;
        const TargetDecl& t = m_.require->target;
        os << t.name;
        const auto scalar = [](Complex c) {
            std::ostringstream s;
            if (c.imag() == 0.0) {
                s << c.real();
            } else if (c.real() == 0.0) {
                s << c.imag() << "i";
            } else {
                s << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
            }
            return s.str();
        };
        if (t.name == "hybrid") os << "(lambda=" << t.lambda << ")";
        if (t.name == "unequal") os << "(a=" << scalar(t.a) << ", b=" << scalar(t.b) << ")";
        return os.str();
    }

    std::string set_name() const {
        switch (m_.require->set.kind) {
            case SetDecl::Kind::Bloch: return "bloch";
            case SetDecl::Kind::Polar: return "polar";
            case SetDecl::Kind::Equatorial: return "equatorial";
            case SetDecl::Kind::List: return "list";
        }
        return "list";
    }

    std::optional<verify::TargetTransform> make_target() {
        const TargetDecl& t = m_.require->target;
        if (t.name == "clone") return verify::TargetTransform::clone();
        if (t.name == "complement") return verify::TargetTransform::complement();
        if (t.name == "conjugate") return verify::TargetTransform::conjugate();
        if (t.name == "hybrid") return verify::TargetTransform::clone_complement(t.lambda);
        if (t.name == "hadamard9") return verify::TargetTransform::hadamard_sum();
        if (t.name == "hadamard10") return verify::TargetTransform::hadamard_phase();
        if (t.name == "cnot") return verify::TargetTransform::cnot();
        if (t.name == "unequal") {
            if (std::abs(std::norm(t.a) + std::norm(t.b) - 1.0) > kNormTol) {
                error(t.pos, "unequal amplitudes must satisfy |a|^2 + |b|^2 = 1");
                return std::nullopt;
            }
            return verify::TargetTransform::unequal(t.a, t.b);
        }
        error(t.pos, "unknown target '" + t.name + "'");
        return std::nullopt;
    }

    std::optional<StateSelector> make_states() {
        const SetDecl& s = m_.require->set;
        switch (s.kind) {
            case SetDecl::Kind::Bloch: return StateSelector(verify::StateSet::Bloch);
            case SetDecl::Kind::Polar: return StateSelector(verify::StateSet::Polar);
            case SetDecl::Kind::Equatorial: return StateSelector(verify::StateSet::Equatorial);
            case SetDecl::Kind::List: break;
        }
        std::vector<Qubit> qs;
        bool ok = true;
        for (const KetExpr& e : s.list) {
            try {
                const StateVector v = evaluate(e);
                if (v.dim() != 2) {
                    error(e.pos, "state list entries must be single-qubit kets");
                    ok = false;
                } else if (std::abs(v.squared_norm() - 1.0) > kNormTol) {
                    error(e.pos, "state not normalized");
                    ok = false;
                } else {
                    qs.emplace_back(v.normalized());
                }
            } catch (const std::invalid_argument& ex) {
                error(e.pos, ex.what());
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return StateSelector(std::move(qs));
    }

    std::optional<StateVector> rule_output(const RuleDecl& r) {
        try {
            StateVector v = evaluate(r.output);
            const double n2 = v.squared_norm();
            if (std::abs(n2 - 1.0) > kNormTol) {
                std::ostringstream msg;
                msg << "output not normalized (squared norm " << n2 << ")";
                error(r.output.pos, msg.str());
                return std::nullopt;
            }
            return v.normalized();
        } catch (const std::invalid_argument& ex) {
            error(r.output.pos, ex.what());
            return std::nullopt;
        }
    }

    bool both_rules(const std::optional<StateVector> (&outs)[2]) {
        for (int i = 0; i < 2; ++i) {
            if (!outs[i]) {
                error(m_.pos, "machine '" + m_.name + "' is missing the basis rule for |" + std::to_string(i) + ">");
                return false;
            }
        }
        if (outs[0]->dim() != outs[1]->dim()) {
            error(m_.rules.back().pos, "dimension mismatch between basis rules (" + std::to_string(outs[0]->dim()) +
                                           " vs " + std::to_string(outs[1]->dim()) + ")");
            return false;
        }
        if (std::abs(inner_product(*outs[0], *outs[1])) > kNormTol) {
            error(m_.rules.back().pos, "basis rule outputs are not orthogonal");
            return false;
        }
        return true;
    }

    std::optional<verify::MachineSpec> machine_spec(const std::optional<StateVector> (&outs)[2]) {
        if (m_.candidate) {
            error(m_.candidate->pos, "a candidate clause only applies to gate targets");
            return std::nullopt;
        }
        if (!both_rules(outs)) return std::nullopt;
        const std::size_t dim = outs[0]->dim();
        if (dim < 4) {
            error(m_.rules.front().pos, "clone-like targets need outputs on two registers (dimension at least 4)");
            return std::nullopt;
        }
        try {
            const ExtensionDecl& e = *m_.extension;
            if (e.kind == ExtensionDecl::Kind::Hybrid) return hybrid_spec(outs, e);
            const verify::Extension ext = e.kind == ExtensionDecl::Kind::Linear ? verify::Extension(verify::LinearExtension{})
                                                                               : verify::Extension(verify::AntilinearExtension{});
            return verify::MachineSpec(*outs[0], *outs[1], ext, factor_ancilla(*outs[0]), factor_ancilla(*outs[1]));
        } catch (const std::invalid_argument& ex) {
            error(m_.pos, ex.what());
            return std::nullopt;
        }
    }

    // Rules must read |i> (x) K|i> (x) |Q_i> with K = sqrt(l) I + sqrt(1-l) A,
    // A the complementing map.
    std::optional<verify::MachineSpec> hybrid_spec(const std::optional<StateVector> (&outs)[2], const ExtensionDecl& e) {
        const GeneralKMap k(e.lambda, gates::identity(), gates::complementing());
        const std::size_t da = outs[0]->dim() / 4;
        StateVector qs[2] = {StateVector::basis(da, 0), StateVector::basis(da, 0)};
        for (std::size_t i = 0; i < 2; ++i) {
            const StateVector head = tensor(StateVector::basis(2, i), k.apply(StateVector::basis(2, i)));
            std::vector<Complex> q(da);
            for (std::size_t a = 0; a < da; ++a)
                for (std::size_t r = 0; r < 4; ++r) q[a] += std::conj(head[r]) * (*outs[i])[r * da + a];
            const StateVector qv(q);
            const StateVector rebuilt = tensor(head, qv);
            double err = 0.0;
            for (std::size_t x = 0; x < rebuilt.dim(); ++x) err = std::max(err, std::abs(rebuilt[x] - (*outs[i])[x]));
            if (err > kNormTol) {
                const auto& rule = *std::find_if(m_.rules.begin(), m_.rules.end(),
                                                 [&](const RuleDecl& r) { return r.basis == static_cast<int>(i); });
                error(rule.output.pos, "hybrid rule for |" + std::to_string(i) +
                                           "> must read |i> (x) K|i> (x) |Q> with K = sqrt(lambda) I + "
                                           "sqrt(1-lambda) A (A the complementing map)");
                return std::nullopt;
            }
            qs[i] = qv.normalized();
        }
        return verify::MachineSpec::hybrid(e.lambda, gates::identity(), gates::complementing(), qs[0], qs[1]);
    }

    std::optional<DenseOperator> gate_candidate(const std::optional<StateVector> (&outs)[2]) {
        const TargetDecl& t = m_.require->target;
        if (m_.extension->kind != ExtensionDecl::Kind::Linear) {
            error(m_.extension->pos, "gate targets need 'extend linear'");
            return std::nullopt;
        }
        const std::size_t want = t.name == "cnot" ? 4 : 2;
        if (m_.candidate && !m_.rules.empty()) {
            error(m_.candidate->pos, "declare either basis rules or a candidate, not both");
            return std::nullopt;
        }
        if (m_.candidate) {
            try {
                DenseOperator op = candidate_operator(*m_.candidate);
                if (op.dim() != want) {
                    error(m_.candidate->pos, "candidate '" + m_.candidate->gate + "' has dimension " +
                                                 std::to_string(op.dim()) + " but target '" + t.name + "' needs " +
                                                 std::to_string(want));
                    return std::nullopt;
                }
                return op;
            } catch (const std::invalid_argument& ex) {
                error(m_.candidate->pos, ex.what());
                return std::nullopt;
            }
        }
        if (want == 4) {
            error(m_.pos, "cnot target needs a candidate clause");
            return std::nullopt;
        }
        if (m_.rules.empty()) {
            error(m_.pos, "machine '" + m_.name + "' needs basis rules or a candidate");
            return std::nullopt;
        }
        if (!both_rules(outs)) return std::nullopt;
        if (outs[0]->dim() != 2) {
            error(m_.rules.front().pos, "gate targets need single-qubit rule outputs");
            return std::nullopt;
        }
        std::vector<Complex> e(4);
        for (std::size_t r = 0; r < 2; ++r) {
            e[r * 2 + 0] = (*outs[0])[r];
            e[r * 2 + 1] = (*outs[1])[r];
        }
        return DenseOperator(2, std::move(e));
    }

    const MachineDecl& m_;
    std::vector<Diagnostic>& diags_;
};

}  // namespace

StateVector evaluate(const KetExpr& e) {
    if (e.terms.empty()) throw std::invalid_argument("empty ket expression");
    std::optional<StateVector> total;
    for (const KetTerm& t : e.terms) {
        if (t.labels.empty() || t.labels.size() > 4)
            throw std::invalid_argument("kets need between one and four factors");
        StateVector v = label_state(t.labels[0]);
        for (std::size_t k = 1; k < t.labels.size(); ++k) v = tensor(v, label_state(t.labels[k]));
        v = t.coeff * v;
        if (!total) {
            total = std::move(v);
        } else if (total->dim() != v.dim()) {
            throw std::invalid_argument("dimension mismatch in ket expression (|" + e.terms.front().labels + "> vs |" +
                                        t.labels + ">)");
        } else {
            total = *total + v;
        }
    }
    return *total;
}

CompileResult compile(const Ast& ast) {
    CompileResult out;
    for (const MachineDecl& m : ast.machines) {
        if (auto c = MachineCompiler(m, out.diagnostics).run()) out.machines.push_back(std::move(*c));
    }
    return out;
}

}  // namespace qnogo::dsl
