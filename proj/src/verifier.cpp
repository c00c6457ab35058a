#include "qnogo/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qnogo/gates.hpp"
#include "qnogo/kernels.hpp"

namespace qnogo::verify {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
const Complex kInvSqrt2{std::numbers::sqrt2 / 2, 0.0};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t ancilla_dim_of(const StateVector& out) {
    if (out.dim() < 4) throw std::invalid_argument("machine outputs need principal, second register and ancilla");
    return out.dim() / 4;
}

/// Zero-pads the ancilla factor of a (4 x d) state to (4 x big).
StateVector pad_ancilla(const StateVector& v, std::size_t big) {
    const std::size_t d = v.dim() / 4;
    if (d == big) return v;
    std::vector<Complex> out(4 * big);
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t a = 0; a < d; ++a) out[p * big + a] = v[p * d + a];
    return StateVector(std::move(out));
}

StateVector hybrid_branch_state(std::size_t i, const StateVector& f, const StateVector& q) {
    return tensor(tensor(StateVector::basis(2, i), f), q);
}

const GeneralKMap& clone_map(const TargetTransform& t) {
    const auto* c = std::get_if<CloneLike>(&t.kind());
    if (!c) throw std::invalid_argument("target is not of the original-plus-function-of-original kind");
    return c->k;
}

Condition rule_condition(const TargetTransform& t) {
    return std::visit(Overloaded{
                          [](const CloneLike&) { return Condition::None; },
                          [](const HadamardSum&) { return Condition::HadamardSumRule; },
                          [](const HadamardPhase&) { return Condition::HadamardPhaseRule; },
                          [](const Unequal&) { return Condition::UnequalRule; },
                          [](const CnotRules&) { return Condition::CnotRule; },
                      },
                      t.kind());
}

Condition audit_condition(const TargetTransform& t) {
    return std::visit(Overloaded{
                          [](const CloneLike&) { return Condition::None; },
                          [](const HadamardSum&) { return Condition::HadamardSumInnerProduct; },
                          [](const HadamardPhase&) { return Condition::HadamardPhaseInnerProduct; },
                          [](const Unequal&) { return Condition::UnequalInnerProduct; },
                          [](const CnotRules&) { return Condition::CnotInnerProduct; },
                      },
                      t.kind());
}

Condition extension_condition(const Extension& e) {
    return std::visit(Overloaded{
                          [](const LinearExtension&) { return Condition::LinearExtensionVsIdeal; },
                          [](const AntilinearExtension&) { return Condition::AntilinearExtensionVsIdeal; },
                          [](const HybridExtension&) { return Condition::HybridExtensionVsIdeal; },
                      },
                      e);
}

/// Structure-of-arrays storage for kernels::discrepancy_row.
struct Batch {
    std::size_t dim;
    std::size_t count;
    std::vector<double> re;
    std::vector<double> im;

    Batch(std::size_t d, std::size_t n) : dim(d), count(n), re(d * n), im(d * n) {}
    void set(std::size_t j, const StateVector& v) {
        for (std::size_t k = 0; k < dim; ++k) {
            re[k * count + j] = v[k].real();
            im[k * count + j] = v[k].imag();
        }
    }
    kernels::BatchView view() const { return {dim, count, re.data(), im.data()}; }
};

std::string format_amplitude(Complex c) {
    constexpr double kShow = 1e-15;
    std::ostringstream os;
    os.precision(6);
    if (std::abs(c.imag()) <= kShow) {
        os << c.real();
    } else if (std::abs(c.real()) <= kShow) {
        os << c.imag() << "i";
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return os.str();
}

std::string format_qubit(const Qubit& q) {
    const std::string b = format_amplitude(q.beta());
    return format_amplitude(q.alpha()) + "|0>" + (b.front() == '-' ? " - " + b.substr(1) : " + " + b) + "|1>";
}

}  // namespace

std::string_view extension_name(const Extension& e) {
    return std::visit(Overloaded{
                          [](const LinearExtension&) { return std::string_view("linear"); },
                          [](const AntilinearExtension&) { return std::string_view("antilinear"); },
                          [](const HybridExtension&) { return std::string_view("hybrid"); },
                      },
                      e);
}

// --- MachineSpec -------------------------------------------------------------

MachineSpec::MachineSpec(StateVector out0, StateVector out1, Extension extension, std::optional<StateVector> ancilla0,
                         std::optional<StateVector> ancilla1, StateVector blank,
                         std::optional<StateVector> ancilla_init)
    : out0_(std::move(out0)),
      out1_(std::move(out1)),
      extension_(std::move(extension)),
      ancilla0_(std::move(ancilla0)),
      ancilla1_(std::move(ancilla1)),
      blank_(std::move(blank)),
      ancilla_init_(ancilla_init ? std::move(*ancilla_init) : StateVector::basis(ancilla_dim_of(out0_), 0)) {
    if (out0_.dim() != out1_.dim()) throw std::invalid_argument("basis outputs have different dimensions");
    const std::size_t d = ancilla_dim_of(out0_);
    if (!out0_.is_normalized(kVerdictTol) || !out1_.is_normalized(kVerdictTol)) {
        throw std::invalid_argument("basis outputs must be normalized");
    }
    if (blank_.dim() != 2 || !blank_.is_normalized(kVerdictTol)) throw std::invalid_argument("blank must be a qubit state");
    if (ancilla_init_.dim() != d || !ancilla_init_.is_normalized(kVerdictTol)) {
        throw std::invalid_argument("initial ancilla has the wrong dimension or norm");
    }
    for (const auto* q : {&ancilla0_, &ancilla1_}) {
        if (*q && ((*q)->dim() != d || !(*q)->is_normalized(kVerdictTol))) {
            throw std::invalid_argument("final ancilla has the wrong dimension or norm");
        }
    }
    if (std::holds_alternative<HybridExtension>(extension_)) {
        const auto& h = std::get<HybridExtension>(extension_);
        if (!ancilla0_ || !ancilla1_) throw std::invalid_argument("hybrid machines need both final ancilla states");
        // Validates lambda and the norm-preservation condition on U, A.
        GeneralKMap(h.lambda, h.unitary, h.antiunitary);
    }
}

MachineSpec MachineSpec::hybrid(double lambda, DenseOperator unitary, AntiUnitaryMap antiunitary, StateVector q0,
                                StateVector q1) {
    const GeneralKMap k(lambda, unitary, antiunitary);
    StateVector out0 = hybrid_branch_state(0, k.apply(StateVector::basis(2, 0)), q0);
    StateVector out1 = hybrid_branch_state(1, k.apply(StateVector::basis(2, 1)), q1);
    return MachineSpec(std::move(out0), std::move(out1),
                       HybridExtension{lambda, std::move(unitary), std::move(antiunitary)}, std::move(q0),
                       std::move(q1));
}

MachineSpec MachineSpec::from_basis_action(const StateVector& f0, const StateVector& f1, const StateVector& q0,
                                           const StateVector& q1, Extension extension) {
    if (std::holds_alternative<HybridExtension>(extension)) {
        throw std::invalid_argument("use MachineSpec::hybrid for hybrid machines");
    }
    return MachineSpec(hybrid_branch_state(0, f0, q0), hybrid_branch_state(1, f1, q1), std::move(extension), q0, q1);
}

bool MachineSpec::is_isometric(double tol) const { return std::abs(inner_product(out0_, out1_)) <= tol; }

// --- TargetTransform ----------------------------------------------------------

TargetTransform::TargetTransform(TargetKind kind, std::optional<StateVector> ancilla_final)
    : kind_(std::move(kind)), ancilla_final_(std::move(ancilla_final)) {
    if (const auto* u = std::get_if<Unequal>(&kind_)) {
        gates::UnequalAmplitudes(u->a, u->b);  // validates normalization
    }
    if (ancilla_final_) {
        if (!is_clone_like()) throw std::invalid_argument("only clone-like targets carry an ancilla state");
        if (ancilla_final_->dim() > 4 || !ancilla_final_->is_normalized(kVerdictTol)) {
            throw std::invalid_argument("final ancilla must be a normalized state of dimension <= 4");
        }
    }
}

TargetTransform TargetTransform::clone() { return TargetTransform(CloneLike{GeneralKMap::unitary(gates::identity())}); }

TargetTransform TargetTransform::complement() {
    return TargetTransform(CloneLike{GeneralKMap::antiunitary(gates::complementing())});
}

TargetTransform TargetTransform::conjugate() {
    return TargetTransform(CloneLike{GeneralKMap::antiunitary(AntiUnitaryMap::conjugation(2))});
}

TargetTransform TargetTransform::clone_complement(double lambda) {
    return TargetTransform(CloneLike{GeneralKMap(lambda, gates::identity(), gates::complementing())});
}

TargetTransform TargetTransform::with_ancilla_final(StateVector q) const { return TargetTransform(kind_, std::move(q)); }

std::string target_name(const TargetTransform& t) {
    return std::visit(Overloaded{
                          [](const CloneLike& c) -> std::string {
                              const double l = c.k.lambda();
                              if (l == 1.0) return "clone-like(unitary)";
                              if (l == 0.0) return "clone-like(antiunitary)";
                              std::ostringstream os;
                              os << "clone-like(hybrid lambda=" << l << ")";
                              return os.str();
                          },
                          [](const HadamardSum&) -> std::string { return "hadamard-sum"; },
                          [](const HadamardPhase&) -> std::string { return "hadamard-phase"; },
                          [](const Unequal&) -> std::string { return "unequal"; },
                          [](const CnotRules&) -> std::string { return "cnot"; },
                      },
                      t.kind());
}

std::string_view condition_name(Condition c) {
    switch (c) {
        case Condition::None: return "none";
        case Condition::LinearExtensionVsIdeal: return "linear-extension-vs-ideal";
        case Condition::AntilinearExtensionVsIdeal: return "antilinear-extension-vs-ideal";
        case Condition::HybridExtensionVsIdeal: return "hybrid-extension-vs-ideal";
        case Condition::HadamardSumRule: return "hadamard-sum-rule";
        case Condition::HadamardPhaseRule: return "hadamard-phase-rule";
        case Condition::UnequalRule: return "unequal-superposition-rule";
        case Condition::CnotRule: return "cnot-rule";
        case Condition::HadamardSumInnerProduct: return "hadamard-sum-inner-product";
        case Condition::HadamardPhaseInnerProduct: return "hadamard-phase-inner-product";
        case Condition::UnequalInnerProduct: return "unequal-superposition-inner-product";
        case Condition::CnotInnerProduct: return "cnot-inner-product";
    }
    return "unknown";
}

std::string_view condition_explanation(Condition c) {
    switch (c) {
        case Condition::None: return "no condition failed";
        case Condition::LinearExtensionVsIdeal:
            return "the linear extension alpha*out0 + beta*out1 of the basis rules differs from the ideal output "
                   "|psi>|F(psi)>|Q_psi>, whose amplitudes are quadratic in alpha and beta";
        case Condition::AntilinearExtensionVsIdeal:
            return "the antilinear extension conj(alpha)*out0 + conj(beta)*out1 differs from the ideal output, whose "
                   "amplitudes mix |alpha|^2, |beta|^2 and alpha*conj(beta)";
        case Condition::HybridExtensionVsIdeal:
            return "the hybrid extension (sqrt(lambda) linear branch plus sqrt(1-lambda) antilinear branch) differs "
                   "from the ideal sqrt(lambda)|psi>U|psi> + sqrt(1-lambda)|psi>A|psi> output";
        case Condition::HadamardSumRule:
            return "the gate does not send psi to (psi + psibar)/sqrt2 and psibar to (psi - psibar)/sqrt2 up to phase";
        case Condition::HadamardPhaseRule:
            return "the gate does not send psi to (psi + i psibar)/sqrt2 and psibar to (i psi + psibar)/sqrt2 up to "
                   "phase";
        case Condition::UnequalRule:
            return "the gate does not send psi to a psi + b psibar and psibar to b* psi - a* psibar up to phase";
        case Condition::CnotRule:
            return "the gate does not flip the target between psi and psibar exactly when the control is psibar";
        case Condition::HadamardSumInnerProduct:
            return "<psi1|psi2> is not preserved by psi -> (psi + psibar)/sqrt2: the cross terms <psi1|psi2bar> and "
                   "<psi1bar|psi2> do not cancel";
        case Condition::HadamardPhaseInnerProduct:
            return "<psi1|psi2> is not preserved by psi -> (psi + i psibar)/sqrt2: the cross terms i<psi1|psi2bar> and "
                   "-i<psi1bar|psi2> do not cancel";
        case Condition::UnequalInnerProduct:
            return "<psi1|psi2> picks up (a* b - a b*)<psi1|psi2bar> under psi -> a psi + b psibar";
        case Condition::CnotInnerProduct:
            return "the rules of a CNOT in the unknown psi/psibar basis change inner products between two inputs";
    }
    return "unknown condition";
}

std::string_view state_set_name(StateSet s) {
    switch (s) {
        case StateSet::Bloch: return "bloch";
        case StateSet::Polar: return "polar";
        case StateSet::Equatorial: return "equatorial";
    }
    return "unknown";
}

std::vector<Qubit> state_set(StateSet set, std::size_t n, std::uint64_t seed, bool with_axes) {
    if (n == 0) throw std::invalid_argument("state set needs at least one state");
    std::vector<Qubit> out;
    switch (set) {
        case StateSet::Bloch: {
            if (with_axes) {
                const double h = std::numbers::sqrt2 / 2;
                out = {Qubit::zero(), Qubit::plus(), Qubit(h, Complex(0, h)),
                       Qubit::one(),  Qubit::minus(), Qubit(h, Complex(0, -h))};
            }
            const auto sample = sample_bloch(n, seed);
            out.insert(out.end(), sample.begin(), sample.end());
            break;
        }
        case StateSet::Polar:
            for (std::size_t k = 0; k < n; ++k) {
                const double theta = n == 1 ? 0.0 : kPi * static_cast<double>(k) / static_cast<double>(n - 1);
                out.push_back(circle_state({CircleKind::PolarPlus, std::min(theta, kPi)}));
            }
            break;
        case StateSet::Equatorial:
            for (std::size_t k = 0; k < n; ++k) {
                const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
                out.push_back(equatorial_representative(phi));
            }
            break;
    }
    return out;
}

// --- extensions ----------------------------------------------------------------

StateVector extend_linear(const MachineSpec& m, const Qubit& q) {
    if (!std::holds_alternative<LinearExtension>(m.extension())) {
        throw std::invalid_argument("extend_linear: machine extension is " + std::string(extension_name(m.extension())));
    }
    return q.alpha() * m.out0() + q.beta() * m.out1();
}

StateVector extend_antilinear(const MachineSpec& m, const Qubit& q) {
    if (!std::holds_alternative<AntilinearExtension>(m.extension())) {
        throw std::invalid_argument("extend_antilinear: machine extension is " +
                                    std::string(extension_name(m.extension())));
    }
    return std::conj(q.alpha()) * m.out0() + std::conj(q.beta()) * m.out1();
}

StateVector extend_hybrid(const MachineSpec& m, const Qubit& q) {
    const auto* h = std::get_if<HybridExtension>(&m.extension());
    if (!h) {
        throw std::invalid_argument("extend_hybrid: machine extension is " + std::string(extension_name(m.extension())));
    }
    if (!(h->lambda >= 0.0 && h->lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    const StateVector e0 = StateVector::basis(2, 0), e1 = StateVector::basis(2, 1);
    const StateVector u0 = hybrid_branch_state(0, apply(h->unitary, e0), *m.ancilla0());
    const StateVector u1 = hybrid_branch_state(1, apply(h->unitary, e1), *m.ancilla1());
    const StateVector a0 = hybrid_branch_state(0, apply_antiunitary(h->antiunitary, e0), *m.ancilla0());
    const StateVector a1 = hybrid_branch_state(1, apply_antiunitary(h->antiunitary, e1), *m.ancilla1());
    const Complex sl = std::sqrt(h->lambda), sa = std::sqrt(1.0 - h->lambda);
    return (sl * q.alpha()) * u0 + (sa * std::conj(q.alpha())) * a0 + (sl * q.beta()) * u1 +
           (sa * std::conj(q.beta())) * a1;
}

StateVector extend(const MachineSpec& m, const Qubit& q) {
    return std::visit(Overloaded{
                          [&](const LinearExtension&) { return extend_linear(m, q); },
                          [&](const AntilinearExtension&) { return extend_antilinear(m, q); },
                          [&](const HybridExtension&) { return extend_hybrid(m, q); },
                      },
                      m.extension());
}

StateVector ideal_output(const TargetTransform& t, const Qubit& q) {
    if (const auto* c = std::get_if<CloneLike>(&t.kind())) {
        const StateVector psi = q.state();
        return tensor(tensor(psi, c->k.apply(psi)), t.ancilla_final().value_or(StateVector{1.0}));
    }
    return required_rules(t, q).front().output;
}

double machine_deviation(const MachineSpec& m, const TargetTransform& t, const Qubit& q, AncillaMode mode) {
    const GeneralKMap& k = clone_map(t);
    const StateVector actual = extend(m, q);
    const StateVector psi = q.state();
    const StateVector principal = tensor(psi, k.apply(psi));
    const std::size_t da = m.ancilla_dim();

    if (mode == AncillaMode::Aligned) {
        double captured = 0.0;
        for (std::size_t a = 0; a < da; ++a) {
            Complex v = 0.0;
            for (std::size_t p = 0; p < 4; ++p) v += std::conj(principal[p]) * actual[p * da + a];
            captured += std::norm(v);
        }
        return std::clamp(1.0 - captured, 0.0, 1.0);
    }

    const StateVector q_final = t.ancilla_final() ? *t.ancilla_final()
                                : m.ancilla0()    ? *m.ancilla0()
                                                  : StateVector::basis(da, 0);
    const StateVector ideal = tensor(principal, q_final);
    const std::size_t common = std::max(da, q_final.dim());
    return phase_mismatch(pad_ancilla(ideal, common), pad_ancilla(actual, common));
}

Verdict check_machine(const MachineSpec& m, const TargetTransform& t, const std::vector<Qubit>& states, double tol,
                      AncillaMode mode) {
    if (states.empty()) throw std::invalid_argument("check_machine: empty state set");
    std::size_t worst = 0;
    double worst_dev = -1.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double d = machine_deviation(m, t, states[i], mode);
        if (d > worst_dev) {
            worst_dev = d;
            worst = i;
        }
    }
    Verdict v;
    v.violation = worst_dev;
    v.realizable = worst_dev <= tol;
    v.condition = v.realizable ? Condition::None : extension_condition(m.extension());
    std::ostringstream detail;
    detail << extension_name(m.extension()) << " machine vs " << target_name(t) << " target over " << states.size()
           << " states: max deviation 1-|<ideal|actual>|^2 = " << worst_dev;
    if (!v.realizable) {
        v.witness = std::make_pair(states[worst], complement(states[worst]));
        detail << " at " << format_qubit(states[worst]) << "; " << condition_explanation(v.condition);
    }
    v.detail = detail.str();
    return v;
}

// --- gate targets ----------------------------------------------------------------

std::vector<Rule> required_rules(const TargetTransform& t, const Qubit& q, double complement_sign) {
    if (complement_sign != 1.0 && complement_sign != -1.0) throw std::invalid_argument("complement_sign must be +1 or -1");
    const StateVector p = q.state();
    const StateVector pb = Complex(complement_sign) * complement(q).state();
    return std::visit(
        Overloaded{
            [](const CloneLike&) -> std::vector<Rule> {
                throw std::invalid_argument("clone-like targets are checked with machine_deviation");
            },
            [&](const HadamardSum&) -> std::vector<Rule> {
                return {{p, kInvSqrt2 * (p + pb)}, {pb, kInvSqrt2 * (p - pb)}};
            },
            [&](const HadamardPhase&) -> std::vector<Rule> {
                return {{p, kInvSqrt2 * (p + kI * pb)}, {pb, kInvSqrt2 * (kI * p + pb)}};
            },
            [&](const Unequal& u) -> std::vector<Rule> {
                return {{p, u.a * p + u.b * pb}, {pb, std::conj(u.b) * p - std::conj(u.a) * pb}};
            },
            [&](const CnotRules&) -> std::vector<Rule> {
                const StateVector pp = tensor(p, p), ppb = tensor(p, pb), pbp = tensor(pb, p), pbpb = tensor(pb, pb);
                return {{pp, pp}, {ppb, ppb}, {pbp, pbpb}, {pbpb, pbp}};
            },
        },
        t.kind());
}

double audit_inner_product(const TargetTransform& t, const std::pair<Qubit, Qubit>& pair) {
    const auto r1 = required_rules(t, pair.first);
    const auto r2 = required_rules(t, pair.second);
    const bool all_pairs = std::holds_alternative<CnotRules>(t.kind());
    double worst = 0.0;
    for (std::size_t a = 0; a < r1.size(); ++a) {
        for (std::size_t b = 0; b < r2.size(); ++b) {
            if (!all_pairs && a != b) continue;
            const Complex before = inner_product(r1[a].input, r2[b].input);
            const Complex after = inner_product(r1[a].output, r2[b].output);
            worst = std::max(worst, std::abs(before - after));
        }
    }
    return worst;
}

double audit_unequal(Complex a, Complex b, double theta1, double theta2) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("audit_unequal: |a|^2 + |b|^2 must be 1");
    }
    const Complex phase_term = std::conj(a) * b - a * std::conj(b);
    return std::abs(phase_term * polar_gram(theta1, theta2)[1]);
}

namespace {

Verdict check_rules(const DenseOperator& candidate, const TargetTransform& t, const std::vector<Qubit>& states,
                    double tol) {
    if (states.empty()) throw std::invalid_argument("gate check: empty state set");
    std::size_t worst = 0;
    double worst_v = -1.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        // The complement is fixed only up to sign; either choice may realize the rules.
        double v = 2.0;
        for (const double sign : {1.0, -1.0}) {
            double vs = 0.0;
            for (const Rule& r : required_rules(t, states[i], sign)) {
                vs = std::max(vs, phase_mismatch(r.output, apply(candidate, r.input)));
            }
            v = std::min(v, vs);
        }
        if (v > worst_v) {
            worst_v = v;
            worst = i;
        }
    }
    Verdict verdict;
    verdict.violation = worst_v;
    verdict.realizable = worst_v <= tol;
    std::ostringstream detail;
    detail << "candidate vs " << target_name(t) << " over " << states.size()
           << " states: max rule mismatch 1-|<required|actual>|^2 = " << worst_v;
    if (verdict.realizable) {
        verdict.realizing_operator = candidate;
        verdict.condition = Condition::None;
    } else {
        verdict.condition = rule_condition(t);
        verdict.witness = std::make_pair(states[worst], complement(states[worst]));
        detail << " at " << format_qubit(states[worst]) << "; " << condition_explanation(verdict.condition);
    }
    verdict.detail = detail.str();
    return verdict;
}

}  // namespace

Verdict check_universal_gate(const DenseOperator& candidate, const TargetTransform& t, const std::vector<Qubit>& states,
                             double tol) {
    if (std::holds_alternative<CnotRules>(t.kind())) return check_cnot_universal(candidate, states, tol);
    if (t.is_clone_like()) throw std::invalid_argument("check_universal_gate needs a gate target");
    if (candidate.dim() != 2) throw std::invalid_argument("single-qubit targets need a 2x2 candidate");
    return check_rules(candidate, t, states, tol);
}

Verdict check_cnot_universal(const DenseOperator& candidate, const std::vector<Qubit>& states, double tol) {
    if (candidate.dim() != 4) throw std::invalid_argument("CNOT checks need a 4x4 candidate");
    return check_rules(candidate, TargetTransform::cnot(), states, tol);
}

WitnessResult witness_search(const TargetTransform& t, std::size_t n_samples, std::uint64_t seed, StateSet set) {
    if (n_samples < 2) throw std::invalid_argument("witness_search needs at least two samples");
    if (t.is_clone_like()) throw std::invalid_argument("witness_search needs a gate target");
    const std::vector<Qubit> states = state_set(set, n_samples, seed, false);
    const std::size_t n = states.size();

    const auto probe = required_rules(t, states.front());
    const std::size_t n_rules = probe.size();
    std::vector<Batch> ins, outs;
    for (std::size_t r = 0; r < n_rules; ++r) {
        ins.emplace_back(probe[r].input.dim(), n);
        outs.emplace_back(probe[r].output.dim(), n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto rules = required_rules(t, states[j]);
        for (std::size_t r = 0; r < n_rules; ++r) {
            ins[r].set(j, rules[r].input);
            outs[r].set(j, rules[r].output);
        }
    }

    const bool all_pairs = std::holds_alternative<CnotRules>(t.kind());
    WitnessResult best{{states[0], states[1]}, -1.0, audit_condition(t), 0, 1};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t a = 0; a < n_rules; ++a) {
            for (std::size_t b = 0; b < n_rules; ++b) {
                if (!all_pairs && a != b) continue;
                const kernels::RowMax row =
                    kernels::discrepancy_row(ins[a].view(), outs[a].view(), i, ins[b].view(), outs[b].view(), i + 1);
                if (row.value > best.violation) {
                    best.violation = row.value;
                    best.first_index = i;
                    best.second_index = row.index;
                }
            }
        }
    }
    best.pair = {states[best.first_index], states[best.second_index]};
    best.violation = std::max(best.violation, 0.0);
    return best;
}

// --- great-circle gram identities --------------------------------------------------

std::string_view gram_identity_name(GramIdentity g) {
    switch (g) {
        case GramIdentity::SameOverlap: return "same-overlap";
        case GramIdentity::PolarCross: return "polar-cross";
        case GramIdentity::EquatorialCross: return "equatorial-cross";
    }
    return "unknown";
}

double gram_residual(GramIdentity identity, StateSet circle, std::size_t n) {
    if (n < 2) throw std::invalid_argument("circle grid needs at least two points");
    if (circle == StateSet::Bloch) throw std::invalid_argument("gram identities are checked on a great circle");
    const std::vector<Qubit> pts = state_set(circle, n, 0);
    double worst = 0.0;
    for (const Qubit& a : pts) {
        for (const Qubit& b : pts) {
            const Gram4 g = gram(a, b);
            double r = 0.0;
            switch (identity) {
                case GramIdentity::SameOverlap: r = std::abs(g[0] - g[3]); break;
                case GramIdentity::PolarCross: r = std::abs(g[1] + g[2]); break;
                case GramIdentity::EquatorialCross: r = std::abs(g[1] - g[2]); break;
            }
            worst = std::max(worst, r);
        }
    }
    return worst;
}

std::vector<GramCheck> circle_check(std::size_t n) {
    const std::pair<GramIdentity, StateSet> holds[] = {{GramIdentity::SameOverlap, StateSet::Polar},
                                                        {GramIdentity::PolarCross, StateSet::Polar},
                                                        {GramIdentity::SameOverlap, StateSet::Equatorial},
                                                        {GramIdentity::EquatorialCross, StateSet::Equatorial}};
    const std::pair<GramIdentity, StateSet> fails[] = {{GramIdentity::PolarCross, StateSet::Equatorial},
                                                        {GramIdentity::EquatorialCross, StateSet::Polar}};
    std::vector<GramCheck> out;
    for (const auto& [id, c] : holds) out.push_back({id, c, gram_residual(id, c, n), true});
    for (const auto& [id, c] : fails) out.push_back({id, c, gram_residual(id, c, n), false});
    return out;
}

}  // namespace qnogo::verify
