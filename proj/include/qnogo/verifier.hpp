#pragma once

// Mechanized impossibility checks.
//
// A machine is described by what it does to the two basis inputs. Sending an
// arbitrary qubit through it is then fixed by (anti)linearity, and the result
// is compared with the output an ideal universal machine would produce. Gate
// targets are checked either state by state against a candidate operator or,
// candidate free, by auditing whether the required images preserve inner
// products between pairs of inputs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qnogo/algebra.hpp"
#include "qnogo/states.hpp"

namespace qnogo::verify {

struct LinearExtension {
    friend bool operator==(const LinearExtension&, const LinearExtension&) = default;
};
struct AntilinearExtension {
    friend bool operator==(const AntilinearExtension&, const AntilinearExtension&) = default;
};
/// sqrt(lambda) U on the linear branch, sqrt(1 - lambda) A on the antilinear one.
struct HybridExtension {
    double lambda;
    DenseOperator unitary;
    AntiUnitaryMap antiunitary;
};
using Extension = std::variant<LinearExtension, AntilinearExtension, HybridExtension>;

std::string_view extension_name(const Extension& e);

/// Candidate machine on principal (x) second register (x) ancilla.
///
/// out0/out1 are the outputs for |0>|blank>|ancilla_init> and
/// |1>|blank>|ancilla_init>. Output dimension is 4 * ancilla_dim.
class MachineSpec {
public:
    MachineSpec(StateVector out0, StateVector out1, Extension extension,
                std::optional<StateVector> ancilla0 = std::nullopt,
                std::optional<StateVector> ancilla1 = std::nullopt,
                StateVector blank = StateVector::basis(2, 0),
                std::optional<StateVector> ancilla_init = std::nullopt);

    /// Machine acting as |i>|blank>|Q> -> |i> (x) K|i> (x) |Q_i> with
    /// K = sqrt(lambda) U + sqrt(1 - lambda) A.
    static MachineSpec hybrid(double lambda, DenseOperator unitary, AntiUnitaryMap antiunitary, StateVector q0,
                              StateVector q1);

    /// Basis action |i> -> |i>|f_i>|q_i> under the given extension.
    static MachineSpec from_basis_action(const StateVector& f0, const StateVector& f1, const StateVector& q0,
                                         const StateVector& q1, Extension extension);

    const StateVector& out0() const { return out0_; }
    const StateVector& out1() const { return out1_; }
    const StateVector& blank() const { return blank_; }
    const StateVector& ancilla_init() const { return ancilla_init_; }
    const std::optional<StateVector>& ancilla0() const { return ancilla0_; }
    const std::optional<StateVector>& ancilla1() const { return ancilla1_; }
    const Extension& extension() const { return extension_; }
    std::size_t output_dim() const { return out0_.dim(); }
    std::size_t ancilla_dim() const { return out0_.dim() / 4; }
    /// <out0|out1> = 0 within tol.
    bool is_isometric(double tol = kVerdictTol) const;

private:
    StateVector out0_;
    StateVector out1_;
    Extension extension_;
    std::optional<StateVector> ancilla0_;
    std::optional<StateVector> ancilla1_;
    StateVector blank_;
    StateVector ancilla_init_;
};

/// |psi> -> |psi> (x) K|psi> (x) |Q_psi>
struct CloneLike {
    GeneralKMap k;
};
/// psi -> (psi + psibar)/sqrt2, psibar -> (psi - psibar)/sqrt2
struct HadamardSum {};
/// psi -> (psi + i psibar)/sqrt2, psibar -> (i psi + psibar)/sqrt2
struct HadamardPhase {};
/// psi -> a psi + b psibar, psibar -> b* psi - a* psibar
struct Unequal {
    Complex a;
    Complex b;
};
/// psi psi -> psi psi, psi psibar -> psi psibar, psibar psi -> psibar psibar,
/// psibar psibar -> psibar psi
struct CnotRules {};

using TargetKind = std::variant<CloneLike, HadamardSum, HadamardPhase, Unequal, CnotRules>;

class TargetTransform {
public:
    explicit TargetTransform(TargetKind kind, std::optional<StateVector> ancilla_final = std::nullopt);

    static TargetTransform clone();
    static TargetTransform complement();
    static TargetTransform conjugate();
    /// sqrt(lambda)|psi>|psi> + sqrt(1-lambda)|psi>|psibar>
    static TargetTransform clone_complement(double lambda);
    static TargetTransform hadamard_sum() { return TargetTransform(HadamardSum{}); }
    static TargetTransform hadamard_phase() { return TargetTransform(HadamardPhase{}); }
    static TargetTransform unequal(Complex a, Complex b) { return TargetTransform(Unequal{a, b}); }
    static TargetTransform cnot() { return TargetTransform(CnotRules{}); }

    const TargetKind& kind() const { return kind_; }
    const std::optional<StateVector>& ancilla_final() const { return ancilla_final_; }
    bool is_clone_like() const { return std::holds_alternative<CloneLike>(kind_); }
    TargetTransform with_ancilla_final(StateVector q) const;

private:
    TargetKind kind_;
    std::optional<StateVector> ancilla_final_;
};

std::string target_name(const TargetTransform& t);

/// Consistency condition that a check exercises. Names are stable and appear
/// in machine-readable reports.
enum class Condition {
    None,
    LinearExtensionVsIdeal,
    AntilinearExtensionVsIdeal,
    HybridExtensionVsIdeal,
    HadamardSumRule,
    HadamardPhaseRule,
    UnequalRule,
    CnotRule,
    HadamardSumInnerProduct,
    HadamardPhaseInnerProduct,
    UnequalInnerProduct,
    CnotInnerProduct,
};

std::string_view condition_name(Condition c);
std::string_view condition_explanation(Condition c);

struct Verdict {
    bool realizable = false;
    std::optional<DenseOperator> realizing_operator;
    /// Worst-violating (psi, psibar) pair for per-state checks, or the worst
    /// (psi1, psi2) pair for inner-product audits.
    std::optional<std::pair<Qubit, Qubit>> witness;
    double violation = 0.0;
    Condition condition = Condition::None;
    std::string detail;
};

enum class StateSet { Bloch, Polar, Equatorial };

std::string_view state_set_name(StateSet s);

/// Bloch: the six axis states (|0>, |+>, |+i>, |1>, |->, |-i>) when
/// `with_axes` is set, followed by n seeded uniform samples.
/// Polar: n points theta = pi k/(n-1). Equatorial: n points
/// equatorial_representative(2 pi k/n).
std::vector<Qubit> state_set(StateSet set, std::size_t n, std::uint64_t seed, bool with_axes = true);

// --- clone-like machines ---------------------------------------------------

StateVector extend_linear(const MachineSpec& m, const Qubit& q);
StateVector extend_antilinear(const MachineSpec& m, const Qubit& q);
StateVector extend_hybrid(const MachineSpec& m, const Qubit& q);
/// Dispatches on m.extension().
StateVector extend(const MachineSpec& m, const Qubit& q);

/// CloneLike: |psi> (x) K|psi> (x) |Q_psi>, with Q_psi = ancilla_final or the
/// trivial one-dimensional ancilla. Gate targets: the required image of psi.
StateVector ideal_output(const TargetTransform& t, const Qubit& q);

enum class AncillaMode {
    /// Compare against |Q_psi> = target ancilla_final, else the machine's
    /// |Q_0>, else |0...0>.
    Fixed,
    /// Best |Q_psi> for this input: 1 - ||(<psi|<K psi| (x) I) actual||^2.
    Aligned,
};

/// 1 - |<ideal|actual>|^2, ancillas zero-padded to a common dimension.
double machine_deviation(const MachineSpec& m, const TargetTransform& t, const Qubit& q,
                         AncillaMode mode = AncillaMode::Fixed);

/// Universality of a machine over a state set: REALIZABLE iff the largest
/// deviation is within tol.
Verdict check_machine(const MachineSpec& m, const TargetTransform& t, const std::vector<Qubit>& states,
                      double tol = kVerdictTol, AncillaMode mode = AncillaMode::Fixed);

// --- gate targets -----------------------------------------------------------

struct Rule {
    StateVector input;
    StateVector output;
};
/// Input/required-output pairs a gate target demands for psi, with
/// psibar = complement_sign * complement(psi). complement(complement(psi)) =
/// -psi, so the complement is only defined up to this sign.
std::vector<Rule> required_rules(const TargetTransform& t, const Qubit& q, double complement_sign = 1.0);

/// |<in1|in2> - <out1|out2>| maximized over the target's inner-product
/// conditions: the two same-rule conditions for Hadamard and unequal targets,
/// all sixteen rule pairs for CNOT.
double audit_inner_product(const TargetTransform& t, const std::pair<Qubit, Qubit>& pair);

/// |(a* b - a b*) <psi(theta1)|psibar(theta2)>| for polar states.
double audit_unequal(Complex a, Complex b, double theta1, double theta2);

/// Candidate gate against a target, state by state, up to a global phase per
/// rule. A state passes when one sign choice for psibar satisfies all of its
/// rules; the violation is 1 - |<required|actual>|^2, maximized over rules
/// and minimized over that sign.
Verdict check_universal_gate(const DenseOperator& candidate, const TargetTransform& t,
                             const std::vector<Qubit>& states, double tol = kVerdictTol);
Verdict check_cnot_universal(const DenseOperator& candidate, const std::vector<Qubit>& states,
                             double tol = kVerdictTol);

struct WitnessResult {
    std::pair<Qubit, Qubit> pair;
    double violation;
    Condition condition;
    std::size_t first_index;
    std::size_t second_index;
};

/// Pair from state_set(set, n_samples, seed, false) maximizing
/// audit_inner_product; the first pair found wins ties.
WitnessResult witness_search(const TargetTransform& t, std::size_t n_samples, std::uint64_t seed,
                             StateSet set = StateSet::Bloch);

// --- great-circle gram identities ------------------------------------------

/// Sign pattern checked over every ordered pair of an n-point circle grid.
enum class GramIdentity {
    /// <P1|P2> = <P1bar|P2bar>
    SameOverlap,
    /// <P1|P2bar> = -<P1bar|P2> (holds on the polar circle)
    PolarCross,
    /// <P1|P2bar> = <P1bar|P2> (holds on the equatorial circle)
    EquatorialCross,
};

std::string_view gram_identity_name(GramIdentity g);

struct GramCheck {
    GramIdentity identity;
    /// StateSet::Polar or StateSet::Equatorial.
    StateSet circle;
    double residual;
    bool expected_to_hold;
    /// Within tol when expected to hold, above 0.1 otherwise.
    bool passed(double tol) const { return expected_to_hold ? residual < tol : residual > 0.1; }
};

/// Largest residual of one identity over the n x n pairs of a circle grid
/// (polar theta = pi k/(n-1), equatorial phi = 2 pi k/n). Throws for n < 2.
double gram_residual(GramIdentity identity, StateSet circle, std::size_t n);

/// The four identities that hold on their circles followed by the two
/// cross-circle patterns that must fail.
std::vector<GramCheck> circle_check(std::size_t n);

}  // namespace qnogo::verify
