#pragma once

// Optimal universal fidelity of approximate "clone and complement" machines.
//
// A machine is an isometry V from the input qubit into
// register 1 (x) register 2 (x) ancilla; the blank and the initial ancilla are
// absorbed into V. The ideal output for |psi> keeps |psi> in register 1 and
// places |F(psi)> = sqrt(lambda)|psi> + sqrt(1-lambda)|psibar> in register 2.
// Amplitudes follow the qubit_from_bloch phase convention (alpha real).

#include <cstdint>
#include <string_view>
#include <vector>

#include "qnogo/algebra.hpp"
#include "qnogo/states.hpp"

namespace qnogo::fidelity {

/// Output index layout: (r1, r2, a) -> r1 * 2 d + r2 * d + a, d = ancilla_dim.
class Isometry {
public:
    /// Columns V|0> and V|1>, each of length 4 * ancilla_dim. Throws unless
    /// V^dagger V = I within 1e-9.
    Isometry(std::size_t ancilla_dim, std::vector<Complex> column0, std::vector<Complex> column1);

    /// Gram-Schmidt on the two columns of an unconstrained (4 d) x 2 matrix
    /// given as 16 d reals (re, im interleaved, column 0 first).
    static Isometry from_unconstrained(std::size_t ancilla_dim, std::span<const double> params);

    /// Isometry whose linear action on the basis is |i> -> |i>|i>|0>.
    static Isometry basis_cloner(std::size_t ancilla_dim);

    std::size_t ancilla_dim() const { return d_; }
    std::size_t output_dim() const { return 4 * d_; }
    std::span<const Complex> column(std::size_t i) const { return i == 0 ? c0_ : c1_; }
    /// [column0; column1]
    std::vector<Complex> stacked() const;
    /// max entry of |V^dagger V - I|
    double isometry_error() const;
    std::vector<Complex> apply(const Qubit& q) const;

private:
    std::size_t d_;
    std::vector<Complex> c0_;
    std::vector<Complex> c1_;
};

struct QuadratureNode {
    Qubit state;
    double weight;
};

/// Nodes with non-negative weights summing to 1 within 1e-12.
class QuadratureGrid {
public:
    explicit QuadratureGrid(std::vector<QuadratureNode> nodes);

    /// n points at the centres of an equal-area partition of the sphere into
    /// latitude bands (spherical Fibonacci lattice), equal weights.
    static QuadratureGrid equal_area(std::size_t n);
    /// n seeded uniform samples, equal weights.
    static QuadratureGrid monte_carlo(std::size_t n, std::uint64_t seed);
    static QuadratureGrid single(const Qubit& q);

    const std::vector<QuadratureNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::vector<QuadratureNode> nodes_;
};

enum class Mode {
    /// Mean of the two single-register fidelities: register 1 against |psi>,
    /// register 2 against |F(psi)>.
    SecondRegister,
    /// <psi, F(psi)| rho_12 |psi, F(psi)>
    Joint,
};

std::string_view mode_name(Mode m);

/// sqrt(lambda)|psi> + sqrt(1-lambda)|psibar>
StateVector target_state(const Qubit& q, double lambda);

/// Grid-weighted fidelity evaluated node by node. Throws for lambda outside
/// [0, 1] or a V that is not an isometry within 1e-9.
double average_fidelity(const Isometry& v, double lambda, const QuadratureGrid& grid, Mode mode);

/// The same average as a Hermitian quadratic form v^dagger M v in the stacked
/// columns of V. M is built once per (lambda, grid, mode, ancilla_dim).
class FidelityObjective {
public:
    FidelityObjective(double lambda, const QuadratureGrid& grid, Mode mode, std::size_t ancilla_dim);

    double operator()(const Isometry& v) const;
    /// Form evaluated on an already-stacked column vector.
    double evaluate_stacked(std::span<const Complex> stacked) const;
    std::size_t ancilla_dim() const { return d_; }
    std::span<const Complex> matrix() const { return m_; }

private:
    std::size_t d_;
    std::vector<Complex> m_;
};

enum class Method { NelderMead, Gradient };

struct OptimizerConfig {
    std::vector<std::size_t> ancilla_dims{2};
    std::size_t restarts = 20;
    std::size_t max_evaluations = 5000;
    std::uint64_t seed = 42;
    /// Simplex size (NelderMead) or gradient norm (Gradient) at which a run
    /// counts as converged; a run whose best value improves by at most this
    /// much over 200 iterations also counts.
    double tolerance = 1e-8;
    Mode mode = Mode::SecondRegister;
    Method method = Method::NelderMead;
};

struct FidelitySweepRecord {
    double lambda = 0.0;
    double f_opt = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t ancilla_dim = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::SecondRegister;
};

struct OptimizationResult {
    FidelitySweepRecord record;
    Isometry best;
    /// Best-so-far objective after each iteration of the winning restart.
    std::vector<double> trace;
    /// Largest isometry error seen over all evaluated points.
    double max_isometry_error = 0.0;
};

OptimizationResult optimize_fidelity(double lambda, const QuadratureGrid& grid, const OptimizerConfig& cfg);

std::vector<FidelitySweepRecord> sweep_lambda(std::span<const double> lambdas, const QuadratureGrid& grid,
                                              const OptimizerConfig& cfg);

}  // namespace qnogo::fidelity
