#pragma once

// Dense complex state vectors and operators for systems of up to four qubits.
//
// Tensor products use the convention that the left factor is the most
// significant index: (u (x) v)[i * dim(v) + j] = u[i] * v[j].
// apply() never renormalizes its result.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qnogo {

using Complex = std::complex<double>;

/// Tolerance for REALIZABLE/IMPOSSIBLE verdicts.
inline constexpr double kVerdictTol = 1e-9;
/// Tolerance for algebraic self-checks (normalization, unitarity of constructions).
inline constexpr double kAlgebraTol = 1e-12;

/// Dimensions admitted by StateVector and DenseOperator. Dimension 1 is the
/// trivial ancilla.
bool is_supported_dim(std::size_t dim);

class StateVector {
public:
    /// Throws std::invalid_argument for unsupported sizes or non-finite amplitudes.
    explicit StateVector(std::vector<Complex> amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double squared_norm() const;
    double norm() const;
    bool is_normalized(double tol = kAlgebraTol) const;
    /// Throws on a zero vector.
    StateVector normalized() const;
    StateVector conj() const;

    friend StateVector operator+(const StateVector& a, const StateVector& b);
    friend StateVector operator-(const StateVector& a, const StateVector& b);
    friend StateVector operator*(Complex c, const StateVector& v);
    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::vector<Complex> amps_;
};

class DenseOperator {
public:
    /// Row-major entries; size must be dim * dim with dim supported.
    DenseOperator(std::size_t dim, std::vector<Complex> entries);
    DenseOperator(std::initializer_list<std::initializer_list<Complex>> rows);

    static DenseOperator identity(std::size_t dim);
    static DenseOperator zero(std::size_t dim);
    /// |ket><bra|
    static DenseOperator outer(const StateVector& ket, const StateVector& bra);

    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    std::span<const Complex> entries() const { return entries_; }

    DenseOperator adjoint() const;
    DenseOperator conj() const;
    DenseOperator transpose() const;
    Complex trace() const;
    /// Largest entrywise modulus of (this - other).
    double max_abs_diff(const DenseOperator& other) const;

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
    friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
    friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
    friend DenseOperator operator*(Complex c, const DenseOperator& a);
    friend bool operator==(const DenseOperator&, const DenseOperator&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Complex conjugation followed by `unitary_part`. The unitary part is checked
/// at construction (tolerance kVerdictTol).
class AntiUnitaryMap {
public:
    explicit AntiUnitaryMap(DenseOperator unitary_part);
    /// Plain complex conjugation in the computational basis.
    static AntiUnitaryMap conjugation(std::size_t dim);

    const DenseOperator& unitary_part() const { return unitary_; }
    std::size_t dim() const { return unitary_.dim(); }

private:
    DenseOperator unitary_;
};

/// K = sqrt(lambda) U + sqrt(1 - lambda) A acting on one qubit.
///
/// For 0 < lambda < 1 the sum is norm preserving only when the symmetric part
/// of U^dagger * unitary_part(A) vanishes; the constructor rejects other pairs.
class GeneralKMap {
public:
    GeneralKMap(double lambda, DenseOperator unitary, AntiUnitaryMap antiunitary);

    static GeneralKMap unitary(DenseOperator u);
    static GeneralKMap antiunitary(AntiUnitaryMap a);

    double lambda() const { return lambda_; }
    const DenseOperator& unitary_part() const { return unitary_; }
    const AntiUnitaryMap& antiunitary_part() const { return anti_; }

    StateVector apply(const StateVector& v) const;

private:
    double lambda_;
    DenseOperator unitary_;
    AntiUnitaryMap anti_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
public:
    /// Validates Hermiticity and trace within kAlgebraTol and eigenvalues >= -1e-10.
    DensityOperator(std::size_t dim, std::vector<Complex> entries);
    explicit DensityOperator(const DenseOperator& op);

    /// |v><v|; v must be normalized.
    static DensityOperator pure(const StateVector& v);

    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    std::span<const Complex> entries() const { return entries_; }
    double trace() const;
    double max_abs_diff(const DensityOperator& other) const;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

Complex inner_product(const StateVector& u, const StateVector& v);
StateVector tensor(const StateVector& u, const StateVector& v);
DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);
StateVector apply(const DenseOperator& op, const StateVector& v);
StateVector apply_antiunitary(const AntiUnitaryMap& a, const StateVector& v);
/// max entry of |op^dagger op - I| <= tol
bool is_unitary(const DenseOperator& op, double tol = kAlgebraTol);
/// <ideal| rho |ideal>
double fidelity_pure_mixed(const StateVector& ideal, const DensityOperator& actual);
/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep,
                              std::span<const std::size_t> dims);

/// 1 - |<u|v>|^2 for normalized u, v: zero iff equal up to a global phase.
double phase_mismatch(const StateVector& u, const StateVector& v);
/// |<u|v>| = 1 within tol.
bool same_up_to_phase(const StateVector& u, const StateVector& v, double tol = kAlgebraTol);

}  // namespace qnogo
