#pragma once

#include "qnogo/algebra.hpp"
#include "qnogo/states.hpp"

namespace qnogo::gates {

DenseOperator identity();
DenseOperator pauli_x();
DenseOperator pauli_y();
DenseOperator pauli_z();
/// -i sigma_y = [[0, -1], [1, 0]]; composed with conjugation it maps a qubit
/// to its complement.
DenseOperator minus_i_sigma_y();
/// Antiunitary complementing map.
AntiUnitaryMap complementing();

/// (1/sqrt2)[[1, 1], [1, -1]]
DenseOperator hadamard();
/// sigma_x H = (1/sqrt2)[[1, -1], [1, 1]]: equal superposition of a polar
/// state with its complement.
DenseOperator hadamard_polar();
/// (1/sqrt2)[[1+i, 0], [0, 1-i]]: the phase-form equal superposition for
/// equatorial states.
DenseOperator hadamard_equatorial();

/// Amplitudes of an unequal superposition a|psi> + b|psibar>.
class UnequalAmplitudes {
public:
    UnequalAmplitudes(Complex a, Complex b);
    Complex a() const { return a_; }
    Complex b() const { return b_; }
    bool is_real(double tol = kAlgebraTol) const;

private:
    Complex a_;
    Complex b_;
};

/// [[a, -b], [b, a]]. Rejects amplitudes with an imaginary part above
/// kAlgebraTol: such a gate cannot preserve inner products between distinct
/// polar states.
DenseOperator unequal_gate(const UnequalAmplitudes& amps);

/// |0><0| (x) I + |1><1| (x) sigma_x
DenseOperator cnot_computational();

enum class PauliAxis { X, Y, Z };

/// X: |q><qbar| + |qbar><q|
/// Y: -i(|q><qbar| - |qbar><q|)
/// Z: |q><q| - |qbar><qbar|
DenseOperator pauli_in_basis(const Qubit& q, PauliAxis axis);

/// |q><q| (x) I + |qbar><qbar| (x) sigma_x(q). Needs the amplitudes of q.
DenseOperator cnot_in_basis(const Qubit& q);

}  // namespace qnogo::gates
