#include "qnogo/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qnogo::gates {
namespace {
constexpr double kH = std::numbers::sqrt2 / 2;
const Complex kI{0.0, 1.0};
}  // namespace

DenseOperator identity() { return DenseOperator::identity(2); }
DenseOperator pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
DenseOperator pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
DenseOperator pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
DenseOperator minus_i_sigma_y() { return {{0.0, -1.0}, {1.0, 0.0}}; }
AntiUnitaryMap complementing() { return AntiUnitaryMap(minus_i_sigma_y()); }

DenseOperator hadamard() { return {{kH, kH}, {kH, -kH}}; }
DenseOperator hadamard_polar() { return {{kH, -kH}, {kH, kH}}; }
DenseOperator hadamard_equatorial() { return {{kH * Complex(1, 1), 0.0}, {0.0, kH * Complex(1, -1)}}; }

UnequalAmplitudes::UnequalAmplitudes(Complex a, Complex b) : a_(a), b_(b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("unequal amplitudes must satisfy |a|^2 + |b|^2 = 1");
    }
}

bool UnequalAmplitudes::is_real(double tol) const {
    return std::abs(a_.imag()) <= tol && std::abs(b_.imag()) <= tol;
}

DenseOperator unequal_gate(const UnequalAmplitudes& amps) {
    if (!amps.is_real()) {
        std::ostringstream msg;
        msg << "unequal superposition gate needs real amplitudes: with a = " << amps.a() << ", b = " << amps.b()
            << " the term (a* b - a b*) <psi1|psi2bar> = "
            << (std::conj(amps.a()) * amps.b() - amps.a() * std::conj(amps.b()))
            << " * <psi1|psi2bar> breaks inner-product preservation between distinct polar states";
        throw std::invalid_argument(msg.str());
    }
    const double a = amps.a().real(), b = amps.b().real();
    return {{a, -b}, {b, a}};
}

DenseOperator cnot_computational() {
    return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

DenseOperator pauli_in_basis(const Qubit& q, PauliAxis axis) {
    const StateVector p = q.state();
    const StateVector pb = complement(q).state();
    switch (axis) {
        case PauliAxis::X: return DenseOperator::outer(p, pb) + DenseOperator::outer(pb, p);
        case PauliAxis::Y: return Complex(0.0, -1.0) * (DenseOperator::outer(p, pb) - DenseOperator::outer(pb, p));
        case PauliAxis::Z: return DenseOperator::outer(p, p) - DenseOperator::outer(pb, pb);
    }
    throw std::logic_error("unreachable Pauli axis");
}

DenseOperator cnot_in_basis(const Qubit& q) {
    const StateVector p = q.state();
    const StateVector pb = complement(q).state();
    return tensor(DenseOperator::outer(p, p), identity()) +
           tensor(DenseOperator::outer(pb, pb), pauli_in_basis(q, PauliAxis::X));
}

}  // namespace qnogo::gates
