#pragma once

// Single-qubit states, the complement and conjugate maps, and the two great
// circles (polar: real amplitudes; equatorial: equal-weight superpositions)
// on which restricted Hadamard gates exist.

#include <array>
#include <cstdint>
#include <vector>

#include "qnogo/algebra.hpp"

namespace qnogo {

/// alpha|0> + beta|1>, normalized within kAlgebraTol.
class Qubit {
public:
    Qubit(Complex alpha, Complex beta);
    /// Dimension-2 normalized state.
    explicit Qubit(const StateVector& v);

    static Qubit zero() { return {1.0, 0.0}; }
    static Qubit one() { return {0.0, 1.0}; }
    static Qubit plus();
    static Qubit minus();

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    StateVector state() const { return StateVector{alpha_, beta_}; }
    /// Bloch vector (x, y, z).
    std::array<double, 3> bloch_vector() const;

    friend bool operator==(const Qubit&, const Qubit&) = default;

private:
    Complex alpha_;
    Complex beta_;
};

/// theta in [0, pi], phi in [0, 2 pi).
struct BlochAngles {
    double theta;
    double phi;
};

Qubit qubit_from_bloch(const BlochAngles& angles);

/// alpha*|1> - beta*|0>: the antipodal state. complement(complement(q)) = -q.
Qubit complement(const Qubit& q);
/// alpha*|0> + beta*|1>
Qubit conjugate(const Qubit& q);

enum class CircleKind { PolarPlus, PolarMinus, EquatorialPlus, EquatorialMinus };

/// Point on a great circle. Polar parameters are theta in [0, pi]; equatorial
/// parameters are phi in [0, 2 pi).
class GreatCircleFamily {
public:
    GreatCircleFamily(CircleKind kind, double parameter);
    CircleKind kind() const { return kind_; }
    double parameter() const { return parameter_; }

private:
    CircleKind kind_;
    double parameter_;
};

/// PolarPlus(t)       = cos(t/2)|0> + sin(t/2)|1>
/// PolarMinus(t)      = cos(t/2)|1> - sin(t/2)|0>
/// EquatorialPlus(p)  = (|0> + e^{ip}|1>)/sqrt2
/// EquatorialMinus(p) = (|1> - e^{-ip}|0>)/sqrt2
/// Both Minus branches coincide exactly with complement() of the Plus branch.
Qubit circle_state(const GreatCircleFamily& family);

/// H(cos(p/2)|0> - i sin(p/2)|1>) = e^{-ip/2} EquatorialPlus(p): the
/// equatorial representative with real mutual overlaps. Because complement()
/// is antilinear, the gram sign pattern depends on this phase choice; with
/// the EquatorialPlus phase the diagonal entries are only conjugates.
Qubit equatorial_representative(double phi);

/// (<P1|P2>, <P1|P2bar>, <P1bar|P2>, <P1bar|P2bar>) for a pair of states.
using Gram4 = std::array<Complex, 4>;
Gram4 gram(const Qubit& q1, const Qubit& q2);
/// gram() for two polar states. Real-valued; entries 1 and 2 are negatives of
/// each other and entries 0 and 3 agree.
Gram4 polar_gram(double theta1, double theta2);
/// gram() for two equatorial_representative() states. Entries 1 and 2 agree,
/// as do 0 and 3.
Gram4 equatorial_gram(double phi1, double phi2);

/// Deterministic uniform sample on the sphere (phi uniform, cos(theta) uniform).
/// Throws std::invalid_argument for n == 0.
std::vector<Qubit> sample_bloch(std::size_t n, std::uint64_t seed);

/// Roles (psi, psibar) assigned by splitting the sphere with the plane normal
/// to `axis`: a state on the non-negative side plays psi; a state on the other
/// side plays psibar of the psi returned.
struct HemisphereRoles {
    Qubit psi;
    Qubit psi_bar;
};
HemisphereRoles hemisphere_roles(const Qubit& q, const std::array<double, 3>& axis);

}  // namespace qnogo
