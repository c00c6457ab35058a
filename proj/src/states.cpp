#include "qnogo/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnogo/random.hpp"

namespace qnogo {

namespace {
constexpr double kPi = std::numbers::pi;
}

Qubit::Qubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(beta.real()) ||
        !std::isfinite(beta.imag())) {
        throw std::invalid_argument("qubit amplitudes must be finite");
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("qubit amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    }
}

Qubit::Qubit(const StateVector& v)
    : Qubit(v.dim() == 2 ? v[0] : throw std::invalid_argument("qubit state must have dimension 2"), v[1]) {}

Qubit Qubit::plus() { return {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}; }
Qubit Qubit::minus() { return {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}; }

std::array<double, 3> Qubit::bloch_vector() const {
    const Complex c = std::conj(alpha_) * beta_;
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(alpha_) - std::norm(beta_)};
}

Qubit qubit_from_bloch(const BlochAngles& a) {
    if (!(a.theta >= 0.0 && a.theta <= kPi)) throw std::invalid_argument("theta must lie in [0, pi]");
    if (!(a.phi >= 0.0 && a.phi < 2.0 * kPi)) throw std::invalid_argument("phi must lie in [0, 2 pi)");
    return {std::cos(a.theta / 2), std::sin(a.theta / 2) * std::polar(1.0, a.phi)};
}

Qubit complement(const Qubit& q) { return {-std::conj(q.beta()), std::conj(q.alpha())}; }

Qubit conjugate(const Qubit& q) { return {std::conj(q.alpha()), std::conj(q.beta())}; }

GreatCircleFamily::GreatCircleFamily(CircleKind kind, double parameter) : kind_(kind), parameter_(parameter) {
    const bool polar = kind == CircleKind::PolarPlus || kind == CircleKind::PolarMinus;
    if (polar && !(parameter >= 0.0 && parameter <= kPi)) {
        throw std::invalid_argument("polar circle parameter must lie in [0, pi]");
    }
    if (!polar && !(parameter >= 0.0 && parameter < 2.0 * kPi)) {
        throw std::invalid_argument("equatorial circle parameter must lie in [0, 2 pi)");
    }
}

Qubit circle_state(const GreatCircleFamily& f) {
    const double t = f.parameter();
    const double h = std::numbers::sqrt2 / 2;
    switch (f.kind()) {
        case CircleKind::PolarPlus: return {std::cos(t / 2), std::sin(t / 2)};
        case CircleKind::PolarMinus: return {-std::sin(t / 2), std::cos(t / 2)};
        case CircleKind::EquatorialPlus: return {h, h * std::polar(1.0, t)};
        case CircleKind::EquatorialMinus: return {-h * std::polar(1.0, -t), h};
    }
    throw std::logic_error("unreachable circle kind");
}

Qubit equatorial_representative(double phi) {
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw std::invalid_argument("phi must lie in [0, 2 pi)");
    const double h = std::numbers::sqrt2 / 2;
    return {h * std::polar(1.0, -phi / 2), h * std::polar(1.0, phi / 2)};
}

Gram4 gram(const Qubit& q1, const Qubit& q2) {
    const StateVector a = q1.state(), abar = complement(q1).state();
    const StateVector b = q2.state(), bbar = complement(q2).state();
    return {inner_product(a, b), inner_product(a, bbar), inner_product(abar, b), inner_product(abar, bbar)};
}

Gram4 polar_gram(double theta1, double theta2) {
    return gram(circle_state({CircleKind::PolarPlus, theta1}), circle_state({CircleKind::PolarPlus, theta2}));
}

Gram4 equatorial_gram(double phi1, double phi2) {
    return gram(equatorial_representative(phi1), equatorial_representative(phi2));
}

std::vector<Qubit> sample_bloch(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_bloch: n must be positive");
    Rng rng(seed);
    std::vector<Qubit> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double theta = std::acos(std::clamp(z, -1.0, 1.0));
        out.push_back(qubit_from_bloch({theta, phi}));
    }
    return out;
}

HemisphereRoles hemisphere_roles(const Qubit& q, const std::array<double, 3>& axis) {
    const auto b = q.bloch_vector();
    const double side = b[0] * axis[0] + b[1] * axis[1] + b[2] * axis[2];
    if (side >= 0.0) return {q, complement(q)};
    // psi with complement(psi) == q is -complement(q).
    const Qubit c = complement(q);
    return {Qubit(-c.alpha(), -c.beta()), q};
}

}  // namespace qnogo
