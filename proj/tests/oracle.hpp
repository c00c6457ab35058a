#pragma once

// Independent reference evaluators written directly from the definitions on
// plain complex arrays. They share no code with the library.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Q = std::array<C, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline const double kRt2 = std::sqrt(2.0);

inline C dot(const std::vector<C>& a, const std::vector<C>& b) {
    C s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline std::vector<C> kron(const std::vector<C>& a, const std::vector<C>& b) {
    std::vector<C> r;
    for (C x : a)
        for (C y : b) r.push_back(x * y);
    return r;
}

inline std::vector<C> vec(const Q& q) { return {q[0], q[1]}; }

/// alpha*|1> - beta*|0>
inline Q bar(const Q& q) { return {-std::conj(q[1]), std::conj(q[0])}; }

inline Q polar(double theta) { return {std::cos(theta / 2), std::sin(theta / 2)}; }

/// Real-overlap equatorial representative (e^{-ip/2}, e^{ip/2})/sqrt2.
inline Q equatorial(double phi) { return {std::polar(1 / kRt2, -phi / 2), std::polar(1 / kRt2, phi / 2)}; }

inline Q bloch(double theta, double phi) { return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}; }

inline Q mul(const std::array<std::array<C, 2>, 2>& m, const Q& q) {
    return {m[0][0] * q[0] + m[0][1] * q[1], m[1][0] * q[0] + m[1][1] * q[1]};
}

/// 1 - |<u|v>|^2
inline double mismatch(const std::vector<C>& u, const std::vector<C>& v) { return 1.0 - std::norm(dot(u, v)); }

/// Basis cloner |i> -> |i>|i> extended linearly, against |q>|q>.
inline double clone_deviation(const Q& q) {
    std::vector<C> actual(4, 0.0);
    actual[0] = q[0];
    actual[3] = q[1];
    return mismatch(kron(vec(q), vec(q)), actual);
}

/// Worst rule mismatch of gate g for the rules psi -> k00 psi + k01 psibar,
/// psibar -> k10 psi + k11 psibar, minimized over the sign of psibar.
inline double rule_violation(const std::array<std::array<C, 2>, 2>& g, const Q& psi,
                             const std::array<std::array<C, 2>, 2>& k) {
    double best = 1e9;
    for (double s : {1.0, -1.0}) {
        Q pb = bar(psi);
        pb = {s * pb[0], s * pb[1]};
        Q want0 = {k[0][0] * psi[0] + k[0][1] * pb[0], k[0][0] * psi[1] + k[0][1] * pb[1]};
        Q want1 = {k[1][0] * psi[0] + k[1][1] * pb[0], k[1][0] * psi[1] + k[1][1] * pb[1]};
        double worst = std::max(mismatch(vec(want0), vec(mul(g, psi))), mismatch(vec(want1), vec(mul(g, pb))));
        best = std::min(best, worst);
    }
    return best;
}

/// |a* b - a b*| |sin((t1 - t2)/2)|
inline double unequal_closed_form(C a, C b, double t1, double t2) {
    return std::abs(std::conj(a) * b - a * std::conj(b)) * std::abs(std::sin((t1 - t2) / 2));
}

/// Mean of the two register fidelities of the isometry with columns c0, c1
/// (index r1 * 2d + r2 * d + a) at input q: register 1 against q, register 2
/// against sqrt(lambda) q + sqrt(1 - lambda) qbar.
inline double register_fidelity(const std::vector<C>& c0, const std::vector<C>& c1, std::size_t d, const Q& q,
                                double lambda) {
    std::vector<C> out(4 * d);
    for (std::size_t i = 0; i < 4 * d; ++i) out[i] = q[0] * c0[i] + q[1] * c1[i];
    const Q pb = bar(q);
    const Q f{std::sqrt(lambda) * q[0] + std::sqrt(1 - lambda) * pb[0],
              std::sqrt(lambda) * q[1] + std::sqrt(1 - lambda) * pb[1]};
    double f1 = 0, f2 = 0;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t a = 0; a < d; ++a) {
            f1 += std::norm(std::conj(q[0]) * out[x * d + a] + std::conj(q[1]) * out[2 * d + x * d + a]);
            f2 += std::norm(std::conj(f[0]) * out[x * 2 * d + a] + std::conj(f[1]) * out[x * 2 * d + d + a]);
        }
    return 0.5 * (f1 + f2);
}

/// Covariant two-register machines with a qubit ancilla:
/// |i> -> p |S> (x) sigma_y|i> + q SC|i>, |S> the singlet and SC the symmetric
/// cloner |0> -> sqrt(2/3)|00>|0> + sqrt(1/6)(|01> + |10>)|1> (mirrored for |1>).
/// Returns the two columns for p = cos(t), q = e^{i phase} sin(t).
inline std::pair<std::vector<C>, std::vector<C>> covariant_family(double t, double phase) {
    const double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 6.0), s = 1 / kRt2;
    const C p = std::cos(t), q = std::polar(std::sin(t), phase);
    const C i(0, 1);
    std::vector<C> c0(8, 0.0), c1(8, 0.0);
    // index r1 * 4 + r2 * 2 + anc; singlet (|01> - |10>)/sqrt2, sigma_y|0> = i|1>, sigma_y|1> = -i|0>
    c0[2 + 1] += p * s * i;
    c0[4 + 1] -= p * s * i;
    c1[2 + 0] += p * s * -i;
    c1[4 + 0] -= p * s * -i;
    c0[0] += q * a;
    c0[2 + 1] += q * b;
    c0[4 + 1] += q * b;
    c1[6 + 1] += q * a;
    c1[2 + 0] += q * b;
    c1[4 + 0] += q * b;
    return {c0, c1};
}

}  // namespace oracle
