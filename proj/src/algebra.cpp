#include "qnogo/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qnogo/kernels.hpp"

namespace qnogo {
namespace {

void require_finite(std::span<const Complex> values, const char* what) {
    for (const Complex& c : values) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

bool is_supported_dim(std::size_t dim) {
    return dim == 1 || dim == 2 || dim == 4 || dim == 8 || dim == 16;
}

// --- StateVector ----------------------------------------------------------

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (!is_supported_dim(amps_.size())) {
        throw std::invalid_argument("unsupported state dimension " + std::to_string(amps_.size()));
    }
    require_finite(amps_, "StateVector");
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::vector<Complex>(amplitudes)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::squared_norm() const {
    return std::accumulate(amps_.begin(), amps_.end(), 0.0,
                           [](double acc, const Complex& c) { return acc + std::norm(c); });
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

bool StateVector::is_normalized(double tol) const { return std::abs(squared_norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return Complex(1.0 / n) * *this;
}

StateVector StateVector::conj() const {
    std::vector<Complex> out(amps_.size());
    std::transform(amps_.begin(), amps_.end(), out.begin(), [](const Complex& c) { return std::conj(c); });
    return StateVector(std::move(out));
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "StateVector +");
    std::vector<Complex> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return StateVector(std::move(out));
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "StateVector -");
    std::vector<Complex> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return StateVector(std::move(out));
}

StateVector operator*(Complex c, const StateVector& v) {
    std::vector<Complex> out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = c * v[i];
    return StateVector(std::move(out));
}

// --- DenseOperator --------------------------------------------------------

DenseOperator::DenseOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (!is_supported_dim(dim_)) throw std::invalid_argument("unsupported operator dimension " + std::to_string(dim_));
    if (entries_.size() != dim_ * dim_) throw std::invalid_argument("operator entry count does not match dimension");
    require_finite(entries_, "DenseOperator");
}

DenseOperator::DenseOperator(std::initializer_list<std::initializer_list<Complex>> rows)
    : DenseOperator(rows.size(), [&] {
          std::vector<Complex> flat;
          for (const auto& row : rows) {
              if (row.size() != rows.size()) throw std::invalid_argument("operator rows must be square");
              flat.insert(flat.end(), row.begin(), row.end());
          }
          return flat;
      }()) {}

DenseOperator DenseOperator::identity(std::size_t dim) {
    std::vector<Complex> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
    return DenseOperator(dim, std::move(e));
}

DenseOperator DenseOperator::zero(std::size_t dim) { return DenseOperator(dim, std::vector<Complex>(dim * dim)); }

DenseOperator DenseOperator::outer(const StateVector& ket, const StateVector& bra) {
    require_same_dim(ket.dim(), bra.dim(), "outer");
    const std::size_t d = ket.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) e[r * d + c] = ket[r] * std::conj(bra[c]);
    return DenseOperator(d, std::move(e));
}

DenseOperator DenseOperator::adjoint() const {
    std::vector<Complex> e(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) e[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
    return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::conj() const {
    std::vector<Complex> e(entries_.size());
    std::transform(entries_.begin(), entries_.end(), e.begin(), [](const Complex& c) { return std::conj(c); });
    return DenseOperator(dim_, std::move(e));
}

DenseOperator DenseOperator::transpose() const {
    std::vector<Complex> e(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) e[c * dim_ + r] = entries_[r * dim_ + c];
    return DenseOperator(dim_, std::move(e));
}

Complex DenseOperator::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
    return t;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
    require_same_dim(dim_, other.dim_, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    return m;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    require_same_dim(a.dim(), b.dim(), "operator product");
    const std::size_t d = a.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            for (std::size_t c = 0; c < d; ++c) e[r * d + c] += ark * b(k, c);
        }
    return DenseOperator(d, std::move(e));
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
    require_same_dim(a.dim(), b.dim(), "operator sum");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
    return DenseOperator(a.dim(), std::move(e));
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
    return a + Complex(-1.0) * b;
}

DenseOperator operator*(Complex c, const DenseOperator& a) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (Complex& x : e) x *= c;
    return DenseOperator(a.dim(), std::move(e));
}

// --- AntiUnitaryMap / GeneralKMap ----------------------------------------

AntiUnitaryMap::AntiUnitaryMap(DenseOperator unitary_part) : unitary_(std::move(unitary_part)) {
    if (!is_unitary(unitary_, kVerdictTol)) throw std::invalid_argument("antiunitary map needs a unitary part");
}

AntiUnitaryMap AntiUnitaryMap::conjugation(std::size_t dim) { return AntiUnitaryMap(DenseOperator::identity(dim)); }

GeneralKMap::GeneralKMap(double lambda, DenseOperator unitary, AntiUnitaryMap antiunitary)
    : lambda_(lambda), unitary_(std::move(unitary)), anti_(std::move(antiunitary)) {
    if (!(lambda_ >= 0.0 && lambda_ <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    if (unitary_.dim() != 2 || anti_.dim() != 2) throw std::invalid_argument("K acts on a single qubit");
    if (!is_unitary(unitary_, kVerdictTol)) throw std::invalid_argument("unitary part of K is not unitary");
    if (lambda_ > 0.0 && lambda_ < 1.0) {
        // <U psi | A psi> = psi^dagger W conj(psi) with W = U^dagger A_u; its real
        // part vanishes for every psi only if W is antisymmetric.
        const DenseOperator w = unitary_.adjoint() * anti_.unitary_part();
        const DenseOperator sym = w + w.transpose();
        if (sym.max_abs_diff(DenseOperator::zero(2)) > kVerdictTol) {
            throw std::invalid_argument("sqrt(lambda) U + sqrt(1-lambda) A is not norm preserving for this U, A");
        }
    }
}

GeneralKMap GeneralKMap::unitary(DenseOperator u) {
    return GeneralKMap(1.0, std::move(u), AntiUnitaryMap::conjugation(2));
}

GeneralKMap GeneralKMap::antiunitary(AntiUnitaryMap a) {
    return GeneralKMap(0.0, DenseOperator::identity(2), std::move(a));
}

StateVector GeneralKMap::apply(const StateVector& v) const {
    if (lambda_ == 1.0) return qnogo::apply(unitary_, v);
    if (lambda_ == 0.0) return apply_antiunitary(anti_, v);
    return Complex(std::sqrt(lambda_)) * qnogo::apply(unitary_, v) +
           Complex(std::sqrt(1.0 - lambda_)) * apply_antiunitary(anti_, v);
}

// --- DensityOperator ------------------------------------------------------

DensityOperator::DensityOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (!is_supported_dim(dim_) || entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("density operator has an unsupported shape");
    }
    require_finite(entries_, "DensityOperator");
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            m(r, c) = entries_[r * dim_ + c];
            if (std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])) > kAlgebraTol) {
                throw std::invalid_argument("density operator is not Hermitian");
            }
        }
    if (std::abs(m.trace() - Complex(1.0)) > kAlgebraTol) {
        throw std::invalid_argument("density operator trace differs from 1");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density operator has a negative eigenvalue");
    }
}

DensityOperator::DensityOperator(const DenseOperator& op)
    : DensityOperator(op.dim(), std::vector<Complex>(op.entries().begin(), op.entries().end())) {}

DensityOperator DensityOperator::pure(const StateVector& v) {
    if (!v.is_normalized()) throw std::invalid_argument("pure density operator needs a normalized state");
    return DensityOperator(DenseOperator::outer(v, v));
}

double DensityOperator::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i].real();
    return t;
}

double DensityOperator::max_abs_diff(const DensityOperator& other) const {
    require_same_dim(dim_, other.dim_, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    return m;
}

// --- free operations ------------------------------------------------------

Complex inner_product(const StateVector& u, const StateVector& v) {
    require_same_dim(u.dim(), v.dim(), "inner_product");
    return kernels::inner(u.amplitudes(), v.amplitudes());
}

StateVector tensor(const StateVector& u, const StateVector& v) {
    const std::size_t d = u.dim() * v.dim();
    if (!is_supported_dim(d)) throw std::invalid_argument("tensor product dimension " + std::to_string(d) + " unsupported");
    std::vector<Complex> out(d);
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) out[i * v.dim() + j] = u[i] * v[j];
    return StateVector(std::move(out));
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    if (!is_supported_dim(d)) throw std::invalid_argument("tensor product dimension " + std::to_string(d) + " unsupported");
    std::vector<Complex> e(d * d);
    for (std::size_t r1 = 0; r1 < da; ++r1)
        for (std::size_t c1 = 0; c1 < da; ++c1)
            for (std::size_t r2 = 0; r2 < db; ++r2)
                for (std::size_t c2 = 0; c2 < db; ++c2)
                    e[(r1 * db + r2) * d + (c1 * db + c2)] = a(r1, c1) * b(r2, c2);
    return DenseOperator(d, std::move(e));
}

StateVector apply(const DenseOperator& op, const StateVector& v) {
    require_same_dim(op.dim(), v.dim(), "apply");
    std::vector<Complex> out(v.dim());
    kernels::matvec(op.entries(), v.amplitudes(), out, op.dim(), op.dim());
    return StateVector(std::move(out));
}

StateVector apply_antiunitary(const AntiUnitaryMap& a, const StateVector& v) {
    require_same_dim(a.dim(), v.dim(), "apply_antiunitary");
    return apply(a.unitary_part(), v.conj());
}

bool is_unitary(const DenseOperator& op, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_unitary: tolerance must be positive");
    return (op.adjoint() * op).max_abs_diff(DenseOperator::identity(op.dim())) <= tol;
}

double fidelity_pure_mixed(const StateVector& ideal, const DensityOperator& actual) {
    require_same_dim(ideal.dim(), actual.dim(), "fidelity_pure_mixed");
    if (!ideal.is_normalized(kVerdictTol)) throw std::invalid_argument("fidelity_pure_mixed: ideal state not normalized");
    std::vector<Complex> rho_v(ideal.dim());
    kernels::matvec(actual.entries(), ideal.amplitudes(), rho_v, actual.dim(), actual.dim());
    const double f = kernels::inner(ideal.amplitudes(), rho_v).real();
    return std::max(0.0, f);
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep,
                              std::span<const std::size_t> dims) {
    const std::size_t nf = dims.size();
    if (nf == 0) throw std::invalid_argument("partial_trace: empty factorization");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("partial_trace: zero factor dimension");
        total *= d;
    }
    if (total != rho.dim()) throw std::invalid_argument("partial_trace: factor dimensions do not multiply to rho.dim");

    std::vector<bool> kept(nf, false);
    for (std::size_t k : keep) {
        if (k >= nf || kept[k]) throw std::invalid_argument("partial_trace: invalid keep index");
        kept[k] = true;
    }

    std::size_t kdim = 1;
    for (std::size_t f = 0; f < nf; ++f)
        if (kept[f]) kdim *= dims[f];

    // Decompose a flat index into per-factor digits (left factor most significant).
    auto digits = [&](std::size_t flat) {
        std::vector<std::size_t> dig(nf);
        for (std::size_t f = nf; f-- > 0;) {
            dig[f] = flat % dims[f];
            flat /= dims[f];
        }
        return dig;
    };
    auto compose = [&](const std::vector<std::size_t>& dig, bool want_kept) {
        std::size_t idx = 0;
        for (std::size_t f = 0; f < nf; ++f)
            if (kept[f] == want_kept) idx = idx * dims[f] + dig[f];
        return idx;
    };

    std::vector<Complex> out(kdim * kdim);
    const std::size_t n = rho.dim();
    for (std::size_t r = 0; r < n; ++r) {
        const auto dr = digits(r);
        const std::size_t tr = compose(dr, false);
        for (std::size_t c = 0; c < n; ++c) {
            const auto dc = digits(c);
            if (compose(dc, false) != tr) continue;
            out[compose(dr, true) * kdim + compose(dc, true)] += rho(r, c);
        }
    }
    return DensityOperator(kdim, std::move(out));
}

double phase_mismatch(const StateVector& u, const StateVector& v) {
    const double overlap = std::norm(inner_product(u, v));
    return std::clamp(1.0 - overlap, 0.0, 1.0);
}

bool same_up_to_phase(const StateVector& u, const StateVector& v, double tol) {
    return std::abs(std::abs(inner_product(u, v)) - 1.0) <= tol;
}

}  // namespace qnogo
