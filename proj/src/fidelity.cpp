#include "qnogo/fidelity.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "qnogo/kernels.hpp"
#include "qnogo/random.hpp"

namespace qnogo::fidelity {
namespace {

constexpr double kIsometryTol = 1e-9;

void require_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

void require_ancilla_dim(std::size_t d) {
    if (d < 1 || d > 4) throw std::invalid_argument("ancilla dimension must lie in [1, 4]");
}

double column_error(std::span<const Complex> a, std::span<const Complex> b, double expected) {
    return std::abs(kernels::inner(a, b) - Complex(expected));
}

/// 4x4 operator on registers 1 and 2 scored by the chosen mode.
std::array<Complex, 16> register_projector(const Qubit& q, const StateVector& target, Mode mode) {
    const Complex psi[2] = {q.alpha(), q.beta()};
    const Complex phi[2] = {target[0], target[1]};
    std::array<Complex, 16> p{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) {
                    // row (i, j), column (k, l)
                    const Complex psi_ik = psi[i] * std::conj(psi[k]);
                    const Complex phi_jl = phi[j] * std::conj(phi[l]);
                    Complex v;
                    if (mode == Mode::Joint) {
                        v = psi_ik * phi_jl;
                    } else {
                        v = 0.5 * ((j == l ? psi_ik : 0.0) + (i == k ? phi_jl : 0.0));
                    }
                    p[(i * 2 + j) * 4 + (k * 2 + l)] = v;
                }
    return p;
}

// --- GSL glue --------------------------------------------------------------

struct RunContext {
    const FidelityObjective* objective;
    std::size_t ancilla_dim;
    std::size_t evaluations = 0;
    double max_isometry_error = 0.0;
};

double negative_fidelity(const gsl_vector* x, void* params) {
    auto* ctx = static_cast<RunContext*>(params);
    ++ctx->evaluations;
    const Isometry v = Isometry::from_unconstrained(ctx->ancilla_dim, std::span<const double>(x->data, x->size));
    ctx->max_isometry_error = std::max(ctx->max_isometry_error, v.isometry_error());
    const double f = (*ctx->objective)(v);
    return -f;
}

void negative_fidelity_gradient(const gsl_vector* x, void* params, gsl_vector* g) {
    constexpr double h = 1e-6;
    gsl_vector* probe = gsl_vector_alloc(x->size);
    gsl_vector_memcpy(probe, x);
    for (std::size_t k = 0; k < x->size; ++k) {
        const double x0 = gsl_vector_get(x, k);
        gsl_vector_set(probe, k, x0 + h);
        const double fp = negative_fidelity(probe, params);
        gsl_vector_set(probe, k, x0 - h);
        const double fm = negative_fidelity(probe, params);
        gsl_vector_set(probe, k, x0);
        gsl_vector_set(g, k, (fp - fm) / (2 * h));
    }
    gsl_vector_free(probe);
}

void negative_fidelity_fdf(const gsl_vector* x, void* params, double* f, gsl_vector* g) {
    *f = negative_fidelity(x, params);
    negative_fidelity_gradient(x, params, g);
}

// The parametrization has gauge directions (column scale, global phase), so
// the simplex need not shrink at an optimum; a run whose best value moved by
// at most tol over the last kStallWindow iterations also counts as converged.
constexpr std::size_t kStallWindow = 200;

bool stalled(const std::vector<double>& trace, double tol) {
    if (trace.size() <= kStallWindow) return false;
    return trace.back() - trace[trace.size() - 1 - kStallWindow] <= tol;
}

struct RestartOutcome {
    double f = -1.0;
    std::vector<double> point;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
    double max_isometry_error = 0.0;
};

RestartOutcome run_nelder_mead(const FidelityObjective& objective, std::size_t d, std::vector<double> start,
                               const OptimizerConfig& cfg) {
    const std::size_t n = start.size();
    RunContext ctx{&objective, d};
    gsl_multimin_function fn{&negative_fidelity, n, &ctx};
    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* step = gsl_vector_alloc(n);
    for (std::size_t k = 0; k < n; ++k) gsl_vector_set(x, k, start[k]);
    gsl_vector_set_all(step, 0.5);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, step);

    RestartOutcome out;
    while (ctx.evaluations < cfg.max_evaluations) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        ++out.iterations;
        out.trace.push_back(-s->fval);
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), cfg.tolerance) == GSL_SUCCESS || stalled(out.trace, cfg.tolerance)) {
            out.converged = true;
            break;
        }
    }
    out.f = -s->fval;
    out.point.assign(s->x->data, s->x->data + n);
    out.max_isometry_error = ctx.max_isometry_error;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return out;
}

RestartOutcome run_gradient(const FidelityObjective& objective, std::size_t d, std::vector<double> start,
                            const OptimizerConfig& cfg) {
    const std::size_t n = start.size();
    RunContext ctx{&objective, d};
    gsl_multimin_function_fdf fn{&negative_fidelity, &negative_fidelity_gradient, &negative_fidelity_fdf, n, &ctx};
    gsl_vector* x = gsl_vector_alloc(n);
    for (std::size_t k = 0; k < n; ++k) gsl_vector_set(x, k, start[k]);
    gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
    gsl_multimin_fdfminimizer_set(s, &fn, x, 0.05, 0.1);

    RestartOutcome out;
    while (ctx.evaluations < cfg.max_evaluations) {
        if (gsl_multimin_fdfminimizer_iterate(s) != GSL_SUCCESS) break;
        ++out.iterations;
        out.trace.push_back(-s->f);
        if (gsl_multimin_test_gradient(s->gradient, cfg.tolerance) == GSL_SUCCESS) {
            out.converged = true;
            break;
        }
    }
    out.f = -s->f;
    out.point.assign(s->x->data, s->x->data + n);
    out.max_isometry_error = ctx.max_isometry_error;
    gsl_multimin_fdfminimizer_free(s);
    gsl_vector_free(x);
    return out;
}

void disable_gsl_abort() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

}  // namespace

// --- Isometry ------------------------------------------------------------------

Isometry::Isometry(std::size_t ancilla_dim, std::vector<Complex> column0, std::vector<Complex> column1)
    : d_(ancilla_dim), c0_(std::move(column0)), c1_(std::move(column1)) {
    require_ancilla_dim(d_);
    if (c0_.size() != 4 * d_ || c1_.size() != 4 * d_) throw std::invalid_argument("isometry columns have the wrong length");
    for (const auto* c : {&c0_, &c1_})
        for (const Complex& x : *c)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw std::invalid_argument("non-finite isometry entry");
    if (isometry_error() > kIsometryTol) throw std::invalid_argument("matrix is not an isometry (V^dagger V != I)");
}

Isometry Isometry::from_unconstrained(std::size_t ancilla_dim, std::span<const double> params) {
    require_ancilla_dim(ancilla_dim);
    const std::size_t len = 4 * ancilla_dim;
    if (params.size() != 4 * len) throw std::invalid_argument("expected 16 * ancilla_dim parameters");
    std::vector<Complex> z0(len), z1(len);
    for (std::size_t k = 0; k < len; ++k) {
        z0[k] = {params[2 * k], params[2 * k + 1]};
        z1[k] = {params[2 * (len + k)], params[2 * (len + k) + 1]};
    }
    auto normalize = [](std::vector<Complex>& v, std::size_t fallback) {
        double n = 0.0;
        for (const Complex& x : v) n += std::norm(x);
        n = std::sqrt(n);
        if (n < 1e-150) {
            std::fill(v.begin(), v.end(), Complex(0.0));
            v[fallback] = 1.0;
            return;
        }
        for (Complex& x : v) x /= n;
    };
    normalize(z0, 0);
    // Two passes of projection keep the columns orthogonal to rounding level.
    for (int pass = 0; pass < 2; ++pass) {
        const Complex proj = kernels::inner(z0, z1);
        for (std::size_t k = 0; k < len; ++k) z1[k] -= proj * z0[k];
    }
    double n1 = 0.0;
    for (const Complex& x : z1) n1 += std::norm(x);
    if (n1 < 1e-300) {
        // Pick any basis vector not parallel to z0.
        const auto it = std::min_element(z0.begin(), z0.end(), [](const Complex& a, const Complex& b) {
            return std::norm(a) < std::norm(b);
        });
        std::fill(z1.begin(), z1.end(), Complex(0.0));
        z1[static_cast<std::size_t>(it - z0.begin())] = 1.0;
        const Complex proj = kernels::inner(z0, z1);
        for (std::size_t k = 0; k < len; ++k) z1[k] -= proj * z0[k];
    }
    normalize(z1, 1);
    return Isometry(ancilla_dim, std::move(z0), std::move(z1));
}

Isometry Isometry::basis_cloner(std::size_t ancilla_dim) {
    require_ancilla_dim(ancilla_dim);
    std::vector<Complex> c0(4 * ancilla_dim), c1(4 * ancilla_dim);
    c0[0] = 1.0;                                     // |0>|0>|0>
    c1[1 * 2 * ancilla_dim + 1 * ancilla_dim] = 1.0;  // |1>|1>|0>
    return Isometry(ancilla_dim, std::move(c0), std::move(c1));
}

std::vector<Complex> Isometry::stacked() const {
    std::vector<Complex> v(c0_);
    v.insert(v.end(), c1_.begin(), c1_.end());
    return v;
}

double Isometry::isometry_error() const {
    return std::max({column_error(c0_, c0_, 1.0), column_error(c1_, c1_, 1.0), column_error(c0_, c1_, 0.0)});
}

std::vector<Complex> Isometry::apply(const Qubit& q) const {
    std::vector<Complex> out(4 * d_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = q.alpha() * c0_[k] + q.beta() * c1_[k];
    return out;
}

// --- QuadratureGrid ----------------------------------------------------------------

QuadratureGrid::QuadratureGrid(std::vector<QuadratureNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("quadrature grid needs at least one node");
    double total = 0.0;
    for (const auto& n : nodes_) {
        if (!(n.weight >= 0.0)) throw std::invalid_argument("quadrature weights must be non-negative");
        total += n.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("quadrature weights must sum to 1");
}

QuadratureGrid QuadratureGrid::equal_area(std::size_t n) {
    if (n == 0) throw std::invalid_argument("quadrature grid needs at least one node");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<QuadratureNode> nodes;
    nodes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n);
        const double phi = std::fmod(golden * static_cast<double>(k), 2.0 * std::numbers::pi);
        nodes.push_back({qubit_from_bloch({std::acos(z), phi}), 1.0 / static_cast<double>(n)});
    }
    return QuadratureGrid(std::move(nodes));
}

QuadratureGrid QuadratureGrid::monte_carlo(std::size_t n, std::uint64_t seed) {
    std::vector<QuadratureNode> nodes;
    for (const Qubit& q : sample_bloch(n, seed)) nodes.push_back({q, 1.0 / static_cast<double>(n)});
    return QuadratureGrid(std::move(nodes));
}

QuadratureGrid QuadratureGrid::single(const Qubit& q) { return QuadratureGrid({{q, 1.0}}); }

std::string_view mode_name(Mode m) { return m == Mode::Joint ? "joint" : "second-register"; }

StateVector target_state(const Qubit& q, double lambda) {
    require_lambda(lambda);
    return Complex(std::sqrt(lambda)) * q.state() + Complex(std::sqrt(1.0 - lambda)) * complement(q).state();
}

double average_fidelity(const Isometry& v, double lambda, const QuadratureGrid& grid, Mode mode) {
    require_lambda(lambda);
    if (v.isometry_error() > kIsometryTol) throw std::invalid_argument("average_fidelity: V is not an isometry");
    const std::size_t d = v.ancilla_dim();
    double total = 0.0;
    for (const auto& node : grid.nodes()) {
        const std::vector<Complex> out = v.apply(node.state);
        const Complex psi[2] = {node.state.alpha(), node.state.beta()};
        const StateVector phi = target_state(node.state, lambda);
        auto at = [&](std::size_t r1, std::size_t r2, std::size_t a) { return out[r1 * 2 * d + r2 * d + a]; };
        double f = 0.0;
        if (mode == Mode::Joint) {
            for (std::size_t a = 0; a < d; ++a) {
                Complex amp = 0.0;
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) amp += std::conj(psi[i]) * std::conj(phi[j]) * at(i, j, a);
                f += std::norm(amp);
            }
        } else {
            double f1 = 0.0, f2 = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t other = 0; other < 2; ++other) {
                    Complex amp1 = 0.0, amp2 = 0.0;
                    for (std::size_t k = 0; k < 2; ++k) {
                        amp1 += std::conj(psi[k]) * at(k, other, a);
                        amp2 += std::conj(phi[k]) * at(other, k, a);
                    }
                    f1 += std::norm(amp1);
                    f2 += std::norm(amp2);
                }
            }
            f = 0.5 * (f1 + f2);
        }
        total += node.weight * f;
    }
    return total;
}

// --- FidelityObjective -------------------------------------------------------------

FidelityObjective::FidelityObjective(double lambda, const QuadratureGrid& grid, Mode mode, std::size_t ancilla_dim)
    : d_(ancilla_dim) {
    require_lambda(lambda);
    require_ancilla_dim(ancilla_dim);
    // N[(a, x), (b, y)] = sum_w w conj(psi_a) psi_b P_w[x][y] over registers 1, 2.
    std::array<Complex, 64> n_small{};
    for (const auto& node : grid.nodes()) {
        const Complex psi[2] = {node.state.alpha(), node.state.beta()};
        const auto p = register_projector(node.state, target_state(node.state, lambda), mode);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                const Complex c = node.weight * std::conj(psi[a]) * psi[b];
                for (std::size_t x = 0; x < 4; ++x)
                    for (std::size_t y = 0; y < 4; ++y) n_small[(a * 4 + x) * 8 + (b * 4 + y)] += c * p[x * 4 + y];
            }
    }
    // Expand with the identity on the ancilla: stacked index (a, x, q) = (a * 4 + x) * d + q.
    const std::size_t n = 8 * d_;
    m_.assign(n * n, Complex(0.0));
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c)
            for (std::size_t q = 0; q < d_; ++q) m_[(r * d_ + q) * n + (c * d_ + q)] = n_small[r * 8 + c];
}

double FidelityObjective::operator()(const Isometry& v) const {
    if (v.ancilla_dim() != d_) throw std::invalid_argument("isometry ancilla dimension does not match objective");
    const auto s = v.stacked();
    return evaluate_stacked(s);
}

double FidelityObjective::evaluate_stacked(std::span<const Complex> stacked) const {
    return kernels::hermitian_form(m_, stacked);
}

// --- optimization --------------------------------------------------------------------

OptimizationResult optimize_fidelity(double lambda, const QuadratureGrid& grid, const OptimizerConfig& cfg) {
    require_lambda(lambda);
    if (cfg.ancilla_dims.empty()) throw std::invalid_argument("optimizer needs at least one ancilla dimension");
    if (cfg.restarts == 0 || cfg.max_evaluations == 0) throw std::invalid_argument("optimizer budget must be positive");
    disable_gsl_abort();

    std::optional<OptimizationResult> best;
    double max_iso = 0.0;
    for (std::size_t d : cfg.ancilla_dims) {
        require_ancilla_dim(d);
        const FidelityObjective objective(lambda, grid, cfg.mode, d);
        for (std::size_t r = 0; r < cfg.restarts; ++r) {
            Rng rng = Rng::stream(cfg.seed, {std::bit_cast<std::uint64_t>(lambda), d, r});
            std::vector<double> start(16 * d);
            for (double& x : start) x = rng.gaussian();
            RestartOutcome run = cfg.method == Method::Gradient ? run_gradient(objective, d, std::move(start), cfg)
                                                                : run_nelder_mead(objective, d, std::move(start), cfg);
            max_iso = std::max(max_iso, run.max_isometry_error);
            if (!best || run.f > best->record.f_opt) {
                FidelitySweepRecord rec{lambda,  run.f, run.iterations, run.converged,
                                        d,       cfg.seed, cfg.mode};
                best = OptimizationResult{rec, Isometry::from_unconstrained(d, run.point), std::move(run.trace), 0.0};
            }
        }
    }
    best->max_isometry_error = max_iso;
    return std::move(*best);
}

std::vector<FidelitySweepRecord> sweep_lambda(std::span<const double> lambdas, const QuadratureGrid& grid,
                                              const OptimizerConfig& cfg) {
    for (double l : lambdas) require_lambda(l);
    std::vector<FidelitySweepRecord> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(optimize_fidelity(l, grid, cfg).record);
    return out;
}

}  // namespace qnogo::fidelity
