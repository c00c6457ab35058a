#include "qnogo/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qnogo/dsl.hpp"
#include "qnogo/fidelity.hpp"
#include "qnogo/gates.hpp"
#include "qnogo/report.hpp"
#include "qnogo/verifier.hpp"

namespace qnogo::cli {
namespace {

/// Raised for bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

struct Common {
    double tol = kVerdictTol;
    std::size_t grid_n = 256;
    std::optional<std::uint64_t> seed;
    std::string format = "human";
    std::string output;

    void attach(CLI::App* sub) {
        sub->add_option("--tol", tol, "Verdict tolerance (> 0)")->capture_default_str();
        sub->add_option("--grid-n", grid_n, "Sample / grid size (>= 2)")->capture_default_str();
        sub->add_option("--seed", seed, "Random seed (default: $QNOGO_SEED, else 42)");
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"human", "json", "csv"}))
            ->capture_default_str();
        sub->add_option("--output", output, "Write the report to this file (atomically) instead of stdout");
    }
};

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("QNOGO_SEED"); env && *env) {
        std::uint64_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw UsageError("QNOGO_SEED must be a non-negative integer, got '" + std::string(s) + "'");
        return v;
    }
    return 42;
}

report::Format resolve_format(const Common& c, std::string_view command) {
    const auto f = report::parse_format(c.format);
    if (!f) throw UsageError("unknown format '" + c.format + "'");
    if (*f == report::Format::Csv && !report::supports_csv(command))
        throw UsageError("--format csv is only available for fidelity-sweep and circle-check");
    return *f;
}

void validate(const Common& c) {
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (c.grid_n < 2) throw UsageError("--grid-n must be at least 2");
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(c.output);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f << text;
        f.flush();
        if (!f) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move report into place at '" + target.string() + "'");
    }
}

verify::StateSet parse_set(const std::string& s) {
    if (s == "bloch") return verify::StateSet::Bloch;
    if (s == "polar") return verify::StateSet::Polar;
    if (s == "equatorial") return verify::StateSet::Equatorial;
    throw UsageError("unknown state set '" + s + "' (expected bloch, polar or equatorial)");
}

struct TargetChoice {
    std::string label;
    verify::TargetTransform transform;
};

TargetChoice parse_target(const std::string& name, const std::string& a, const std::string& b) {
    if (name == "hadamard9" || name == "hadamard-sum") return {"hadamard9", verify::TargetTransform::hadamard_sum()};
    if (name == "hadamard10" || name == "hadamard-phase")
        return {"hadamard10", verify::TargetTransform::hadamard_phase()};
    if (name == "cnot23" || name == "cnot") return {"cnot23", verify::TargetTransform::cnot()};
    if (name == "unequal") {
        Complex ca, cb;
        try {
            ca = parse_complex(a);
            cb = parse_complex(b);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--a/--b: ") + e.what());
        }
        if (std::abs(std::norm(ca) + std::norm(cb) - 1.0) > 1e-9)
            throw UsageError("unequal target needs |a|^2 + |b|^2 = 1");
        return {"unequal", verify::TargetTransform::unequal(ca, cb)};
    }
    throw UsageError("unknown target '" + name + "' (expected hadamard9, hadamard10, unequal or cnot23)");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

DenseOperator parse_gate(const std::string& spec) {
    if (spec == "H") return gates::hadamard();
    if (spec == "HP") return gates::hadamard_polar();
    if (spec == "HE") return gates::hadamard_equatorial();
    if (spec == "CNOT") return gates::cnot_computational();
    if (spec.rfind("UG(", 0) == 0 && spec.back() == ')') {
        const std::string inner = spec.substr(3, spec.size() - 4);
        const auto comma = inner.find(',');
        if (comma == std::string::npos) throw UsageError("UG needs two amplitudes: UG(a,b)");
        try {
            return gates::unequal_gate(gates::UnequalAmplitudes(parse_double(inner.substr(0, comma)),
                                                                parse_double(inner.substr(comma + 1))));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("UG: ") + e.what());
        }
    }
    if (!std::filesystem::exists(spec))
        throw UsageError("unknown gate '" + spec + "' (expected H, HP, HE, UG(a,b), CNOT or a matrix file)");
    const std::string text = read_file(spec);
    try {
        return parse_matrix(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("malformed matrix file '" + spec + "': " + e.what());
    }
}

// --- subcommands ------------------------------------------------------------------

struct GateVerifyArgs {
    Common common;
    std::string gate, target, set = "bloch", a = "0.7071067811865476", b = "0.7071067811865476";
};

int gate_verify(const GateVerifyArgs& g, std::ostream& out) {
    validate(g.common);
    const auto fmt = resolve_format(g.common, "gate-verify");
    const std::uint64_t seed = resolve_seed(g.common);
    const DenseOperator gate = parse_gate(g.gate);
    const TargetChoice t = parse_target(g.target, g.a, g.b);
    const std::size_t want = t.label == "cnot23" ? 4 : 2;
    if (gate.dim() != want)
        throw UsageError("gate '" + g.gate + "' has dimension " + std::to_string(gate.dim()) + " but target " + t.label +
                         " needs " + std::to_string(want));
    const auto states = verify::state_set(parse_set(g.set), g.common.grid_n, seed);
    report::GateVerifyReport r{g.gate, t.label, g.set, states.size(), seed, g.common.tol,
                               verify::check_universal_gate(gate, t.transform, states, g.common.tol)};
    emit(g.common, report::render(r, fmt), out);
    return r.verdict.realizable ? kExitOk : kExitImpossible;
}

struct WitnessArgs {
    Common common;
    std::string target, set = "bloch", a = "0.7071067811865476", b = "0.7071067811865476";
};

int witness(const WitnessArgs& w, std::ostream& out) {
    validate(w.common);
    const auto fmt = resolve_format(w.common, "witness");
    const std::uint64_t seed = resolve_seed(w.common);
    const TargetChoice t = parse_target(w.target, w.a, w.b);
    report::WitnessReport r{t.label, w.set, w.common.grid_n, seed,
                            verify::witness_search(t.transform, w.common.grid_n, seed, parse_set(w.set))};
    emit(w.common, report::render(r, fmt), out);
    return r.result.violation > w.common.tol ? kExitImpossible : kExitOk;
}

int circle_check(const Common& c, std::ostream& out) {
    validate(c);
    const auto fmt = resolve_format(c, "circle-check");
    report::CircleReport r{c.grid_n, c.tol, verify::circle_check(c.grid_n)};
    emit(c, report::render(r, fmt), out);
    const bool all = std::all_of(r.checks.begin(), r.checks.end(), [&](const auto& x) { return x.passed(c.tol); });
    return all ? kExitOk : kExitImpossible;
}

struct SweepArgs {
    Common common;
    std::string lambda = "0:1:0.25";
    std::string mode = "second";
    std::string method = "nelder-mead";
    std::string quadrature = "equal-area";
    std::vector<std::size_t> ancilla_dims{2};
    std::size_t restarts = 20;
    std::size_t max_evals = 5000;
};

int fidelity_sweep(const SweepArgs& s, std::ostream& out) {
    validate(s.common);
    const auto fmt = resolve_format(s.common, "fidelity-sweep");
    fidelity::OptimizerConfig cfg;
    cfg.seed = resolve_seed(s.common);
    cfg.restarts = s.restarts;
    cfg.max_evaluations = s.max_evals;
    cfg.ancilla_dims = s.ancilla_dims;
    cfg.mode = s.mode == "joint" ? fidelity::Mode::Joint : fidelity::Mode::SecondRegister;
    cfg.method = s.method == "gradient" ? fidelity::Method::Gradient : fidelity::Method::NelderMead;
    if (cfg.restarts == 0 || cfg.max_evaluations == 0) throw UsageError("--restarts and --max-evals must be positive");
    for (std::size_t d : cfg.ancilla_dims)
        if (d < 1 || d > 4) throw UsageError("--ancilla-dim must lie in [1, 4]");
    std::vector<double> lambdas;
    try {
        lambdas = parse_lambda_range(s.lambda);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--lambda: ") + e.what());
    }
    const auto grid = s.quadrature == "monte-carlo" ? fidelity::QuadratureGrid::monte_carlo(s.common.grid_n, cfg.seed)
                                                    : fidelity::QuadratureGrid::equal_area(s.common.grid_n);
    report::SweepReport r{s.common.grid_n, cfg.restarts, cfg.max_evaluations, fidelity::sweep_lambda(lambdas, grid, cfg)};
    emit(s.common, report::render(r, fmt), out);
    return kExitOk;
}

struct DslArgs {
    Common common;
    std::string file;
};

int dsl_check(const DslArgs& d, std::ostream& out) {
    validate(d.common);
    const auto fmt = resolve_format(d.common, "dsl-check");
    const std::uint64_t seed = resolve_seed(d.common);
    dsl::SourceUnit src;
    if (d.file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        src.text = ss.str();
    } else {
        src.text = read_file(d.file);
        src.origin = d.file;
    }
    report::DslReport r{src.origin, d.common.grid_n, seed, d.common.tol, {}, {}};
    const dsl::ParseResult parsed = dsl::parse(src);
    r.diagnostics = parsed.diagnostics;
    if (parsed.ok()) {
        const dsl::CompileResult compiled = dsl::compile(parsed.ast);
        r.diagnostics.insert(r.diagnostics.end(), compiled.diagnostics.begin(), compiled.diagnostics.end());
        if (compiled.ok()) {
            for (const auto& m : compiled.machines)
                r.outcomes.push_back(dsl::check(m, {d.common.grid_n, seed, d.common.tol}));
        }
    }
    emit(d.common, report::render(r, fmt), out);
    if (dsl::has_errors(r.diagnostics)) return kExitDslErrors;
    const bool impossible =
        std::any_of(r.outcomes.begin(), r.outcomes.end(), [](const auto& o) { return !o.verdict.realizable; });
    return impossible ? kExitImpossible : kExitOk;
}

}  // namespace

// --- parsing helpers --------------------------------------------------------------

Complex parse_complex(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (const auto comma = s.find(','); comma != std::string_view::npos)
        return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
    if (s.back() != 'i') return parse_double(s);
    const std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            const std::string_view im = body.substr(k);
            const double imv = im == "+" ? 1.0 : im == "-" ? -1.0 : parse_double(im);
            return {parse_double(body.substr(0, k)), imv};
        }
    }
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_double(body)};
}

DenseOperator parse_matrix(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Complex> row;
        std::string tok;
        while (ls >> tok) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("entry '" + tok + "' is not a re,im pair");
            row.emplace_back(parse_double(std::string_view(tok).substr(0, comma)),
                             parse_double(std::string_view(tok).substr(comma + 1)));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() != 2 && rows.size() != 4)
        throw std::invalid_argument("expected 2 or 4 rows, found " + std::to_string(rows.size()));
    std::vector<Complex> entries;
    for (const auto& r : rows) {
        if (r.size() != rows.size())
            throw std::invalid_argument("row has " + std::to_string(r.size()) + " entries, expected " +
                                        std::to_string(rows.size()));
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return DenseOperator(rows.size(), std::move(entries));
}

std::vector<double> parse_lambda_range(std::string_view spec) {
    auto in_range = [](double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("lambda values must lie in [0, 1]");
        return v;
    };
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= spec.size(); ++k) {
        if (k == spec.size() || spec[k] == ':') {
            parts.push_back(spec.substr(start, k - start));
            start = k + 1;
        }
    }
    if (parts.size() == 1) return {in_range(parse_double(parts[0]))};
    if (parts.size() != 3) throw std::invalid_argument("expected a:b:step or a single value");
    const double a = in_range(parse_double(parts[0]));
    const double b = in_range(parse_double(parts[1]));
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (b < a) throw std::invalid_argument("range end lies before its start");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    if (n > 100000) throw std::invalid_argument("too many lambda values");
    std::vector<double> out;
    for (std::size_t k = 0; k <= n; ++k) {
        const double v = std::round((a + static_cast<double>(k) * step) * 1e12) / 1e12;
        out.push_back(std::clamp(v, 0.0, 1.0));
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qnogo: mechanized no-go checks for cloning-type machines and universal gates", "qnogo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qnogo 1.0.0");

    GateVerifyArgs gv;
    auto* gv_cmd = app.add_subcommand("gate-verify", "Check a fixed gate against a universal target on a state set");
    gv.common.attach(gv_cmd);
    gv_cmd->add_option("--gate", gv.gate, "H, HP, HE, UG(a,b), CNOT or a matrix file")->required();
    gv_cmd->add_option("--target", gv.target, "hadamard9, hadamard10, unequal or cnot23")->required();
    gv_cmd->add_option("--set", gv.set, "bloch, polar or equatorial")->capture_default_str();
    gv_cmd->add_option("--a", gv.a, "Amplitude a for the unequal target")->capture_default_str();
    gv_cmd->add_option("--b", gv.b, "Amplitude b for the unequal target")->capture_default_str();

    WitnessArgs wi;
    auto* wi_cmd = app.add_subcommand("witness", "Search for the input pair that most violates a target's inner products");
    wi.common.attach(wi_cmd);
    wi_cmd->add_option("--target", wi.target, "hadamard9, hadamard10, unequal or cnot23")->required();
    wi_cmd->add_option("--set", wi.set, "bloch, polar or equatorial")->capture_default_str();
    wi_cmd->add_option("--a", wi.a, "Amplitude a for the unequal target")->capture_default_str();
    wi_cmd->add_option("--b", wi.b, "Amplitude b for the unequal target")->capture_default_str();

    Common cc;
    auto* cc_cmd = app.add_subcommand("circle-check", "Verify the great-circle gram identities on dense grids");
    cc.attach(cc_cmd);

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("fidelity-sweep", "Optimal fidelity of clone-and-complement machines over lambda");
    sw.common.attach(sw_cmd);
    sw_cmd->add_option("--lambda", sw.lambda, "a:b:step or a single value")->capture_default_str();
    sw_cmd->add_option("--mode", sw.mode, "Fidelity mode")->check(CLI::IsMember({"second", "joint"}))->capture_default_str();
    sw_cmd->add_option("--method", sw.method, "Optimizer")
        ->check(CLI::IsMember({"nelder-mead", "gradient"}))
        ->capture_default_str();
    sw_cmd->add_option("--quadrature", sw.quadrature, "Bloch-sphere average")
        ->check(CLI::IsMember({"equal-area", "monte-carlo"}))
        ->capture_default_str();
    sw_cmd->add_option("--ancilla-dim", sw.ancilla_dims, "Ancilla dimension(s) to sweep; best is reported")
        ->capture_default_str();
    sw_cmd->add_option("--restarts", sw.restarts, "Random restarts per lambda and ancilla dimension")
        ->capture_default_str();
    sw_cmd->add_option("--max-evals", sw.max_evals, "Objective evaluations per restart")->capture_default_str();

    DslArgs ds;
    auto* ds_cmd = app.add_subcommand("dsl-check", "Parse, compile and check a .qmachine file");
    ds.common.attach(ds_cmd);
    ds_cmd->add_option("file", ds.file, "Path to the .qmachine file, or - for stdin")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == static_cast<int>(CLI::ExitCodes::Success) ? kExitOk : kExitUsage;
    }

    try {
        if (*gv_cmd) return gate_verify(gv, out);
        if (*wi_cmd) return witness(wi, out);
        if (*cc_cmd) return circle_check(cc, out);
        if (*sw_cmd) return fidelity_sweep(sw, out);
        if (*ds_cmd) return dsl_check(ds, out);
    } catch (const UsageError& e) {
        err << "qnogo: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "qnogo: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "qnogo: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qnogo::cli
