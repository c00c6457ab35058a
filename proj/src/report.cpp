#include "qnogo/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qnogo::report {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kShowTol = 1e-12;

std::string g(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Shortest round-trip text, for CSV.
std::string exact(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string basis_label(std::size_t index, std::size_t dim) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < dim) ++bits;
    std::string s(std::max<std::size_t>(bits, 1), '0');
    for (std::size_t b = 0; b < bits; ++b)
        if (index & (std::size_t{1} << b)) s[bits - 1 - b] = '1';
    return s;
}

// Negative zero prints as "-0.0"; reports show it as plain zero.
double unsigned_zero(double v) { return v == 0.0 ? 0.0 : v; }

Json complex_json(Complex c) { return Json::array({unsigned_zero(c.real()), unsigned_zero(c.imag())}); }

Json qubit_json(const Qubit& q) {
    const auto b = q.bloch_vector();
    return Json{{"ket", ket(q)},
                {"amplitudes", Json::array({complex_json(q.alpha()), complex_json(q.beta())})},
                {"bloch", Json::array({unsigned_zero(b[0]), unsigned_zero(b[1]), unsigned_zero(b[2])})}};
}

Json operator_json(const DenseOperator& op) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < op.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < op.dim(); ++c) row.push_back(complex_json(op(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json verdict_json(const verify::Verdict& v) {
    Json j{{"verdict", v.realizable ? "REALIZABLE" : "IMPOSSIBLE"},
           {"violation", v.violation},
           {"condition", verify::condition_name(v.condition)},
           {"explanation", verify::condition_explanation(v.condition)},
           {"detail", v.detail}};
    j["witness"] = v.witness ? Json{{"first", qubit_json(v.witness->first)}, {"second", qubit_json(v.witness->second)}}
                             : Json(nullptr);
    j["realizing_operator"] = v.realizing_operator ? operator_json(*v.realizing_operator) : Json(nullptr);
    return j;
}

Json header(std::string_view command) { return Json{{"command", command}, {"schema_version", kSchemaVersion}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void human_verdict(std::ostringstream& os, const verify::Verdict& v, bool pair_is_complement) {
    os << "verdict: " << (v.realizable ? "REALIZABLE" : "IMPOSSIBLE") << "\n";
    os << "max violation: " << g(v.violation) << "\n";
    if (!v.realizable) {
        os << "failed condition: " << verify::condition_name(v.condition) << "\n";
        os << "  " << verify::condition_explanation(v.condition) << "\n";
    }
    if (v.witness) {
        const char* a = pair_is_complement ? "psi    " : "psi1";
        const char* b = pair_is_complement ? "psi_bar" : "psi2";
        os << "witness: " << a << " = " << ket(v.witness->first) << "\n";
        os << "         " << b << " = " << ket(v.witness->second) << "\n";
    }
    if (!v.detail.empty()) os << "detail: " << v.detail << "\n";
}

[[noreturn]] void no_csv(std::string_view what) {
    throw std::invalid_argument("csv output is not available for " + std::string(what));
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
    if (s == "human") return Format::Human;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

bool supports_csv(std::string_view command) { return command == "fidelity-sweep" || command == "circle-check"; }

std::string ket(const StateVector& v, int digits) {
    std::string out;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        const Complex c = v[k];
        const bool has_re = std::abs(c.real()) > kShowTol, has_im = std::abs(c.imag()) > kShowTol;
        if (!has_re && !has_im) continue;
        const std::string label = "|" + basis_label(k, v.dim()) + ">";
        std::string coeff;
        bool negative = false;
        if (has_re && has_im) {
            coeff = "(" + g(c.real(), digits) + (c.imag() < 0 ? "-" : "+") + g(std::abs(c.imag()), digits) + "i)";
        } else {
            const double part = has_re ? c.real() : c.imag();
            negative = part < 0;
            const double mag = std::abs(part);
            coeff = has_re ? (std::abs(mag - 1.0) <= kShowTol ? "" : g(mag, digits)) : g(mag, digits) + "i";
        }
        if (out.empty()) {
            out += (negative ? "-" : "") + coeff + label;
        } else {
            out += (negative ? " - " : " + ") + coeff + label;
        }
    }
    return out.empty() ? "0" : out;
}

std::string ket(const Qubit& q, int digits) { return ket(q.state(), digits); }

std::string render(const GateVerifyReport& r, Format f) {
    if (f == Format::Csv) no_csv("gate-verify");
    if (f == Format::Json) {
        Json j = header("gate-verify");
        j["gate"] = r.gate;
        j["target"] = r.target;
        j["set"] = r.set;
        j["states"] = r.states;
        j["seed"] = r.seed;
        j["tol"] = r.tol;
        j["result"] = verdict_json(r.verdict);
        return dump(j);
    }
    std::ostringstream os;
    os << "gate " << r.gate << " against target " << r.target << " on " << r.set << " (" << r.states
       << " states, tol " << g(r.tol) << ", seed " << r.seed << ")\n";
    human_verdict(os, r.verdict, true);
    return os.str();
}

std::string render(const WitnessReport& r, Format f) {
    if (f == Format::Csv) no_csv("witness");
    const auto& w = r.result;
    if (f == Format::Json) {
        Json j = header("witness");
        j["target"] = r.target;
        j["set"] = r.set;
        j["grid_n"] = r.grid_n;
        j["seed"] = r.seed;
        j["violation"] = w.violation;
        j["condition"] = verify::condition_name(w.condition);
        j["explanation"] = verify::condition_explanation(w.condition);
        j["first_index"] = w.first_index;
        j["second_index"] = w.second_index;
        j["pair"] = Json{{"first", qubit_json(w.pair.first)}, {"second", qubit_json(w.pair.second)}};
        return dump(j);
    }
    std::ostringstream os;
    os << "witness search for target " << r.target << " on " << r.set << " (" << r.grid_n << " states, seed " << r.seed
       << ")\n";
    os << "max inner-product violation: " << g(w.violation) << "\n";
    os << "condition: " << verify::condition_name(w.condition) << "\n";
    os << "  " << verify::condition_explanation(w.condition) << "\n";
    os << "pair: psi1 = " << ket(w.pair.first) << "  (#" << w.first_index << ")\n";
    os << "      psi2 = " << ket(w.pair.second) << "  (#" << w.second_index << ")\n";
    return os.str();
}

std::string render(const CircleReport& r, Format f) {
    auto status = [&](const verify::GramCheck& c) {
        if (c.expected_to_hold) return c.passed(r.tol) ? "holds" : "VIOLATED";
        return c.passed(r.tol) ? "fails as expected" : "UNEXPECTEDLY HOLDS";
    };
    if (f == Format::Csv) {
        std::string out = "identity,circle,residual,expected_to_hold,passed\n";
        for (const auto& c : r.checks) {
            out += std::string(verify::gram_identity_name(c.identity)) + "," +
                   std::string(verify::state_set_name(c.circle)) + "," + exact(c.residual) + "," +
                   (c.expected_to_hold ? "true" : "false") + "," + (c.passed(r.tol) ? "true" : "false") + "\n";
        }
        return out;
    }
    if (f == Format::Json) {
        Json j = header("circle-check");
        j["grid_n"] = r.grid_n;
        j["tol"] = r.tol;
        Json checks = Json::array();
        for (const auto& c : r.checks) {
            checks.push_back(Json{{"identity", verify::gram_identity_name(c.identity)},
                                  {"circle", verify::state_set_name(c.circle)},
                                  {"residual", c.residual},
                                  {"expected_to_hold", c.expected_to_hold},
                                  {"passed", c.passed(r.tol)}});
        }
        j["checks"] = std::move(checks);
        return dump(j);
    }
    std::ostringstream os;
    os << "great-circle gram identities on " << r.grid_n << "-point grids (" << r.grid_n << "x" << r.grid_n
       << " pairs)\n";
    for (const auto& c : r.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-17s on %-10s max residual %-12s %s\n",
                      std::string(verify::gram_identity_name(c.identity)).c_str(),
                      std::string(verify::state_set_name(c.circle)).c_str(), g(c.residual, 3).c_str(), status(c));
        os << line;
    }
    return os.str();
}

std::string render(const SweepReport& r, Format f) {
    if (f == Format::Csv) {
        std::string out = "lambda,f_opt,mode,ancilla_dim,converged,iterations,seed\n";
        for (const auto& rec : r.records) {
            out += exact(rec.lambda) + "," + exact(rec.f_opt) + "," + std::string(fidelity::mode_name(rec.mode)) + "," +
                   std::to_string(rec.ancilla_dim) + "," + (rec.converged ? "true" : "false") + "," +
                   std::to_string(rec.iterations) + "," + std::to_string(rec.seed) + "\n";
        }
        return out;
    }
    if (f == Format::Json) {
        Json j = header("fidelity-sweep");
        j["grid_n"] = r.grid_n;
        j["restarts"] = r.restarts;
        j["max_evaluations"] = r.max_evaluations;
        Json recs = Json::array();
        for (const auto& rec : r.records) {
            recs.push_back(Json{{"lambda", rec.lambda},
                                {"f_opt", rec.f_opt},
                                {"mode", fidelity::mode_name(rec.mode)},
                                {"ancilla_dim", rec.ancilla_dim},
                                {"converged", rec.converged},
                                {"iterations", rec.iterations},
                                {"seed", rec.seed}});
        }
        j["records"] = std::move(recs);
        return dump(j);
    }
    std::ostringstream os;
    os << "optimal fidelity sweep (" << r.grid_n << "-node quadrature, " << r.restarts << " restarts, "
       << r.max_evaluations << " evaluations each)\n";
    os << "  lambda    f_opt       mode             ancilla  converged  iterations\n";
    for (const auto& rec : r.records) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-8.4g  %-10.6f  %-15s  %-7zu  %-9s  %zu\n", rec.lambda, rec.f_opt,
                      std::string(fidelity::mode_name(rec.mode)).c_str(), rec.ancilla_dim,
                      rec.converged ? "yes" : "no", rec.iterations);
        os << line;
    }
    return os.str();
}

std::string render(const DslReport& r, Format f) {
    if (f == Format::Csv) no_csv("dsl-check");
    if (f == Format::Json) {
        Json j = header("dsl-check");
        j["origin"] = r.origin;
        j["samples"] = r.samples;
        j["seed"] = r.seed;
        j["tol"] = r.tol;
        j["status"] = dsl::has_errors(r.diagnostics) ? "errors" : "ok";
        Json diags = Json::array();
        for (const auto& d : r.diagnostics) {
            diags.push_back(Json{{"severity", d.severity == dsl::Severity::Error ? "error" : "warning"},
                                 {"line", d.line},
                                 {"column", d.column},
                                 {"message", d.message}});
        }
        j["diagnostics"] = std::move(diags);
        Json machines = Json::array();
        for (const auto& o : r.outcomes) {
            Json m{{"name", o.name}, {"target", o.target}, {"set", o.set}, {"states", o.states_checked}};
            m["result"] = verdict_json(o.verdict);
            machines.push_back(std::move(m));
        }
        j["machines"] = std::move(machines);
        return dump(j);
    }
    std::ostringstream os;
    for (const auto& d : r.diagnostics) os << dsl::format_diagnostic(r.origin, d) << "\n";
    for (const auto& o : r.outcomes) {
        os << "machine " << o.name << ": target " << o.target << " on " << o.set << " (" << o.states_checked
           << " states)\n";
        human_verdict(os, o.verdict, true);
    }
    return os.str();
}

}  // namespace qnogo::report
