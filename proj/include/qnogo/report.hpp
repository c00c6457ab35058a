#pragma once

// Human, JSON and CSV renderings of command results. JSON documents follow
// schemas/report.json; every document carries "command" and
// "schema_version". Output depends only on its inputs, so seeded runs are
// byte-identical.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnogo/dsl.hpp"
#include "qnogo/fidelity.hpp"
#include "qnogo/verifier.hpp"

namespace qnogo::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { Human, Json, Csv };
std::optional<Format> parse_format(std::string_view s);

/// Ket notation with `digits` significant digits, e.g. "0.707107|0> - 0.707107i|1>".
std::string ket(const StateVector& v, int digits = 6);
std::string ket(const Qubit& q, int digits = 6);

struct GateVerifyReport {
    std::string gate;
    std::string target;
    std::string set;
    std::size_t states = 0;
    std::uint64_t seed = 0;
    double tol = kVerdictTol;
    verify::Verdict verdict;
};

struct WitnessReport {
    std::string target;
    std::string set;
    std::size_t grid_n = 0;
    std::uint64_t seed = 0;
    verify::WitnessResult result;
};

struct CircleReport {
    std::size_t grid_n = 0;
    double tol = 1e-12;
    std::vector<verify::GramCheck> checks;
};

struct SweepReport {
    std::size_t grid_n = 0;
    std::size_t restarts = 0;
    std::size_t max_evaluations = 0;
    std::vector<fidelity::FidelitySweepRecord> records;
};

struct DslReport {
    std::string origin;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tol = kVerdictTol;
    std::vector<dsl::Diagnostic> diagnostics;
    std::vector<dsl::CheckOutcome> outcomes;
};

/// Csv is only offered for sweeps and circle checks; other reports throw
/// std::invalid_argument for it.
std::string render(const GateVerifyReport& r, Format f);
std::string render(const WitnessReport& r, Format f);
std::string render(const CircleReport& r, Format f);
std::string render(const SweepReport& r, Format f);
std::string render(const DslReport& r, Format f);

bool supports_csv(std::string_view command);

}  // namespace qnogo::report
