#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qnogo/cli.hpp"
#include "qnogo/report.hpp"

using namespace qnogo;
namespace fs = std::filesystem;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string machine(const std::string& name) { return std::string(QNOGO_MACHINES_DIR) + "/" + name; }

fs::path scratch_dir() {
    auto d = fs::temp_directory_path() / "qnogo_cli_test";
    fs::create_directories(d);
    return d;
}
}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("parse_complex accepts the documented forms") {
        CHECK(cli::parse_complex("0.6") == Complex(0.6, 0));
        CHECK(cli::parse_complex("-0.8i") == Complex(0, -0.8));
        CHECK(cli::parse_complex("0.6+0.8i") == Complex(0.6, 0.8));
        CHECK(cli::parse_complex("0.6-0.8i") == Complex(0.6, -0.8));
        CHECK(cli::parse_complex("1,2") == Complex(1, 2));
        CHECK_THROWS_AS(cli::parse_complex("abc"), std::invalid_argument);
    }

    TEST_CASE("lambda ranges are inclusive and rounded") {
        auto r = cli::parse_lambda_range("0:1:0.1");
        REQUIRE(r.size() == 11);
        CHECK(r[3] == 0.3);
        CHECK(r.back() == 1.0);
        CHECK(cli::parse_lambda_range("0.5") == std::vector<double>{0.5});
        CHECK_THROWS_AS(cli::parse_lambda_range("0:2:0.5"), std::invalid_argument);
        CHECK_THROWS_AS(cli::parse_lambda_range("0:1:0"), std::invalid_argument);
    }

    TEST_CASE("matrix files hold re,im pairs") {
        auto m = cli::parse_matrix("# HP\n0.7071067811865476,0 -0.7071067811865476,0\n\n0.7071067811865476,0 0.7071067811865476,0\n");
        CHECK(m.dim() == 2);
        CHECK(m(0, 1).real() < 0);
        CHECK_THROWS_AS(cli::parse_matrix("1,0 0,0\n0,0\n"), std::invalid_argument);
        CHECK_THROWS_AS(cli::parse_matrix("1,0 0,0 0,0\n0,0 1,0 0,0\n0,0 0,0 1,0\n"), std::invalid_argument);
    }

    TEST_CASE("exit codes follow the contract") {
        CHECK(run({"gate-verify", "--gate", "HP", "--target", "hadamard9", "--set", "polar"}).code == 0);
        CHECK(run({"gate-verify", "--gate", "H", "--target", "hadamard9"}).code == 2);
        CHECK(run({"gate-verify", "--gate", "NOPE", "--target", "hadamard9"}).code == 1);
        CHECK(run({"gate-verify", "--gate", "CNOT", "--target", "hadamard9"}).code == 1);
        CHECK(run({"frobnicate"}).code == 1);
        CHECK(run({"circle-check", "--grid-n", "30"}).code == 0);
        CHECK(run({"dsl-check", machine("clone.qmachine")}).code == 2);
        CHECK(run({"dsl-check", machine("hp_polar.qmachine")}).code == 0);
        CHECK(run({"dsl-check", machine("invalid_bad_ket.qmachine")}).code == 3);
        CHECK(run({"dsl-check", machine("does_not_exist.qmachine")}).code == 4);
        CHECK(run({"witness", "--target", "hadamard9", "--set", "polar", "--grid-n", "40"}).code == 0);
        CHECK(run({"witness", "--target", "hadamard9", "--grid-n", "40"}).code == 2);
        CHECK(run({"gate-verify", "--gate", "HP", "--target", "hadamard9", "--format", "csv"}).code == 1);
        CHECK(run({"gate-verify", "--gate", "HP", "--target", "hadamard9", "--tol", "-1"}).code == 1);
    }

    TEST_CASE("help exits with success") { CHECK(run({"--help"}).code == 0); }

    TEST_CASE("syntax errors are listed as file:line:col") {
        auto r = run({"dsl-check", machine("invalid_bad_ket.qmachine")});
        CHECK(r.out.find("invalid_bad_ket.qmachine:3:13: error: unknown ket label '|2>'") != std::string::npos);
    }

    TEST_CASE("json output is valid, tagged and reproducible") {
        std::vector<std::string> args{"gate-verify", "--gate", "HE", "--target", "hadamard9", "--seed", "5",
                                      "--format", "json"};
        auto a = run(args), b = run(args);
        CHECK(a.out == b.out);
        auto j = nlohmann::json::parse(a.out);
        CHECK(j["command"] == "gate-verify");
        CHECK(j["schema_version"] == report::kSchemaVersion);
        CHECK(j["result"]["verdict"] == "IMPOSSIBLE");
        CHECK(j["result"]["condition"] == "hadamard-sum-rule");
        CHECK(j["seed"] == 5);
    }

    TEST_CASE("seed falls back to the environment") {
        std::vector<std::string> args{"gate-verify", "--gate", "H", "--target", "hadamard9", "--format", "json"};
        ::setenv("QNOGO_SEED", "77", 1);
        auto j = nlohmann::json::parse(run(args).out);
        ::unsetenv("QNOGO_SEED");
        CHECK(j["seed"] == 77);
        CHECK(nlohmann::json::parse(run(args).out)["seed"] == 42);
    }

    TEST_CASE("gate matrices can be read from a file") {
        auto p = scratch_dir() / "hp.txt";
        std::ofstream(p) << "0.7071067811865476,0 -0.7071067811865476,0\n0.7071067811865476,0 0.7071067811865476,0\n";
        CHECK(run({"gate-verify", "--gate", p.string(), "--target", "hadamard9", "--set", "polar"}).code == 0);
        CHECK(run({"gate-verify", "--gate", p.string(), "--target", "hadamard9", "--set", "equatorial"}).code == 2);
    }

    TEST_CASE("output files are written whole and identical across runs") {
        auto p = scratch_dir() / "sweep.csv";
        std::vector<std::string> args{"fidelity-sweep", "--lambda", "0:1:0.5", "--grid-n", "40", "--restarts", "1",
                                      "--max-evals", "300", "--format", "csv", "--output", p.string()};
        REQUIRE(run(args).code == 0);
        std::stringstream first;
        first << std::ifstream(p).rdbuf();
        REQUIRE(run(args).code == 0);
        std::stringstream second;
        second << std::ifstream(p).rdbuf();
        const std::string text = first.str();
        CHECK(text == second.str());
        CHECK(text.rfind("lambda,f_opt,mode,ancilla_dim,converged,iterations,seed\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 4);
        CHECK_FALSE(fs::exists(p.string() + ".tmp"));
    }

    TEST_CASE("unwritable output is an I/O error") {
        CHECK(run({"circle-check", "--grid-n", "10", "--output", "/nonexistent/dir/x.json"}).code == 4);
    }

    TEST_CASE("ket rendering") {
        CHECK(report::ket(Qubit::plus()) == "0.707107|0> + 0.707107|1>");
        CHECK(report::ket(Qubit(0.6, Complex(0, -0.8))) == "0.6|0> - 0.8i|1>");
        CHECK(report::parse_format("json") == report::Format::Json);
        CHECK_FALSE(report::parse_format("xml").has_value());
        CHECK(report::supports_csv("circle-check"));
        CHECK_FALSE(report::supports_csv("witness"));
    }
}
