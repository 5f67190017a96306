#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <Eigen/Dense>

#include "fradeco/sym_tensor.hpp"

using namespace fradeco;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_out.tmp";
    const std::string cmd = std::string(FRADECO_BIN) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    res.output = ss.str();
    return res;
}

void write_ex35(const std::string& path) {
    Eigen::VectorXd t(9);
    t << 3, 0, 2, 0, 2, 0, 2, 0, 3;
    write_symtensor_file(path, tensor_from_binary(t));
}

void write_eq13(const std::string& path) {
    Eigen::MatrixXd B(3, 4);
    B << -5, 1, 1, 3,
          1, -5, 1, 3,
          1, 1, -5, 3;
    B /= 3.0 * std::sqrt(3.0);
    write_symtensor_file(path, synthesize(B, Eigen::VectorXd::Constant(4, 729.0 / 12.0), 4));
}

}  // namespace

TEST_CASE("sample is deterministic in (flags, seed)") {
    const RunResult a = run_cli("sample --r 5 --n 2 --count 1 --seed 7");
    const RunResult b = run_cli("sample --r 5 --n 2 --count 1 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const RunResult c = run_cli("sample --r 5 --n 2 --count 1 --seed 8");
    CHECK(c.output != a.output);
}

TEST_CASE("dim prints the table value") {
    const RunResult r = run_cli("dim --r 4 --n 3 --d 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.substr(0, 2) == "6\n");
    CHECK(r.output.find("result: 6") != std::string::npos);
}

TEST_CASE("decompose exit codes on the two-odeco example") {
    write_ex35("ex35.txt");
    const RunResult r5 = run_cli("decompose --in ex35.txt --rank 5");
    CHECK(r5.exit_code == 1);
    CHECK(r5.output.find("M_5 has full rank: no funtf of rank 5") != std::string::npos);

    // rank detection finds r = 4 and the two-odeco decomposition is exact
    const RunResult r = run_cli("decompose --in ex35.txt --out ex35_decomp.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fradeco rank: 4") != std::string::npos);
    const RunResult v = run_cli("verify --in ex35.txt --decomp ex35_decomp.txt --tol 1e-9");
    CHECK(v.exit_code == 0);
}

TEST_CASE("synth / decompose / verify pipeline") {
    const RunResult s = run_cli("sample --r 5 --n 2 --count 1 --seed 11 --out cli_frames");
    REQUIRE(s.exit_code == 0);
    const RunResult y =
        run_cli("synth --frame cli_frames/frame_0001.txt --weights 1,0.5,0.25,2,1.5 --d 10 "
                "--out cli_tensor.txt");
    REQUIRE(y.exit_code == 0);
    const RunResult d = run_cli("decompose --in cli_tensor.txt --out cli_decomp.txt");
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("fradeco rank: 5") != std::string::npos);
    const RunResult v = run_cli("verify --in cli_tensor.txt --decomp cli_decomp.txt --tol 1e-7");
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("pass") != std::string::npos);
}

TEST_CASE("check-eq distinguishes membership") {
    write_eq13("eq13.txt");
    const RunResult yes = run_cli("check-eq --name quadric_434 --in eq13.txt");
    CHECK(yes.exit_code == 0);
    CHECK(yes.output.find("vanishes: 1") != std::string::npos);

    // x^4 is rank 1, in every fradeco variety's ideal's zero set... but a
    // generic integer tensor is not
    SymTensor R(3, 4, Eigen::VectorXd::LinSpaced(15, 1.0, 17.0));
    write_symtensor_file("generic.txt", R);
    const RunResult no = run_cli("check-eq --name quadric_434 --in generic.txt");
    CHECK(no.exit_code == 1);
    CHECK(no.output.find("vanishes: 0") != std::string::npos);
}

TEST_CASE("hilbert command") {
    const RunResult r = run_cli("hilbert --r 4 --n 3 --d 4 --e 2 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("result: 6") != std::string::npos);
}

TEST_CASE("eigen command") {
    write_eq13("eq13.txt");
    const RunResult r = run_cli("eigen --in eq13.txt --trials 50 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("clusters:") != std::string::npos);
}

TEST_CASE("json flag mirrors the report") {
    const RunResult r = run_cli("--json dim --r 4 --n 3 --d 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"tangent_dim\": 6") != std::string::npos);
    CHECK(r.output.find("\"expected_dim\": 6") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("decompose").exit_code == 2);
    CHECK(run_cli("decompose --in does_not_exist.txt").exit_code == 2);
    CHECK(run_cli("check-eq --name bogus --in eq13.txt").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}
