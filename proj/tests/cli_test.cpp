// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "qgate/algorithms.hpp"
#include "qgate/compiler.hpp"
#include "qgate/executor.hpp"
#include "qgate/io.hpp"

using namespace qgate;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out, err;
};

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qgate_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write("h2.txt",
              "-0.96028 II\n"
              "0.08240 ZI\n"
              "-0.08240 IZ\n"
              "-0.00226 ZZ\n"
              "0.24801 XX\n");
        write("h8.mtx",
              "%%MatrixMarket matrix coordinate real symmetric\n"
              "8 8 6\n"
              "1 1 0.5\n"
              "3 2 0.25\n"
              "5 1 -0.7\n"
              "8 4 0.3\n"
              "6 6 -0.2\n"
              "7 3 0.1\n");
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    void write(const std::string &name, const std::string &text) const {
        std::ofstream(dir_ / name) << text;
    }
    std::string read(const std::string &name) const {
        std::ifstream in(dir_ / name);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    CliResult run(std::vector<std::string> args) const {
        args.insert(args.begin(), "qgate");
        std::vector<const char *> argv;
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out, err;
        CliResult r;
        r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    fs::path dir_;
};

double csv_value(const std::string &text, const std::string &key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ",", 0) == 0) {
            return std::stod(line.substr(key.size() + 1));
        }
    }
    ADD_FAILURE() << key << " missing from\n" << text;
    return NAN;
}

}  // namespace

TEST_F(CliTest, compile_h2_pauli_round_trip) {
    const auto r = run({"compile", "--input", path("h2.txt"), "--method", "pauli", "--steps", "10", "--out",
                        path("h2.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto program = io::read_program(path("h2.json"));
    EXPECT_EQ(cost(program).rotations, 40u);  // 4 non-identity terms per step
    ASSERT_TRUE(fs::exists(path("h2.json.manifest.json")));
    EXPECT_NE(read("h2.json.manifest.json").find("\"command\": \"compile\""), std::string::npos);

    std::ifstream in(path("h2.txt"));
    QGateProgram direct = compile_trotter(io::read_pauli_text(in), 1.0, 1, 10);
    direct.name = program.name;
    direct.source = program.source;
    EXPECT_EQ(program, direct);

    const std::string first = read("h2.json");
    ASSERT_EQ(run({"compile", "--input", path("h2.txt"), "--method", "pauli", "--steps", "10", "--out",
                   path("h2.json")})
                  .code,
              cli::kExitOk);
    EXPECT_EQ(read("h2.json"), first);
}

TEST_F(CliTest, compile_matrix_market_direct_with_ladder) {
    const auto plain = run({"compile", "--input", path("h8.mtx"), "--method", "direct", "--out", path("d.json")});
    ASSERT_EQ(plain.code, cli::kExitOk) << plain.err;
    EXPECT_GT(cost(io::read_program(path("d.json"))).controlled_blocks, 0u);

    const auto lowered = run({"compile", "--input", path("h8.mtx"), "--method", "direct", "--ladder", "--lower",
                              "--out", path("l.json")});
    ASSERT_EQ(lowered.code, cli::kExitOk) << lowered.err;
    const auto c = cost(io::read_program(path("l.json")));
    EXPECT_EQ(c.controlled_blocks, 0u);
    EXPECT_GT(c.work_qubits, 0u);
    const auto v = run({"verify", path("l.json"), "--delta", "1", "--tolerance", "1.0"});
    EXPECT_EQ(v.code, cli::kExitOk) << v.out << v.err;
}

TEST_F(CliTest, parse_errors_exit_2_with_line) {
    write("bad.mtx", "%%MatrixMarket matrix coordinate real general\n4 4 1\n1 x 0.5\n");
    const auto r = run({"compile", "--input", path("bad.mtx"), "--out", path("x.json")});
    EXPECT_EQ(r.code, cli::kExitParse);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(path("x.json")));

    write("bad.txt", "0.1 XX\n0.2 XQ\n");
    const auto p = run({"compile", "--input", path("bad.txt"), "--out", path("x.json")});
    EXPECT_EQ(p.code, cli::kExitParse);
    EXPECT_NE(p.err.find("line 2"), std::string::npos) << p.err;

    EXPECT_EQ(run({"compile", "--input", path("h2.txt")}).code, cli::kExitParse);  // missing --out
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitParse);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, complex_off_diagonal_direct_exit_3) {
    write("c.mtx", "%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 0.5 0.5\n");
    EXPECT_EQ(run({"compile", "--input", path("c.mtx"), "--method", "direct", "--out", path("c.json")}).code,
              cli::kExitUnsupported);
    EXPECT_EQ(run({"compile", "--input", path("c.mtx"), "--method", "pauli", "--out", path("c.json")}).code,
              cli::kExitOk);
}

TEST_F(CliTest, simulate_modes) {
    ASSERT_EQ(run({"compile", "--input", path("h2.txt"), "--steps", "3", "--out", path("p.json")}).code, 0);

    const auto post = run({"simulate", path("p.json"), "--state", "1", "--out", path("s.csv")});
    ASSERT_EQ(post.code, cli::kExitOk) << post.err;
    std::ifstream sin(path("s.csv"));
    const auto state = io::read_state_csv(sin);
    const auto expect = program_unitary(io::read_program(path("p.json"))).col(1);
    EXPECT_LT((state.amplitudes() - expect).norm(), 1e-10);

    EXPECT_EQ(run({"simulate", path("p.json"), "--mode", "sample", "--out", path("a.csv")}).code, cli::kExitParse);
    for (const char *name : {"a", "b"}) {
        ASSERT_EQ(run({"simulate", path("p.json"), "--mode", "sample", "--seed", "21", "--out",
                       path(std::string(name) + ".csv"), "--records", path(std::string(name) + ".rec.csv")})
                      .code,
                  0);
    }
    EXPECT_EQ(read("a.csv"), read("b.csv"));
    EXPECT_EQ(read("a.rec.csv"), read("b.rec.csv"));

    write("two.txt", "0.3 XZ\n-0.2 YY\n");
    ASSERT_EQ(run({"compile", "--input", path("two.txt"), "--out", path("two.json")}).code, 0);
    const auto all = run({"simulate", path("two.json"), "--mode", "all-branches", "--out", path("br.csv")});
    ASSERT_EQ(all.code, 0) << all.err;
    EXPECT_EQ(csv_value(all.out, "branches"), 4.0);
    EXPECT_LT(csv_value(all.out, "max_branch_deviation"), 1e-9);

    const auto dbg = run({"simulate", path("two.json"), "--debug-tableau", "--out", path("dbg.csv")});
    EXPECT_EQ(dbg.code, 0);
    EXPECT_EQ(csv_value(dbg.out, "tableau_failures"), 0.0);

    EXPECT_EQ(run({"simulate", path("two.json"), "--floor", "0.6", "--out", path("f.csv")}).code,
              cli::kExitPostselection);
}

TEST_F(CliTest, trotter_scan_slopes) {
    write("r.json", [] {
        const auto h = random_sparse_hermitian(3, 8, 2024);
        std::string s = R"({"dimension": 8, "entries": [)";
        bool first = true;
        const auto d = h.to_dense();
        for (int r = 0; r < 8; ++r) {
            for (int c = r; c < 8; ++c) {
                if (d(r, c) != 0.0) {
                    s += std::string(first ? "" : ",") + "[" + std::to_string(r) + "," + std::to_string(c) + "," +
                         io::format_double(d(r, c).real()) + "]";
                    first = false;
                }
            }
        }
        return s + "]}";
    }());
    const auto r = run({"trotter-scan", "--input", path("r.json"), "--orders", "1,2,4", "--steps-list",
                        "4,8,16,32,64", "--delta", "1.5707963267948966", "--out", path("scan.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read("scan.csv").substr(0, 33), "tau,order,one_minus_F,frobenius\n4");
    std::istringstream in(r.out);
    std::string line;
    std::vector<double> slopes;
    while (std::getline(in, line)) {
        slopes.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    }
    ASSERT_EQ(slopes.size(), 3u);
    EXPECT_NEAR(slopes[0], -1.0, 0.2);
    EXPECT_NEAR(slopes[1], -2.0, 0.2);
    EXPECT_NEAR(slopes[2], -4.0, 0.4);
}

TEST_F(CliTest, qpe_histogram_and_sweep) {
    EXPECT_EQ(run({"qpe", "--input", path("h2.txt"), "--b", "8", "--out", path("q.csv")}).code, cli::kExitParse);
    const auto r = run({"qpe", "--input", path("h2.txt"), "--b", "8", "--shots", "200", "--seed", "4", "--out",
                        path("q.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const double theta = phase_of_energy(csv_value(r.out, "ground_energy"), 1.0);
    EXPECT_LE(std::abs(csv_value(r.out, "theta_hat") - theta), std::ldexp(1.0, -8));
    const std::string hist = read("q.csv");
    EXPECT_EQ(hist.substr(0, 16), "bitstring,count\n");
    ASSERT_EQ(run({"qpe", "--input", path("h2.txt"), "--b", "8", "--shots", "200", "--seed", "4", "--out",
                   path("q2.csv")})
                  .code,
              0);
    EXPECT_EQ(read("q2.csv"), hist);

    const auto s = run({"qpe", "--input", path("h2.txt"), "--b", "4", "--scale", "0.3455", "--seed", "1", "--sweep",
                        "1,2,3", "--out", path("sw.csv")});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(read("sw.csv").substr(0, 28), "delta,theta_hat,theta_exact\n");
}

TEST_F(CliTest, cost_and_verify) {
    QGateProgram term = compile_direct_term(1, 6, 0.4, 0.7, 3);
    term.source = path("term.json");
    write("term.json", R"({"dimension": 8, "entries": [[1, 6, 0.4]]})");
    io::atomic_write(path("prog.json"), io::program_to_json(term));
    const auto v = run({"verify", path("prog.json"), "--against", "exact", "--delta", "0.7", "--tolerance", "1e-9"});
    EXPECT_EQ(v.code, cli::kExitOk) << v.out << v.err;
    const auto wrong = run({"verify", path("prog.json"), "--delta", "0.8", "--tolerance", "1e-9"});
    EXPECT_EQ(wrong.code, cli::kExitTolerance);

    const auto c = run({"cost", path("prog.json")});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("\"controlled_blocks\""), std::string::npos);
    EXPECT_EQ(run({"cost", path("prog.json"), "--format", "csv", "--out", path("cost.csv")}).code, 0);
    EXPECT_EQ(read("cost.csv"), io::cost_to_csv(cost(term)));
    EXPECT_TRUE(fs::exists(path("cost.csv.manifest.json")));
}

TEST_F(CliTest, invalid_program_exit_2) {
    // A gadget whose measurement was deleted leaves an unmeasured ancilla.
    write("bad.json", R"({"format":"qgate-program","version":1,"name":"bad","source":"","n_logical":1,
        "n_work":0,"global_phase":0,"instructions":[{"op":"alloc_logical","count":1},
        {"op":"alloc_ancilla","ref":"A0"},{"op":"cpauli","control":"A0","target":"L0","letter":"Z"}]})");
    const auto r = run({"simulate", path("bad.json"), "--out", path("s.csv")});
    EXPECT_EQ(r.code, cli::kExitParse);
    EXPECT_NE(r.err.find("unmeasured-ancilla"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(path("s.csv")));
}
